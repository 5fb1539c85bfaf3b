#include "hyptrails/trails.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "hyptrails/error.hpp"

namespace hyptrails {

std::optional<std::uint32_t> StateSpace::index_of(const std::string& token) const {
  if (lookup_.empty() && !states.empty()) {
    for (std::uint32_t i = 0; i < states.size(); ++i) lookup_.emplace(states[i], i);
  }
  auto it = lookup_.find(token);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t TrailCorpus::total_steps() const {
  std::size_t n = 0;
  for (const auto& t : trails) n += t.steps.size();
  return n;
}

std::uint64_t TransitionCounts::total() const {
  std::uint64_t n = 0;
  for (const auto& [k, v] : entries.cells) n += v;
  return n;
}

StateSpace build_state_space(const std::vector<RawTrail>& raw_trails, bool reset) {
  if (raw_trails.empty()) throw ParseError("empty trail corpus");
  std::set<std::string> distinct;
  for (std::size_t t = 0; t < raw_trails.size(); ++t) {
    if (raw_trails[t].size() < 2) {
      throw ParseError("trail " + std::to_string(t + 1) +
                       " has fewer than 2 states");
    }
    distinct.insert(raw_trails[t].begin(), raw_trails[t].end());
  }
  StateSpace space;
  space.states.assign(distinct.begin(), distinct.end());
  if (reset) {
    // pick a reset token that collides with no trail token
    std::string token = "__reset__";
    while (distinct.count(token)) token += "_";
    space.states.push_back(token);
    space.reset_index = static_cast<std::uint32_t>(space.states.size() - 1);
  }
  return space;
}

TrailCorpus index_trails(const std::vector<RawTrail>& raw_trails, StateSpace space) {
  TrailCorpus corpus;
  corpus.space = std::move(space);
  corpus.trails.reserve(raw_trails.size());
  for (std::size_t t = 0; t < raw_trails.size(); ++t) {
    Trail trail;
    trail.steps.reserve(raw_trails[t].size());
    for (const auto& token : raw_trails[t]) {
      auto idx = corpus.space.index_of(token);
      if (!idx) {
        throw DimensionError("trail " + std::to_string(t + 1) + ": token '" +
                             token + "' is not in the state space");
      }
      trail.steps.push_back(*idx);
    }
    corpus.trails.push_back(std::move(trail));
  }
  return corpus;
}

TrailCorpus make_corpus(const std::vector<RawTrail>& raw_trails, bool reset) {
  return index_trails(raw_trails, build_state_space(raw_trails, reset));
}

TransitionCounts count_transitions(const TrailCorpus& corpus, bool reset) {
  const std::uint32_t m = corpus.space.size();
  if (reset && !corpus.space.reset_index) {
    throw DimensionError("reset counting requested but the state space has no reset state");
  }
  TransitionCounts counts;
  counts.m = m;
  counts.entries = SparseMat<std::uint64_t>(m);
  for (const auto& trail : corpus.trails) {
    std::uint32_t prev;
    std::size_t start = 0;
    if (reset) {
      prev = *corpus.space.reset_index;
    } else {
      prev = trail.steps.at(0);
      start = 1;
    }
    for (std::size_t s = start; s < trail.steps.size(); ++s) {
      const std::uint32_t cur = trail.steps[s];
      if (cur >= m) throw DimensionError("state index out of range");
      counts.entries.add(prev, cur, 1);
      prev = cur;
    }
  }
  counts.row_sums = counts.entries.row_sums();
  return counts;
}

std::vector<RawTrail> read_trail_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trail file: " + path);
  std::vector<RawTrail> trails;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    RawTrail trail;
    std::stringstream ss(line);
    std::string token;
    while (std::getline(ss, token, '\t')) {
      if (!token.empty()) trail.push_back(token);
    }
    if (trail.size() < 2) {
      throw ParseError(path + ":" + std::to_string(line_no) +
                       ": trail has fewer than 2 states");
    }
    trails.push_back(std::move(trail));
  }
  if (trails.empty()) throw ParseError(path + ": no trails found");
  return trails;
}

void write_trail_file(const std::string& path, const std::vector<RawTrail>& trails) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write trail file: " + path);
  for (const auto& trail : trails) {
    for (std::size_t i = 0; i < trail.size(); ++i) {
      if (i) out << '\t';
      out << trail[i];
    }
    out << '\n';
  }
}

void write_counts_tsv(const std::string& path, const TransitionCounts& counts) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write counts file: " + path);
  out << "m=" << counts.m << '\n';
  for (const auto& [key, v] : counts.entries.cells) {
    out << SparseMat<std::uint64_t>::row_of(key, counts.m) << '\t'
        << SparseMat<std::uint64_t>::col_of(key, counts.m) << '\t' << v << '\n';
  }
}

std::uint64_t fingerprint(const TransitionCounts& counts) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  mix(counts.m);
  for (const auto& [key, v] : counts.entries.cells) {
    mix(key);
    mix(v);
  }
  return h;
}

}  // namespace hyptrails
