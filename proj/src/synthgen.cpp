#include "hyptrails/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "hyptrails/error.hpp"
#include "hyptrails/rng.hpp"

namespace hyptrails {

std::uint64_t DirectedGraph::edge_count() const {
  std::uint64_t n = 0;
  for (const auto& adj : out) n += adj.size();
  return n;
}

std::string DirectedGraph::token(std::uint32_t node) const {
  return tokens.empty() ? node_token(node) : tokens[node];
}

void GeneratorConfig::validate() const {
  if (clique <= m_out) throw InvalidArgument("clique size must exceed out-degree");
  if (n_nodes < clique) throw InvalidArgument("network size must be at least the clique size");
  if (trail_len < 2) throw InvalidArgument("trail length must be at least 2");
  if (n_trails == 0) throw InvalidArgument("at least one trail is required");
  if (!(temperature > 0.0)) throw InvalidArgument("softmax temperature must be positive");
}

DirectedGraph price_network(const GeneratorConfig& cfg) {
  cfg.validate();
  DirectedGraph g;
  g.out.resize(cfg.n_nodes);
  g.in_degree.assign(cfg.n_nodes, 0);

  // urn holds each node once (attachment offset 1) plus once per in-edge
  std::vector<std::uint32_t> urn;
  urn.reserve(static_cast<std::size_t>(cfg.clique) * cfg.clique +
              static_cast<std::size_t>(cfg.n_nodes - cfg.clique) * (cfg.m_out + 1));

  for (std::uint32_t i = 0; i < cfg.clique; ++i) {
    for (std::uint32_t j = 0; j < cfg.clique; ++j) {
      if (i == j) continue;
      g.out[i].push_back(j);
      ++g.in_degree[j];
    }
  }
  for (std::uint32_t i = 0; i < cfg.clique; ++i) {
    urn.push_back(i);
    for (std::uint64_t e = 0; e < g.in_degree[i]; ++e) urn.push_back(i);
  }

  std::mt19937_64 rng(splitmix64(cfg.seed ^ 0x6772617068ULL));
  std::unordered_set<std::uint32_t> chosen;
  for (std::uint32_t u = cfg.clique; u < cfg.n_nodes; ++u) {
    chosen.clear();
    while (chosen.size() < cfg.m_out) {
      const std::uint32_t target = urn[uniform_below(rng, urn.size())];
      chosen.insert(target);  // distinct out-edges, resample on duplicates
    }
    for (std::uint32_t target : chosen) {
      g.out[u].push_back(target);
      ++g.in_degree[target];
      urn.push_back(target);
    }
    std::sort(g.out[u].begin(), g.out[u].end());  // deterministic order
    urn.push_back(u);
  }
  return g;
}

namespace {

std::uint32_t pick_uniform(std::mt19937_64& rng, const std::vector<std::uint32_t>& options) {
  if (options.empty()) throw InvalidArgument("walk reached a node without out-links");
  return options[uniform_below(rng, options.size())];
}

}  // namespace

std::vector<NodeTrail> structural_walk(const DirectedGraph& g, const GeneratorConfig& cfg) {
  cfg.validate();
  const std::uint32_t n = g.node_count();
  std::vector<NodeTrail> trails(cfg.n_trails);
  for (std::uint32_t t = 0; t < cfg.n_trails; ++t) {
    std::mt19937_64 rng(splitmix64(cfg.seed ^ (0x5374720000000000ULL + t)));
    NodeTrail trail;
    trail.reserve(cfg.trail_len);
    std::uint32_t cur = static_cast<std::uint32_t>(uniform_below(rng, n));
    trail.push_back(cur);
    for (std::uint32_t s = 1; s < cfg.trail_len; ++s) {
      cur = pick_uniform(rng, g.out[cur]);
      trail.push_back(cur);
    }
    trails[t] = std::move(trail);
  }
  return trails;
}

std::vector<NodeTrail> popularity_walk(const DirectedGraph& g, const GeneratorConfig& cfg) {
  cfg.validate();
  const std::uint32_t n = g.node_count();
  std::vector<NodeTrail> trails(cfg.n_trails);
  std::vector<double> weights;
  for (std::uint32_t t = 0; t < cfg.n_trails; ++t) {
    std::mt19937_64 rng(splitmix64(cfg.seed ^ (0x506f700000000000ULL + t)));
    NodeTrail trail;
    trail.reserve(cfg.trail_len);
    std::uint32_t cur = static_cast<std::uint32_t>(uniform_below(rng, n));
    trail.push_back(cur);
    for (std::uint32_t s = 1; s < cfg.trail_len; ++s) {
      const auto& nbrs = g.out[cur];
      if (nbrs.empty()) throw InvalidArgument("walk reached a node without out-links");
      double max_deg = 0.0;
      for (auto v : nbrs) max_deg = std::max(max_deg, static_cast<double>(g.in_degree[v]));
      weights.resize(nbrs.size());
      double total = 0.0;
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        // max-shifted to keep the exponent bounded
        weights[i] = std::exp((static_cast<double>(g.in_degree[nbrs[i]]) - max_deg) /
                              cfg.temperature);
        total += weights[i];
      }
      double u = uniform_unit(rng) * total;
      std::size_t pick = nbrs.size() - 1;
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        if (u < weights[i]) {
          pick = i;
          break;
        }
        u -= weights[i];
      }
      cur = nbrs[pick];
      trail.push_back(cur);
    }
    trails[t] = std::move(trail);
  }
  return trails;
}

std::vector<NodeTrail> teleportation_walk(std::uint32_t n_nodes, const GeneratorConfig& cfg) {
  cfg.validate();
  if (n_nodes < 2) throw InvalidArgument("teleportation needs at least 2 nodes");
  std::vector<NodeTrail> trails(cfg.n_trails);
  for (std::uint32_t t = 0; t < cfg.n_trails; ++t) {
    std::mt19937_64 rng(splitmix64(cfg.seed ^ (0x54656c0000000000ULL + t)));
    NodeTrail trail;
    trail.reserve(cfg.trail_len);
    std::uint32_t cur = static_cast<std::uint32_t>(uniform_below(rng, n_nodes));
    trail.push_back(cur);
    for (std::uint32_t s = 1; s < cfg.trail_len; ++s) {
      if (cfg.teleport_self) {
        cur = static_cast<std::uint32_t>(uniform_below(rng, n_nodes));
      } else {
        auto v = static_cast<std::uint32_t>(uniform_below(rng, n_nodes - 1));
        cur = v >= cur ? v + 1 : v;  // uniform over all nodes but the current one
      }
      trail.push_back(cur);
    }
    trails[t] = std::move(trail);
  }
  return trails;
}

std::string node_token(std::uint32_t node) {
  return "n" + std::to_string(node);
}

std::vector<RawTrail> to_raw_trails(const std::vector<NodeTrail>& trails,
                                    const DirectedGraph* g) {
  std::vector<RawTrail> raw(trails.size());
  for (std::size_t t = 0; t < trails.size(); ++t) {
    raw[t].reserve(trails[t].size());
    for (auto node : trails[t])
      raw[t].push_back(g ? g->token(node) : node_token(node));
  }
  return raw;
}

void write_graph_tsv(const std::string& path, const DirectedGraph& g) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write graph file: " + path);
  for (std::uint32_t u = 0; u < g.out.size(); ++u)
    for (auto v : g.out[u]) out << g.token(u) << '\t' << g.token(v) << '\n';
}

DirectedGraph read_graph_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file: " + path);
  std::unordered_map<std::string, std::uint32_t> ids;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  auto intern = [&ids](const std::string& token) {
    auto [it, inserted] = ids.emplace(token, static_cast<std::uint32_t>(ids.size()));
    return it->second;
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected 'src<TAB>dst'");
    edges.emplace_back(intern(line.substr(0, tab)), intern(line.substr(tab + 1)));
  }
  DirectedGraph g;
  g.out.resize(ids.size());
  g.in_degree.assign(ids.size(), 0);
  g.tokens.resize(ids.size());
  for (const auto& [token, id] : ids) g.tokens[id] = token;
  for (auto [u, v] : edges) {
    g.out[u].push_back(v);
    ++g.in_degree[v];
  }
  return g;
}

}  // namespace hyptrails
