#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hyptrails/sparse.hpp"

namespace hyptrails {

using RawTrail = std::vector<std::string>;

// Distinct state identifiers in lexicographic order; index lookup is a
// bijection onto 0..m-1. When reset augmentation is on, one synthetic state
// that occurs in no raw trail is appended at index m-1.
struct StateSpace {
  std::vector<std::string> states;
  std::optional<std::uint32_t> reset_index;

  std::uint32_t size() const { return static_cast<std::uint32_t>(states.size()); }
  // Number of states excluding the synthetic reset state.
  std::uint32_t non_reset_size() const {
    return size() - (reset_index ? 1u : 0u);
  }
  std::optional<std::uint32_t> index_of(const std::string& token) const;

 private:
  mutable std::unordered_map<std::string, std::uint32_t> lookup_;
};

struct Trail {
  std::vector<std::uint32_t> steps;  // indices into the state space, length >= 2
};

struct TrailCorpus {
  StateSpace space;
  std::vector<Trail> trails;  // stored without the reset prefix

  std::size_t total_steps() const;
};

struct TransitionCounts {
  std::uint32_t m = 0;
  SparseMat<std::uint64_t> entries;
  std::vector<std::uint64_t> row_sums;

  std::uint64_t total() const;
};

StateSpace build_state_space(const std::vector<RawTrail>& raw_trails, bool reset);

// Indexes raw trails against a prebuilt state space.
TrailCorpus index_trails(const std::vector<RawTrail>& raw_trails, StateSpace space);

// Convenience: build_state_space + index_trails.
TrailCorpus make_corpus(const std::vector<RawTrail>& raw_trails, bool reset);

// n_{i,j} over adjacent pairs of all trails. With reset, each trail is
// prepended with the reset state, adding one reset->first transition per
// trail; reset must match the corpus state space.
TransitionCounts count_transitions(const TrailCorpus& corpus, bool reset);

// One trail per line, tab-separated tokens, '#' lines ignored.
std::vector<RawTrail> read_trail_file(const std::string& path);
void write_trail_file(const std::string& path, const std::vector<RawTrail>& trails);

// TSV triplets "i<TAB>j<TAB>count" with header "m=<int>".
void write_counts_tsv(const std::string& path, const TransitionCounts& counts);

// Order-independent 64-bit hash of the count triplets; used to guard against
// Bayes factors across different datasets.
std::uint64_t fingerprint(const TransitionCounts& counts);

}  // namespace hyptrails
