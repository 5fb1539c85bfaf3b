#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyptrails/hypothesis.hpp"
#include "hyptrails/sparse.hpp"
#include "hyptrails/trails.hpp"

namespace hyptrails {

// Dirichlet hyperparameters: alpha_{i,j} = flat_offset + extra(i,j).
// After trial_roulette, sum(extra) == k * m^2 exactly.
struct Prior {
  std::uint32_t m = 0;
  std::uint64_t flat_offset = 1;
  SparseMat<std::uint64_t> extra;

  // provenance, carried into reports
  std::uint64_t k = 0;
  std::uint64_t seed = 0;
  std::string reset_policy;

  double alpha(std::uint32_t i, std::uint32_t j) const {
    return static_cast<double>(flat_offset + extra.get(i, j));
  }
  std::uint64_t informative_chips() const;
  std::vector<std::uint64_t> row_extra_sums() const { return extra.row_sums(); }
};

struct ChipBudget {
  std::uint64_t total;        // beta = m^2 + k*m^2
  std::uint64_t flat;         // m^2
  std::uint64_t informative;  // k*m^2
};
ChipBudget chip_budget(std::uint32_t m, std::uint64_t k);

// How the reset row of Q is filled when a hypothesis built over the
// non-reset states is embedded into a reset-augmented state space.
enum class ResetRowPolicy { uniform_row, zero_row };
const char* reset_policy_name(ResetRowPolicy p);

// Embed an (m-1)-state hypothesis into the m-state space whose last index is
// the reset state. The reset column stays absent; the reset row is either
// filled uniformly with the minimum positive q or left empty.
HypothesisMatrix embed_reset(const HypothesisMatrix& h, std::uint32_t m_full,
                             ResetRowPolicy policy);

// Introspection of a trial_roulette run (used for verification and reports).
struct RouletteTrace {
  double l1_norm = 0.0;
  SparseMat<double> scaled;            // Q / ||Q||_1 * k*m^2
  std::uint64_t floor_chips = 0;       // chips placed by the floor pass
  std::uint64_t remainder_chips = 0;   // chips placed by the remainder pass
  std::vector<std::uint64_t> remainder_cells;  // flat keys, may repeat on overflow
};

// Chip distribution over Q: one flat chip per cell, then k*m^2 informative
// chips: floors of the scaled matrix first, then one chip per cell down the
// fractional-part ranking (ties permuted uniformly at random by `seed`).
// Should the budget outlast the stored cells, assignment cycles down the
// same ranking again so conservation stays exact.
Prior trial_roulette(const HypothesisMatrix& q, std::uint64_t k, std::uint64_t seed,
                     RouletteTrace* trace = nullptr);

// Sanity-check toy priors; c is stored in the prior's k slot.
Prior uniform_toy_prior(std::uint32_t m, std::uint64_t c);
Prior aligned_toy_prior(const TransitionCounts& n, std::uint64_t c);
Prior opposing_toy_prior(const TransitionCounts& n, std::uint64_t c);

// TSV "i<TAB>j<TAB>alpha" for cells above flat_offset,
// header "m=<int> flat=<int> k=<int> seed=<u64>".
void write_prior_tsv(const std::string& path, const Prior& prior);

}  // namespace hyptrails
