#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyptrails/elicitation.hpp"
#include "hyptrails/trails.hpp"

namespace hyptrails {

struct LogEvidence {
  double value = 0.0;  // natural log of P(D|H)
  std::string hypothesis;
  std::uint64_t k = 0;
  std::uint64_t data_fingerprint = 0;
  std::uint64_t flat_offset = 1;
};

// Sparse evaluation of the Dirichlet-multinomial marginal likelihood: rows
// without observed transitions contribute exactly zero, and within a row only
// cells with counts enter the per-cell sums (alpha-only cells cancel).
LogEvidence log_evidence(const TransitionCounts& n, const Prior& prior,
                         const std::string& label = "");

// ln B_{1,2} = ln E_1 - ln E_2; refuses mismatched k or data fingerprints.
double log_bayes_factor(const LogEvidence& e1, const LogEvidence& e2);

// Conventional strength bands over |2 ln B|: [0,2) negligible, [2,6) positive,
// [6,10) strong, >=10 decisive.
enum class Strength { negligible, positive, strong, decisive };
Strength interpret_strength(double log_b);
const char* strength_name(Strength s);

// Ordered equivalence classes (indices into the input), best evidence first.
// Adjacent hypotheses merge into one class while the gap to the class top
// stays below the significance band (2 ln B < 2).
struct HypothesisRanking {
  std::vector<std::vector<std::size_t>> classes;
};
HypothesisRanking rank_hypotheses(const std::vector<LogEvidence>& evidences);

}  // namespace hyptrails
