#include "hyptrails/evidence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hyptrails/error.hpp"

namespace hyptrails {

namespace {

// thread-safe log-gamma (std::lgamma writes the global signgam on glibc)
double log_gamma(double x) {
#if defined(__GLIBC__) || defined(__APPLE__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

}  // namespace

LogEvidence log_evidence(const TransitionCounts& n, const Prior& prior,
                         const std::string& label) {
  if (n.m != prior.m)
    throw DimensionError("log_evidence: counts over " + std::to_string(n.m) +
                         " states vs prior over " + std::to_string(prior.m));
  const double m = static_cast<double>(n.m);
  const auto extra_rows = prior.row_extra_sums();

  double value = 0.0;
  // Rows without observed transitions contribute exactly zero; within a row,
  // cells with n = 0 cancel between the two per-cell lgamma sums.
  auto it = n.entries.cells.begin();
  for (std::uint32_t i = 0; i < n.m; ++i) {
    const std::uint64_t row_n = n.row_sums[i];
    const std::uint64_t row_end = static_cast<std::uint64_t>(i + 1) * n.m;
    if (row_n == 0) {
      while (it != n.entries.cells.end() && it->first < row_end) ++it;
      continue;
    }
    const double alpha_row = m * static_cast<double>(prior.flat_offset) +
                             static_cast<double>(extra_rows[i]);
    double row_value = log_gamma(alpha_row) - log_gamma(static_cast<double>(row_n) + alpha_row);
    for (; it != n.entries.cells.end() && it->first < row_end; ++it) {
      const double alpha = prior.flat_offset + prior.extra.get(
          SparseMat<std::uint64_t>::row_of(it->first, n.m),
          SparseMat<std::uint64_t>::col_of(it->first, n.m));
      row_value += log_gamma(static_cast<double>(it->second) + alpha) - log_gamma(alpha);
    }
    value += row_value;
  }

  LogEvidence e;
  e.value = value;
  e.hypothesis = label;
  e.k = prior.k;
  e.data_fingerprint = fingerprint(n);
  e.flat_offset = prior.flat_offset;
  return e;
}

double log_bayes_factor(const LogEvidence& e1, const LogEvidence& e2) {
  if (e1.data_fingerprint != e2.data_fingerprint)
    throw InvalidArgument("Bayes factor across different datasets (fingerprint mismatch)");
  if (e1.k != e2.k)
    throw InvalidArgument("Bayes factor across different k values (" +
                          std::to_string(e1.k) + " vs " + std::to_string(e2.k) + ")");
  return e1.value - e2.value;
}

Strength interpret_strength(double log_b) {
  const double two_ln_b = std::abs(2.0 * log_b);
  if (two_ln_b < 2.0) return Strength::negligible;
  if (two_ln_b < 6.0) return Strength::positive;
  if (two_ln_b < 10.0) return Strength::strong;
  return Strength::decisive;
}

const char* strength_name(Strength s) {
  switch (s) {
    case Strength::negligible: return "negligible";
    case Strength::positive: return "positive";
    case Strength::strong: return "strong";
    case Strength::decisive: return "decisive";
  }
  return "?";
}

HypothesisRanking rank_hypotheses(const std::vector<LogEvidence>& evidences) {
  if (evidences.empty()) throw InvalidArgument("rank_hypotheses: empty input");
  for (std::size_t i = 1; i < evidences.size(); ++i)
    (void)log_bayes_factor(evidences[0], evidences[i]);  // enforces shared data and k

  std::vector<std::size_t> order(evidences.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (evidences[a].value != evidences[b].value)
      return evidences[a].value > evidences[b].value;
    return evidences[a].hypothesis < evidences[b].hypothesis;
  });

  HypothesisRanking ranking;
  double class_top = 0.0;
  for (std::size_t idx : order) {
    const double v = evidences[idx].value;
    if (ranking.classes.empty() ||
        interpret_strength(class_top - v) != Strength::negligible) {
      ranking.classes.push_back({idx});
      class_top = v;
    } else {
      ranking.classes.back().push_back(idx);
    }
  }
  return ranking;
}

}  // namespace hyptrails
