#include "hyptrails/elicitation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "hyptrails/error.hpp"
#include "hyptrails/rng.hpp"

namespace hyptrails {

std::uint64_t Prior::informative_chips() const {
  std::uint64_t n = 0;
  for (const auto& [k_, v] : extra.cells) n += v;
  return n;
}

ChipBudget chip_budget(std::uint32_t m, std::uint64_t k) {
  const std::uint64_t m2 = static_cast<std::uint64_t>(m) * m;
  return {m2 + k * m2, m2, k * m2};
}

const char* reset_policy_name(ResetRowPolicy p) {
  return p == ResetRowPolicy::uniform_row ? "uniform-row" : "zero-row";
}

HypothesisMatrix embed_reset(const HypothesisMatrix& h, std::uint32_t m_full,
                             ResetRowPolicy policy) {
  if (h.m + 1 != m_full)
    throw DimensionError("embed_reset: hypothesis over " + std::to_string(h.m) +
                         " states cannot embed into " + std::to_string(m_full));
  const std::uint32_t reset = m_full - 1;
  HypothesisMatrix full(m_full);
  full.diagonal = h.diagonal;
  double q_min = 0.0;
  for (const auto& [key, v] : h.q.cells) {
    const auto i = SparseMat<double>::row_of(key, h.m);
    const auto j = SparseMat<double>::col_of(key, h.m);
    full.q.set(i, j, v);
    if (q_min == 0.0 || v < q_min) q_min = v;
  }
  if (policy == ResetRowPolicy::uniform_row && q_min > 0.0) {
    for (std::uint32_t j = 0; j < reset; ++j) full.q.set(reset, j, q_min);
  }
  return full;
}

Prior trial_roulette(const HypothesisMatrix& q, std::uint64_t k, std::uint64_t seed,
                     RouletteTrace* trace) {
  Prior prior;
  prior.m = q.m;
  prior.flat_offset = 1;
  prior.extra = SparseMat<std::uint64_t>(q.m);
  prior.k = k;
  prior.seed = seed;
  if (k == 0) return prior;  // flat prior, uniform over the simplex

  if (q.q.cells.empty())
    throw DegenerateHypothesis("trial roulette with k > 0 needs at least one positive belief");

  double l1 = 0.0;
  for (const auto& [key, v] : q.q.cells) {
    if (!std::isfinite(v) || v <= 0.0)
      throw InvalidArgument("hypothesis matrix entries must be positive and finite");
    l1 += v;
  }

  const std::uint64_t budget = chip_budget(q.m, k).informative;
  if (trace) {
    trace->l1_norm = l1;
    trace->scaled = SparseMat<double>(q.m);
    trace->remainder_cells.clear();
  }

  // Floor pass. Scaling goes through the normalized value v/l1 so that any
  // exactly-representable rescaling of Q produces bit-identical results.
  struct Cell {
    std::uint64_t key;
    double frac;
    std::uint64_t tiebreak;
  };
  std::vector<Cell> cells;
  cells.reserve(q.q.cells.size());
  std::mt19937_64 rng(splitmix64(seed));
  std::uint64_t floor_sum = 0;
  for (const auto& [key, v] : q.q.cells) {
    const double scaled = (v / l1) * static_cast<double>(budget);
    const double fl = std::floor(scaled);
    const auto chips = static_cast<std::uint64_t>(fl);
    if (chips > 0) prior.extra.cells[key] = chips;
    floor_sum += chips;
    if (trace) trace->scaled.cells[key] = scaled;
    cells.push_back({key, scaled - fl, rng()});
  }

  if (floor_sum > budget) {
    // Rounding pushed the floors past the budget; reclaim from the
    // smallest scaled values upward to keep conservation exact.
    std::vector<std::uint64_t> order;
    for (const auto& [key, v] : prior.extra.cells) order.push_back(key);
    std::sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
      return prior.extra.cells[a] < prior.extra.cells[b];
    });
    for (auto key : order) {
      if (floor_sum == budget) break;
      auto& c = prior.extra.cells[key];
      if (c > 0) {
        --c;
        --floor_sum;
        if (c == 0) prior.extra.cells.erase(key);
      }
    }
  }
  if (trace) trace->floor_chips = floor_sum;

  // Remainder pass: descending fractional parts, random permutation within
  // ties, cycling down the ranking if the budget outlasts the cells.
  std::uint64_t remaining = budget - floor_sum;
  if (remaining > 0) {
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
      if (a.frac != b.frac) return a.frac > b.frac;
      if (a.tiebreak != b.tiebreak) return a.tiebreak < b.tiebreak;
      return a.key < b.key;
    });
    for (std::uint64_t t = 0; t < remaining; ++t) {
      const auto& cell = cells[t % cells.size()];
      prior.extra.cells[cell.key] += 1;
      if (trace) trace->remainder_cells.push_back(cell.key);
    }
  }
  if (trace) trace->remainder_chips = remaining;
  return prior;
}

Prior uniform_toy_prior(std::uint32_t m, std::uint64_t c) {
  Prior prior;
  prior.m = m;
  prior.flat_offset = 1 + c;
  prior.extra = SparseMat<std::uint64_t>(m);
  prior.k = c;
  return prior;
}

Prior aligned_toy_prior(const TransitionCounts& n, std::uint64_t c) {
  Prior prior;
  prior.m = n.m;
  prior.flat_offset = 1;
  prior.extra = SparseMat<std::uint64_t>(n.m);
  prior.k = c;
  if (c > 0)
    for (const auto& [key, v] : n.entries.cells) {
      (void)v;
      prior.extra.cells[key] = c;
    }
  return prior;
}

Prior opposing_toy_prior(const TransitionCounts& n, std::uint64_t c) {
  Prior prior;
  prior.m = n.m;
  prior.flat_offset = 1;
  prior.extra = SparseMat<std::uint64_t>(n.m);
  prior.k = c;
  if (c > 0) {
    const std::uint64_t m2 = static_cast<std::uint64_t>(n.m) * n.m;
    auto it = n.entries.cells.begin();
    for (std::uint64_t key = 0; key < m2; ++key) {
      while (it != n.entries.cells.end() && it->first < key) ++it;
      const bool observed = it != n.entries.cells.end() && it->first == key;
      if (!observed) prior.extra.cells.emplace_hint(prior.extra.cells.end(), key, c);
    }
  }
  return prior;
}

void write_prior_tsv(const std::string& path, const Prior& prior) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write prior file: " + path);
  out << "m=" << prior.m << " flat=" << prior.flat_offset << " k=" << prior.k
      << " seed=" << prior.seed << '\n';
  for (const auto& [key, v] : prior.extra.cells) {
    out << SparseMat<std::uint64_t>::row_of(key, prior.m) << '\t'
        << SparseMat<std::uint64_t>::col_of(key, prior.m) << '\t'
        << (prior.flat_offset + v) << '\n';
  }
}

}  // namespace hyptrails
