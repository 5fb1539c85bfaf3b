#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace hyptrails {

// Row-major sparse matrix over a square m x m index space. Zero entries are
// absent by convention; iteration order is deterministic (sorted by flat key).
template <typename T>
struct SparseMat {
  std::uint32_t m = 0;
  std::map<std::uint64_t, T> cells;

  SparseMat() = default;
  explicit SparseMat(std::uint32_t dim) : m(dim) {}

  std::uint64_t key(std::uint32_t i, std::uint32_t j) const {
    return static_cast<std::uint64_t>(i) * m + j;
  }
  static std::uint32_t row_of(std::uint64_t k, std::uint32_t m) {
    return static_cast<std::uint32_t>(k / m);
  }
  static std::uint32_t col_of(std::uint64_t k, std::uint32_t m) {
    return static_cast<std::uint32_t>(k % m);
  }

  T get(std::uint32_t i, std::uint32_t j) const {
    auto it = cells.find(key(i, j));
    return it == cells.end() ? T{} : it->second;
  }
  void set(std::uint32_t i, std::uint32_t j, T v) { cells[key(i, j)] = v; }
  void add(std::uint32_t i, std::uint32_t j, T v) { cells[key(i, j)] += v; }

  std::size_t nnz() const { return cells.size(); }

  std::vector<T> row_sums() const {
    std::vector<T> sums(m, T{});
    for (const auto& [k, v] : cells) sums[row_of(k, m)] += v;
    return sums;
  }
};

}  // namespace hyptrails
