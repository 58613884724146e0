#include "bind/detect.hpp"

#include <algorithm>
#include <stdexcept>

#include "bind/kernels.hpp"

namespace bind {

namespace {

// Mutable working copy of the residual matrix, word-packed like BinaryMatrix.
struct Residual {
  std::size_t m, n, wpr;
  std::vector<std::uint64_t> bits;

  explicit Residual(const BinaryMatrix& x)
      : m(x.rows()), n(x.cols()), wpr(x.words_per_row()),
        bits(x.words().begin(), x.words().end()) {}

  std::span<const std::uint64_t> row(std::size_t i) const {
    return {bits.data() + i * wpr, wpr};
  }
  bool get(std::size_t i, std::size_t j) const {
    return (bits[i * wpr + j / 64] >> (j % 64)) & 1u;
  }
  void clear(std::size_t i, std::size_t j) {
    bits[i * wpr + j / 64] &= ~(std::uint64_t{1} << (j % 64));
  }

  std::vector<std::uint32_t> col_sums() const {
    std::vector<std::uint32_t> sums(n, 0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t w = 0; w < wpr; ++w) {
        std::uint64_t v = bits[i * wpr + w];
        while (v != 0) {
          sums[w * 64 + static_cast<unsigned>(__builtin_ctzll(v))]++;
          v &= v - 1;
        }
      }
    return sums;
  }

  std::uint64_t ones() const { return kernels::popcount(bits); }
};

std::vector<std::uint64_t> col_mask_of(const std::vector<std::uint8_t>& cols,
                                       std::size_t n, std::size_t wpr) {
  std::vector<std::uint64_t> mask(wpr, 0);
  for (std::size_t j = 0; j < n; ++j)
    if (cols[j]) mask[j / 64] |= std::uint64_t{1} << (j % 64);
  return mask;
}

}  // namespace

PatternFactors greedy_rank1(const BinaryMatrix& x, std::size_t rank,
                            const GreedyParams& params) {
  if (rank < 1) throw std::invalid_argument("greedy_rank1: rank must be >= 1");
  if (!(params.gamma > 0.0 && params.gamma <= 1.0))
    throw std::invalid_argument("greedy_rank1: gamma must be in (0,1]");

  PatternFactors out;
  out.m = x.rows();
  out.n = x.cols();

  Residual res(x);
  for (std::size_t l = 0; l < rank; ++l) {
    if (res.ones() == 0) break;

    // Seed: densest remaining column, lowest index on ties.
    const std::vector<std::uint32_t> csums = res.col_sums();
    const std::size_t seed_col = static_cast<std::size_t>(
        std::max_element(csums.begin(), csums.end()) - csums.begin());
    if (csums[seed_col] == 0) break;

    std::vector<std::uint8_t> rows(res.m, 0), cols(res.n, 0);
    cols[seed_col] = 1;
    for (std::size_t i = 0; i < res.m; ++i) rows[i] = res.get(i, seed_col);

    for (std::size_t iter = 0; iter < params.max_alternations; ++iter) {
      // Columns covered ≥ gamma by the current row set.
      std::size_t n_rows =
          static_cast<std::size_t>(std::count(rows.begin(), rows.end(), 1));
      if (n_rows == 0) break;
      std::vector<std::uint32_t> cover(res.n, 0);
      for (std::size_t i = 0; i < res.m; ++i) {
        if (!rows[i]) continue;
        for (std::size_t w = 0; w < res.wpr; ++w) {
          std::uint64_t v = res.row(i)[w];
          while (v != 0) {
            cover[w * 64 + static_cast<unsigned>(__builtin_ctzll(v))]++;
            v &= v - 1;
          }
        }
      }
      std::vector<std::uint8_t> new_cols(res.n, 0);
      for (std::size_t j = 0; j < res.n; ++j)
        new_cols[j] = cover[j] >= params.gamma * static_cast<double>(n_rows);

      // Rows covering ≥ gamma of the new column set.
      const std::size_t new_n_cols = static_cast<std::size_t>(
          std::count(new_cols.begin(), new_cols.end(), 1));
      if (new_n_cols == 0) break;
      const std::vector<std::uint64_t> cmask =
          col_mask_of(new_cols, res.n, res.wpr);
      std::vector<std::uint8_t> new_rows(res.m, 0);
      for (std::size_t i = 0; i < res.m; ++i) {
        const std::uint64_t overlap = kernels::and_popcount(res.row(i), cmask);
        new_rows[i] = overlap >= params.gamma * static_cast<double>(new_n_cols);
      }

      const bool stable = new_rows == rows && new_cols == cols;
      rows = std::move(new_rows);
      cols = std::move(new_cols);
      if (stable) break;
    }

    PatternSupport p;
    for (std::size_t i = 0; i < res.m; ++i)
      if (rows[i]) p.rows.push_back(i);
    for (std::size_t j = 0; j < res.n; ++j)
      if (cols[j]) p.cols.push_back(j);
    if (p.rows.empty() || p.cols.empty()) break;  // nothing coherent left

    for (std::size_t i : p.rows)
      for (std::size_t j : p.cols)
        if (res.get(i, j)) res.clear(i, j);
    out.patterns.push_back(std::move(p));
  }
  return out;
}

Detector make_greedy_detector(const GreedyParams& params) {
  return [params](const BinaryMatrix& x, std::size_t rank) {
    if (x.ones() == 0) {
      PatternFactors empty;
      empty.m = x.rows();
      empty.n = x.cols();
      return empty;
    }
    return greedy_rank1(x, rank, params);
  };
}

}  // namespace bind
