#include "bind/quantile_shift.hpp"

#include <algorithm>

#include "bind/rng.hpp"

namespace bind {

namespace {

constexpr std::uint64_t kRowStream = 0x726f77ULL;  // "row"
constexpr std::uint64_t kColStream = 0x636f6cULL;  // "col"

std::size_t default_mc_samples(const BinaryMatrix& x) {
  return 10 * std::max(x.rows(), x.cols());
}

WeightedDistribution build_background(std::span<const double> opposing,
                                      const BinaryMatrix& x, Axis axis,
                                      std::size_t index,
                                      const WeightOptions& options) {
  if (options.mode == QuantileMode::deterministic)
    return WeightedDistribution::from_margins(opposing);
  const std::uint64_t stream = axis == Axis::row ? kRowStream : kColStream;
  const std::size_t n =
      options.mc_samples > 0 ? options.mc_samples : default_mc_samples(x);
  return WeightedDistribution::from_margins_sampled(
      opposing, Rng::keyed(options.seed, stream, index).next_u64(), n);
}

ShiftWeight weigh_sorted_hits(const std::vector<double>& sorted_hits,
                              const WeightedDistribution& background,
                              double delta, std::size_t line_len,
                              bool keep_contributions) {
  std::vector<ShiftTermInput> terms(sorted_hits.size());
  for (std::size_t i = 0; i < sorted_hits.size(); ++i)
    terms[i] = {sorted_hits[i], sorted_hits[i]};
  return shift_weight_core(terms, background, delta, line_len,
                           keep_contributions);
}

}  // namespace

double denominator_floor(const BinaryMatrix& x, Axis axis) {
  // Opposing margins have resolution 1/m (rows) or 1/n (columns); a
  // half-count floor can never distort a non-degenerate term.
  return axis == Axis::row ? 1.0 / (2.0 * static_cast<double>(x.rows()))
                           : 1.0 / (2.0 * static_cast<double>(x.cols()));
}

ShiftWeight shift_weight_core(std::span<const ShiftTermInput> terms,
                              const WeightedDistribution& background,
                              double delta, std::size_t line_len,
                              bool keep_contributions) {
  ShiftWeight w;
  w.hit_count = terms.size();
  if (background.degenerate()) {
    w.degenerate_background = true;
    return w;
  }
  const double a = static_cast<double>(terms.size());
  for (std::size_t j = 1; j <= terms.size(); ++j) {
    const ShiftTermInput& t = terms[j - 1];
    const double q = background.quantile(static_cast<double>(j) / a);
    double term = 0.0;
    if (t.value > q)
      term = (t.value - q) / std::max(1.0 - t.margin, delta);
    w.raw += term;
    if (keep_contributions) w.contributions.push_back({j, t.value, q, term});
  }
  if (line_len > 0) w.normalized = w.raw / static_cast<double>(line_len);
  return w;
}

ShiftWeight line_weight(const BinaryMatrix& x, Axis axis, std::size_t index,
                        std::span<const double> opposing_margins,
                        const WeightOptions& options) {
  const HitProfile hits = hit_profile(x, axis, index, opposing_margins);
  const WeightedDistribution background =
      build_background(opposing_margins, x, axis, index, options);
  const std::size_t line_len = axis == Axis::row ? x.cols() : x.rows();
  return weigh_sorted_hits(hits.hits, background, denominator_floor(x, axis),
                           line_len, options.keep_contributions);
}

WeightVectors all_weights(const BinaryMatrix& x, const WeightOptions& options) {
  const MarginProfile p = margins(x);
  WeightVectors out;
  out.row.resize(x.rows());
  out.col.resize(x.cols());

  const bool deterministic = options.mode == QuantileMode::deterministic;
  const double row_delta = denominator_floor(x, Axis::row);
  const double col_delta = denominator_floor(x, Axis::col);

  // Deterministic mode shares one distribution per axis across all lines;
  // Monte Carlo mode samples per line under a derived seed.
  WeightedDistribution f_col, f_row;
  if (deterministic) {
    f_col = WeightedDistribution::from_margins(p.col);
    f_row = WeightedDistribution::from_margins(p.row);
  }

  std::vector<double> hits;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    hits.clear();
    x.for_each_one_in_row(i, [&](std::size_t j) { hits.push_back(p.col[j]); });
    std::sort(hits.begin(), hits.end());
    if (!deterministic) f_col = build_background(p.col, x, Axis::row, i, options);
    out.row[i] = weigh_sorted_hits(hits, f_col, row_delta, x.cols(),
                                   options.keep_contributions);
  }

  // Column hits come off the transpose so extraction stays word-sequential.
  const BinaryMatrix xt = x.transposed();
  for (std::size_t j = 0; j < x.cols(); ++j) {
    hits.clear();
    xt.for_each_one_in_row(j, [&](std::size_t i) { hits.push_back(p.row[i]); });
    std::sort(hits.begin(), hits.end());
    if (!deterministic) f_row = build_background(p.row, x, Axis::col, j, options);
    out.col[j] = weigh_sorted_hits(hits, f_row, col_delta, x.rows(),
                                   options.keep_contributions);
  }
  return out;
}

}  // namespace bind
