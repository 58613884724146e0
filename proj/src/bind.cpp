#include "bind/bind.hpp"

#include <algorithm>

#include "bind/kernels.hpp"

namespace bind {

BinaryMatrix PatternFactors::uv() const {
  MatrixBuilder b(m, n);
  for (const PatternSupport& p : patterns)
    for (std::size_t i : p.rows)
      for (std::size_t j : p.cols) b.set(i, j);
  return std::move(b).build();
}

std::size_t BindResult::selected_rows() const {
  return static_cast<std::size_t>(
      std::count(row_ind.begin(), row_ind.end(), std::uint8_t{1}));
}

std::size_t BindResult::selected_cols() const {
  return static_cast<std::size_t>(
      std::count(col_ind.begin(), col_ind.end(), std::uint8_t{1}));
}

namespace {

std::vector<std::uint8_t> threshold(const std::vector<ShiftWeight>& weights,
                                    double tau, WeightScale scale) {
  std::vector<std::uint8_t> ind(weights.size(), 0);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w =
        scale == WeightScale::raw ? weights[i].raw : weights[i].normalized;
    ind[i] = w > tau ? 1 : 0;
  }
  return ind;
}

std::array<RegionStats, 4> summarize_regions(const BinaryMatrix& x,
                                             const std::vector<std::uint8_t>& ri,
                                             const std::vector<std::uint8_t>& ci) {
  std::array<RegionStats, 4> regions{};
  const std::uint64_t sel_rows =
      static_cast<std::uint64_t>(std::count(ri.begin(), ri.end(), 1));
  const std::uint64_t sel_cols =
      static_cast<std::uint64_t>(std::count(ci.begin(), ci.end(), 1));
  const std::uint64_t rej_rows = x.rows() - sel_rows;
  const std::uint64_t rej_cols = x.cols() - sel_cols;
  regions[0].cells = sel_rows * sel_cols;
  regions[1].cells = sel_rows * rej_cols;
  regions[2].cells = rej_rows * sel_cols;
  regions[3].cells = rej_rows * rej_cols;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    std::uint64_t in_sel_cols = 0;
    x.for_each_one_in_row(i, [&](std::size_t j) { in_sel_cols += ci[j]; });
    const std::uint64_t row_ones = x.row_sums()[i];
    if (ri[i]) {
      regions[0].ones += in_sel_cols;
      regions[1].ones += row_ones - in_sel_cols;
    } else {
      regions[2].ones += in_sel_cols;
      regions[3].ones += row_ones - in_sel_cols;
    }
  }
  for (RegionStats& r : regions)
    r.density = r.cells > 0 ? static_cast<double>(r.ones) / r.cells : 0.0;
  return regions;
}

}  // namespace

BindResult denoise(const BinaryMatrix& x, const DenoiseOptions& options) {
  BindResult res;
  res.tau = options.tau;
  res.scale = options.scale;
  res.axis = options.axis;
  res.weights = all_weights(x, options.weights);

  res.row_ind = threshold(res.weights.row, options.tau, options.scale);
  res.col_ind = threshold(res.weights.col, options.tau, options.scale);
  if (options.axis == DenoiseAxis::row_only)
    res.col_ind.assign(x.cols(), 1);
  else if (options.axis == DenoiseAxis::col_only)
    res.row_ind.assign(x.rows(), 1);

  res.degenerate = res.selected_rows() == 0 || res.selected_cols() == 0;
  res.x_use = hadamard_mask(x, res.row_ind, res.col_ind);
  res.regions = summarize_regions(x, res.row_ind, res.col_ind);
  return res;
}

PipelineResult run_pipeline(const BinaryMatrix& x, const DenoiseOptions& options,
                            const Detector& detector, std::size_t rank) {
  BindResult denoised = denoise(x, options);
  try {
    PatternFactors factors = detector(denoised.x_use, rank);
    return {std::move(factors), std::move(denoised)};
  } catch (const std::exception& e) {
    throw PipelineError(std::string("detector failed: ") + e.what(),
                        std::move(denoised));
  }
}

}  // namespace bind
