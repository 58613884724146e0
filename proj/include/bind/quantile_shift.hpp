#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bind/background.hpp"
#include "bind/binmat.hpp"

namespace bind {

/// One hit entering the shift sum. `value` is compared against the background
/// quantile; `margin` drives the denominator 1 − margin. In the standard
/// pipeline the two coincide (the hit value *is* the opposing margin); they
/// differ only in diagnostic setups that elevate hit values per-cell.
struct ShiftTermInput {
  double value;
  double margin;
};

struct ShiftContribution {
  std::size_t rank;  // 1-based position in the sorted hits
  double hit;
  double quantile;
  double term;  // 0 when the hit does not strictly exceed the quantile
};

/// Significance weight of one line: the sum of scaled positive shifts of its
/// hit quantiles over the background quantiles.
struct ShiftWeight {
  double raw = 0.0;
  double normalized = 0.0;  // raw / line length
  std::size_t hit_count = 0;
  bool degenerate_background = false;
  std::vector<ShiftContribution> contributions;  // filled on request
};

enum class QuantileMode { deterministic, monte_carlo };

struct WeightOptions {
  QuantileMode mode = QuantileMode::deterministic;
  std::uint64_t seed = 0;       // required for monte_carlo
  std::size_t mc_samples = 0;   // 0 → 10·max(m,n)
  bool keep_contributions = false;
};

/// Core of the shift computation, shared by every caller:
///   s = Σ over ranks j=1..a with valueⱼ > Q(j/a) of
///       (valueⱼ − Q(j/a)) / max(1 − marginⱼ, delta)
/// `terms` must be sorted ascending by value. `line_len` is the
/// normalization divisor.
ShiftWeight shift_weight_core(std::span<const ShiftTermInput> terms,
                              const WeightedDistribution& background,
                              double delta, std::size_t line_len,
                              bool keep_contributions = false);

/// Weight of one row or column of X against the supplied opposing margins
/// (estimated margins in the standard pipeline; caller-supplied true
/// background margins in oracle setups).
ShiftWeight line_weight(const BinaryMatrix& x, Axis axis, std::size_t index,
                        std::span<const double> opposing_margins,
                        const WeightOptions& options = {});

struct WeightVectors {
  std::vector<ShiftWeight> row;
  std::vector<ShiftWeight> col;
};

/// Weights of every row and column; margins are estimated once from X and
/// shared across lines.
WeightVectors all_weights(const BinaryMatrix& x, const WeightOptions& options = {});

/// Denominator floor for lines on the given axis: half the resolution of the
/// opposing margin estimates (1/(2m) for rows, 1/(2n) for columns).
double denominator_floor(const BinaryMatrix& x, Axis axis);

}  // namespace bind
