#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bind/binmat.hpp"

namespace bind {

enum class Axis { row, col };

/// Estimated line-wise probabilities of 1: p̂ʳᵢ = |Xᵢ:|/n, p̂ᶜⱼ = |X:ⱼ|/m.
struct MarginProfile {
  std::vector<double> row;
  std::vector<double> col;
};

MarginProfile margins(const BinaryMatrix& x);

/// Weighted empirical distribution over margin values, where each entry
/// enters with mass proportional to its own value (self-weighted sampling).
/// Zero entries carry zero mass and are excluded. The quantile is the
/// generalized inverse of the weighted CDF: Q(p) = min{ v : F(v) ≥ p }.
class WeightedDistribution {
 public:
  /// Deterministic closed form of the self-weighted sampling step.
  static WeightedDistribution from_margins(std::span<const double> margins);

  /// Monte Carlo form: n_samples draws with probability proportional to the
  /// value, under the given seed; each draw then carries mass 1/n_samples.
  static WeightedDistribution from_margins_sampled(std::span<const double> margins,
                                                   std::uint64_t seed,
                                                   std::size_t n_samples);

  /// True when the margin vector had no positive mass.
  bool degenerate() const { return values_.empty(); }

  double total_weight() const { return total_weight_; }
  std::span<const double> values() const { return values_; }
  std::span<const double> cdf() const { return cdf_; }

  double quantile(double p) const;

 private:
  std::vector<double> values_;  // distinct, ascending
  std::vector<double> cdf_;     // normalized running mass, last entry 1
  double total_weight_ = 0.0;
};

/// Margin values of the opposing axis at the 1-positions of one line,
/// sorted ascending. `count` is the line sum.
struct HitProfile {
  Axis axis;
  std::size_t index = 0;
  std::vector<double> hits;
  std::size_t count = 0;
};

HitProfile hit_profile(const BinaryMatrix& x, Axis axis, std::size_t index,
                       std::span<const double> opposing_margins);

}  // namespace bind
