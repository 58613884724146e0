#include "bind/background.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "bind/rng.hpp"

namespace bind {

MarginProfile margins(const BinaryMatrix& x) {
  MarginProfile p;
  p.row.resize(x.rows());
  p.col.resize(x.cols());
  const double n = static_cast<double>(x.cols());
  const double m = static_cast<double>(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) p.row[i] = x.row_sums()[i] / n;
  for (std::size_t j = 0; j < x.cols(); ++j) p.col[j] = x.col_sums()[j] / m;
  return p;
}

namespace {

void validate_margins(std::span<const double> margins) {
  for (double v : margins)
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("margin entry outside [0,1]");
}

}  // namespace

WeightedDistribution WeightedDistribution::from_margins(
    std::span<const double> margins) {
  validate_margins(margins);
  // Equal rationals from the sum caches produce identical doubles, so exact
  // equality is the right grouping here.
  std::map<double, double> mass;
  for (double v : margins)
    if (v > 0.0) mass[v] += v;

  WeightedDistribution d;
  for (const auto& [v, w] : mass) {
    d.values_.push_back(v);
    d.total_weight_ += w;
    d.cdf_.push_back(d.total_weight_);
  }
  if (!d.values_.empty()) {
    for (double& c : d.cdf_) c /= d.total_weight_;
    d.cdf_.back() = 1.0;
  }
  return d;
}

WeightedDistribution WeightedDistribution::from_margins_sampled(
    std::span<const double> margins, std::uint64_t seed, std::size_t n_samples) {
  validate_margins(margins);
  if (n_samples == 0)
    throw std::invalid_argument("monte carlo distribution needs n_samples > 0");

  std::vector<double> positive;
  positive.reserve(margins.size());
  double total = 0.0;
  for (double v : margins)
    if (v > 0.0) {
      positive.push_back(v);
      total += v;
    }
  WeightedDistribution d;
  if (positive.empty()) return d;

  std::sort(positive.begin(), positive.end());
  std::vector<double> cum(positive.size());
  double run = 0.0;
  for (std::size_t i = 0; i < positive.size(); ++i) {
    run += positive[i];
    cum[i] = run;
  }

  Rng rng = Rng::keyed(seed, 0x6d635f646973ULL);  // distribution stream
  std::map<double, std::size_t> counts;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const double u = rng.uniform01() * total;
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    const std::size_t idx =
        std::min<std::size_t>(it - cum.begin(), positive.size() - 1);
    ++counts[positive[idx]];
  }
  std::size_t seen = 0;
  for (const auto& [v, c] : counts) {
    seen += c;
    d.values_.push_back(v);
    d.cdf_.push_back(static_cast<double>(seen) / n_samples);
  }
  d.cdf_.back() = 1.0;
  d.total_weight_ = total;
  return d;
}

double WeightedDistribution::quantile(double p) const {
  if (degenerate())
    throw std::domain_error("quantile of a degenerate distribution");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("quantile argument outside [0,1]");
  const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), p);
  const std::size_t idx = std::min<std::size_t>(it - cdf_.begin(), values_.size() - 1);
  return values_[idx];
}

HitProfile hit_profile(const BinaryMatrix& x, Axis axis, std::size_t index,
                       std::span<const double> opposing_margins) {
  HitProfile h;
  h.axis = axis;
  h.index = index;
  if (axis == Axis::row) {
    if (index >= x.rows()) throw std::out_of_range("hit_profile: row index");
    if (opposing_margins.size() != x.cols())
      throw std::invalid_argument("hit_profile: opposing margin length");
    h.hits.reserve(x.row_sums()[index]);
    x.for_each_one_in_row(
        index, [&](std::size_t j) { h.hits.push_back(opposing_margins[j]); });
  } else {
    if (index >= x.cols()) throw std::out_of_range("hit_profile: column index");
    if (opposing_margins.size() != x.rows())
      throw std::invalid_argument("hit_profile: opposing margin length");
    h.hits.reserve(x.col_sums()[index]);
    for (std::size_t i = 0; i < x.rows(); ++i)
      if (x.get(i, index)) h.hits.push_back(opposing_margins[i]);
  }
  std::sort(h.hits.begin(), h.hits.end());
  h.count = h.hits.size();
  return h;
}

}  // namespace bind
