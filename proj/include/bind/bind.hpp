#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "bind/binmat.hpp"
#include "bind/quantile_shift.hpp"

namespace bind {

/// Row/column support of one rank-1 pattern.
struct PatternSupport {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

/// Factor matrices U (m×k) and V (k×n), stored as per-pattern supports.
struct PatternFactors {
  std::size_t m = 0, n = 0;
  std::vector<PatternSupport> patterns;

  std::size_t rank() const { return patterns.size(); }

  /// The boolean product UV as a matrix (all-zero when rank is 0).
  BinaryMatrix uv() const;
};

/// Detector contract: given a (possibly masked) matrix and a requested rank,
/// return factor supports. Must be pure given its inputs and tolerate all-zero
/// input by returning empty factors.
using Detector =
    std::function<PatternFactors(const BinaryMatrix& x, std::size_t rank)>;

enum class DenoiseAxis { both, row_only, col_only };

/// Which weight scale the threshold τ applies to. `raw` is the default and is
/// the scale on which the recommended τ range 0.05–0.1 operates; `normalized`
/// divides by the line length first.
enum class WeightScale { raw, normalized };

struct DenoiseOptions {
  double tau = 0.1;
  DenoiseAxis axis = DenoiseAxis::both;
  WeightScale scale = WeightScale::raw;
  WeightOptions weights;
};

struct RegionStats {
  std::uint64_t ones = 0;
  std::uint64_t cells = 0;
  double density = 0.0;  // ones/cells, 0 for an empty region
};

/// Everything Algorithm 2 produces before the detector runs: weights, the
/// indicator vectors I^r/I^c, the masked matrix, and the four-region
/// partition (1: selected×selected, 2: selected×rejected,
/// 3: rejected×selected, 4: rejected×rejected).
struct BindResult {
  WeightVectors weights;
  double tau = 0.0;
  WeightScale scale = WeightScale::raw;
  DenoiseAxis axis = DenoiseAxis::both;
  std::vector<std::uint8_t> row_ind, col_ind;
  BinaryMatrix x_use;
  std::array<RegionStats, 4> regions{};
  bool degenerate = false;  // no row or no column passed the threshold

  std::size_t selected_rows() const;
  std::size_t selected_cols() const;
};

/// Threshold the weights at τ (strict >), mask X with the resulting
/// indicators and summarize the four regions. Degenerate selections are
/// flagged, never fatal.
BindResult denoise(const BinaryMatrix& x, const DenoiseOptions& options = {});

/// Detector failure surfaced with the denoising result attached.
class PipelineError : public std::runtime_error {
 public:
  PipelineError(const std::string& what, BindResult result)
      : std::runtime_error(what), denoised(std::move(result)) {}
  BindResult denoised;
};

struct PipelineResult {
  PatternFactors factors;
  BindResult denoised;
};

/// Algorithm 2 end to end: denoise, then hand X_use (full original
/// dimensions) to the detector.
PipelineResult run_pipeline(const BinaryMatrix& x, const DenoiseOptions& options,
                            const Detector& detector, std::size_t rank);

}  // namespace bind
