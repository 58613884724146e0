#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bind/bind.hpp"
#include "bind/binmat.hpp"

namespace bind {

/// One cell of the simulation grid: matrix size, square pattern size, number
/// of patterns, per-pattern keep probability p_l, background cap p (margins
/// are drawn from U[0.1, p)), symmetric flip rate p_0, and the stream seed.
struct ScenarioSpec {
  std::size_t m = 100;
  std::size_t n = 100;
  std::size_t pattern_size = 15;
  std::size_t k = 1;
  double p_l = 0.9;
  double background_cap = 0.5;
  double flip_rate = 0.0;
  std::uint64_t seed = 1;

  /// Diagnostic override: force every background margin to this value
  /// instead of drawing them (e.g. 0 for a noiseless limit).
  std::optional<double> background_override;

  /// Self-describing id, e.g. "s15_k1_pl0.9_p0.5_e0.05" (seed not included).
  std::string id() const;

  ScenarioSpec with_seed(std::uint64_t s) const {
    ScenarioSpec copy = *this;
    copy.seed = s;
    return copy;
  }
};

struct PlantedPattern {
  PatternSupport support;
  double p_l = 1.0;
};

/// Everything the generator knows: planted supports, drawn margins, and the
/// realized layers, kept so that evaluation and the layer-consistency checks
/// need no re-derivation.
struct GroundTruth {
  std::size_t m = 0, n = 0;
  std::vector<PlantedPattern> patterns;
  std::vector<double> row_margins, col_margins;  // p^{0,r}, p^{0,c}
  double flip_rate = 0.0;

  BinaryMatrix uv;        // UV support
  BinaryMatrix survived;  // UV after per-pattern dropout E'
  BinaryMatrix x0;        // background layer
  BinaryMatrix flips;     // E flip mask

  /// Expected pattern mass of a line: Σ_l 1(line ∈ pattern l)·p_l·|opposite support|.
  double expected_pattern_ones(Axis axis, std::size_t index) const;
};

struct SynthResult {
  BinaryMatrix x;
  GroundTruth truth;
};

/// Realize the model: background cells are Bernoulli(p⁰ᵣ·p⁰ᶜ), pattern cells
/// survive dropout with probability p_l, a cell is 1 if it survived or the
/// background fired, then every cell flips with probability p_0.
SynthResult generate(const ScenarioSpec& spec);

// Individual draw stages, exposed for the statistical harnesses that hold
// patterns fixed while resampling noise. `generate` is their composition.
void draw_margins(const ScenarioSpec& spec, std::vector<double>& row_margins,
                  std::vector<double>& col_margins);
std::vector<PlantedPattern> draw_patterns(const ScenarioSpec& spec);
BinaryMatrix draw_background(const ScenarioSpec& spec,
                             std::span<const double> row_margins,
                             std::span<const double> col_margins,
                             std::uint64_t redraw_index = 0);
BinaryMatrix draw_survivals(const ScenarioSpec& spec,
                            std::span<const PlantedPattern> patterns,
                            std::uint64_t redraw_index = 0);
BinaryMatrix draw_flips(const ScenarioSpec& spec, std::uint64_t redraw_index = 0);
BinaryMatrix compose_layers(const BinaryMatrix& survived, const BinaryMatrix& x0,
                            const BinaryMatrix& flips);

/// The full simulation grid: 3 sizes × 2 ranks × 3 p_l × 3 caps × 2 flip
/// rates = 108 scenarios, in that nesting order. Replicate r runs with
/// seed r (1-based).
std::vector<ScenarioSpec> full_grid();

// Flat key-value serialization for specs and ground-truth sidecars.
std::string spec_to_text(const ScenarioSpec& spec);
ScenarioSpec spec_from_text(const std::string& text);
std::string ground_truth_to_text(const GroundTruth& truth);
GroundTruth ground_truth_from_text(const std::string& text);

}  // namespace bind
