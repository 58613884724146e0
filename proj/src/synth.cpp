#include "bind/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "bind/rng.hpp"

namespace bind {

namespace {

constexpr std::uint64_t kMarginStream = 0x6d617267696eULL;   // "margin"
constexpr std::uint64_t kPatternStream = 0x7061747465ULL;    // "patte"
constexpr std::uint64_t kBackgroundStream = 0x6261636b67ULL; // "backg"
constexpr std::uint64_t kDropoutStream = 0x64726f70ULL;      // "drop"
constexpr std::uint64_t kFlipStream = 0x666c6970ULL;         // "flip"

constexpr double kMarginFloor = 0.1;

void validate(const ScenarioSpec& spec) {
  if (spec.m == 0 || spec.n == 0)
    throw std::invalid_argument("scenario: dimensions must be positive");
  if (spec.pattern_size > std::min(spec.m, spec.n))
    throw std::invalid_argument("scenario: pattern size exceeds dimensions");
  if (!(spec.p_l >= 0.0 && spec.p_l <= 1.0))
    throw std::invalid_argument("scenario: p_l outside [0,1]");
  if (!(spec.flip_rate >= 0.0 && spec.flip_rate <= 1.0))
    throw std::invalid_argument("scenario: flip rate outside [0,1]");
  if (!spec.background_override &&
      !(spec.background_cap >= kMarginFloor && spec.background_cap <= 1.0))
    throw std::invalid_argument("scenario: background cap outside [0.1,1]");
  if (spec.background_override &&
      !(*spec.background_override >= 0.0 && *spec.background_override <= 1.0))
    throw std::invalid_argument("scenario: background override outside [0,1]");
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string ScenarioSpec::id() const {
  char buf[96];
  if (flip_rate == 0.0)
    std::snprintf(buf, sizeof buf, "s%zu_k%zu_pl%.1f_p%.1f_e0", pattern_size, k,
                  p_l, background_cap);
  else
    std::snprintf(buf, sizeof buf, "s%zu_k%zu_pl%.1f_p%.1f_e%.2f", pattern_size,
                  k, p_l, background_cap, flip_rate);
  return buf;
}

double GroundTruth::expected_pattern_ones(Axis axis, std::size_t index) const {
  double sum = 0.0;
  for (const PlantedPattern& p : patterns) {
    const auto& own = axis == Axis::row ? p.support.rows : p.support.cols;
    const auto& opp = axis == Axis::row ? p.support.cols : p.support.rows;
    if (std::find(own.begin(), own.end(), index) != own.end())
      sum += p.p_l * static_cast<double>(opp.size());
  }
  return sum;
}

void draw_margins(const ScenarioSpec& spec, std::vector<double>& row_margins,
                  std::vector<double>& col_margins) {
  row_margins.resize(spec.m);
  col_margins.resize(spec.n);
  if (spec.background_override) {
    std::fill(row_margins.begin(), row_margins.end(), *spec.background_override);
    std::fill(col_margins.begin(), col_margins.end(), *spec.background_override);
    return;
  }
  Rng rng = Rng::keyed(spec.seed, kMarginStream);
  for (double& v : row_margins) v = rng.uniform(kMarginFloor, spec.background_cap);
  for (double& v : col_margins) v = rng.uniform(kMarginFloor, spec.background_cap);
}

std::vector<PlantedPattern> draw_patterns(const ScenarioSpec& spec) {
  Rng rng = Rng::keyed(spec.seed, kPatternStream);
  std::vector<PlantedPattern> patterns(spec.k);
  for (std::size_t l = 0; l < spec.k; ++l) {
    patterns[l].p_l = spec.p_l;
    patterns[l].support.rows =
        sample_without_replacement(rng, spec.m, spec.pattern_size);
    patterns[l].support.cols =
        sample_without_replacement(rng, spec.n, spec.pattern_size);
    std::sort(patterns[l].support.rows.begin(), patterns[l].support.rows.end());
    std::sort(patterns[l].support.cols.begin(), patterns[l].support.cols.end());
  }
  return patterns;
}

BinaryMatrix draw_background(const ScenarioSpec& spec,
                             std::span<const double> row_margins,
                             std::span<const double> col_margins,
                             std::uint64_t redraw_index) {
  Rng rng = Rng::keyed(spec.seed, kBackgroundStream, redraw_index);
  MatrixBuilder b(spec.m, spec.n);
  for (std::size_t i = 0; i < spec.m; ++i) {
    const double ri = row_margins[i];
    for (std::size_t j = 0; j < spec.n; ++j)
      if (rng.bernoulli(ri * col_margins[j])) b.set(i, j);
  }
  return std::move(b).build();
}

BinaryMatrix draw_survivals(const ScenarioSpec& spec,
                            std::span<const PlantedPattern> patterns,
                            std::uint64_t redraw_index) {
  Rng rng = Rng::keyed(spec.seed, kDropoutStream, redraw_index);
  MatrixBuilder b(spec.m, spec.n);
  // Overlapping cells get one survival chance per covering pattern, matching
  // the per-pattern dropout law.
  for (const PlantedPattern& p : patterns)
    for (std::size_t i : p.support.rows)
      for (std::size_t j : p.support.cols)
        if (rng.bernoulli(p.p_l)) b.set(i, j);
  return std::move(b).build();
}

BinaryMatrix draw_flips(const ScenarioSpec& spec, std::uint64_t redraw_index) {
  MatrixBuilder b(spec.m, spec.n);
  if (spec.flip_rate > 0.0) {
    Rng rng = Rng::keyed(spec.seed, kFlipStream, redraw_index);
    for (std::size_t i = 0; i < spec.m; ++i)
      for (std::size_t j = 0; j < spec.n; ++j)
        if (rng.bernoulli(spec.flip_rate)) b.set(i, j);
  }
  return std::move(b).build();
}

BinaryMatrix compose_layers(const BinaryMatrix& survived, const BinaryMatrix& x0,
                            const BinaryMatrix& flips) {
  const auto sw = survived.words();
  const auto bw = x0.words();
  const auto fw = flips.words();
  if (sw.size() != bw.size() || sw.size() != fw.size())
    throw std::invalid_argument("compose_layers: layer shape mismatch");
  std::vector<std::uint64_t> out(sw.size());
  for (std::size_t w = 0; w < out.size(); ++w)
    out[w] = (sw[w] | bw[w]) ^ fw[w];
  return BinaryMatrix::from_words(survived.rows(), survived.cols(),
                                  std::move(out));
}

SynthResult generate(const ScenarioSpec& spec) {
  validate(spec);
  SynthResult res;
  GroundTruth& gt = res.truth;
  gt.m = spec.m;
  gt.n = spec.n;
  gt.flip_rate = spec.flip_rate;

  draw_margins(spec, gt.row_margins, gt.col_margins);
  gt.patterns = draw_patterns(spec);

  PatternFactors factors;
  factors.m = spec.m;
  factors.n = spec.n;
  for (const PlantedPattern& p : gt.patterns) factors.patterns.push_back(p.support);
  gt.uv = factors.uv();

  gt.x0 = draw_background(spec, gt.row_margins, gt.col_margins);
  gt.survived = draw_survivals(spec, gt.patterns);
  gt.flips = draw_flips(spec);
  res.x = compose_layers(gt.survived, gt.x0, gt.flips);
  return res;
}

std::vector<ScenarioSpec> full_grid() {
  std::vector<ScenarioSpec> grid;
  for (std::size_t size : {10u, 15u, 20u})
    for (std::size_t k : {1u, 2u})
      for (double p_l : {0.8, 0.9, 1.0})
        for (double cap : {0.5, 0.6, 0.7})
          for (double p0 : {0.0, 0.05}) {
            ScenarioSpec spec;
            spec.m = 100;
            spec.n = 100;
            spec.pattern_size = size;
            spec.k = k;
            spec.p_l = p_l;
            spec.background_cap = cap;
            spec.flip_rate = p0;
            spec.seed = 1;
            grid.push_back(spec);
          }
  return grid;
}

// --- serialization -----------------------------------------------------------

std::string spec_to_text(const ScenarioSpec& spec) {
  std::ostringstream out;
  out << "m " << spec.m << '\n'
      << "n " << spec.n << '\n'
      << "pattern_size " << spec.pattern_size << '\n'
      << "k " << spec.k << '\n'
      << "p_l " << format_double(spec.p_l) << '\n'
      << "background_cap " << format_double(spec.background_cap) << '\n'
      << "flip_rate " << format_double(spec.flip_rate) << '\n'
      << "seed " << spec.seed << '\n';
  if (spec.background_override)
    out << "background_override " << format_double(*spec.background_override)
        << '\n';
  return out.str();
}

ScenarioSpec spec_from_text(const std::string& text) {
  ScenarioSpec spec;
  std::istringstream in(text);
  std::string key;
  while (in >> key) {
    if (key == "m")
      in >> spec.m;
    else if (key == "n")
      in >> spec.n;
    else if (key == "pattern_size")
      in >> spec.pattern_size;
    else if (key == "k")
      in >> spec.k;
    else if (key == "p_l")
      in >> spec.p_l;
    else if (key == "background_cap")
      in >> spec.background_cap;
    else if (key == "flip_rate")
      in >> spec.flip_rate;
    else if (key == "seed")
      in >> spec.seed;
    else if (key == "background_override") {
      double v;
      in >> v;
      spec.background_override = v;
    } else {
      throw std::runtime_error("scenario spec: unknown key '" + key + "'");
    }
    if (!in) throw std::runtime_error("scenario spec: malformed value for " + key);
  }
  return spec;
}

std::string ground_truth_to_text(const GroundTruth& truth) {
  std::ostringstream out;
  out << "m " << truth.m << '\n' << "n " << truth.n << '\n';
  out << "flip_rate " << format_double(truth.flip_rate) << '\n';
  out << "patterns " << truth.patterns.size() << '\n';
  for (std::size_t l = 0; l < truth.patterns.size(); ++l) {
    const PlantedPattern& p = truth.patterns[l];
    out << "pattern " << l << " pl " << format_double(p.p_l) << '\n';
    out << "rows";
    for (std::size_t i : p.support.rows) out << ' ' << i;
    out << '\n' << "cols";
    for (std::size_t j : p.support.cols) out << ' ' << j;
    out << '\n';
  }
  out << "row_margins";
  for (double v : truth.row_margins) out << ' ' << format_double(v);
  out << '\n' << "col_margins";
  for (double v : truth.col_margins) out << ' ' << format_double(v);
  out << '\n';
  return out.str();
}

GroundTruth ground_truth_from_text(const std::string& text) {
  GroundTruth truth;
  std::istringstream in(text);
  std::string line;
  std::size_t n_patterns = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "m")
      ls >> truth.m;
    else if (key == "n")
      ls >> truth.n;
    else if (key == "flip_rate")
      ls >> truth.flip_rate;
    else if (key == "patterns")
      ls >> n_patterns;
    else if (key == "pattern") {
      std::size_t idx;
      std::string pl_key;
      PlantedPattern p;
      ls >> idx >> pl_key >> p.p_l;
      truth.patterns.push_back(p);
    } else if (key == "rows") {
      if (truth.patterns.empty())
        throw std::runtime_error("ground truth: rows before pattern header");
      std::size_t v;
      while (ls >> v) truth.patterns.back().support.rows.push_back(v);
    } else if (key == "cols") {
      if (truth.patterns.empty())
        throw std::runtime_error("ground truth: cols before pattern header");
      std::size_t v;
      while (ls >> v) truth.patterns.back().support.cols.push_back(v);
    } else if (key == "row_margins") {
      double v;
      while (ls >> v) truth.row_margins.push_back(v);
    } else if (key == "col_margins") {
      double v;
      while (ls >> v) truth.col_margins.push_back(v);
    } else {
      throw std::runtime_error("ground truth: unknown key '" + key + "'");
    }
  }
  if (truth.patterns.size() != n_patterns)
    throw std::runtime_error("ground truth: pattern count mismatch");
  if (truth.m > 0 && truth.n > 0) {
    PatternFactors factors;
    factors.m = truth.m;
    factors.n = truth.n;
    for (const PlantedPattern& p : truth.patterns)
      factors.patterns.push_back(p.support);
    truth.uv = factors.uv();
  }
  return truth;
}

}  // namespace bind
