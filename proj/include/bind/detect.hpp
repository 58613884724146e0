#pragma once

#include <cstdint>

#include "bind/bind.hpp"
#include "bind/binmat.hpp"

namespace bind {

struct GreedyParams {
  double gamma = 0.6;  // inclusion ratio in (0,1]
  std::uint64_t seed = 0;  // part of the contract; the greedy itself is
                           // deterministic through lowest-index tie breaks
  std::size_t max_alternations = 50;
};

/// Baseline rank-1 pattern miner. Repeats up to `rank` times: seed with the
/// densest remaining column, include every row covering ≥ gamma of the
/// current column set, include every column covered ≥ gamma by the current
/// row set, alternate to a fixed point, then subtract the covered 1s.
/// Ties break to the lowest index. Patterns with an empty side are dropped.
PatternFactors greedy_rank1(const BinaryMatrix& x, std::size_t rank,
                            const GreedyParams& params = {});

/// The greedy miner wrapped as a pipeline detector.
Detector make_greedy_detector(const GreedyParams& params = {});

}  // namespace bind
