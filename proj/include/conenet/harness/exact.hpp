#pragma once

#include <optional>
#include <span>
#include <vector>

#include "conenet/harness/generate.hpp"
#include "conenet/mask.hpp"

namespace conenet {

enum class Mode { Hitting, Cover };

// Per range, the mask of points it contains (closed membership).
std::vector<SubsetMask> range_masks(const HittingInstance& inst);

// Smallest hitting set / cover by increasing-cardinality exhaustive search.
// Throws CapExceeded when no solution of size <= cap exists.
std::vector<int> exact_opt(const HittingInstance& inst, Mode mode, int cap = 4);

// Classical greedy max-coverage baseline, reporting only.
std::vector<int> greedy_baseline(const HittingInstance& inst, Mode mode);

// Exact optimum of the weight linear program
//   max eps  s.t.  w(T) >= eps for every range, sum w = 1, w >= 0
// solved in rational arithmetic (the small-instance oracle).
struct ExactLpResult {
    double epsilon = 0.0;
    std::vector<double> weights;
};
ExactLpResult exact_lp_weights(int n, std::span<const SubsetMask> ranges);

} // namespace conenet
