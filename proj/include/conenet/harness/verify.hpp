#pragma once

#include <span>

#include "conenet/canonical.hpp"
#include "conenet/decompose/family.hpp"

namespace conenet {

struct OracleResult {
    bool ok = true;
    int piece = -1;       // violating piece when !ok
    Vec3 offset;          // violating translate
    int count = 0;        // points it contains
    double opt_value = -1; // filled by the exact optimum search
};

// Scans the canonical translates of every piece for a range holding at least
// eps*|P| points of P and no point of the net. Violators are re-validated by
// direct recount before being reported.
OracleResult verify_net(std::span<const Vec3> P, const PolytopeFamily& F, double eps,
                        std::span<const int> net);

// Absolute-threshold variant for a single shape (the per-cell cone checks).
OracleResult verify_net_threshold(const CanonicalTranslates& ct, int m, const SubsetMask& net);

} // namespace conenet
