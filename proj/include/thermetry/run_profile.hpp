#pragma once

#include <vector>

namespace thermetry {

// Right-open constant runs laid end to end on [0, total_extent).  The extent
// is a width for continuous profiles and a multiplicity count for discrete
// (run-length-encoded) ones; zero-extent runs are permitted and ignored.
struct Run {
    double value;
    double extent;
};
using RunProfile = std::vector<Run>;

double profile_total_extent(const RunProfile& profile);

// (1/2) * Integral over [0, L] of f(q(x), q(L-x)) dx, where q is the run
// profile (must be sorted by value, nonincreasing) and L its total extent.
// Evaluated exactly by merging the breakpoints of q and its mirror image
// over the lower half-range (the integrand is x <-> L-x symmetric).
double mirror_fisher_integral(const RunProfile& q);

// Same, weighted by the squared mirrored gap of a second profile:
//   (1/2) * Integral of f(q(x), q(L-x)) * (e(x) - e(L-x))^2 dx.
// e must be sorted nonincreasing with the same total extent as q.
double mirror_fisher_integral(const RunProfile& q, const RunProfile& e);

} // namespace thermetry
