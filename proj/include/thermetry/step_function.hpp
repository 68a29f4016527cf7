#pragma once

#include <cstddef>
#include <vector>

#include "thermetry/run_profile.hpp"

namespace thermetry {

// Piecewise-constant function on [0, domain_length) given by right-open
// segments. Queries outside the domain clamp to the nearest segment.
class StepFunction {
public:
    explicit StepFunction(RunProfile segments);

    double domain_length() const { return total_; }
    const RunProfile& segments() const { return segments_; }
    double value_at(double x) const;
    // x -> value(L - x): the same profile traversed from the other end.
    StepFunction reflected() const;

private:
    RunProfile segments_;
    std::vector<double> edges_;  // cumulative right edges, empty runs dropped
    std::vector<double> values_; // aligned with edges_
    double total_;
};

} // namespace thermetry
