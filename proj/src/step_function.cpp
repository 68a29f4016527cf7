#include "thermetry/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "thermetry/fisher.hpp"

namespace thermetry {

StepFunction::StepFunction(RunProfile segments)
    : segments_(std::move(segments)) {
    KahanSum cum;
    for (const Run& r : segments_) {
        if (!(r.extent >= 0.0) || !std::isfinite(r.extent) ||
            !std::isfinite(r.value))
            throw std::invalid_argument("StepFunction: bad segment");
        if (r.extent == 0.0) continue;
        cum.add(r.extent);
        edges_.push_back(cum.value());
        values_.push_back(r.value);
    }
    if (edges_.empty())
        throw std::invalid_argument("StepFunction: zero total width");
    total_ = edges_.back();
}

double StepFunction::value_at(double x) const {
    auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
    auto i = static_cast<std::size_t>(it - edges_.begin());
    if (i >= values_.size()) i = values_.size() - 1;
    return values_[i];
}

StepFunction StepFunction::reflected() const {
    RunProfile rev(segments_.rbegin(), segments_.rend());
    return StepFunction(std::move(rev));
}

} // namespace thermetry
