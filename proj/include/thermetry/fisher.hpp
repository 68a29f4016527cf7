#pragma once

#include <cmath>
#include <stdexcept>

namespace thermetry {

// f(a,b) = (a-b)^2 / (a+b) on nonnegative arguments, with f(0,0) := 0.
// Symmetric, degree-1 homogeneous, jointly convex, f(x,0) = x, and
// f(a,b) + 4ab/(a+b) = a + b.  Written as d*(d/s) so it never overflows
// before the result does.
inline double fisher_difference(double a, double b) {
    if (a < 0.0 || b < 0.0)
        throw std::domain_error("fisher_difference: negative argument");
    const double s = a + b;
    if (s == 0.0) return 0.0;
    const double d = a - b;
    return d * (d / s);
}

// Compensated (Neumaier) accumulator.  Summation order still matters for
// bit-reproducibility, so callers keep a fixed iteration order.
class KahanSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace thermetry
