#pragma once

#include <functional>

namespace thermetry {

// Caller-declared integrable endpoint singularities; the integrator never
// evaluates the endpoints (interior-node rule) and pre-splits geometrically
// toward a flagged end so the subdivision budget is not exhausted there.
struct EndpointHints {
    bool left_singular = false;
    bool right_singular = false;
};

// Globally adaptive Gauss-Kronrod 7/15 quadrature to absolute tolerance
// abs_tol: the worst interval (by error estimate) is bisected until the
// summed estimate drops below abs_tol.  Deterministic; throws
// CertificationError if the interval budget is exhausted first.
double adaptive_integrate(const std::function<double(double)>& f, double a,
                          double b, double abs_tol,
                          EndpointHints hints = {});

} // namespace thermetry
