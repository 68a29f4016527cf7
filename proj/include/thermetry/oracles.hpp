#pragma once

#include <cstdint>

#include "thermetry/optical.hpp"
#include "thermetry/types.hpp"

namespace thermetry::oracles {

// Deterministic multi-start search budget.  step halves on non-improvement
// and the restart ends once it decays below 1e-9.
struct SearchBudget {
    int restarts = 32;
    int steps = 400;
    std::uint64_t seed = 1;
    double initial_step = 0.5;
};

// Brute-force check of the fixed-spectrum QFI maximum: gradient ascent over
// the unitary group (finite-difference gradients in skew-Hermitian
// coordinates, step 1e-5) from random starts.  Dimension capped at 8.
// Never exceeds the closed form beyond rounding; reaches it to ~1e-4
// relative for d <= 5 with default budget.
double brute_force_max_qfi(const SpectralPair& sp,
                           const SearchBudget& budget = {});

// Truncated two-mode check of the optical phase-sensing limit: diagonal
// product state p x thermal(r) on |n,m> with m <= n_max, generator matrix
// elements <n-1,m+1|G|n,m> = sqrt(n(m+1)), QFI sum evaluated term by term.
// Returns F/4, which converges to (n_r + 1) C_r(p).  Certifies the combined
// truncation tail below 1e-10 or throws.
double two_mode_qfi(const PhotonDistribution& p, const BoltzmannRatio& r,
                    int n_max);

} // namespace thermetry::oracles
