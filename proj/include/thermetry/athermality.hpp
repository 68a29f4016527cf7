#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "thermetry/step_function.hpp"
#include "thermetry/types.hpp"

namespace thermetry {

// Levels reordered so the Boltzmann-weighted probabilities
// q_k = p_{order[k]} * exp(beta * eps_{order[k]}) are nonincreasing.
// widths[k] = exp(-beta * eps_{order[k]}); their sum is Z_S.
// Ties are broken by ascending energy, then ascending original index.
struct BetaOrdering {
    std::vector<std::size_t> order;
    std::vector<double> weights;
    std::vector<double> widths;
    double z_s;
};

BetaOrdering beta_order(const DiagonalState& state,
                        const EnergySpectrum& spectrum, double beta);

// Energy level profile on [0, Z_S]: first the descending staircase
// (widths exp(-beta*eps), tallest level first) and then its reflection.
std::pair<StepFunction, StepFunction>
build_energy_steps(const EnergySpectrum& spectrum, double beta);

// Best phase-sensing QFI reachable from (state, spectrum) with thermal
// operations at inverse temperature beta, via the exact step-profile
// integral. Vanishes (to rounding) iff the state is the Gibbs state.
double max_qfi_thermal(const DiagonalState& state,
                       const EnergySpectrum& spectrum, double beta);

// Two-level closed form: f(p0 * exp(-beta*eps), p1) * eps^2.
double max_qfi_qubit(const DiagonalState& state, double eps, double beta);

// Zero-temperature limit sum_i p_i eps_i^2 (ground energy already pinned
// to 0) and infinite-temperature limit (the fixed-spectrum maximum with the
// energies as generator eigenvalues).
struct TemperatureLimits {
    double low;
    double high;
};
TemperatureLimits qfi_temperature_limits(const DiagonalState& state,
                                         const EnergySpectrum& spectrum);

// Best mean interaction speed, an unweighted version of the same mirrored
// integral: (1/2) Integral f(q(x), q(Z_S - x)) dx.
double interaction_speed(const DiagonalState& state,
                         const EnergySpectrum& spectrum, double beta);

// Thermo-majorization curve: polyline through the cumulative
// (sum widths, sum probabilities) vertices of the beta-ordering,
// starting at (0,0) and ending at (Z_S, 1).
struct ThermoCurve {
    std::vector<double> xs;
    std::vector<double> ys;
    double value_at(double x) const;
};

ThermoCurve thermo_curve(const DiagonalState& state,
                         const EnergySpectrum& spectrum, double beta);

// True iff the curve of y lies everywhere on or above the curve of x
// (within tol): y can be mapped to x by a Gibbs-preserving stochastic map.
bool thermo_majorizes(const DiagonalState& x, const DiagonalState& y,
                      const EnergySpectrum& spectrum, double beta,
                      double tol = 1e-10);

} // namespace thermetry
