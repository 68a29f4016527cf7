#include "thermetry/athermality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "thermetry/fisher.hpp"
#include "thermetry/run_profile.hpp"
#include "thermetry/spectral.hpp"

namespace thermetry {

namespace {

void check_inputs(const DiagonalState& state, const EnergySpectrum& spectrum,
                  double beta, const char* what) {
    if (state.dim() != spectrum.dim())
        throw std::invalid_argument(std::string(what) +
                                    ": dimension mismatch");
    if (!std::isfinite(beta) || beta < 0.0)
        throw std::invalid_argument(std::string(what) +
                                    ": beta must be finite and >= 0");
}

RunProfile boltzmann_profile(const BetaOrdering& bo) {
    RunProfile q;
    q.reserve(bo.weights.size());
    for (std::size_t k = 0; k < bo.weights.size(); ++k)
        q.push_back({bo.weights[k], bo.widths[k]});
    return q;
}

RunProfile energy_profile(const EnergySpectrum& spectrum, double beta) {
    const auto& eps = spectrum.energies();
    RunProfile e;
    e.reserve(eps.size());
    for (std::size_t i = eps.size(); i-- > 0;)
        e.push_back({eps[i], std::exp(-beta * eps[i])});
    return e;
}

} // namespace

BetaOrdering beta_order(const DiagonalState& state,
                        const EnergySpectrum& spectrum, double beta) {
    check_inputs(state, spectrum, beta, "beta_order");
    const auto& p = state.probs();
    const auto& eps = spectrum.energies();
    const std::size_t d = p.size();

    // sort on log-domain keys so large beta*eps cannot overflow the compare
    std::vector<double> key(d);
    for (std::size_t i = 0; i < d; ++i)
        key[i] = p[i] > 0.0 ? std::log(p[i]) + beta * eps[i]
                            : -std::numeric_limits<double>::infinity();

    BetaOrdering bo;
    bo.order.resize(d);
    std::iota(bo.order.begin(), bo.order.end(), std::size_t{0});
    std::sort(bo.order.begin(), bo.order.end(),
              [&](std::size_t a, std::size_t b) {
                  if (key[a] != key[b]) return key[a] > key[b];
                  if (eps[a] != eps[b]) return eps[a] < eps[b];
                  return a < b;
              });
    bo.weights.reserve(d);
    bo.widths.reserve(d);
    KahanSum z;
    for (std::size_t i : bo.order) {
        bo.weights.push_back(p[i] * std::exp(beta * eps[i]));
        const double w = std::exp(-beta * eps[i]);
        bo.widths.push_back(w);
        z.add(w);
    }
    bo.z_s = z.value();
    return bo;
}

std::pair<StepFunction, StepFunction>
build_energy_steps(const EnergySpectrum& spectrum, double beta) {
    if (!std::isfinite(beta) || beta < 0.0)
        throw std::invalid_argument(
            "build_energy_steps: beta must be finite and >= 0");
    StepFunction down(energy_profile(spectrum, beta));
    StepFunction up = down.reflected();
    return {std::move(down), std::move(up)};
}

double max_qfi_thermal(const DiagonalState& state,
                       const EnergySpectrum& spectrum, double beta) {
    check_inputs(state, spectrum, beta, "max_qfi_thermal");
    const BetaOrdering bo = beta_order(state, spectrum, beta);
    return mirror_fisher_integral(boltzmann_profile(bo),
                                  energy_profile(spectrum, beta));
}

double max_qfi_qubit(const DiagonalState& state, double eps, double beta) {
    if (state.dim() != 2)
        throw std::invalid_argument("max_qfi_qubit: two-level states only");
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw std::invalid_argument("max_qfi_qubit: gap must be positive");
    if (!std::isfinite(beta) || beta < 0.0)
        throw std::invalid_argument(
            "max_qfi_qubit: beta must be finite and >= 0");
    const auto& p = state.probs();
    return fisher_difference(p[0] * std::exp(-beta * eps), p[1]) * eps * eps;
}

TemperatureLimits qfi_temperature_limits(const DiagonalState& state,
                                         const EnergySpectrum& spectrum) {
    if (state.dim() != spectrum.dim())
        throw std::invalid_argument(
            "qfi_temperature_limits: dimension mismatch");
    KahanSum low;
    const auto& p = state.probs();
    const auto& eps = spectrum.energies();
    for (std::size_t i = 0; i < p.size(); ++i)
        low.add(p[i] * eps[i] * eps[i]);
    const double high =
        max_qfi_for_spectrum(SpectralPair(state, spectrum.energies()));
    return {low.value(), high};
}

double interaction_speed(const DiagonalState& state,
                         const EnergySpectrum& spectrum, double beta) {
    check_inputs(state, spectrum, beta, "interaction_speed");
    const BetaOrdering bo = beta_order(state, spectrum, beta);
    return mirror_fisher_integral(boltzmann_profile(bo));
}

double ThermoCurve::value_at(double x) const {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const auto i = static_cast<std::size_t>(it - xs.begin());
    const double x0 = xs[i - 1], x1 = xs[i];
    const double y0 = ys[i - 1], y1 = ys[i];
    if (x1 == x0) return std::max(y0, y1);
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

ThermoCurve thermo_curve(const DiagonalState& state,
                         const EnergySpectrum& spectrum, double beta) {
    check_inputs(state, spectrum, beta, "thermo_curve");
    const BetaOrdering bo = beta_order(state, spectrum, beta);
    const auto& p = state.probs();
    ThermoCurve c;
    c.xs.reserve(bo.order.size() + 1);
    c.ys.reserve(bo.order.size() + 1);
    c.xs.push_back(0.0);
    c.ys.push_back(0.0);
    KahanSum cw, cp;
    for (std::size_t k = 0; k < bo.order.size(); ++k) {
        cw.add(bo.widths[k]);
        cp.add(p[bo.order[k]]);
        c.xs.push_back(cw.value());
        c.ys.push_back(cp.value());
    }
    // pin the endpoint against rounding in the cumulative sums
    c.ys.back() = std::min(c.ys.back(), 1.0);
    return c;
}

bool thermo_majorizes(const DiagonalState& x, const DiagonalState& y,
                      const EnergySpectrum& spectrum, double beta,
                      double tol) {
    const ThermoCurve cx = thermo_curve(x, spectrum, beta);
    const ThermoCurve cy = thermo_curve(y, spectrum, beta);
    // piecewise-linear curves: comparing at both vertex sets suffices
    for (double t : cx.xs)
        if (cy.value_at(t) < cx.value_at(t) - tol) return false;
    for (double t : cy.xs)
        if (cy.value_at(t) < cx.value_at(t) - tol) return false;
    return true;
}

} // namespace thermetry
