#include "thermetry/optical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "thermetry/fisher.hpp"
#include "thermetry/integrate.hpp"

namespace thermetry {

namespace {

constexpr double kTailBudget = 1e-10;   // net certified truncation allowance
constexpr std::size_t kGrowCap = 1000000;

// second radiation constant h*c/k_B in meter-kelvin (2019 SI exact values)
constexpr double kHcOverKb =
    6.62607015e-34 * 299792458.0 / 1.380649e-23;

double falling_factorial(double n, int k) {
    double f = 1.0;
    for (int j = 0; j < k; ++j) f *= n - j;
    return f;
}

} // namespace

BoltzmannRatio::BoltzmannRatio(double r) : r_(r) {
    if (!(r >= 0.0) || !(r <= 1.0))
        throw std::invalid_argument("BoltzmannRatio: need 0 <= r <= 1");
}

double BoltzmannRatio::mean_n() const {
    if (r_ == 1.0)
        throw std::domain_error(
            "BoltzmannRatio: mean occupation diverges at r = 1");
    return r_ / (1.0 - r_);
}

PhotonDistribution PhotonDistribution::fock(int n) {
    if (n < 0) throw std::invalid_argument("fock: negative photon number");
    PhotonDistribution p;
    p.probs_.assign(static_cast<std::size_t>(n) + 1, 0.0);
    p.probs_.back() = 1.0;
    return p;
}

PhotonDistribution PhotonDistribution::thermal(double ratio,
                                               double tail_tol) {
    if (!(ratio >= 0.0) || !(ratio < 1.0))
        throw std::invalid_argument("thermal: need 0 <= ratio < 1");
    if (!(tail_tol > 0.0))
        throw std::invalid_argument("thermal: tail tolerance must be > 0");
    PhotonDistribution p;
    if (ratio == 0.0) {
        p.probs_ = {1.0};
        return p; // exactly vacuum
    }
    p.components_.push_back({TailComponent::Kind::thermal, 1.0, ratio});
    double pn = 1.0 - ratio;
    p.probs_.push_back(pn);
    for (std::size_t n = 1;; ++n) {
        if (n > kGrowCap)
            throw CertificationError(
                "thermal: could not certify tails at this ratio");
        pn *= ratio;
        p.probs_.push_back(pn);
        const double boundary =
            static_cast<double>(n + 1) * pn;
        if (boundary <= tail_tol &&
            p.component_tail(p.components_[0], 1) <= tail_tol)
            break;
    }
    return p;
}

PhotonDistribution PhotonDistribution::poisson(double lambda,
                                               double tail_tol) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("poisson: mean must be >= 0");
    if (lambda > 500.0)
        throw std::invalid_argument(
            "poisson: means above 500 underflow the term recursion");
    if (!(tail_tol > 0.0))
        throw std::invalid_argument("poisson: tail tolerance must be > 0");
    PhotonDistribution p;
    if (lambda == 0.0) {
        p.probs_ = {1.0};
        return p;
    }
    p.components_.push_back({TailComponent::Kind::poisson, 1.0, lambda});
    double pn = std::exp(-lambda);
    p.probs_.push_back(pn);
    for (std::size_t n = 1;; ++n) {
        if (n > kGrowCap)
            throw CertificationError("poisson: could not certify tails");
        pn *= lambda / static_cast<double>(n);
        p.probs_.push_back(pn);
        const double boundary = static_cast<double>(n + 1) * pn;
        if (boundary <= tail_tol &&
            p.component_tail(p.components_[0], 1) <= tail_tol)
            break;
    }
    return p;
}

PhotonDistribution PhotonDistribution::from_probs(std::vector<double> probs) {
    if (probs.empty()) throw std::invalid_argument("from_probs: empty");
    KahanSum s;
    for (double& q : probs) {
        if (!std::isfinite(q))
            throw std::invalid_argument("from_probs: nonfinite entry");
        if (q < 0.0) {
            if (q < -1e-12)
                throw std::invalid_argument("from_probs: negative entry");
            q = 0.0;
        }
        s.add(q);
    }
    if (std::abs(s.value() - 1.0) > 1e-12)
        throw std::invalid_argument("from_probs: must sum to 1");
    PhotonDistribution p;
    p.probs_ = std::move(probs);
    return p;
}

PhotonDistribution PhotonDistribution::mix(const PhotonDistribution& a,
                                           const PhotonDistribution& b,
                                           double weight) {
    if (!(weight >= 0.0) || !(weight <= 1.0))
        throw std::invalid_argument("mix: weight must be in [0, 1]");
    PhotonDistribution p;
    p.probs_.assign(std::max(a.probs_.size(), b.probs_.size()), 0.0);
    for (std::size_t n = 0; n < a.probs_.size(); ++n)
        p.probs_[n] += weight * a.probs_[n];
    for (std::size_t n = 0; n < b.probs_.size(); ++n)
        p.probs_[n] += (1.0 - weight) * b.probs_[n];
    if (weight > 0.0)
        for (TailComponent c : a.components_) {
            c.weight *= weight;
            p.components_.push_back(c);
        }
    if (weight < 1.0)
        for (TailComponent c : b.components_) {
            c.weight *= 1.0 - weight;
            p.components_.push_back(c);
        }
    return p;
}

// Bound on sum_{n > n_max} (n+1)^order * p_n for one mixture component.
// Thermal order 0/1 are exact geometric identities; everything else uses
// first-term-times-geometric domination (term ratios only decrease with n),
// returning +inf when even the first ratio is >= 1.
double PhotonDistribution::component_tail(const TailComponent& c,
                                          int order) const {
    const double nmax = static_cast<double>(n_max());
    const double np2 = nmax + 2.0;
    if (c.kind == TailComponent::Kind::thermal) {
        const double r = c.param;
        if (r == 0.0) return 0.0;
        const double rpow = std::pow(r, nmax + 1.0);
        if (order == 0) return c.weight * rpow;
        if (order == 1)
            return c.weight * rpow * (np2 - (nmax + 1.0) * r) / (1.0 - r);
        const double first =
            c.weight * std::pow(np2, order) * (1.0 - r) * rpow;
        const double rho = r * std::pow((np2 + 1.0) / np2, order);
        if (rho >= 1.0) return std::numeric_limits<double>::infinity();
        return first / (1.0 - rho);
    }
    const double lambda = c.param;
    if (lambda == 0.0) return 0.0;
    const double log_p_next = -lambda + (nmax + 1.0) * std::log(lambda) -
                              std::lgamma(np2);
    const double first =
        c.weight * std::pow(np2, order) * std::exp(log_p_next);
    const double rho = (lambda / np2) * std::pow((np2 + 1.0) / np2, order);
    if (rho >= 1.0) return std::numeric_limits<double>::infinity();
    return first / (1.0 - rho);
}

double PhotonDistribution::tail_bound() const { return weighted_tail_bound(0); }

double PhotonDistribution::weighted_tail_bound(int order) const {
    if (order < 0)
        throw std::invalid_argument("weighted_tail_bound: negative order");
    KahanSum s;
    for (const TailComponent& c : components_) s.add(component_tail(c, order));
    return s.value();
}

double PhotonDistribution::mean() const {
    KahanSum s;
    for (std::size_t n = 1; n < probs_.size(); ++n)
        s.add(static_cast<double>(n) * probs_[n]);
    return s.value();
}

double PhotonDistribution::second_moment() const {
    KahanSum s;
    for (std::size_t n = 1; n < probs_.size(); ++n)
        s.add(static_cast<double>(n) * static_cast<double>(n) * probs_[n]);
    return s.value();
}

double PhotonDistribution::variance() const {
    const double m = mean();
    return second_moment() - m * m;
}

double PhotonDistribution::falling_moment(int k) const {
    if (k < 1) throw std::invalid_argument("falling_moment: need k >= 1");
    KahanSum s;
    for (std::size_t n = static_cast<std::size_t>(k); n < probs_.size(); ++n)
        s.add(falling_factorial(static_cast<double>(n), k) * probs_[n]);
    return s.value();
}

double PhotonDistribution::shifted_rising_moment(int k) const {
    if (k < 1)
        throw std::invalid_argument("shifted_rising_moment: need k >= 1");
    KahanSum s;
    for (std::size_t n = 0; n < probs_.size(); ++n) {
        double f = 1.0;
        for (int j = 1; j <= k; ++j) f *= static_cast<double>(n) + j;
        s.add(f * probs_[n]);
    }
    return s.value();
}

namespace {

// Net truncation allowance for the order-k coherence series; throws when it
// cannot be pushed below the certification budget.
double certify_series_tails(const PhotonDistribution& p, double rv, int k,
                            const char* what) {
    if (p.exact_support()) return 0.0;
    const double rk = std::pow(rv, k);
    const double twb = p.weighted_tail_bound(k);
    const double kk = std::pow(static_cast<double>(k), k);
    KahanSum edge; // known-prob terms whose partners fell past the cut
    const auto& pb = p.probs();
    const int nmax = p.n_max();
    for (int m = std::max(0, nmax - k + 1); m <= nmax; ++m)
        edge.add(pb[static_cast<std::size_t>(m)] *
                 falling_factorial(static_cast<double>(m + k), k));
    const double allowance = (1.0 + rk * kk) * twb + rk * edge.value();
    if (!(allowance <= kTailBudget))
        throw CertificationError(std::string(what) +
                                 ": truncation tails not certifiable");
    return allowance;
}

double coherence_series(const PhotonDistribution& p, double rv, int k) {
    const auto& pb = p.probs();
    const int nmax = p.n_max();
    const double rk = std::pow(rv, k);
    KahanSum s;
    for (int n = k; n <= nmax; ++n) {
        const double a = pb[static_cast<std::size_t>(n)];
        const double b = rk * pb[static_cast<std::size_t>(n - k)];
        if (a == 0.0 && b == 0.0) continue;
        s.add(fisher_difference(a, b) *
              falling_factorial(static_cast<double>(n), k));
    }
    // past an exact support edge only the reference side survives
    if (p.exact_support() && rk > 0.0)
        for (int n = nmax + 1; n <= nmax + k; ++n)
            s.add(rk * pb[static_cast<std::size_t>(n - k)] *
                  falling_factorial(static_cast<double>(n), k));
    return s.value();
}

double thermal_coherence_closed(double r_state, double r_ref) {
    const double d = r_state - r_ref;
    if (d == 0.0) return 0.0;
    return d * d / ((r_state + r_ref) * (1.0 - r_state));
}

} // namespace

double latent_coherence(const PhotonDistribution& p,
                        const BoltzmannRatio& r) {
    certify_series_tails(p, r.value(), 1, "latent_coherence");
    return coherence_series(p, r.value(), 1);
}

double illuminance(const PhotonDistribution& p, const BoltzmannRatio& r) {
    certify_series_tails(p, r.value(), 1, "illuminance");
    const double rv = r.value();
    const auto& pb = p.probs();
    KahanSum s;
    for (std::size_t n = 1; n < pb.size(); ++n) {
        const double den = pb[n] + rv * pb[n - 1];
        if (den == 0.0) continue;
        s.add(4.0 * rv * pb[n] * pb[n - 1] * static_cast<double>(n) / den);
    }
    return s.value();
}

double tradeoff_check(const PhotonDistribution& p, const BoltzmannRatio& r) {
    const double rv = r.value();
    return latent_coherence(p, r) + illuminance(p, r) -
           ((1.0 + rv) * p.mean() + rv);
}

double classical_witness_bound(double mean_n, const BoltzmannRatio& r) {
    if (!(mean_n >= 0.0) || !std::isfinite(mean_n))
        throw std::invalid_argument(
            "classical_witness_bound: mean must be >= 0");
    return (1.0 - r.value()) * mean_n + r.value();
}

double all_states_bound(double mean_n, const BoltzmannRatio& r) {
    if (!(mean_n >= 0.0) || !std::isfinite(mean_n))
        throw std::invalid_argument("all_states_bound: mean must be >= 0");
    return (1.0 + r.value()) * mean_n + r.value();
}

WitnessReport run_classical_witness(const PhotonDistribution& p,
                                    const BoltzmannRatio& r) {
    const double allowance =
        certify_series_tails(p, r.value(), 1, "run_classical_witness");
    WitnessReport rep;
    rep.coherence = coherence_series(p, r.value(), 1);
    const double mean = p.mean();
    rep.classical_bound = classical_witness_bound(mean, r);
    rep.all_states_bound = all_states_bound(mean, r);
    // fire only beyond every truncation uncertainty (series and moments)
    const double guard = 2.0 * allowance +
                         1e-12 * (1.0 + std::abs(rep.classical_bound));
    rep.fired = rep.coherence > rep.classical_bound + guard;
    return rep;
}

double generalized_coherence_k(const PhotonDistribution& p,
                               const BoltzmannRatio& r, int k) {
    if (k < 1)
        throw std::invalid_argument("generalized_coherence_k: need k >= 1");
    certify_series_tails(p, r.value(), k, "generalized_coherence_k");
    return coherence_series(p, r.value(), k);
}

double generalized_classical_bound(const PhotonDistribution& p,
                                   const BoltzmannRatio& r, int k) {
    if (k < 1)
        throw std::invalid_argument(
            "generalized_classical_bound: need k >= 1");
    certify_series_tails(p, r.value(), k, "generalized_classical_bound");
    const double fk = p.falling_moment(k);
    const double rk = std::pow(r.value(), k);
    return fk + rk * (p.shifted_rising_moment(k) - 2.0 * fk);
}

double poisson_coherence(double lambda, const BoltzmannRatio& r) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("poisson_coherence: mean must be > 0");
    const double rv = r.value();
    if (rv == 0.0) return lambda; // C_0 = <N>
    const double a = lambda / rv;
    // the closing 4a^2 * I suffers catastrophic cancellation, so the
    // quadrature tolerance must shrink with 1/a^2
    const double tol_i =
        std::clamp(2.5e-11 / (a * a), 5e-15, 1e-10);
    double integral;
    if (a < 1.0) {
        // u = t^{1/a} absorbs the u^{a-1} endpoint singularity
        integral = adaptive_integrate(
            [&](double t) {
                return (1.0 / a) *
                       std::exp(lambda * (std::pow(t, 1.0 / a) - 1.0));
            },
            0.0, 1.0, tol_i);
    } else {
        EndpointHints hints;
        hints.left_singular = a > 1.0 && a < 2.0; // u^{a-1} kink at 0
        integral = adaptive_integrate(
            [&](double u) {
                return std::pow(u, a - 1.0) *
                       std::exp(lambda * (u - 1.0));
            },
            0.0, 1.0, tol_i, hints);
    }
    return rv * (lambda + 1.0) - 3.0 * lambda + 4.0 * a -
           4.0 * a * a * integral;
}

double illumination_qfi_zero_ratio(const PhotonDistribution& p) {
    return 4.0 * (p.mean() + 1.0);
}

std::vector<double> sld_weights(const PhotonDistribution& p,
                                const BoltzmannRatio& r) {
    const double rv = r.value();
    const auto& pb = p.probs();
    std::vector<double> w;
    w.reserve(pb.size());
    for (std::size_t n = 1; n <= pb.size(); ++n) {
        const double pn = n < pb.size() ? pb[n] : 0.0;
        const double den = pn + rv * pb[n - 1];
        w.push_back(den > 0.0 ? (pn - rv * pb[n - 1]) / den : 0.0);
    }
    return w;
}

double two_mode_covariance(const PhotonDistribution& p,
                           const BoltzmannRatio& r) {
    const double nr = r.mean_n();
    const double mean = p.mean();
    const double den = mean + nr;
    if (den == 0.0)
        throw std::domain_error(
            "two_mode_covariance: vacuum against vacuum is undefined");
    const double num =
        p.variance() + mean * mean - mean + 2.0 * nr * nr;
    return num / (den * den) - 1.0;
}

double q_parameter(const PhotonDistribution& p) {
    const double mean = p.mean();
    if (mean == 0.0)
        throw std::domain_error("q_parameter: undefined for vacuum");
    return (p.variance() - mean) / mean;
}

bool negative_covariance_achievable(const PhotonDistribution& p) {
    const double mean = p.mean();
    return p.variance() < mean * (mean + 1.0);
}

double thermal_beam_coherence(double t_background, double t_source,
                              double wavelength) {
    if (!(t_background > 0.0) || !(t_source > 0.0) || !(wavelength > 0.0))
        throw std::invalid_argument(
            "thermal_beam_coherence: temperatures and wavelength must be > 0");
    const double r_ref = std::exp(-kHcOverKb / (wavelength * t_background));
    const double r_src = std::exp(-kHcOverKb / (wavelength * t_source));
    return thermal_coherence_closed(r_src, r_ref);
}

double thermal_beam_mean_n(double t_source, double wavelength) {
    if (!(t_source > 0.0) || !(wavelength > 0.0))
        throw std::invalid_argument(
            "thermal_beam_mean_n: temperature and wavelength must be > 0");
    const double r_src = std::exp(-kHcOverKb / (wavelength * t_source));
    return r_src / (1.0 - r_src);
}

BeamScanResult thermal_beam_scan(double t_background, double t_source,
                                 const std::vector<double>& wavelength_grid) {
    if (!(t_background > 0.0) || !(t_source >= t_background))
        throw std::invalid_argument(
            "thermal_beam_scan: need t_source >= t_background > 0");
    if (wavelength_grid.empty())
        throw std::invalid_argument("thermal_beam_scan: empty grid");
    std::vector<double> grid = wavelength_grid;
    std::sort(grid.begin(), grid.end());
    if (!(grid.front() > 0.0))
        throw std::invalid_argument(
            "thermal_beam_scan: wavelengths must be > 0");

    auto cval = [&](double lam) {
        return thermal_beam_coherence(t_background, t_source, lam);
    };
    std::size_t ibest = 0;
    double cbest = cval(grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double c = cval(grid[i]);
        if (c > cbest) {
            cbest = c;
            ibest = i;
        }
    }

    double lo = ibest > 0 ? grid[ibest - 1] : grid[ibest];
    double hi = ibest + 1 < grid.size() ? grid[ibest + 1] : grid[ibest];
    double best_l = grid[ibest];
    double best_c = cbest;
    if (hi > lo) {
        // golden-section to 1e-6 relative wavelength
        const double phi = 0.6180339887498949;
        double x1 = hi - phi * (hi - lo);
        double x2 = lo + phi * (hi - lo);
        double f1 = cval(x1), f2 = cval(x2);
        while (hi - lo > 1e-6 * hi) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + phi * (hi - lo);
                f2 = cval(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - phi * (hi - lo);
                f1 = cval(x1);
            }
        }
        const double mid = 0.5 * (lo + hi);
        const double cmid = cval(mid);
        if (cmid > best_c) {
            best_c = cmid;
            best_l = mid;
        }
    }
    return {best_l, best_c, thermal_beam_mean_n(t_source, best_l)};
}

double optical_phase_qfi(const PhotonDistribution& p, const BoltzmannRatio& r,
                         double hbar_omega) {
    if (!(hbar_omega > 0.0) || !std::isfinite(hbar_omega))
        throw std::invalid_argument(
            "optical_phase_qfi: energy quantum must be > 0");
    return hbar_omega * hbar_omega * (r.mean_n() + 1.0) *
           latent_coherence(p, r);
}

double optical_interaction_speed(const PhotonDistribution& p,
                                 const BoltzmannRatio& r) {
    return optical_phase_qfi(p, r, 1.0);
}

} // namespace thermetry
