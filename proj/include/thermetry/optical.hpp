#pragma once

#include <cstddef>
#include <vector>

#include "thermetry/errors.hpp"

namespace thermetry {

// Boltzmann weight ratio r = exp(-beta * hbar * omega) of the background,
// in [0, 1].  r = 1 is legal wherever the quantity stays finite; anything
// needing the mean background occupation n = r/(1-r) rejects it.
class BoltzmannRatio {
public:
    explicit BoltzmannRatio(double r);
    double value() const { return r_; }
    double mean_n() const; // r/(1-r); throws std::domain_error at r = 1

private:
    double r_;
};

// Photon-number distribution p_0..p_Nmax with certified truncation tails.
// Exact finite-support distributions (Fock, explicit prob lists, and their
// mixtures) have zero tails; thermal/Poisson constructors truncate and
// remember their family so weighted tail bounds can be produced on demand.
class PhotonDistribution {
public:
    static PhotonDistribution fock(int n);
    static PhotonDistribution thermal(double ratio, double tail_tol = 1e-13);
    static PhotonDistribution poisson(double lambda, double tail_tol = 1e-13);
    // Exact finite support; probabilities must already sum to 1 (1e-12).
    static PhotonDistribution from_probs(std::vector<double> probs);
    static PhotonDistribution mix(const PhotonDistribution& a,
                                  const PhotonDistribution& b, double weight);

    const std::vector<double>& probs() const { return probs_; }
    int n_max() const { return static_cast<int>(probs_.size()) - 1; }
    bool exact_support() const { return components_.empty(); }
    // Certified bound on sum_{n>Nmax} p_n.
    double tail_bound() const;
    // Certified bound on sum_{n>Nmax} (n+1)^order p_n.
    double weighted_tail_bound(int order) const;

    double mean() const;
    double second_moment() const;
    double variance() const;
    // <N(N-1)...(N-k+1)>
    double falling_moment(int k) const;
    // <(N+1)(N+2)...(N+k)>
    double shifted_rising_moment(int k) const;

private:
    struct TailComponent {
        enum class Kind { thermal, poisson } kind;
        double weight;
        double param;
    };
    PhotonDistribution() = default;
    double component_tail(const TailComponent& c, int order) const;

    std::vector<double> probs_;
    std::vector<TailComponent> components_; // empty <=> exact support
};

// Latent coherence sum_{n>=1} f(p_n, r p_{n-1}) n, evaluated with a
// certified truncation error (must stay below 1e-10, else
// CertificationError).  Zero iff p is geometric with ratio r.
double latent_coherence(const PhotonDistribution& p, const BoltzmannRatio& r);

// Illuminance 4 sum_{n>=1} r p_n p_{n-1} n / (p_n + r p_{n-1}); terms with
// zero denominator contribute 0.  Complementary to the latent coherence.
double illuminance(const PhotonDistribution& p, const BoltzmannRatio& r);

// C_r + I_r - [(1+r)<N> + r]; identically 0 up to rounding and tails.
double tradeoff_check(const PhotonDistribution& p, const BoltzmannRatio& r);

// Largest latent coherence any classical (positive-P) state of the given
// mean photon number can reach: (1-r) mean_n + r.
double classical_witness_bound(double mean_n, const BoltzmannRatio& r);
// Largest over all states: (1+r) mean_n + r, attained iff the distribution
// is supported on only even or only odd photon numbers.
double all_states_bound(double mean_n, const BoltzmannRatio& r);

struct WitnessReport {
    double coherence;
    double classical_bound;
    double all_states_bound;
    bool fired; // coherence certifiably exceeds the classical bound
};
WitnessReport run_classical_witness(const PhotonDistribution& p,
                                    const BoltzmannRatio& r);

// Order-k generalization sum_n f(p_n, r^k p_{n-k}) n_(k) with the falling
// factorial n_(k); k = 1 is latent_coherence.
double generalized_coherence_k(const PhotonDistribution& p,
                               const BoltzmannRatio& r, int k);
// Classical ceiling for the same sum: <N_(k)> + r^k (<(N+1)^(k)> - 2<N_(k)>).
double generalized_classical_bound(const PhotonDistribution& p,
                                   const BoltzmannRatio& r, int k);

// Latent coherence of a Poisson distribution with mean lambda through its
// integral representation
//   r(l+1) - 3l + 4 l/r - (4 l^2/r^2) Integral_0^1 u^{l/r-1} e^{l(u-1)} du,
// with the endpoint singularity substituted away when l/r < 1.  r = 0
// returns lambda directly (C_0 = <N>).  Independent of the series path.
double poisson_coherence(double lambda, const BoltzmannRatio& r);

// The r -> 0 limit of the illumination QFI, 4(<N>+1).  Distinct from
// illuminance at r = 0, which is identically 0: the illumination QFI's
// denominator n_r vanishes in that limit, so the two do not commute.
double illumination_qfi_zero_ratio(const PhotonDistribution& p);

// Optimal-measurement weights w_n = (p_n - r p_{n-1})/(p_n + r p_{n-1}) for
// n = 1..Nmax+1 (0 where the denominator vanishes): the reweighting of the
// annihilation-operator matrix elements in the symmetric logarithmic
// derivative.
std::vector<double> sld_weights(const PhotonDistribution& p,
                                const BoltzmannRatio& r);

// Normalized number covariance of the two output arms of a balanced beam
// splitter fed with p and a thermal background of mean n_r:
//   (Var(N) + <N>^2 - <N> + 2 n_r^2) / (<N> + n_r)^2 - 1.
// Always >= -1; negative iff Var(N) < (2 n_r + 1)<N> - n_r^2.
double two_mode_covariance(const PhotonDistribution& p,
                           const BoltzmannRatio& r);

// Mandel Q: (Var(N) - <N>)/<N>; >= -1, 0 for Poisson.
double q_parameter(const PhotonDistribution& p);

// True iff some background occupation makes the two-mode covariance
// negative, i.e. Var(N) < <N>(<N>+1) (the maximizing background sits at
// n_r = <N>).
bool negative_covariance_achievable(const PhotonDistribution& p);

// Latent coherence of a T_source thermal beam against a T_background
// thermal reference as a function of wavelength; scan + golden-section
// refinement of the peak.
struct BeamScanPoint {
    double wavelength;
    double coherence;
    double mean_n;
};
struct BeamScanResult {
    double best_wavelength;
    double best_coherence;
    double mean_n_at_best;
};
double thermal_beam_coherence(double t_background, double t_source,
                              double wavelength);
double thermal_beam_mean_n(double t_source, double wavelength);
BeamScanResult thermal_beam_scan(double t_background, double t_source,
                                 const std::vector<double>& wavelength_grid);

// Best phase-sensing QFI with linear optics and a thermal background:
// (hbar_omega)^2 (n_r + 1) C_r(p).
double optical_phase_qfi(const PhotonDistribution& p, const BoltzmannRatio& r,
                         double hbar_omega = 1.0);
// Best mean interaction speed in the same setting; the identical quantity
// at unit energy scale.
double optical_interaction_speed(const PhotonDistribution& p,
                                 const BoltzmannRatio& r);

} // namespace thermetry
