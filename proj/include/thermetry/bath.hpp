#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "thermetry/types.hpp"

namespace thermetry {

// One bath level: energy, degeneracy count, and log(count).  count is +inf
// when the degeneracy exceeds exact double-integer range; operations that
// need exact counts refuse such levels, ratio studies use log_count only.
struct BathLevel {
    double energy;
    double count;
    double log_count;
};

// Finite heat bath at inverse temperature beta with strictly increasing
// level energies.
struct BathSpec {
    std::vector<BathLevel> levels;
    double beta;
    double log_partition() const; // log sum_k count_k exp(-beta*energy_k)
};

// Equally spaced nondegenerate levels k*eps, k = 0..k_max.
BathSpec ladder_bath(double eps, int k_max, double beta);
// n two-level systems with splitting xi: levels k*xi with binomial counts.
BathSpec nqubit_bath(double xi, std::int64_t n, double beta);

// One total-energy sector of system+bath: at total energy E the joint state
// is diagonal with eigenvalue p_i * exp(beta*eps_i) * weight, repeated
// count_i = D(E - eps_i) times for each contributing system level i.
struct BlockEntry {
    std::size_t sys_index;
    double count;
};
struct EnergyBlock {
    double total_energy;
    std::vector<BlockEntry> entries; // ascending sys_index
    double log_weight;               // log( exp(-beta*E) / Z_B )
    double weight() const;
    double dimension() const; // sum of counts
};

std::vector<EnergyBlock> block_decompose(const DiagonalState& state,
                                         const EnergySpectrum& spectrum,
                                         const BathSpec& bath);

// Fixed-spectrum QFI maximum of one block, evaluated on the run-length
// encoded (q, eps) lists without materializing repeated entries, scaled by
// the block weight.
double block_max_qfi(const EnergyBlock& block, const DiagonalState& state,
                     const EnergySpectrum& spectrum, double beta);

// Energy-conserving-unitary phase-sensing limit with this finite bath:
// compensated sum of block_max_qfi over all blocks.  Converges to
// max_qfi_thermal as the bath grows.
double finite_bath_max_qfi(const DiagonalState& state,
                           const EnergySpectrum& spectrum,
                           const BathSpec& bath);

// Same construction for the mean interaction speed: per block the unweighted
// mirrored Fisher sum (best split puts the top half of the q's against the
// bottom half), scaled by block weight and summed.
double finite_bath_interaction_speed(const DiagonalState& state,
                                     const EnergySpectrum& spectrum,
                                     const BathSpec& bath);

// Materialized (eigenvalue, energy) lists of one block: the unnormalized
// weight p_i * exp(beta*eps_i) and the level energy, each repeated count
// times.  Refused above max_dim entries; intended for cross-checks against
// the run-length-encoded evaluation.
std::pair<std::vector<double>, std::vector<double>>
expand_block(const EnergyBlock& block, const DiagonalState& state,
             const EnergySpectrum& spectrum, double beta,
             std::size_t max_dim = 64);

// Two-level system (excited probability p1) exchanging excitations with a
// resonant bosonic mode at inverse temperature beta, coupling strength
// omega_rabi: the mean-interaction-speed limit in closed form,
//   omega^2 f(p0 exp(-beta eps), p1) / (1 - exp(-beta eps)).
double jaynes_cummings_qfi(double p0, double p1, double eps, double beta,
                           double omega_rabi);
// Same quantity as the per-sector series
//   sum_{n>=1} f(p0, p1 e^{beta eps}) omega^2 n e^{-beta eps n} / Z_B,
// summed until the certified geometric remainder is below tol.
double jaynes_cummings_qfi_series(double p0, double p1, double eps,
                                  double beta, double omega_rabi,
                                  double tol = 1e-14);

// How close the n-qubit bath is to an ideal exponential density of states:
// max over the +-window_sigmas typical window of
// |D(E) e^{beta xi} / D(E + xi) - 1|, plus the probability the bath sits in
// that window.
struct DegeneracyRatioStudy {
    double max_fractional_deviation;
    double window_probability;
    std::int64_t k_lo;
    std::int64_t k_hi;
};
DegeneracyRatioStudy degeneracy_ratio_study(double xi, std::int64_t n,
                                            double beta,
                                            double window_sigmas = 3.0);

} // namespace thermetry
