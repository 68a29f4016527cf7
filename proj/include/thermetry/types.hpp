#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace thermetry {

// Energy levels of the probe Hamiltonian, nondecreasing, with the ground
// level pinned to zero.  Arbitrary input is shifted so energies()[0] == 0
// and the applied shift is recorded (none of the computed quantities depend
// on it).
class EnergySpectrum {
public:
    explicit EnergySpectrum(std::vector<double> energies);

    const std::vector<double>& energies() const { return energies_; }
    double shift() const { return shift_; }
    std::size_t dim() const { return energies_.size(); }
    double max_energy() const { return energies_.back(); }
    // Z_S = sum_i exp(-beta * eps_i)
    double partition_function(double beta) const;

private:
    std::vector<double> energies_;
    double shift_ = 0.0;
};

// Eigenvalues of a density operator: nonnegative, summing to 1 within 1e-12.
class DiagonalState {
public:
    explicit DiagonalState(std::vector<double> probs);
    static DiagonalState gibbs(const EnergySpectrum& spectrum, double beta);

    const std::vector<double>& probs() const { return probs_; }
    std::size_t dim() const { return probs_.size(); }

private:
    std::vector<double> probs_;
};

// A state spectrum paired with generator eigenvalues of the same dimension.
struct SpectralPair {
    SpectralPair(DiagonalState probs_in, std::vector<double> hvals_in);
    DiagonalState probs;
    std::vector<double> hvals;
};

// Dense complex matrix checked for Hermiticity on construction.
class HermitianOperator {
public:
    explicit HermitianOperator(Eigen::MatrixXcd m, double tol = 1e-12);
    static HermitianOperator diagonal(const std::vector<double>& values);

    const Eigen::MatrixXcd& matrix() const { return m_; }
    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }

private:
    Eigen::MatrixXcd m_;
};

} // namespace thermetry
