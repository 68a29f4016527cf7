#include "thermetry/types.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "thermetry/fisher.hpp"

namespace thermetry {

EnergySpectrum::EnergySpectrum(std::vector<double> energies)
    : energies_(std::move(energies)) {
    if (energies_.empty())
        throw std::invalid_argument("EnergySpectrum: no levels");
    for (double e : energies_)
        if (!std::isfinite(e))
            throw std::invalid_argument("EnergySpectrum: nonfinite energy");
    for (std::size_t i = 1; i < energies_.size(); ++i)
        if (energies_[i] < energies_[i - 1])
            throw std::invalid_argument(
                "EnergySpectrum: energies must be nondecreasing");
    shift_ = energies_.front();
    if (shift_ != 0.0)
        for (double& e : energies_) e -= shift_;
    energies_.front() = 0.0;
}

double EnergySpectrum::partition_function(double beta) const {
    KahanSum z;
    for (double e : energies_) z.add(std::exp(-beta * e));
    return z.value();
}

DiagonalState::DiagonalState(std::vector<double> probs)
    : probs_(std::move(probs)) {
    if (probs_.empty()) throw std::invalid_argument("DiagonalState: empty");
    KahanSum s;
    for (double& p : probs_) {
        if (!std::isfinite(p))
            throw std::invalid_argument("DiagonalState: nonfinite entry");
        if (p < 0.0) {
            if (p < -1e-12)
                throw std::invalid_argument(
                    "DiagonalState: negative probability");
            p = 0.0; // forgive rounding-level negatives
        }
        s.add(p);
    }
    if (std::abs(s.value() - 1.0) > 1e-12)
        throw std::invalid_argument(
            "DiagonalState: probabilities must sum to 1");
}

DiagonalState DiagonalState::gibbs(const EnergySpectrum& spectrum,
                                   double beta) {
    if (!std::isfinite(beta) || beta < 0.0)
        throw std::invalid_argument("gibbs: beta must be finite and >= 0");
    const double z = spectrum.partition_function(beta);
    std::vector<double> p;
    p.reserve(spectrum.dim());
    for (double e : spectrum.energies()) p.push_back(std::exp(-beta * e) / z);
    return DiagonalState(std::move(p));
}

SpectralPair::SpectralPair(DiagonalState probs_in,
                           std::vector<double> hvals_in)
    : probs(std::move(probs_in)), hvals(std::move(hvals_in)) {
    if (probs.dim() != hvals.size())
        throw std::invalid_argument("SpectralPair: dimension mismatch");
    for (double h : hvals)
        if (!std::isfinite(h))
            throw std::invalid_argument("SpectralPair: nonfinite hval");
}

HermitianOperator::HermitianOperator(Eigen::MatrixXcd m, double tol)
    : m_(std::move(m)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols())
        throw std::invalid_argument("HermitianOperator: square matrix required");
    const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
    const double dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (dev > tol * scale)
        throw std::invalid_argument("HermitianOperator: not Hermitian");
    Eigen::MatrixXcd sym = 0.5 * (m_ + m_.adjoint());
    m_ = std::move(sym);
}

HermitianOperator HermitianOperator::diagonal(
    const std::vector<double>& values) {
    const auto d = static_cast<Eigen::Index>(values.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) m(i, i) = values[i];
    return HermitianOperator(std::move(m));
}

} // namespace thermetry
