#include "thermetry/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "thermetry/fisher.hpp"

namespace thermetry {

EigenSystem hermitian_eigensystem(const HermitianOperator& h) {
    if (h.dim() > 4096)
        throw std::invalid_argument(
            "hermitian_eigensystem: dimension above 4096");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.matrix());
    if (es.info() != Eigen::Success)
        throw std::runtime_error("hermitian_eigensystem: did not converge");
    EigenSystem out;
    out.values.assign(es.eigenvalues().data(),
                      es.eigenvalues().data() + es.eigenvalues().size());
    out.vectors = es.eigenvectors();
    return out;
}

double spread(const HermitianOperator& h) {
    const EigenSystem es = hermitian_eigensystem(h);
    return es.values.back() - es.values.front();
}

double qfi_explicit(const DiagonalState& rho_eigs,
                    const Eigen::MatrixXcd& rho_vecs,
                    const HermitianOperator& h) {
    const auto& p = rho_eigs.probs();
    const auto d = static_cast<Eigen::Index>(p.size());
    if (rho_vecs.rows() != d || rho_vecs.cols() != d ||
        h.dim() != p.size())
        throw std::invalid_argument("qfi_explicit: dimension mismatch");
    const double udev =
        (rho_vecs.adjoint() * rho_vecs - Eigen::MatrixXcd::Identity(d, d))
            .cwiseAbs()
            .maxCoeff();
    if (udev > 1e-10)
        throw std::invalid_argument("qfi_explicit: rho_vecs is not unitary");

    const Eigen::MatrixXcd m = rho_vecs.adjoint() * h.matrix() * rho_vecs;
    KahanSum acc;
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = i + 1; j < d; ++j) {
            if (p[i] == 0.0 && p[j] == 0.0) continue;
            acc.add(fisher_difference(p[i], p[j]) * std::norm(m(i, j)));
        }
    // diagonal terms vanish; off-diagonal pairs are symmetric, so the
    // 2*sum_{ij} collapses to 4*sum_{i<j}
    return 4.0 * acc.value();
}

double max_qfi_for_spectrum(const SpectralPair& sp) {
    std::vector<double> p = sp.probs.probs();
    std::vector<double> h = sp.hvals;
    std::sort(p.begin(), p.end(), std::greater<double>());
    std::sort(h.begin(), h.end());
    const std::size_t d = p.size();
    KahanSum acc;
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t j = d - 1 - i;
        const double gap = h[j] - h[i];
        acc.add(fisher_difference(p[i], p[j]) * gap * gap);
    }
    return 0.5 * acc.value();
}

Eigen::MatrixXcd optimal_unitary_for_spectrum(const SpectralPair& sp) {
    const auto& p = sp.probs.probs();
    const auto& h = sp.hvals;
    const std::size_t d = p.size();
    for (std::size_t i = 1; i < d; ++i) {
        if (p[i] > p[i - 1])
            throw std::invalid_argument(
                "optimal_unitary_for_spectrum: probs must be nonincreasing");
        if (h[i] < h[i - 1])
            throw std::invalid_argument(
                "optimal_unitary_for_spectrum: hvals must be nondecreasing");
    }
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(d, d);
    const double s = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t j = d - 1 - i;
        if (2 * i + 1 < d) {
            u(i, i) = s;
            u(j, i) = s;
        } else if (2 * i + 1 == d) {
            u(i, i) = 1.0;
        } else {
            u(i, i) = s;
            u(j, i) = -s;
        }
    }
    return u;
}

} // namespace thermetry
