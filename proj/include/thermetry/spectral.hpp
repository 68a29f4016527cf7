#pragma once

#include "thermetry/types.hpp"

namespace thermetry {

// Ascending eigenvalues + orthonormal eigenvector columns.
struct EigenSystem {
    std::vector<double> values;
    Eigen::MatrixXcd vectors;
};

// Dense Hermitian eigendecomposition; dimensions above 4096 are refused.
EigenSystem hermitian_eigensystem(const HermitianOperator& h);

// Spectral width lambda_max - lambda_min of the generator.
double spread(const HermitianOperator& h);

// Quantum Fisher information of a state given in eigendecomposition form
// (eigenvalues rho_eigs, eigenvector columns rho_vecs) for generator h:
//   F = 2 sum_{i,j} f(p_i, p_j) |<psi_i| h |psi_j>|^2,
// pairs with p_i = p_j = 0 excluded.  rho_vecs must be unitary.
double qfi_explicit(const DiagonalState& rho_eigs,
                    const Eigen::MatrixXcd& rho_vecs,
                    const HermitianOperator& h);

// Largest QFI attainable by unitary rotation of a state with the given
// eigenvalue spectrum against a generator with eigenvalues hvals:
//   (1/2) sum_i f(p_i_down, p_i_up) (h_i_down - h_i_up)^2
// pairing the most lopsided probability pairs with the widest generator
// gaps.  Order of the inputs does not matter.
double max_qfi_for_spectrum(const SpectralPair& sp);

// A rotation attaining max_qfi_for_spectrum.  Requires probs nonincreasing
// and hvals nondecreasing (the caller fixes the pairing order); column i is
// the image of the i-th state eigenvector expressed in the generator
// eigenbasis:
//   i below the middle -> (|h_i> + |h_{d-1-i}>)/sqrt(2)
//   i at the middle    -> |h_i>            (odd dimension only)
//   i above the middle -> (|h_i> - |h_{d-1-i}>)/sqrt(2)
Eigen::MatrixXcd optimal_unitary_for_spectrum(const SpectralPair& sp);

} // namespace thermetry
