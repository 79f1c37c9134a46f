#pragma once

#include "sisparse/types.hpp"

namespace sisparse {

/// Sampled cross-correlation spectrum of two banks: entry (l, r) at omega_i
/// is (1/T) * sum_k conj(Phi_l) * Psi_r over the replica slots. This is the
/// DTFT of the cross-correlation sequence <phi_l(t - nT), psi_r(t)>.
SpectralMatrix cross_spectrum(const GeneratorBank& bank_a, const GeneratorBank& bank_b,
                              const FrequencyGrid& grid);

/// Gram spectrum of a bank, cross_spectrum(bank, bank). Hermitian PSD at
/// every grid point.
SpectralMatrix gram_matrix(const GeneratorBank& bank, const FrequencyGrid& grid);

/// Extreme eigenvalues of a Hermitian matrix spectrum over the grid.
/// alpha > 0 means the shifts form a Riesz basis (on the grid); alpha = 0
/// with beta > 0 means at most a frame.
RieszBounds riesz_bounds(const SpectralMatrix& gram, const FrequencyGrid& grid,
                         double hermitian_tol = 1e-10);

/// True iff the Gram spectrum is the identity at every grid point within tol.
bool is_orthonormal(const GeneratorBank& bank, const FrequencyGrid& grid, double tol);

/// l2 norm of the stacked coefficient sequences, computed on the grid as
/// sqrt((1/K) * sum_i sum_l |A_l(omega_i)|^2). Equals the signal L2 norm
/// when the generating bank is orthonormal.
double signal_norm(const CoeffSpectra& coeffs, const FrequencyGrid& grid);

/// Forward sampling model c(omega_i) = dict(omega_i) * gamma(omega_i).
CoeffSpectra synthesize_samples(const SpectralMatrix& dict, const CoeffSpectra& gamma);

/// DTFT of finite sequences (one per row, length <= K), embedded exactly
/// into the K-point grid: A(omega_i) = sum_n a[n] e^{-j omega_i n}.
CoeffSpectra dtft(const Eigen::MatrixXcd& sequences, const FrequencyGrid& grid);
CoeffSpectra dtft(const Eigen::MatrixXd& sequences, const FrequencyGrid& grid);
CoeffSpectra dtft(const Eigen::VectorXcd& sequence, const FrequencyGrid& grid);

/// Inverse transform; returns length-K sequences (one per row). For inputs
/// produced by dtft from length-L sequences the first L samples reproduce
/// the input exactly up to round-off and the rest are zero.
Eigen::MatrixXcd idtft(const CoeffSpectra& coeffs, const FrequencyGrid& grid);

}  // namespace sisparse
