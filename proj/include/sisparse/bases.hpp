#pragma once

#include <vector>

#include "sisparse/types.hpp"

namespace sisparse {

/// Analog spike basis for the space of signals bandlimited to pi*N/T:
/// Phi_l(nu) = sqrt(T/N) e^{-j nu l T/N} on [-pi N/T, pi N/T), l = 0..N-1.
/// In time these are shifted sincs with spacing T' = T/N; their samples on
/// the T' lattice are shifted unit spikes. Requires K divisible by N.
GeneratorBank spike_basis(int n, double period, const FrequencyGrid& grid);

/// Analog Fourier basis for the same space: Psi_l(nu) = sqrt(T) on the l-th
/// band I_l = [pi l/T, pi (l+1)/T) + mirror, l = 0..N-1, zero elsewhere.
/// Bands are disjoint and tile the space's band exactly.
GeneratorBank fourier_basis(int n, double period, const FrequencyGrid& grid);

/// Overcomplete sinc frame of m > N generators for the space bandlimited to
/// pi*N/T: sincs of bandwidth pi*N/T placed on the finer lattice T/m.
GeneratorBank sinc_frame(int n, int m, double period, const FrequencyGrid& grid);

struct SpikeFourierPair {
  GeneratorBank spike;
  GeneratorBank fourier;
  int n = 0;
  double period = 1.0;
};

/// The maximally incoherent pair: coherence 1/sqrt(N).
SpikeFourierPair spike_fourier_pair(int n, double period, const FrequencyGrid& grid);

struct LpfTrainSignal {
  int n = 0;
  CoeffSpectra fourier_coeffs;
  CoeffSpectra spike_coeffs;
  std::vector<int> active_fourier;  // 0-based generator indices
  std::vector<int> active_spike;
};

/// Bandlimited train of lowpass pulses spaced 2*pi*sqrt(N)/T in frequency.
/// Needs sqrt(N) generators in both the spike and the Fourier basis, which
/// meets the uncertainty bound with equality. Requires N a perfect square
/// and K divisible by N.
LpfTrainSignal lpf_train(int n, double period, const FrequencyGrid& grid);

/// Re-expands coefficients from one orthonormal bank in another orthonormal
/// bank spanning the same space: out(omega) = M_{to,from}(omega) * in(omega).
/// Rejects banks whose cross spectrum is not unitary (different spaces).
CoeffSpectra change_basis(const CoeffSpectra& coeffs_in, const GeneratorBank& bank_from,
                          const GeneratorBank& bank_to, const FrequencyGrid& grid);

/// Builds an orthonormal bank phi from an orthonormal bank psi, a unitary
/// mixing matrix A and integer delays z, such that
/// cross_spectrum(phi, psi) = A * diag(e^{-j omega z_r}) at every grid point.
GeneratorBank unitary_mixed_basis(const GeneratorBank& psi, const Eigen::MatrixXcd& mix,
                                  const std::vector<int>& z_phases, const FrequencyGrid& grid);

}  // namespace sisparse
