#include "sisparse/bases.hpp"

#include <cmath>

#include "sisparse/coherence.hpp"
#include "sisparse/sispace.hpp"

namespace sisparse {

namespace {

void check_divisible(int n, const FrequencyGrid& grid) {
  if (grid.size() % n != 0)
    throw GridNotDivisible("grid size " + std::to_string(grid.size()) +
                           " is not divisible by " + std::to_string(n));
}

int integer_sqrt(int n) {
  const int root = static_cast<int>(std::llround(std::sqrt(static_cast<double>(n))));
  return root * root == n ? root : -1;
}

}  // namespace

GeneratorBank spike_basis(int n, double period, const FrequencyGrid& grid) {
  if (n < 1) throw ValidationError("n", "generator count must be positive");
  check_divisible(n, grid);
  const double amp = std::sqrt(period / n);
  // Full-band modulated lowpass: storage covers exactly [-pi*N/T, pi*N/T).
  return make_bank(n, period, n, grid, [&](int l, double nu) {
    return amp * std::exp(cd(0.0, -nu * l * period / n));
  });
}

GeneratorBank fourier_basis(int n, double period, const FrequencyGrid& grid) {
  if (n < 1) throw ValidationError("n", "generator count must be positive");
  check_divisible(n, grid);
  const double amp = std::sqrt(period);
  const double step = kPi / period;
  // Generator l occupies the band [l, l+1) * pi/T and its mirror; the bands
  // are disjoint and tile the space's band. Half-open on the high-frequency
  // side so every grid point lands in exactly one band.
  return make_bank(n, period, n, grid, [&](int l, double nu) {
    const bool in_positive = nu >= l * step && nu < (l + 1) * step;
    const bool in_negative = nu >= -(l + 1) * step && nu < -l * step;
    return (in_positive || in_negative) ? cd(amp, 0.0) : cd(0.0, 0.0);
  });
}

GeneratorBank sinc_frame(int n, int m, double period, const FrequencyGrid& grid) {
  if (n < 1) throw ValidationError("n", "generator count must be positive");
  if (m < n) throw ValidationError("m", "frame size must be at least the space dimension");
  check_divisible(n, grid);
  const double amp = std::sqrt(period / n);
  // Sincs of bandwidth pi*N/T shifted on the finer lattice T/m.
  return make_bank(m, period, n, grid, [&](int r, double nu) {
    return amp * std::exp(cd(0.0, -nu * r * period / m));
  });
}

SpikeFourierPair spike_fourier_pair(int n, double period, const FrequencyGrid& grid) {
  SpikeFourierPair pair;
  pair.spike = spike_basis(n, period, grid);
  pair.fourier = fourier_basis(n, period, grid);
  pair.n = n;
  pair.period = period;
  const CoherenceReport mu = analog_coherence(pair.spike, pair.fourier, grid);
  const double expected = 1.0 / std::sqrt(static_cast<double>(n));
  if (std::abs(mu.mu - expected) > 1e-9)
    throw CoherenceBoundViolation("spike-Fourier coherence " + std::to_string(mu.mu) +
                                  " deviates from 1/sqrt(N)");
  return pair;
}

LpfTrainSignal lpf_train(int n, double period, const FrequencyGrid& grid) {
  const int root = integer_sqrt(n);
  if (root < 0)
    throw NotPerfectSquare("n = " + std::to_string(n) + " is not a perfect square");
  check_divisible(n, grid);

  const SpikeFourierPair pair = spike_fourier_pair(n, period, grid);

  LpfTrainSignal sig;
  sig.n = n;

  // Lowpass pulses of width 2*pi/T spaced 2*pi*sqrt(N)/T: the pulse at DC
  // occupies band 0, the pulse at offset 2*pi*sqrt(N)*l/T straddles bands
  // 2*sqrt(N)*l - 1 and 2*sqrt(N)*l (0-based).
  for (int l = 1; l <= root / 2; ++l) sig.active_fourier.push_back(2 * root * l - 1);
  for (int l = 1; l <= (root + 1) / 2; ++l) sig.active_fourier.push_back(2 * root * (l - 1));
  std::sort(sig.active_fourier.begin(), sig.active_fourier.end());

  // Unit pulse height in the signal spectrum puts 1/sqrt(T) in each active
  // coefficient spectrum, flat over the grid.
  sig.fourier_coeffs = CoeffSpectra::zero(n, grid.size());
  const double flat = 1.0 / std::sqrt(period);
  for (int idx : sig.active_fourier) sig.fourier_coeffs.values.row(idx).setConstant(flat);

  sig.spike_coeffs = change_basis(sig.fourier_coeffs, pair.fourier, pair.spike, grid);

  // Active spike sequences must be the sqrt(N) indices divisible by sqrt(N).
  Eigen::VectorXd norms(n);
  for (int l = 0; l < n; ++l)
    norms(l) = sig.spike_coeffs.values.row(l).norm() / std::sqrt(grid.size());
  const double threshold = 1e-8 * norms.maxCoeff();
  for (int l = 0; l < n; ++l)
    if (norms(l) > threshold) sig.active_spike.push_back(l);
  if (static_cast<int>(sig.active_spike.size()) != root)
    throw Error("lpf_train_internal", "unexpected spike-basis activity count " +
                                          std::to_string(sig.active_spike.size()));
  for (int idx : sig.active_spike)
    if (idx % root != 0)
      throw Error("lpf_train_internal",
                  "unexpected active spike index " + std::to_string(idx));

  // Both coefficient sets must synthesize the same signal.
  const CoeffSpectra back =
      change_basis(sig.spike_coeffs, pair.spike, pair.fourier, grid);
  const double rt = (back.values - sig.fourier_coeffs.values).cwiseAbs().maxCoeff();
  if (rt > 1e-8)
    throw Error("lpf_train_internal",
                "basis change round trip residual " + std::to_string(rt));

  return sig;
}

CoeffSpectra change_basis(const CoeffSpectra& coeffs_in, const GeneratorBank& bank_from,
                          const GeneratorBank& bank_to, const FrequencyGrid& grid) {
  if (!is_orthonormal(bank_from, grid, 1e-8))
    throw NotOrthonormal("source bank is not orthonormal on the grid");
  if (!is_orthonormal(bank_to, grid, 1e-8))
    throw NotOrthonormal("target bank is not orthonormal on the grid");
  if (coeffs_in.count() != bank_from.count)
    throw DimensionMismatch("coefficient rows do not match the source bank");

  const SpectralMatrix m = cross_spectrum(bank_to, bank_from, grid);
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(m.rows, m.cols);
  CoeffSpectra out = CoeffSpectra::zero(bank_to.count, grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    const double dev = (m.at(i).adjoint() * m.at(i) - eye).cwiseAbs().maxCoeff();
    if (dev > 1e-8)
      throw NotUnitaryCross("cross spectrum is not unitary at grid index " +
                            std::to_string(i) + "; banks span different spaces");
    out.values.col(i) = m.at(i) * coeffs_in.values.col(i);
  }
  return out;
}

GeneratorBank unitary_mixed_basis(const GeneratorBank& psi, const Eigen::MatrixXcd& mix,
                                  const std::vector<int>& z_phases,
                                  const FrequencyGrid& grid) {
  const int n = psi.count;
  if (mix.rows() != n || mix.cols() != n)
    throw DimensionMismatch("mixing matrix must be N x N");
  if (static_cast<int>(z_phases.size()) != n)
    throw DimensionMismatch("need one shift parameter per generator");
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
  if ((mix.adjoint() * mix - eye).cwiseAbs().maxCoeff() > 1e-10)
    throw NotUnitary("mixing matrix is not unitary");

  // phi_l = sum_r conj(A_lr) e^{+j omega z_r} psi_r gives
  // cross_spectrum(phi, psi) = A * diag(e^{-j omega z_r}) exactly.
  GeneratorBank out;
  out.period = psi.period;
  out.count = n;
  out.replica_count = psi.replica_count;
  out.grid_size = psi.grid_size;
  out.spectra.assign(n, Eigen::MatrixXcd::Zero(psi.replica_count, psi.grid_size));
  for (int l = 0; l < n; ++l)
    for (int r = 0; r < n; ++r) {
      Eigen::RowVectorXcd phase(grid.size());
      for (int i = 0; i < grid.size(); ++i)
        phase(i) = std::exp(cd(0.0, grid.omega(i) * z_phases[r]));
      out.spectra[l] += std::conj(mix(l, r)) *
                        (psi.spectra[r].array().rowwise() * phase.array()).matrix();
    }
  return out;
}

}  // namespace sisparse
