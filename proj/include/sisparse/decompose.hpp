#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sisparse/mmv.hpp"
#include "sisparse/types.hpp"

namespace sisparse {

/// Factorization M(omega) = W(omega) * A * Z(omega) with A constant,
/// Z_r(omega) = e^{-j omega z_r} a unimodular column phase, and W an
/// optional per-grid-point diagonal row factor (frame case). Column delays
/// are real-valued slopes; the two-basis detector snaps them to integers.
struct ConstantFactorization {
  Eigen::MatrixXcd constant_factor;             // A, gauge W(omega_ref) = I
  Eigen::VectorXd column_delays;                // z_r
  std::optional<Eigen::MatrixXcd> row_diagonal; // W: rows x K diagonal entries
  bool detected = false;
  double max_deviation = 0.0;
  int grid_begin = 0;  // grid index range the factorization was fitted on
  int grid_end = 0;

  Eigen::VectorXcd column_phases(double omega) const {
    Eigen::VectorXcd z(column_delays.size());
    for (int r = 0; r < column_delays.size(); ++r)
      z(r) = std::exp(cd(0.0, -omega * column_delays(r)));
    return z;
  }
};

struct DetectOptions {
  bool integer_delays = true;  // snap column delays to integers
  bool fit_row_diagonal = false;
  int grid_begin = 0;
  int grid_end = -1;  // -1 = full grid
};

/// Numerical structure detection. Fits per-entry phase slopes of M over the
/// grid range, separates them into row and column delays, takes the constant
/// factor from the first grid point of the range and gates the fit on a hard
/// 1e-8 reconstruction residual. detected = false is the soft failure path.
ConstantFactorization detect_constant_structure(const SpectralMatrix& m,
                                                const FrequencyGrid& grid,
                                                const DetectOptions& opts = {});

struct DecomposeDiagnostics {
  double mu = 0.0;          // coherence of the constant MMV dictionary
  int sparsity = 0;         // |S|
  bool uniqueness_ok = false;   // k < 1/mu
  bool l1_recovery_ok = false;  // k < (sqrt(2) - 0.5)/mu
  std::optional<bool> kruskal_ok;  // sigma(D) >= 2k, when exhaustively computable
  bool condition_violated = false;
};

/// Recovered joint-sparse representation: support, coefficient spectra on
/// the support (embedded rows elsewhere zero), and the relative residual of
/// re-synthesizing the input samples.
struct JointSparseSolution {
  std::vector<int> support;  // sorted, 0-based over the dictionary columns
  CoeffSpectra gamma;
  double residual = 0.0;
  DecomposeDiagnostics diagnostics;
};

/// Stacked two-basis dictionary spectrum [I  M_phi_psi(omega)].
SpectralMatrix two_onb_dictionary(const GeneratorBank& phi, const GeneratorBank& psi,
                                  const FrequencyGrid& grid);

/// Sparse decomposition in the dictionary of two orthonormal banks when the
/// cross spectrum factors through a constant matrix. Samples are the
/// sequences <phi_l(t - nT), x(t)> in spectral form. Pipeline: structure
/// detection, continuous-to-finite reduction, joint support recovery over
/// the constant dictionary [I  A], then per-frequency least squares on the
/// true dictionary.
///
/// Real generator pairs (spike/Fourier) admit the factorization only on the
/// half grid omega in [0, pi); that route is used automatically and requires
/// conjugate-symmetric samples (real sequences).
JointSparseSolution decompose_two_onb_constant(const GeneratorBank& phi,
                                               const GeneratorBank& psi,
                                               const CoeffSpectra& samples,
                                               const FrequencyGrid& grid, Solver solver);

/// Sparse decomposition for arbitrary dictionary spectra under the richness
/// assumption: the joint support of any `m_freqs` sampled frequency vectors
/// equals the full support. Solves one l1 problem per selected frequency,
/// takes the union of supports, and recovers spectra on the full grid.
JointSparseSolution decompose_rich(const SpectralMatrix& dict_spectrum,
                                   const CoeffSpectra& samples, const FrequencyGrid& grid,
                                   int m_freqs, std::uint64_t seed);

/// Sparse decomposition in an overcomplete frame (m > N generators), sampled
/// with a basis bank: M_{hd} = W * A * Z, support from the constant A, and
/// spectra via Z_S^{-1} (A_S^H A_S)^{-1} A_S^H W^{-1} c.
JointSparseSolution decompose_frame(const GeneratorBank& frame_dict,
                                    const GeneratorBank& sampler,
                                    const CoeffSpectra& samples, const FrequencyGrid& grid,
                                    Solver solver);

/// Per-grid-point least squares restricted to support columns; rows outside
/// the support are identically zero in the result.
CoeffSpectra recover_on_support(const SpectralMatrix& dict_spectrum,
                                const std::vector<int>& support,
                                const CoeffSpectra& samples, const FrequencyGrid& grid);

/// Deterministic stratified selection of m_freqs grid indices from a seed.
std::vector<int> select_rich_frequencies(const FrequencyGrid& grid, int m_freqs,
                                         std::uint64_t seed);

}  // namespace sisparse
