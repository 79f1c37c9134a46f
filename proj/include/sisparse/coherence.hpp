#pragma once

#include <optional>

#include "sisparse/types.hpp"

namespace sisparse {

struct CoherenceReport {
  double mu = 0.0;
  int argmax_row = 0;  // generator index in the first bank/basis (0-based)
  int argmax_col = 0;  // generator index in the second bank/basis (0-based)
  std::optional<double> argmax_omega;  // absent for discrete coherence
  double lower_bound = 0.0;            // 1/sqrt(N)
  double upper_bound = 1.0;
};

/// Coherence of two orthonormal bases of C^N: the largest absolute inner
/// product between columns. Ties broken by smallest (row, col).
CoherenceReport discrete_coherence(const Eigen::MatrixXcd& basis_a,
                                   const Eigen::MatrixXcd& basis_b);

/// Analog coherence of two orthonormal generator banks: the grid maximum of
/// the sampled cross-spectrum magnitude over all generator pairs. The true
/// definition takes an essential supremum over omega; we report the grid
/// maximum. Ties broken by smallest (row, col, grid index).
CoherenceReport analog_coherence(const GeneratorBank& bank_a, const GeneratorBank& bank_b,
                                 const FrequencyGrid& grid);

struct DictionaryCoherence {
  double mu = 0.0;
  double lower_bound = 0.0;  // sqrt((m - N)/(N (m - 1))) for an N x m input
};

/// Normalized max off-diagonal Gram magnitude of a dictionary matrix.
DictionaryCoherence dictionary_coherence(const Eigen::MatrixXcd& dict);

struct UncertaintyCheck {
  int a_count = 0;
  int b_count = 0;
  double geometric_mean = 0.0;
  double arithmetic_mean = 0.0;
  double bound = 0.0;  // 1/mu
  bool satisfied = false;
  bool tight = false;
};

/// Evaluates the two-basis sparsity relation
///   (A + B)/2 >= sqrt(A*B) >= 1/mu
/// for active-generator counts A, B and a coherence mu in (0, 1].
/// `tight` means both inequalities hold with equality within 1e-9.
UncertaintyCheck uncertainty_check(int a_count, int b_count, double mu);

}  // namespace sisparse
