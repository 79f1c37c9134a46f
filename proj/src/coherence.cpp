#include "sisparse/coherence.hpp"

#include "sisparse/sispace.hpp"

namespace sisparse {

namespace {

void check_orthonormal_columns(const Eigen::MatrixXcd& basis, const char* name,
                               double tol) {
  const Eigen::MatrixXcd gram = basis.adjoint() * basis;
  const Eigen::MatrixXcd eye =
      Eigen::MatrixXcd::Identity(basis.cols(), basis.cols());
  const double dev = (gram - eye).cwiseAbs().maxCoeff();
  if (dev > tol)
    throw NotOrthonormal(std::string(name) + " columns deviate from orthonormality by " +
                         std::to_string(dev));
}

}  // namespace

CoherenceReport discrete_coherence(const Eigen::MatrixXcd& basis_a,
                                   const Eigen::MatrixXcd& basis_b) {
  if (basis_a.rows() != basis_a.cols() || basis_b.rows() != basis_b.cols() ||
      basis_a.rows() != basis_b.rows())
    throw DimensionMismatch("bases must be square matrices of equal size");
  check_orthonormal_columns(basis_a, "basis_a", 1e-10);
  check_orthonormal_columns(basis_b, "basis_b", 1e-10);

  const int n = static_cast<int>(basis_a.cols());
  const Eigen::MatrixXcd inner = basis_a.adjoint() * basis_b;
  CoherenceReport report;
  report.lower_bound = 1.0 / std::sqrt(static_cast<double>(n));
  report.upper_bound = 1.0;
  for (int l = 0; l < n; ++l)
    for (int r = 0; r < n; ++r)
      if (std::abs(inner(l, r)) > report.mu) {
        report.mu = std::abs(inner(l, r));
        report.argmax_row = l;
        report.argmax_col = r;
      }
  return report;
}

CoherenceReport analog_coherence(const GeneratorBank& bank_a, const GeneratorBank& bank_b,
                                 const FrequencyGrid& grid) {
  if (!is_orthonormal(bank_a, grid, 1e-8))
    throw NotOrthonormal("first bank is not orthonormal on the grid");
  if (!is_orthonormal(bank_b, grid, 1e-8))
    throw NotOrthonormal("second bank is not orthonormal on the grid");

  const SpectralMatrix cross = cross_spectrum(bank_a, bank_b, grid);
  CoherenceReport report;
  const int n = bank_a.count;
  report.lower_bound = 1.0 / std::sqrt(static_cast<double>(n));
  report.upper_bound = 1.0;
  // Tie-break order: smallest (row, col, grid index).
  for (int l = 0; l < cross.rows; ++l)
    for (int r = 0; r < cross.cols; ++r)
      for (int i = 0; i < grid.size(); ++i) {
        const double mag = std::abs(cross.at(i)(l, r));
        if (mag > report.mu) {
          report.mu = mag;
          report.argmax_row = l;
          report.argmax_col = r;
          report.argmax_omega = grid.omega(i);
        }
      }

  // Report the raw grid maximum; a violation of the proven bounds beyond
  // tolerance indicates a grid-resolution or construction bug.
  if (report.mu > report.upper_bound + 1e-9 ||
      (bank_a.count == bank_b.count && report.mu < report.lower_bound - 1e-9))
    throw CoherenceBoundViolation("coherence " + std::to_string(report.mu) +
                                  " outside [1/sqrt(N), 1]");
  return report;
}

DictionaryCoherence dictionary_coherence(const Eigen::MatrixXcd& dict) {
  const int m = static_cast<int>(dict.cols());
  const int n = static_cast<int>(dict.rows());
  Eigen::VectorXd norms(m);
  for (int c = 0; c < m; ++c) {
    norms(c) = dict.col(c).norm();
    if (norms(c) == 0.0)
      throw ZeroColumn("dictionary column " + std::to_string(c) + " is zero");
  }
  DictionaryCoherence out;
  for (int l = 0; l < m; ++l)
    for (int r = l + 1; r < m; ++r) {
      const double mag =
          std::abs(dict.col(l).dot(dict.col(r))) / (norms(l) * norms(r));
      out.mu = std::max(out.mu, mag);
    }
  out.lower_bound =
      m > n ? std::sqrt(static_cast<double>(m - n) / (static_cast<double>(n) * (m - 1)))
            : 0.0;
  return out;
}

UncertaintyCheck uncertainty_check(int a_count, int b_count, double mu) {
  if (!(mu > 0.0 && mu <= 1.0))
    throw std::invalid_argument("mu must lie in (0, 1]");
  if (a_count < 0 || b_count < 0)
    throw std::invalid_argument("active counts must be nonnegative");
  UncertaintyCheck check;
  check.a_count = a_count;
  check.b_count = b_count;
  check.geometric_mean = std::sqrt(static_cast<double>(a_count) * b_count);
  check.arithmetic_mean = (a_count + b_count) / 2.0;
  check.bound = 1.0 / mu;
  check.satisfied = check.geometric_mean >= check.bound - 1e-9;
  check.tight = std::abs(check.arithmetic_mean - check.geometric_mean) <= 1e-9 &&
                std::abs(check.geometric_mean - check.bound) <= 1e-9;
  return check;
}

}  // namespace sisparse
