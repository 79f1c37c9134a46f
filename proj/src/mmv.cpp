#include "sisparse/mmv.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <numeric>

namespace sisparse {

namespace {

constexpr int kExhaustiveLimit = 24;
constexpr double kSupportEps = 1e-6;   // relative to the largest row norm
constexpr double kFitResidual = 1e-8;  // relative residual accepted by the oracle

void check_problem(const MmvProblem& prob) {
  const int n = static_cast<int>(prob.dict.rows());
  const int m = static_cast<int>(prob.dict.cols());
  if (n < 1 || m < n)
    throw DimensionMismatch("dictionary must be N x m with m >= N >= 1");
  if (prob.measurements.rows() != n)
    throw DimensionMismatch("measurement rows do not match the dictionary");
  for (int c = 0; c < m; ++c)
    if (prob.dict.col(c).norm() == 0.0)
      throw ZeroColumn("dictionary column " + std::to_string(c) + " is zero");
}

std::vector<int> support_from_rows(const Eigen::MatrixXcd& coeffs,
                                   Eigen::VectorXd& row_norms) {
  const int m = static_cast<int>(coeffs.rows());
  row_norms.resize(m);
  for (int r = 0; r < m; ++r) row_norms(r) = coeffs.row(r).norm();
  const double threshold = kSupportEps * row_norms.maxCoeff();
  std::vector<int> support;
  for (int r = 0; r < m; ++r)
    if (row_norms(r) > threshold && row_norms(r) > 0.0) support.push_back(r);
  return support;
}

// Advances `comb` to the next size-k combination of {0..m-1} in
// lexicographic order. Returns false after the last one.
bool next_combination(std::vector<int>& comb, int m) {
  const int k = static_cast<int>(comb.size());
  for (int i = k - 1; i >= 0; --i) {
    if (comb[i] < m - k + i) {
      ++comb[i];
      for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

MmvSolution l0_oracle(const MmvProblem& prob, int k_max) {
  check_problem(prob);
  const int m = static_cast<int>(prob.dict.cols());
  const int p = static_cast<int>(prob.measurements.cols());
  if (m > kExhaustiveLimit)
    throw TooLarge("exhaustive search limited to m <= 24, got m = " + std::to_string(m));
  if (k_max < 0 || k_max > m)
    throw std::invalid_argument("k_max must lie in [0, m]");

  const double scale = prob.measurements.norm();
  int tried = 0;
  for (int k = 0; k <= k_max; ++k) {
    std::vector<int> comb(k);
    std::iota(comb.begin(), comb.end(), 0);
    bool more = k <= m;
    while (more) {
      ++tried;
      Eigen::MatrixXcd sub(prob.dict.rows(), k);
      for (int j = 0; j < k; ++j) sub.col(j) = prob.dict.col(comb[j]);
      Eigen::MatrixXcd coeffs_s =
          k > 0 ? Eigen::MatrixXcd(sub.colPivHouseholderQr().solve(prob.measurements))
                : Eigen::MatrixXcd::Zero(0, p);
      const double res = k > 0 ? (sub * coeffs_s - prob.measurements).norm()
                               : prob.measurements.norm();
      if (res <= kFitResidual * std::max(scale, 1e-300)) {
        MmvSolution sol;
        sol.coeffs = Eigen::MatrixXcd::Zero(m, p);
        for (int j = 0; j < k; ++j) sol.coeffs.row(comb[j]) = coeffs_s.row(j);
        sol.support = comb;
        sol.row_norms.resize(m);
        for (int r = 0; r < m; ++r) sol.row_norms(r) = sol.coeffs.row(r).norm();
        sol.residual = res;
        sol.iterations = tried;
        sol.converged = true;
        return sol;
      }
      more = k > 0 && next_combination(comb, m);
    }
  }
  throw NoSolution("no support of size <= " + std::to_string(k_max) +
                   " fits the measurements");
}

MmvSolution l1_mmv_solve(const MmvProblem& prob, double tol, int max_iter) {
  check_problem(prob);
  if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
  const int m = static_cast<int>(prob.dict.cols());
  const int p = static_cast<int>(prob.measurements.cols());

  // Alternating directions on  min sum_l ||U^l||_2  s.t.  D U = X  with the
  // splitting U = V: the U-update projects onto the affine constraint, the
  // V-update is a row-wise shrinkage, penalty fixed at 1.
  const double rho = 1.0;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(prob.dict);

  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(m, p);
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(m, p);
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(m, p);
  const double scale = std::max(1.0, prob.measurements.norm());

  int iter = 0;
  bool converged = false;
  while (iter < max_iter) {
    ++iter;
    const Eigen::MatrixXcd y = v - w;
    u = y - cod.solve(prob.dict * y - prob.measurements);

    const Eigen::MatrixXcd v_prev = v;
    const Eigen::MatrixXcd t = u + w;
    for (int r = 0; r < m; ++r) {
      const double norm = t.row(r).norm();
      const double factor = norm > 1.0 / rho ? 1.0 - 1.0 / (rho * norm) : 0.0;
      v.row(r) = factor * t.row(r);
    }
    w += u - v;

    const double primal = (u - v).norm();
    const double dual = rho * (v - v_prev).norm();
    if (primal <= tol * scale && dual <= tol * scale) {
      converged = true;
      break;
    }
  }

  MmvSolution sol;
  sol.coeffs = u;  // feasible iterate: D*U = X to machine precision
  sol.support = support_from_rows(u, sol.row_norms);
  sol.residual = (prob.dict * u - prob.measurements).norm();
  sol.iterations = iter;
  sol.converged = converged;
  if (!converged)
    throw NotConverged("l2,1 solver did not reach tol " + std::to_string(tol) + " in " +
                           std::to_string(max_iter) + " iterations",
                       std::move(sol));
  return sol;
}

int kruskal_rank(const Eigen::MatrixXcd& dict) {
  const int n = static_cast<int>(dict.rows());
  const int m = static_cast<int>(dict.cols());
  if (m > kExhaustiveLimit)
    throw TooLarge("exhaustive search limited to m <= 24, got m = " + std::to_string(m));
  for (int c = 0; c < m; ++c)
    if (dict.col(c).norm() == 0.0)
      throw ZeroColumn("dictionary column " + std::to_string(c) + " is zero");

  const double sigma_max = dict.jacobiSvd().singularValues()(0);
  const double threshold = 1e-10 * sigma_max;
  const int q_cap = std::min(n, m);
  for (int q = 1; q <= q_cap; ++q) {
    std::vector<int> comb(q);
    std::iota(comb.begin(), comb.end(), 0);
    do {
      Eigen::MatrixXcd sub(n, q);
      for (int j = 0; j < q; ++j) sub.col(j) = dict.col(comb[j]);
      const Eigen::VectorXd sv = sub.jacobiSvd().singularValues();
      if (sv(sv.size() - 1) <= threshold) return q - 1;
    } while (next_combination(comb, m));
  }
  return q_cap;
}

CtfOutput ctf_reduce(const CoeffSpectra& samples, const FrequencyGrid& grid) {
  return ctf_reduce(samples, grid, 0, grid.size());
}

CtfOutput ctf_reduce(const CoeffSpectra& samples, const FrequencyGrid& grid,
                     int begin, int end) {
  if (samples.grid_size() != grid.size())
    throw DimensionMismatch("samples do not match the grid");
  if (begin < 0 || end > grid.size() || begin >= end)
    throw std::invalid_argument("bad grid range");
  const int n = samples.count();
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(n, n);
  for (int i = begin; i < end; ++i)
    q += samples.values.col(i) * samples.values.col(i).adjoint();
  q /= static_cast<double>(end - begin);

  CtfOutput out;
  out.q_matrix = (q + q.adjoint()) / 2.0;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(out.q_matrix);
  const Eigen::VectorXd values = eig.eigenvalues();
  const double lambda_max = std::max(values.maxCoeff(), 0.0);
  out.rank_threshold = 1e-10 * lambda_max;

  int rank = 0;
  for (int j = 0; j < n; ++j)
    if (values(j) > out.rank_threshold && values(j) > 0.0) ++rank;
  out.basis.resize(n, rank);
  // Eigenvalues ascend; emit columns in descending order.
  int col = 0;
  for (int j = n - 1; j >= 0; --j)
    if (values(j) > out.rank_threshold && values(j) > 0.0)
      out.basis.col(col++) = eig.eigenvectors().col(j) * std::sqrt(values(j));
  return out;
}

CtfOutput ctf_reduce_time(const Eigen::MatrixXcd& sample_sequences) {
  const int n = static_cast<int>(sample_sequences.rows());
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < sample_sequences.cols(); ++i)
    q += sample_sequences.col(i) * sample_sequences.col(i).adjoint();

  CtfOutput out;
  out.q_matrix = (q + q.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(out.q_matrix);
  const Eigen::VectorXd values = eig.eigenvalues();
  const double lambda_max = std::max(values.maxCoeff(), 0.0);
  out.rank_threshold = 1e-10 * lambda_max;
  int rank = 0;
  for (int j = 0; j < n; ++j)
    if (values(j) > out.rank_threshold && values(j) > 0.0) ++rank;
  out.basis.resize(n, rank);
  int col = 0;
  for (int j = n - 1; j >= 0; --j)
    if (values(j) > out.rank_threshold && values(j) > 0.0)
      out.basis.col(col++) = eig.eigenvectors().col(j) * std::sqrt(values(j));
  return out;
}

std::vector<int> support_recover(const Eigen::MatrixXcd& basis,
                                 const Eigen::MatrixXcd& dict, Solver solver) {
  if (basis.cols() == 0) return {};
  if (basis.rows() != dict.rows())
    throw DimensionMismatch("basis rows do not match the dictionary");

  // The columns of V must lie in the column space of D.
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(dict);
  const Eigen::MatrixXcd fit = dict * cod.solve(basis);
  if ((fit - basis).norm() > 1e-8 * std::max(basis.norm(), 1e-300))
    throw InconsistentSystem("basis columns leave the dictionary column space");

  MmvProblem prob{dict, basis};
  if (solver == Solver::l0)
    return l0_oracle(prob, static_cast<int>(dict.rows())).support;
  return l1_mmv_solve(prob).support;
}

}  // namespace sisparse
