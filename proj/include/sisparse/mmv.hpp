#pragma once

#include <vector>

#include "sisparse/types.hpp"

namespace sisparse {

/// Joint-sparse recovery problem X = D * Gamma with row-sparse Gamma.
struct MmvProblem {
  Eigen::MatrixXcd dict;          // N x m
  Eigen::MatrixXcd measurements;  // N x p
};

struct MmvSolution {
  Eigen::MatrixXcd coeffs;    // m x p
  std::vector<int> support;   // sorted, 0-based
  Eigen::VectorXd row_norms;  // m
  double residual = 0.0;      // ||D*U - X||_F
  int iterations = 0;
  bool converged = false;
};

/// Raised when the convex solver exhausts its iteration budget; carries the
/// best iterate.
class NotConverged : public Error {
public:
  NotConverged(const std::string& w, MmvSolution best)
      : Error("not_converged", w), best_(std::move(best)) {}
  const MmvSolution& best() const { return best_; }

private:
  MmvSolution best_;
};

/// Exhaustive minimum-row-support solver. Enumerates supports by increasing
/// size (lexicographic within a size) and returns the first one whose least
/// squares fit reaches residual <= 1e-8 * ||X||_F. Guarded to m <= 24.
MmvSolution l0_oracle(const MmvProblem& prob, int k_max);

/// Convex relaxation: minimizes the sum of row l2 norms subject to
/// D*U = X, solved by an alternating-direction method with row-wise
/// shrinkage (penalty 1.0). Deterministic for fixed inputs.
MmvSolution l1_mmv_solve(const MmvProblem& prob, double tol = 1e-9, int max_iter = 50000);

/// Largest q such that every q-column submatrix has smallest singular value
/// above 1e-10 times the largest singular value of D. Exhaustive; m <= 24.
int kruskal_rank(const Eigen::MatrixXcd& dict);

struct CtfOutput {
  Eigen::MatrixXcd q_matrix;  // N x N Hermitian PSD
  Eigen::MatrixXcd basis;     // N x d, V with V * V^H = Q
  double rank_threshold = 0.0;
};

/// Continuous-to-finite reduction: Q = (1/K) sum_i c(omega_i) c(omega_i)^H,
/// factored through its eigendecomposition. Columns of `basis` are
/// eigenvectors scaled by sqrt(eigenvalue), kept above 1e-10 * lambda_max.
CtfOutput ctf_reduce(const CoeffSpectra& samples, const FrequencyGrid& grid);

/// Same reduction restricted to grid indices [begin, end).
CtfOutput ctf_reduce(const CoeffSpectra& samples, const FrequencyGrid& grid,
                     int begin, int end);

/// Time-domain variant Q = sum_n c[n] c[n]^H over finite sample sequences
/// (one row per channel). Agrees with the frequency-domain reduction for
/// sequences of length <= K.
CtfOutput ctf_reduce_time(const Eigen::MatrixXcd& sample_sequences);

enum class Solver { l1, l0 };

/// Joint support of the solutions of V = D*U. Columns of V must lie in the
/// column space of D (checked to 1e-8 relative).
std::vector<int> support_recover(const Eigen::MatrixXcd& basis, const Eigen::MatrixXcd& dict,
                                 Solver solver);

}  // namespace sisparse
