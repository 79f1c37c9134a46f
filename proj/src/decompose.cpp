#include "sisparse/decompose.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <deque>
#include <random>

#include "sisparse/coherence.hpp"
#include "sisparse/sispace.hpp"

namespace sisparse {

namespace {

constexpr double kDetectGate = 1e-8;

double relative_residual(const SpectralMatrix& dict, const CoeffSpectra& gamma,
                         const CoeffSpectra& samples) {
  double err = 0.0;
  for (int i = 0; i < gamma.grid_size(); ++i)
    err += (dict.at(i) * gamma.values.col(i) - samples.values.col(i)).squaredNorm();
  const double ref = samples.values.norm();
  if (ref == 0.0) return std::sqrt(err);
  return std::sqrt(err) / ref;
}

// Entrywise phase slope over the grid range: mean of consecutive phase
// increments divided by the grid step. Exact for linear-phase entries.
double phase_slope(const SpectralMatrix& m, int l, int r, int begin, int end,
                   double step) {
  double total = 0.0;
  for (int i = begin; i + 1 < end; ++i)
    total += std::arg(m.at(i + 1)(l, r) * std::conj(m.at(i)(l, r)));
  return total / (step * (end - begin - 1));
}

struct DelaySplit {
  Eigen::VectorXd row;  // w_l, phase slope carried by the rows
  Eigen::VectorXd col;  // z_r, delay carried by the columns
};

// Splits entrywise slopes theta(l, r) = w_l - z_r over the nonzero mask by
// breadth-first propagation; each connected component is anchored at a
// column with z = 0. Inconsistencies surface in the reconstruction gate.
DelaySplit split_slopes(const Eigen::MatrixXd& theta,
                        const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& mask,
                        bool fit_rows) {
  const int rows = static_cast<int>(theta.rows());
  const int cols = static_cast<int>(theta.cols());
  DelaySplit split;
  split.row = Eigen::VectorXd::Zero(rows);
  split.col = Eigen::VectorXd::Zero(cols);

  if (!fit_rows) {
    for (int r = 0; r < cols; ++r) {
      double acc = 0.0;
      int n = 0;
      for (int l = 0; l < rows; ++l)
        if (mask(l, r)) {
          acc += -theta(l, r);
          ++n;
        }
      split.col(r) = n > 0 ? acc / n : 0.0;
    }
    return split;
  }

  std::vector<bool> row_seen(rows, false), col_seen(cols, false);
  for (int start = 0; start < cols; ++start) {
    if (col_seen[start]) continue;
    col_seen[start] = true;
    split.col(start) = 0.0;
    std::deque<std::pair<bool, int>> queue;  // (is_row, index)
    queue.emplace_back(false, start);
    while (!queue.empty()) {
      auto [is_row, idx] = queue.front();
      queue.pop_front();
      if (is_row) {
        for (int r = 0; r < cols; ++r)
          if (mask(idx, r) && !col_seen[r]) {
            col_seen[r] = true;
            split.col(r) = split.row(idx) - theta(idx, r);
            queue.emplace_back(false, r);
          }
      } else {
        for (int l = 0; l < rows; ++l)
          if (mask(l, idx) && !row_seen[l]) {
            row_seen[l] = true;
            split.row(l) = theta(l, idx) + split.col(idx);
            queue.emplace_back(true, l);
          }
      }
    }
  }
  return split;
}

}  // namespace

ConstantFactorization detect_constant_structure(const SpectralMatrix& m,
                                                const FrequencyGrid& grid,
                                                const DetectOptions& opts) {
  const int begin = opts.grid_begin;
  const int end = opts.grid_end < 0 ? grid.size() : opts.grid_end;
  if (begin < 0 || end > grid.size() || end - begin < 2)
    throw std::invalid_argument("detection needs at least two grid points");

  const int rows = m.rows;
  const int cols = m.cols;
  ConstantFactorization fact;
  fact.grid_begin = begin;
  fact.grid_end = end;

  const Eigen::MatrixXcd& a0 = m.at(begin);
  const double a_max = a0.cwiseAbs().maxCoeff();
  if (a_max == 0.0) {
    fact.detected = false;
    fact.max_deviation = 0.0;
    for (int i = begin; i < end; ++i)
      fact.max_deviation = std::max(fact.max_deviation, m.at(i).cwiseAbs().maxCoeff());
    fact.constant_factor = a0;
    fact.column_delays = Eigen::VectorXd::Zero(cols);
    return fact;
  }

  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> mask(rows, cols);
  for (int l = 0; l < rows; ++l)
    for (int r = 0; r < cols; ++r) mask(l, r) = std::abs(a0(l, r)) > 1e-10 * a_max;

  const double step = 2.0 * kPi / grid.size();
  Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(rows, cols);
  for (int l = 0; l < rows; ++l)
    for (int r = 0; r < cols; ++r)
      if (mask(l, r)) theta(l, r) = phase_slope(m, l, r, begin, end, step);

  DelaySplit split = split_slopes(theta, mask, opts.fit_row_diagonal);
  if (opts.integer_delays)
    for (int r = 0; r < cols; ++r)
      split.col(r) = static_cast<double>(std::llround(split.col(r)));
  fact.column_delays = split.col;

  // Gauge: W(omega_begin) = I, so the constant factor is read off the first
  // fitted point with the column phases divided out.
  const double omega0 = grid.omega(begin);
  fact.constant_factor = a0 * fact.column_phases(omega0).conjugate().asDiagonal();

  if (opts.fit_row_diagonal) {
    Eigen::MatrixXcd w(rows, end - begin);
    for (int i = begin; i < end; ++i) {
      const Eigen::VectorXcd z = fact.column_phases(grid.omega(i));
      for (int l = 0; l < rows; ++l) {
        cd num(0.0, 0.0);
        double den = 0.0;
        for (int r = 0; r < cols; ++r)
          if (mask(l, r)) {
            const cd model = fact.constant_factor(l, r) * z(r);
            num += m.at(i)(l, r) * std::conj(model);
            den += std::norm(model);
          }
        w(l, i - begin) = den > 0.0 ? num / den : cd(1.0, 0.0);
      }
    }
    fact.row_diagonal = std::move(w);
  }

  double dev = 0.0;
  bool invertible = true;
  for (int i = begin; i < end; ++i) {
    Eigen::MatrixXcd pred =
        fact.constant_factor * fact.column_phases(grid.omega(i)).asDiagonal();
    if (fact.row_diagonal) {
      const auto& w = *fact.row_diagonal;
      for (int l = 0; l < rows; ++l) {
        if (std::abs(w(l, i - begin)) < 1e-8) invertible = false;
        pred.row(l) *= w(l, i - begin);
      }
    }
    dev = std::max(dev, (m.at(i) - pred).cwiseAbs().maxCoeff());
  }
  fact.max_deviation = dev;
  fact.detected = invertible && dev <= kDetectGate;
  return fact;
}

SpectralMatrix two_onb_dictionary(const GeneratorBank& phi, const GeneratorBank& psi,
                                  const FrequencyGrid& grid) {
  const SpectralMatrix cross = cross_spectrum(phi, psi, grid);
  SpectralMatrix dict = SpectralMatrix::zero(phi.count, phi.count + psi.count, grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    dict.at(i).leftCols(phi.count) = Eigen::MatrixXcd::Identity(phi.count, phi.count);
    dict.at(i).rightCols(psi.count) = cross.at(i);
  }
  return dict;
}

namespace {

// Applies the inverse of the fitted row diagonal to the samples over the
// fitted range, leaving row supports untouched.
CoeffSpectra row_whiten(const ConstantFactorization& fact, const CoeffSpectra& samples) {
  CoeffSpectra out = samples;
  if (!fact.row_diagonal) return out;
  const auto& w = *fact.row_diagonal;
  for (int i = fact.grid_begin; i < fact.grid_end; ++i)
    for (int l = 0; l < out.count(); ++l)
      out.values(l, i) /= w(l, i - fact.grid_begin);
  return out;
}

DecomposeDiagnostics make_diagnostics(double mu, int sparsity, Solver solver,
                                      const Eigen::MatrixXcd& mmv_dict) {
  DecomposeDiagnostics diag;
  diag.mu = mu;
  diag.sparsity = sparsity;
  diag.uniqueness_ok = sparsity < 1.0 / mu;
  diag.l1_recovery_ok = sparsity < (std::sqrt(2.0) - 0.5) / mu;
  if (mmv_dict.cols() <= 24 && sparsity > 0) {
    const int sigma = kruskal_rank(mmv_dict);
    diag.kruskal_ok = sigma >= 2 * sparsity;
  }
  diag.condition_violated =
      solver == Solver::l1 ? !diag.l1_recovery_ok : !diag.uniqueness_ok;
  return diag;
}

}  // namespace

JointSparseSolution decompose_two_onb_constant(const GeneratorBank& phi,
                                               const GeneratorBank& psi,
                                               const CoeffSpectra& samples,
                                               const FrequencyGrid& grid, Solver solver) {
  if (!is_orthonormal(phi, grid, 1e-8))
    throw NotOrthonormal("sampling bank is not orthonormal on the grid");
  if (!is_orthonormal(psi, grid, 1e-8))
    throw NotOrthonormal("second bank is not orthonormal on the grid");
  if (samples.count() != phi.count)
    throw DimensionMismatch("sample rows do not match the sampling bank");

  const SpectralMatrix cross = cross_spectrum(phi, psi, grid);

  // Detection ladder: plain constant structure over the full grid first,
  // then with a row diagonal, then both again on the half grid [0, pi).
  // Real generator pairs factor only on the half grid, where conjugate
  // symmetry of the samples carries the other half.
  ConstantFactorization fact =
      detect_constant_structure(cross, grid, {.integer_delays = true});
  if (!fact.detected)
    fact = detect_constant_structure(cross, grid,
                                     {.integer_delays = true, .fit_row_diagonal = true});
  if (!fact.detected && samples.conjugate_symmetric(1e-8)) {
    const DetectOptions half{.integer_delays = true, .grid_begin = 0,
                             .grid_end = grid.size() / 2};
    fact = detect_constant_structure(cross, grid, half);
    if (!fact.detected) {
      DetectOptions half_w = half;
      half_w.fit_row_diagonal = true;
      fact = detect_constant_structure(cross, grid, half_w);
    }
  }
  if (!fact.detected)
    throw StructureNotConstant("cross spectrum does not factor through a constant "
                               "matrix (max deviation " +
                               std::to_string(fact.max_deviation) + ")");

  const int n = phi.count;
  const CoeffSpectra whitened = row_whiten(fact, samples);
  const CtfOutput ctf = ctf_reduce(whitened, grid, fact.grid_begin, fact.grid_end);

  Eigen::MatrixXcd mmv_dict(n, 2 * n);
  mmv_dict.leftCols(n) = Eigen::MatrixXcd::Identity(n, n);
  mmv_dict.rightCols(n) = fact.constant_factor;

  const std::vector<int> support = support_recover(ctf.basis, mmv_dict, solver);

  const SpectralMatrix dict = two_onb_dictionary(phi, psi, grid);
  JointSparseSolution sol;
  sol.support = support;
  sol.gamma = recover_on_support(dict, support, samples, grid);
  sol.residual = relative_residual(dict, sol.gamma, samples);
  sol.diagnostics = make_diagnostics(fact.constant_factor.cwiseAbs().maxCoeff(),
                                     static_cast<int>(support.size()), solver, mmv_dict);
  return sol;
}

JointSparseSolution decompose_rich(const SpectralMatrix& dict_spectrum,
                                   const CoeffSpectra& samples, const FrequencyGrid& grid,
                                   int m_freqs, std::uint64_t seed) {
  if (samples.count() != dict_spectrum.rows)
    throw DimensionMismatch("sample rows do not match the dictionary");

  const std::vector<int> freqs = select_rich_frequencies(grid, m_freqs, seed);
  std::vector<int> support;
  double mu = 0.0;
  for (int i : freqs) {
    mu = std::max(mu, dictionary_coherence(dict_spectrum.at(i)).mu);
    if (samples.values.col(i).norm() == 0.0) continue;
    MmvProblem prob{dict_spectrum.at(i), samples.values.col(i)};
    const MmvSolution per_freq = l1_mmv_solve(prob);
    std::vector<int> merged;
    std::set_union(support.begin(), support.end(), per_freq.support.begin(),
                   per_freq.support.end(), std::back_inserter(merged));
    support = std::move(merged);
  }

  JointSparseSolution sol;
  sol.support = support;
  sol.gamma = recover_on_support(dict_spectrum, support, samples, grid);
  sol.residual = relative_residual(dict_spectrum, sol.gamma, samples);
  sol.diagnostics.mu = mu;
  sol.diagnostics.sparsity = static_cast<int>(support.size());
  sol.diagnostics.uniqueness_ok = mu > 0.0 && sol.diagnostics.sparsity < 1.0 / mu;
  sol.diagnostics.l1_recovery_ok =
      mu > 0.0 && sol.diagnostics.sparsity < (std::sqrt(2.0) - 0.5) / mu;
  sol.diagnostics.condition_violated = !sol.diagnostics.l1_recovery_ok;
  if (sol.residual > 1e-6)
    throw InconsistentSystem(
        "union support misses active rows (relative residual " +
        std::to_string(sol.residual) + "); the richness assumption failed");
  return sol;
}

JointSparseSolution decompose_frame(const GeneratorBank& frame_dict,
                                    const GeneratorBank& sampler,
                                    const CoeffSpectra& samples, const FrequencyGrid& grid,
                                    Solver solver) {
  const RieszBounds bounds = riesz_bounds(gram_matrix(sampler, grid), grid);
  if (bounds.alpha <= 1e-10 * std::max(bounds.beta, 1.0))
    throw SamplerNotBasis("sampler bank is not a Riesz basis (alpha = " +
                          std::to_string(bounds.alpha) + ")");
  if (samples.count() != sampler.count)
    throw DimensionMismatch("sample rows do not match the sampler bank");

  const SpectralMatrix cross = cross_spectrum(sampler, frame_dict, grid);
  const ConstantFactorization fact = detect_constant_structure(
      cross, grid, {.integer_delays = false, .fit_row_diagonal = true});
  if (!fact.detected)
    throw StructureNotConstant("sampled dictionary spectrum does not factor as "
                               "W * A * Z (max deviation " +
                               std::to_string(fact.max_deviation) + ")");

  const CoeffSpectra whitened = row_whiten(fact, samples);
  const CtfOutput ctf = ctf_reduce(whitened, grid, fact.grid_begin, fact.grid_end);
  const std::vector<int> support = support_recover(ctf.basis, fact.constant_factor, solver);

  JointSparseSolution sol;
  sol.support = support;
  sol.gamma = CoeffSpectra::zero(frame_dict.count, grid.size());

  const int k = static_cast<int>(support.size());
  if (k > 0) {
    Eigen::MatrixXcd a_s(fact.constant_factor.rows(), k);
    for (int j = 0; j < k; ++j) a_s.col(j) = fact.constant_factor.col(support[j]);
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a_s);
    if (svd.singularValues()(k - 1) <=
        1e-10 * svd.singularValues()(0))
      throw InconsistentSystem("support columns of the constant factor are rank deficient");
    const Eigen::MatrixXcd normal = (a_s.adjoint() * a_s).inverse() * a_s.adjoint();
    for (int i = 0; i < grid.size(); ++i) {
      Eigen::VectorXcd d = samples.values.col(i);
      if (fact.row_diagonal)
        for (int l = 0; l < d.size(); ++l) d(l) /= (*fact.row_diagonal)(l, i);
      const Eigen::VectorXcd u = normal * d;
      const Eigen::VectorXcd z = fact.column_phases(grid.omega(i));
      for (int j = 0; j < k; ++j) sol.gamma.values(support[j], i) = u(j) / z(support[j]);
    }
  }

  sol.residual = relative_residual(cross, sol.gamma, samples);
  sol.diagnostics.mu = dictionary_coherence(fact.constant_factor).mu;
  sol.diagnostics.sparsity = k;
  const double guarantee = 0.5 * (1.0 + 1.0 / sol.diagnostics.mu);
  sol.diagnostics.uniqueness_ok = k < guarantee;
  sol.diagnostics.l1_recovery_ok = k < guarantee;
  sol.diagnostics.condition_violated = !(k < guarantee);
  return sol;
}

CoeffSpectra recover_on_support(const SpectralMatrix& dict_spectrum,
                                const std::vector<int>& support,
                                const CoeffSpectra& samples, const FrequencyGrid& grid) {
  if (samples.count() != dict_spectrum.rows)
    throw DimensionMismatch("sample rows do not match the dictionary");
  CoeffSpectra gamma = CoeffSpectra::zero(dict_spectrum.cols, grid.size());
  const int k = static_cast<int>(support.size());
  if (k == 0) return gamma;

  for (int i = 0; i < grid.size(); ++i) {
    Eigen::MatrixXcd sub(dict_spectrum.rows, k);
    for (int j = 0; j < k; ++j) sub.col(j) = dict_spectrum.at(i).col(support[j]);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sub, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues()(k - 1) <= 1e-10 * svd.singularValues()(0))
      throw RankDeficientAtFrequency(
          "support columns rank deficient at grid index " + std::to_string(i), i,
          grid.omega(i));
    const Eigen::VectorXcd g = svd.solve(samples.values.col(i));
    for (int j = 0; j < k; ++j) gamma.values(support[j], i) = g(j);
  }
  return gamma;
}

std::vector<int> select_rich_frequencies(const FrequencyGrid& grid, int m_freqs,
                                         std::uint64_t seed) {
  if (m_freqs < 1) throw std::invalid_argument("m_freqs must be positive");
  m_freqs = std::min(m_freqs, grid.size());
  std::mt19937_64 rng(seed);
  std::vector<int> indices;
  indices.reserve(m_freqs);
  for (int s = 0; s < m_freqs; ++s) {
    const int lo = static_cast<int>(static_cast<std::int64_t>(s) * grid.size() / m_freqs);
    const int hi =
        static_cast<int>(static_cast<std::int64_t>(s + 1) * grid.size() / m_freqs);
    const int span = std::max(1, hi - lo);
    indices.push_back(lo + static_cast<int>(rng() % span));
  }
  return indices;
}

}  // namespace sisparse
