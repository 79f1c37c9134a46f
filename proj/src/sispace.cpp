#include "sisparse/sispace.hpp"

#include <Eigen/Eigenvalues>

namespace sisparse {

namespace {

void check_compatible(const GeneratorBank& a, const GeneratorBank& b,
                      const FrequencyGrid& grid) {
  if (a.period != b.period)
    throw MismatchedBanks("banks have different shift periods");
  if (a.replica_count != b.replica_count)
    throw MismatchedBanks("banks have different replica counts");
  if (a.grid_size != b.grid_size || a.grid_size != grid.size())
    throw MismatchedBanks("banks have different grid sizes");
}

}  // namespace

SpectralMatrix cross_spectrum(const GeneratorBank& bank_a, const GeneratorBank& bank_b,
                              const FrequencyGrid& grid) {
  check_compatible(bank_a, bank_b, grid);
  const int k = grid.size();
  const int b = bank_a.replica_count;
  SpectralMatrix m = SpectralMatrix::zero(bank_a.count, bank_b.count, k);
  for (int i = 0; i < k; ++i) {
    Eigen::MatrixXcd& mi = m.at(i);
    for (int l = 0; l < bank_a.count; ++l) {
      for (int r = 0; r < bank_b.count; ++r) {
        cd acc(0.0, 0.0);
        for (int s = 0; s < b; ++s)
          acc += std::conj(bank_a.spectra[l](s, i)) * bank_b.spectra[r](s, i);
        mi(l, r) = acc / bank_a.period;
      }
    }
  }
  return m;
}

SpectralMatrix gram_matrix(const GeneratorBank& bank, const FrequencyGrid& grid) {
  return cross_spectrum(bank, bank, grid);
}

RieszBounds riesz_bounds(const SpectralMatrix& gram, const FrequencyGrid& grid,
                         double hermitian_tol) {
  if (gram.rows != gram.cols) throw NotHermitian("gram spectrum is not square");
  if (gram.grid_size() != grid.size())
    throw DimensionMismatch("gram spectrum does not match the grid");

  double alpha = std::numeric_limits<double>::infinity();
  double beta = -std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig;
  for (int i = 0; i < grid.size(); ++i) {
    const Eigen::MatrixXcd& g = gram.at(i);
    const double asym = (g - g.adjoint()).cwiseAbs().maxCoeff();
    if (asym > hermitian_tol)
      throw NotHermitian("gram spectrum asymmetry " + std::to_string(asym) +
                         " at grid index " + std::to_string(i));
    eig.compute((g + g.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    alpha = std::min(alpha, eig.eigenvalues().minCoeff());
    beta = std::max(beta, eig.eigenvalues().maxCoeff());
  }
  return RieszBounds{std::max(alpha, 0.0), std::max(beta, 0.0)};
}

bool is_orthonormal(const GeneratorBank& bank, const FrequencyGrid& grid, double tol) {
  const SpectralMatrix gram = gram_matrix(bank, grid);
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(bank.count, bank.count);
  for (int i = 0; i < grid.size(); ++i)
    if ((gram.at(i) - eye).cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

double signal_norm(const CoeffSpectra& coeffs, const FrequencyGrid& grid) {
  if (coeffs.grid_size() != grid.size())
    throw DimensionMismatch("coefficient spectra do not match the grid");
  return std::sqrt(coeffs.values.squaredNorm() / grid.size());
}

CoeffSpectra synthesize_samples(const SpectralMatrix& dict, const CoeffSpectra& gamma) {
  if (dict.cols != gamma.count())
    throw DimensionMismatch("dictionary has " + std::to_string(dict.cols) +
                            " columns but gamma has " + std::to_string(gamma.count()) +
                            " rows");
  if (dict.grid_size() != gamma.grid_size())
    throw DimensionMismatch("dictionary and gamma grids differ");
  CoeffSpectra out = CoeffSpectra::zero(dict.rows, gamma.grid_size());
  for (int i = 0; i < gamma.grid_size(); ++i)
    out.values.col(i) = dict.at(i) * gamma.values.col(i);
  return out;
}

CoeffSpectra dtft(const Eigen::MatrixXcd& sequences, const FrequencyGrid& grid) {
  const int len = static_cast<int>(sequences.cols());
  if (len > grid.size())
    throw TooLong("sequence length " + std::to_string(len) + " exceeds grid size " +
                  std::to_string(grid.size()));
  CoeffSpectra out = CoeffSpectra::zero(static_cast<int>(sequences.rows()), grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    const double omega = grid.omega(i);
    for (int n = 0; n < len; ++n) {
      const cd phase = std::exp(cd(0.0, -omega * n));
      out.values.col(i) += sequences.col(n) * phase;
    }
  }
  return out;
}

CoeffSpectra dtft(const Eigen::MatrixXd& sequences, const FrequencyGrid& grid) {
  return dtft(Eigen::MatrixXcd(sequences.cast<cd>()), grid);
}

CoeffSpectra dtft(const Eigen::VectorXcd& sequence, const FrequencyGrid& grid) {
  return dtft(Eigen::MatrixXcd(sequence.transpose()), grid);
}

Eigen::MatrixXcd idtft(const CoeffSpectra& coeffs, const FrequencyGrid& grid) {
  if (coeffs.grid_size() != grid.size())
    throw DimensionMismatch("coefficient spectra do not match the grid");
  const int k = grid.size();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(coeffs.count(), k);
  for (int n = 0; n < k; ++n) {
    for (int i = 0; i < k; ++i) {
      const cd phase = std::exp(cd(0.0, grid.omega(i) * n));
      out.col(n) += coeffs.values.col(i) * phase;
    }
    out.col(n) /= static_cast<double>(k);
  }
  return out;
}

}  // namespace sisparse
