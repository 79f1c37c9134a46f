#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "sisparse/errors.hpp"

namespace sisparse {

using cd = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;

/// K uniformly spaced samples omega_i = 2*pi*i/K of the 2*pi-periodic DTFT
/// axis. Every "for all omega" statement in the library is evaluated on this
/// grid. K must be even so that omega = pi is on-grid.
class FrequencyGrid {
public:
  explicit FrequencyGrid(int size) : size_(size) {
    if (size < 2) throw ValidationError("grid.size", "grid size must be >= 2");
    if (size % 2 != 0) throw ValidationError("grid.size", "grid size must be even");
    points_.resize(size);
    for (int i = 0; i < size; ++i) points_[i] = 2.0 * kPi * i / size;
  }

  int size() const { return size_; }
  double omega(int i) const { return points_[i]; }
  const Eigen::VectorXd& points() const { return points_; }

private:
  int size_;
  Eigen::VectorXd points_;
};

/// N generators of a shift-invariant space with shift period T, stored as
/// continuous-frequency spectra folded onto B replica slots.
///
/// Slot k of generator l at grid point omega_i holds Phi_l(nu) with
/// nu = (omega_i - 2*pi*k')/T, where k' is the unique integer congruent to k
/// (mod B) whose nu falls in the canonical band [-pi*B/T, pi*B/T). For
/// generators bandlimited to that band the fold is exact and the replica sum
/// defining cross spectra has exactly B terms.
struct GeneratorBank {
  double period = 1.0;                      // T
  int count = 0;                            // N
  int replica_count = 0;                    // B
  int grid_size = 0;                        // K
  std::vector<Eigen::MatrixXcd> spectra;    // N matrices, each B x K

  bool all_finite() const {
    for (const auto& s : spectra)
      if (!s.allFinite()) return false;
    return true;
  }
};

/// First replica index of the canonical window at normalized frequency
/// omega: the B consecutive integers k' with omega - 2*pi*k' in
/// [-pi*B, pi*B).
inline int replica_window_base(double omega, int replica_count) {
  return static_cast<int>(std::floor((omega - kPi * replica_count) / (2.0 * kPi))) + 1;
}

/// Actual replica shift stored in slot `slot` at normalized frequency omega.
inline int replica_for_slot(double omega, int replica_count, int slot) {
  const int base = replica_window_base(omega, replica_count);
  int r = (slot - base) % replica_count;
  if (r < 0) r += replica_count;
  return base + r;
}

/// Samples a continuous-frequency spectrum onto the folded replica storage.
/// `spectrum(l, nu)` evaluates generator l at continuous frequency nu.
GeneratorBank make_bank(int count, double period, int replica_count,
                        const FrequencyGrid& grid,
                        const std::function<cd(int, double)>& spectrum);

/// A matrix-valued 2*pi-periodic function sampled on the grid.
struct SpectralMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Eigen::MatrixXcd> values;  // K matrices, each rows x cols

  int grid_size() const { return static_cast<int>(values.size()); }
  const Eigen::MatrixXcd& at(int i) const { return values[i]; }
  Eigen::MatrixXcd& at(int i) { return values[i]; }

  static SpectralMatrix zero(int rows, int cols, int grid_size) {
    SpectralMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.values.assign(grid_size, Eigen::MatrixXcd::Zero(rows, cols));
    return m;
  }
};

/// A vector-valued 2*pi-periodic function on the grid: DTFTs of coefficient
/// sequences, one row per sequence.
struct CoeffSpectra {
  Eigen::MatrixXcd values;  // count x K

  int count() const { return static_cast<int>(values.rows()); }
  int grid_size() const { return static_cast<int>(values.cols()); }

  /// On-grid conjugate symmetry v(omega_i) = conj(v(2*pi - omega_i)),
  /// which holds exactly when the underlying sequences are real.
  bool conjugate_symmetric(double tol) const {
    const int k = grid_size();
    for (int i = 0; i < k; ++i) {
      const int j = (k - i) % k;
      for (int l = 0; l < count(); ++l)
        if (std::abs(values(l, i) - std::conj(values(l, j))) > tol) return false;
    }
    return true;
  }

  static CoeffSpectra zero(int count, int grid_size) {
    CoeffSpectra c;
    c.values = Eigen::MatrixXcd::Zero(count, grid_size);
    return c;
  }
};

/// Lower and upper bounds of the Gram spectrum over the grid.
struct RieszBounds {
  double alpha = 0.0;
  double beta = 0.0;
};

}  // namespace sisparse
