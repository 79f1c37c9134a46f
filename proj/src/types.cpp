#include "sisparse/types.hpp"

namespace sisparse {

GeneratorBank make_bank(int count, double period, int replica_count,
                        const FrequencyGrid& grid,
                        const std::function<cd(int, double)>& spectrum) {
  if (count < 1) throw ValidationError("bank.count", "generator count must be positive");
  if (period <= 0.0) throw ValidationError("bank.period", "period must be positive");
  if (replica_count < 1)
    throw ValidationError("bank.replica_count", "replica count must be positive");

  GeneratorBank bank;
  bank.period = period;
  bank.count = count;
  bank.replica_count = replica_count;
  bank.grid_size = grid.size();
  bank.spectra.reserve(count);
  for (int l = 0; l < count; ++l) {
    Eigen::MatrixXcd s(replica_count, grid.size());
    for (int i = 0; i < grid.size(); ++i) {
      const double omega = grid.omega(i);
      for (int k = 0; k < replica_count; ++k) {
        const int shift = replica_for_slot(omega, replica_count, k);
        const double nu = (omega - 2.0 * kPi * shift) / period;
        s(k, i) = spectrum(l, nu);
      }
    }
    bank.spectra.push_back(std::move(s));
  }
  return bank;
}

}  // namespace sisparse
