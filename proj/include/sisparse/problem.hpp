#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sisparse/decompose.hpp"
#include "sisparse/types.hpp"

namespace sisparse {

enum class ProblemKind { spike_fourier, unitary_mixed, sinc_frame, custom };
enum class Pipeline { constant, rich, frame };

/// Planted joint-sparse content: which dictionary rows are active and how
/// their coefficient sequences are drawn.
struct PlantedSpec {
  std::vector<int> support;      // explicit 0-based rows; empty = seeded draw
  int sparsity = 1;              // support size when drawn from the seed
  int sequence_length = 0;       // 0 = grid_k / 4
  bool real_sequences = true;
  std::optional<Eigen::MatrixXcd> sequences;  // explicit rows, one per support entry
};

/// Explicit generator spectra tables for the custom kind.
struct CustomBanks {
  double period = 1.0;
  int replica_count = 0;
  std::vector<Eigen::MatrixXcd> phi;  // per generator: replica_count x grid_k
  std::vector<Eigen::MatrixXcd> psi;
};

struct ProblemSpec {
  ProblemKind kind = ProblemKind::spike_fourier;
  int n = 4;
  int m = 0;          // frame size; defaults to 2n for sinc_frame
  int grid_k = 0;     // 0 = default (adjusted to divisibility by n)
  double period = 1.0;
  std::uint64_t seed = 0;
  Solver solver = Solver::l1;
  Pipeline pipeline = Pipeline::constant;
  int rich_freqs = 0;  // 0 = 2n
  std::optional<PlantedSpec> planted;
  std::optional<CustomBanks> custom;
};

/// Smallest even multiple of n no smaller than `base`.
int default_grid_size(int n, int base = 256);

/// Parses and validates a problem file. Numbers survive a save/load round
/// trip bit-identically.
ProblemSpec load_problem(const std::string& path);
void save_problem(const ProblemSpec& spec, const std::string& path);

std::string problem_to_json_string(const ProblemSpec& spec);
ProblemSpec problem_from_json_string(const std::string& text);

/// A fully materialized instance: banks, forward dictionary spectrum,
/// planted coefficients and the synthesized sample spectra.
struct BuiltProblem {
  explicit BuiltProblem(FrequencyGrid g) : grid(std::move(g)) {}

  FrequencyGrid grid;
  GeneratorBank phi;        // sampling bank
  GeneratorBank psi;        // second basis (two-basis kinds)
  GeneratorBank frame;      // overcomplete dictionary bank (sinc_frame kind)
  SpectralMatrix dict;      // forward model spectrum
  CoeffSpectra gamma_true;
  std::vector<int> support_true;
  CoeffSpectra samples;
};

BuiltProblem build_problem(const ProblemSpec& spec);

}  // namespace sisparse
