#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sisparse {

// Base class for all domain errors. `code()` is a stable machine-readable
// identifier; the CLI maps it into error records and exit codes.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

struct MismatchedBanks : Error {
  explicit MismatchedBanks(const std::string& w) : Error("mismatched_banks", w) {}
};

struct NotHermitian : Error {
  explicit NotHermitian(const std::string& w) : Error("not_hermitian", w) {}
};

struct NotOrthonormal : Error {
  explicit NotOrthonormal(const std::string& w) : Error("not_orthonormal", w) {}
};

struct NotUnitary : Error {
  explicit NotUnitary(const std::string& w) : Error("not_unitary", w) {}
};

// Cross-correlation matrix of two generator banks is not unitary: the banks
// do not span the same space.
struct NotUnitaryCross : Error {
  explicit NotUnitaryCross(const std::string& w) : Error("not_unitary_cross", w) {}
};

struct GridNotDivisible : Error {
  explicit GridNotDivisible(const std::string& w) : Error("grid_not_divisible", w) {}
};

struct NotPerfectSquare : Error {
  explicit NotPerfectSquare(const std::string& w) : Error("not_perfect_square", w) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& w) : Error("dimension_mismatch", w) {}
};

struct TooLong : Error {
  explicit TooLong(const std::string& w) : Error("too_long", w) {}
};

struct TooLarge : Error {
  explicit TooLarge(const std::string& w) : Error("too_large", w) {}
};

struct NoSolution : Error {
  explicit NoSolution(const std::string& w) : Error("no_solution", w) {}
};

struct ZeroColumn : Error {
  explicit ZeroColumn(const std::string& w) : Error("zero_column", w) {}
};

struct InconsistentSystem : Error {
  explicit InconsistentSystem(const std::string& w) : Error("inconsistent_system", w) {}
};

struct StructureNotConstant : Error {
  explicit StructureNotConstant(const std::string& w) : Error("structure_not_constant", w) {}
};

struct SamplerNotBasis : Error {
  explicit SamplerNotBasis(const std::string& w) : Error("sampler_not_basis", w) {}
};

struct RankDeficientAtFrequency : Error {
  RankDeficientAtFrequency(const std::string& w, int grid_index, double omega)
      : Error("rank_deficient_at_frequency", w), grid_index(grid_index), omega(omega) {}
  int grid_index;
  double omega;
};

// A computed coherence fell outside its proven bounds by more than the
// diagnostic tolerance. Raised instead of clamping.
struct CoherenceBoundViolation : Error {
  explicit CoherenceBoundViolation(const std::string& w)
      : Error("coherence_bound_violation", w) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error("parse_error", w) {}
};

struct ValidationError : Error {
  ValidationError(std::string field, const std::string& w)
      : Error("validation_error", w), field(std::move(field)) {}
  std::string field;
};

struct IoError : Error {
  explicit IoError(const std::string& w) : Error("io_error", w) {}
};

}  // namespace sisparse
