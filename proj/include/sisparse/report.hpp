#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "sisparse/coherence.hpp"
#include "sisparse/decompose.hpp"
#include "sisparse/types.hpp"

namespace sisparse {

enum class ReportFormat { structured, csv };

/// Machine-readable run record. `doc` is the structured content; the
/// optional spectrum/gamma tables feed the per-grid-point CSV export.
struct Report {
  nlohmann::ordered_json doc;
  std::optional<FrequencyGrid> grid;
  std::optional<SpectralMatrix> spectrum;
  std::optional<CoeffSpectra> gamma;
};

nlohmann::ordered_json to_json(const CoherenceReport& report);
nlohmann::ordered_json to_json(const UncertaintyCheck& check);
nlohmann::ordered_json to_json(const RieszBounds& bounds);
nlohmann::ordered_json to_json(const ConstantFactorization& fact);
nlohmann::ordered_json to_json(const JointSparseSolution& sol);

/// Writes the report. The structured format is the full JSON document; the
/// CSV format emits one row per grid point with |M| entries and |gamma|
/// row magnitudes, suitable for external plotting.
void write_report(const Report& report, const std::string& path, ReportFormat format);

}  // namespace sisparse
