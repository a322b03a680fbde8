#pragma once

#include <string>

#include "penergy/domain.hpp"
#include "penergy/validation.hpp"

namespace penergy::render {

// Correlation grid with rows r/L1/LL and columns I/R/W, decoding time on a
// separate row. Degenerate entries render as "n/a" (null in JSON).
std::string correlation_text(const CorrelationReport& report);
std::string correlation_json(const CorrelationReport& report);

std::string error_report_text(const ErrorReport& report, bool per_record);
std::string error_report_json(const ErrorReport& report, bool per_record);

std::string model_text(const ModelCoefficients& model);

std::string selection_text(const validation::SubsetSelection& selection, bool ranking);
std::string selection_json(const validation::SubsetSelection& selection, bool ranking);

// One row per (codec, decoder) group plus the pooled "All" row; columns
// 1 PE / 4 PE / 9 PE / time. Unavailable cells render as "-".
std::string comparison_text(const validation::ComparisonTable& table);
std::string comparison_json(const validation::ComparisonTable& table);

}  // namespace penergy::render
