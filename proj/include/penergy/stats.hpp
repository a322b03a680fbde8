#pragma once

#include <span>
#include <string>

#include "penergy/domain.hpp"

namespace penergy::stats {

// Sample Pearson correlation, computed with the two-pass
// mean-then-deviation formula. Result is clamped to [-1, 1].
// Throws ValidationError on length mismatch, length < 2, or zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

// Pearson coefficient of every event count (and decoding time) against
// measured energy. Degenerate columns are reported as undefined entries;
// a degenerate energy column fails the whole report.
CorrelationReport correlation_report(const Dataset& dataset);

// Mean relative error per |estimate - measured| / measured, averaged over
// all records. Every measured value must be strictly positive. When ids is
// empty, record indices are used as per-record keys.
ErrorReport mean_relative_error(std::span<const double> predicted,
                                std::span<const double> actual,
                                std::span<const std::string> ids = {});

}  // namespace penergy::stats
