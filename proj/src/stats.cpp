#include "penergy/stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace penergy::stats {

namespace {

double mean(std::span<const double> v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        std::ostringstream msg;
        msg << "pearson: dimension mismatch (" << x.size() << " vs " << y.size() << ")";
        throw ValidationError(msg.str());
    }
    if (x.size() < 2) {
        throw ValidationError("pearson: at least two samples are required");
    }

    // Two passes; the one-pass expansion cancels catastrophically for
    // counts near 1e10.
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw ValidationError("pearson: first argument has zero variance");
    if (syy == 0.0) throw ValidationError("pearson: second argument has zero variance");

    const double r = sxy / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

CorrelationReport correlation_report(const Dataset& dataset) {
    const auto& records = dataset.records();
    if (records.size() < 2) {
        throw ValidationError("correlation report requires at least two records");
    }

    std::vector<double> energy;
    energy.reserve(records.size());
    for (const auto& r : records) energy.push_back(r.energy_joules);

    const double e0 = energy.front();
    if (std::all_of(energy.begin(), energy.end(), [&](double e) { return e == e0; })) {
        throw ValidationError("correlation report: energies have zero variance");
    }

    CorrelationReport report;
    std::vector<double> column(records.size());

    for (EventKind kind : all_event_kinds()) {
        for (std::size_t i = 0; i < records.size(); ++i) {
            column[i] = static_cast<double>(records[i].events.count(kind));
        }
        try {
            report.by_event[kind.index()] = pearson(column, energy);
        } catch (const ValidationError&) {
            report.by_event[kind.index()] = std::nullopt;  // degenerate column
        }
    }

    for (std::size_t i = 0; i < records.size(); ++i) {
        column[i] = records[i].decode_time_seconds;
    }
    try {
        report.decode_time = pearson(column, energy);
    } catch (const ValidationError&) {
        report.decode_time = std::nullopt;
    }
    return report;
}

ErrorReport mean_relative_error(std::span<const double> predicted,
                                std::span<const double> actual,
                                std::span<const std::string> ids) {
    if (predicted.size() != actual.size()) {
        throw ValidationError("mean_relative_error: prediction/measurement length mismatch");
    }
    if (predicted.empty()) {
        throw ValidationError("mean_relative_error: no records");
    }
    if (!ids.empty() && ids.size() != predicted.size()) {
        throw ValidationError("mean_relative_error: id list length mismatch");
    }

    ErrorReport report;
    report.n_records = predicted.size();
    report.per_record.reserve(predicted.size());

    double sum = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const std::string key = ids.empty() ? std::to_string(i) : ids[i];
        if (!(actual[i] > 0.0)) {
            throw ValidationError("record '" + key +
                                  "': measured energy must be strictly positive "
                                  "for relative-error evaluation");
        }
        const double rel = std::abs(predicted[i] - actual[i]) / actual[i];
        report.per_record.emplace_back(key, rel);
        sum += rel;
    }
    report.mean_relative_error = sum / static_cast<double>(predicted.size());
    return report;
}

}  // namespace penergy::stats
