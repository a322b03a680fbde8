#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "penergy/errors.hpp"

namespace penergy {

// ---------------------------------------------------------------------------
// Processor events
// ---------------------------------------------------------------------------

enum class AccessClass : int { instruction = 0, data_read = 1, data_write = 2 };
enum class CacheLevel : int { reference = 0, l1_miss = 1, ll_miss = 2 };

std::string_view access_class_name(AccessClass cls);  // "instruction fetch", ...
std::string_view access_class_letter(AccessClass cls);  // "I", "R", "W"
std::string_view cache_level_suffix(CacheLevel level);  // "r", "L1", "LL"

// One of the nine counted event types: an access class qualified by its
// cache outcome. Canonical order is (I, R, W) major, (r, L1, LL) minor.
struct EventKind {
    AccessClass access;
    CacheLevel level;

    constexpr int index() const noexcept {
        return static_cast<int>(access) * 3 + static_cast<int>(level);
    }
    static constexpr EventKind from_index(int i) noexcept {
        return EventKind{static_cast<AccessClass>(i / 3),
                         static_cast<CacheLevel>(i % 3)};
    }

    std::string_view name() const;  // "I_r", "I_L1", ..., "W_LL"
    std::string_view cachegrind_name() const;  // "Ir", "I1mr", ..., "DLmw"

    auto operator<=>(const EventKind&) const = default;
};

inline constexpr int kEventKindCount = 9;

// All nine kinds in canonical order.
std::span<const EventKind, kEventKindCount> all_event_kinds();

std::optional<EventKind> event_kind_from_name(std::string_view name);
std::optional<EventKind> event_kind_from_cachegrind_name(std::string_view name);

// ---------------------------------------------------------------------------
// EventVector
// ---------------------------------------------------------------------------

// The nine event counts of one decoding run. Construction enforces
// cache-hierarchy monotonicity per access class:
//   count(reference) >= count(L1 miss) >= count(LL miss).
// Corrupt profiles must surface here instead of being silently repaired.
class EventVector {
public:
    static EventVector from_counts(const std::array<std::uint64_t, kEventKindCount>& counts);

    std::uint64_t count(EventKind kind) const noexcept { return counts_[kind.index()]; }
    std::uint64_t count(AccessClass cls, CacheLevel level) const noexcept {
        return count(EventKind{cls, level});
    }
    const std::array<std::uint64_t, kEventKindCount>& counts() const noexcept { return counts_; }

    bool operator==(const EventVector&) const = default;

private:
    explicit EventVector(const std::array<std::uint64_t, kEventKindCount>& counts)
        : counts_(counts) {}

    std::array<std::uint64_t, kEventKindCount> counts_;
};

// Hits derivable from the miss hierarchy: for l1_miss the L1 hits
// (reference - L1 misses), for ll_miss the LL hits (L1 misses - LL misses).
// Passing cache_level reference is invalid.
std::uint64_t derive_hits(const EventVector& v, AccessClass cls, CacheLevel level);

// ---------------------------------------------------------------------------
// Measurements
// ---------------------------------------------------------------------------

// One bitstream's decoding run: metadata, net measured energy (idle offset
// already removed upstream), wall decoding time, and the event counts.
struct MeasurementRecord {
    std::string id;
    std::string codec;    // "HEVC", "H.264", ...
    std::string decoder;  // "FFmpeg", "libde265", ...
    double energy_joules = 0.0;
    double decode_time_seconds = 0.0;
    EventVector events;
};

// Throws ValidationError on non-finite or negative energy/time or empty id.
void validate_record(const MeasurementRecord& record);

class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::vector<MeasurementRecord> records);

    const std::vector<MeasurementRecord>& records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }

    // New dataset holding the given records, in the given order.
    Dataset subset(std::span<const std::size_t> indices) const;

private:
    std::vector<MeasurementRecord> records_;
};

// ---------------------------------------------------------------------------
// Feature sets
// ---------------------------------------------------------------------------

// Sentinel predictor for the decoding-time model.
struct DecodeTimeFeature {
    auto operator<=>(const DecodeTimeFeature&) const = default;
};

using Predictor = std::variant<EventKind, DecodeTimeFeature>;

std::string_view predictor_name(const Predictor& p);  // "I_r".."W_LL" or "time"

// An ordered set of model predictors. Event predictors are kept in
// canonical EventKind order. Decoding time is a rival model, never mixed
// with event predictors.
class FeatureSet {
public:
    // Default-constructed sets are empty placeholders; every operation
    // requires a set built through one of the factories below.
    FeatureSet() = default;

    static FeatureSet of_events(std::vector<EventKind> kinds);
    static FeatureSet of_decode_time();
    static FeatureSet all_events();

    // Accepts a preset name (1pe, 4pe, 9pe, time) or a comma-separated
    // list of predictor names ("I_r,W_r").
    static FeatureSet parse(std::string_view text);

    // The fixed benchmark quartet {I_r, I_LL, W_r, W_LL}.
    static FeatureSet benchmark_quartet();

    const std::vector<Predictor>& predictors() const noexcept { return predictors_; }
    std::size_t size() const noexcept { return predictors_.size(); }
    bool uses_decode_time() const noexcept;
    bool contains(const Predictor& p) const noexcept;
    std::string to_string() const;  // comma-separated predictor names

    bool operator==(const FeatureSet&) const = default;

private:
    std::vector<Predictor> predictors_;
};

// ---------------------------------------------------------------------------
// Models and reports
// ---------------------------------------------------------------------------

// Trained specific energies e_PE, one per predictor, in joules per
// occurrence (joules per second for the decoding-time predictor). The model
// is homogeneous by default (idle offsets are removed upstream); intercept
// stays 0 unless a fit explicitly requested one.
struct ModelCoefficients {
    FeatureSet features;
    std::vector<double> values;  // aligned with features.predictors()
    double intercept = 0.0;      // joules
    std::string trained_on;
    std::vector<std::string> warnings;

    double value_of(const Predictor& p) const;  // throws ModelError if absent
};

// Throws ValidationError if values misalign with features or are non-finite.
void validate_coefficients(const ModelCoefficients& model);

// Switching-capacitance description of a processor: E = C * V^2 * c_cpu.
class CapacitanceModel {
public:
    CapacitanceModel(double capacitance_farads, double voltage_volts);

    double capacitance_farads() const noexcept { return capacitance_farads_; }
    double voltage_volts() const noexcept { return voltage_volts_; }

private:
    double capacitance_farads_;
    double voltage_volts_;
};

// Pearson coefficients of each event count (and optionally decoding time)
// against measured energy. nullopt marks a degenerate (constant) column.
struct CorrelationReport {
    std::array<std::optional<double>, kEventKindCount> by_event;
    std::optional<double> decode_time;
};

// Mean relative estimation error with per-record breakdown. per_record is
// kept in evaluation order so reports render deterministically.
struct ErrorReport {
    double mean_relative_error = 0.0;
    std::vector<std::pair<std::string, double>> per_record;
    std::size_t n_records = 0;
};

}  // namespace penergy
