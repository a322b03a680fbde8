#include "penergy/domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

namespace penergy {

namespace {

constexpr std::array<EventKind, kEventKindCount> kCanonicalKinds = {{
    {AccessClass::instruction, CacheLevel::reference},
    {AccessClass::instruction, CacheLevel::l1_miss},
    {AccessClass::instruction, CacheLevel::ll_miss},
    {AccessClass::data_read, CacheLevel::reference},
    {AccessClass::data_read, CacheLevel::l1_miss},
    {AccessClass::data_read, CacheLevel::ll_miss},
    {AccessClass::data_write, CacheLevel::reference},
    {AccessClass::data_write, CacheLevel::l1_miss},
    {AccessClass::data_write, CacheLevel::ll_miss},
}};

constexpr std::array<std::string_view, kEventKindCount> kNames = {
    "I_r", "I_L1", "I_LL", "R_r", "R_L1", "R_LL", "W_r", "W_L1", "W_LL"};

// Cachegrind column names in the same canonical order.
constexpr std::array<std::string_view, kEventKindCount> kCachegrindNames = {
    "Ir", "I1mr", "ILmr", "Dr", "D1mr", "DLmr", "Dw", "D1mw", "DLmw"};

}  // namespace

std::string_view access_class_name(AccessClass cls) {
    switch (cls) {
        case AccessClass::instruction: return "instruction fetch";
        case AccessClass::data_read: return "data read";
        case AccessClass::data_write: return "data write";
    }
    return "?";
}

std::string_view access_class_letter(AccessClass cls) {
    switch (cls) {
        case AccessClass::instruction: return "I";
        case AccessClass::data_read: return "R";
        case AccessClass::data_write: return "W";
    }
    return "?";
}

std::string_view cache_level_suffix(CacheLevel level) {
    switch (level) {
        case CacheLevel::reference: return "r";
        case CacheLevel::l1_miss: return "L1";
        case CacheLevel::ll_miss: return "LL";
    }
    return "?";
}

std::string_view EventKind::name() const { return kNames[index()]; }

std::string_view EventKind::cachegrind_name() const { return kCachegrindNames[index()]; }

std::span<const EventKind, kEventKindCount> all_event_kinds() {
    return kCanonicalKinds;
}

std::optional<EventKind> event_kind_from_name(std::string_view name) {
    for (int i = 0; i < kEventKindCount; ++i) {
        if (kNames[i] == name) return EventKind::from_index(i);
    }
    return std::nullopt;
}

std::optional<EventKind> event_kind_from_cachegrind_name(std::string_view name) {
    for (int i = 0; i < kEventKindCount; ++i) {
        if (kCachegrindNames[i] == name) return EventKind::from_index(i);
    }
    return std::nullopt;
}

EventVector EventVector::from_counts(const std::array<std::uint64_t, kEventKindCount>& counts) {
    for (AccessClass cls : {AccessClass::instruction, AccessClass::data_read,
                            AccessClass::data_write}) {
        const auto ref = counts[EventKind{cls, CacheLevel::reference}.index()];
        const auto l1 = counts[EventKind{cls, CacheLevel::l1_miss}.index()];
        const auto ll = counts[EventKind{cls, CacheLevel::ll_miss}.index()];
        if (ref < l1 || l1 < ll) {
            std::ostringstream msg;
            msg << "invalid event vector: " << access_class_name(cls)
                << " counts violate reference >= L1 misses >= LL misses ("
                << ref << " / " << l1 << " / " << ll << ")";
            throw ValidationError(msg.str());
        }
    }
    return EventVector(counts);
}

std::uint64_t derive_hits(const EventVector& v, AccessClass cls, CacheLevel level) {
    switch (level) {
        case CacheLevel::l1_miss:
            return v.count(cls, CacheLevel::reference) - v.count(cls, CacheLevel::l1_miss);
        case CacheLevel::ll_miss:
            return v.count(cls, CacheLevel::l1_miss) - v.count(cls, CacheLevel::ll_miss);
        case CacheLevel::reference:
            break;
    }
    throw ValidationError("derive_hits: hits are defined for the L1 and LL miss levels only");
}

void validate_record(const MeasurementRecord& record) {
    if (record.id.empty()) {
        throw ValidationError("measurement record has an empty id");
    }
    if (!std::isfinite(record.energy_joules) || record.energy_joules < 0.0) {
        throw ValidationError("record '" + record.id +
                              "': energy must be finite and non-negative");
    }
    if (!std::isfinite(record.decode_time_seconds) || record.decode_time_seconds < 0.0) {
        throw ValidationError("record '" + record.id +
                              "': decode time must be finite and non-negative");
    }
}

Dataset::Dataset(std::vector<MeasurementRecord> records) : records_(std::move(records)) {
    std::unordered_set<std::string_view> seen;
    seen.reserve(records_.size());
    for (const auto& record : records_) {
        validate_record(record);
        if (!seen.insert(record.id).second) {
            throw ValidationError("duplicate record id '" + record.id + "' in dataset");
        }
    }
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
    std::vector<MeasurementRecord> picked;
    picked.reserve(indices.size());
    for (std::size_t i : indices) {
        picked.push_back(records_.at(i));
    }
    return Dataset(std::move(picked));
}

std::string_view predictor_name(const Predictor& p) {
    if (std::holds_alternative<DecodeTimeFeature>(p)) return "time";
    return std::get<EventKind>(p).name();
}

FeatureSet FeatureSet::of_events(std::vector<EventKind> kinds) {
    if (kinds.empty()) {
        throw ValidationError("feature set must not be empty");
    }
    std::sort(kinds.begin(), kinds.end());
    if (std::adjacent_find(kinds.begin(), kinds.end()) != kinds.end()) {
        throw ValidationError("feature set contains a duplicate predictor");
    }
    FeatureSet fs;
    fs.predictors_.assign(kinds.begin(), kinds.end());
    return fs;
}

FeatureSet FeatureSet::of_decode_time() {
    FeatureSet fs;
    fs.predictors_.push_back(DecodeTimeFeature{});
    return fs;
}

FeatureSet FeatureSet::all_events() {
    auto kinds = all_event_kinds();
    return of_events({kinds.begin(), kinds.end()});
}

FeatureSet FeatureSet::benchmark_quartet() {
    return of_events({EventKind{AccessClass::instruction, CacheLevel::reference},
                      EventKind{AccessClass::instruction, CacheLevel::ll_miss},
                      EventKind{AccessClass::data_write, CacheLevel::reference},
                      EventKind{AccessClass::data_write, CacheLevel::ll_miss}});
}

FeatureSet FeatureSet::parse(std::string_view text) {
    if (text == "1pe") return of_events({EventKind{AccessClass::instruction, CacheLevel::reference}});
    if (text == "4pe") return benchmark_quartet();
    if (text == "9pe") return all_events();
    if (text == "time") return of_decode_time();

    std::vector<EventKind> kinds;
    bool wants_time = false;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view token = text.substr(start, end - start);
        if (token == "time") {
            wants_time = true;
        } else if (auto kind = event_kind_from_name(token)) {
            kinds.push_back(*kind);
        } else {
            throw ValidationError("unknown predictor '" + std::string(token) +
                                  "' (expected a preset, event names like I_r, or time)");
        }
        start = end + 1;
        if (end == text.size()) break;
    }
    if (wants_time && !kinds.empty()) {
        throw ValidationError("decoding time and processor events are rival models "
                              "and cannot share a feature set");
    }
    if (wants_time) return of_decode_time();
    return of_events(std::move(kinds));
}

bool FeatureSet::uses_decode_time() const noexcept {
    return !predictors_.empty() &&
           std::holds_alternative<DecodeTimeFeature>(predictors_.front());
}

bool FeatureSet::contains(const Predictor& p) const noexcept {
    return std::find(predictors_.begin(), predictors_.end(), p) != predictors_.end();
}

std::string FeatureSet::to_string() const {
    std::string out;
    for (const auto& p : predictors_) {
        if (!out.empty()) out += ',';
        out += predictor_name(p);
    }
    return out;
}

double ModelCoefficients::value_of(const Predictor& p) const {
    const auto& preds = features.predictors();
    for (std::size_t i = 0; i < preds.size(); ++i) {
        if (preds[i] == p) return values[i];
    }
    throw ModelError(std::string("model has no coefficient for predictor '") +
                     std::string(predictor_name(p)) + "'");
}

void validate_coefficients(const ModelCoefficients& model) {
    if (model.values.size() != model.features.size()) {
        throw ValidationError("model coefficients misaligned with feature set");
    }
    if (!std::isfinite(model.intercept)) {
        throw ValidationError("non-finite model intercept");
    }
    for (std::size_t i = 0; i < model.values.size(); ++i) {
        if (!std::isfinite(model.values[i])) {
            throw ValidationError(
                std::string("non-finite coefficient for predictor '") +
                std::string(predictor_name(model.features.predictors()[i])) + "'");
        }
    }
}

CapacitanceModel::CapacitanceModel(double capacitance_farads, double voltage_volts)
    : capacitance_farads_(capacitance_farads), voltage_volts_(voltage_volts) {
    if (!std::isfinite(capacitance_farads) || capacitance_farads <= 0.0) {
        throw ValidationError("capacitance must be finite and strictly positive");
    }
    if (!std::isfinite(voltage_volts) || voltage_volts <= 0.0) {
        throw ValidationError("voltage must be finite and strictly positive");
    }
}

}  // namespace penergy
