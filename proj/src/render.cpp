#include "penergy/render.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "penergy/format.hpp"

namespace penergy::render {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string three_decimals(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.3f", value);
    return buffer;
}

std::string pad_left(const std::string& text, std::size_t width) {
    if (text.size() >= width) return text;
    return std::string(width - text.size(), ' ') + text;
}

std::string pad_right(const std::string& text, std::size_t width) {
    if (text.size() >= width) return text;
    return text + std::string(width - text.size(), ' ');
}

std::string cell(const std::optional<double>& correlation) {
    return correlation ? three_decimals(*correlation) : "n/a";
}

std::string percent_cell(const std::optional<double>& error) {
    return error ? format::percent(*error) : "-";
}

ordered_json json_or_null(const std::optional<double>& value) {
    if (value) return *value;
    return nullptr;
}

}  // namespace

std::string correlation_text(const CorrelationReport& report) {
    constexpr std::size_t kLabel = 4;
    constexpr std::size_t kColumn = 9;

    std::ostringstream out;
    out << pad_right("", kLabel);
    for (AccessClass cls : {AccessClass::instruction, AccessClass::data_read,
                            AccessClass::data_write}) {
        out << pad_left(std::string(access_class_letter(cls)), kColumn);
    }
    out << '\n';

    for (CacheLevel level : {CacheLevel::reference, CacheLevel::l1_miss,
                             CacheLevel::ll_miss}) {
        out << pad_right(std::string(cache_level_suffix(level)), kLabel);
        for (AccessClass cls : {AccessClass::instruction, AccessClass::data_read,
                                AccessClass::data_write}) {
            out << pad_left(cell(report.by_event[EventKind{cls, level}.index()]), kColumn);
        }
        out << '\n';
    }

    out << pad_right("time", kLabel) << pad_left(cell(report.decode_time), kColumn) << '\n';
    return out.str();
}

std::string correlation_json(const CorrelationReport& report) {
    ordered_json doc;
    for (EventKind kind : all_event_kinds()) {
        doc[std::string(kind.name())] = json_or_null(report.by_event[kind.index()]);
    }
    doc["time"] = json_or_null(report.decode_time);
    return doc.dump(2) + "\n";
}

std::string error_report_text(const ErrorReport& report, bool per_record) {
    std::ostringstream out;
    out << "mean relative error: " << format::percent(report.mean_relative_error) << " ("
        << report.n_records << " records)\n";
    if (per_record) {
        for (const auto& [id, error] : report.per_record) {
            out << "  " << id << ": " << format::percent(error) << '\n';
        }
    }
    return out.str();
}

std::string error_report_json(const ErrorReport& report, bool per_record) {
    ordered_json doc;
    doc["mean_relative_error"] = report.mean_relative_error;
    doc["n_records"] = report.n_records;
    if (per_record) {
        ordered_json records = ordered_json::object();
        for (const auto& [id, error] : report.per_record) {
            records[id] = error;
        }
        doc["per_record"] = std::move(records);
    }
    return doc.dump(2) + "\n";
}

std::string model_text(const ModelCoefficients& model) {
    std::ostringstream out;
    out << "fitted " << model.values.size()
        << (model.values.size() == 1 ? " coefficient" : " coefficients") << " ("
        << model.trained_on << ")\n";
    const auto& predictors = model.features.predictors();
    for (std::size_t i = 0; i < predictors.size(); ++i) {
        out << "  " << predictor_name(predictors[i]) << ": ";
        if (std::holds_alternative<DecodeTimeFeature>(predictors[i])) {
            out << format::real(model.values[i]) << " J/s";
        } else {
            out << format::specific_energy(model.values[i]);
        }
        out << '\n';
    }
    if (model.intercept != 0.0) {
        out << "  intercept: " << format::real(model.intercept) << " J\n";
    }
    for (const auto& warning : model.warnings) {
        out << "warning: " << warning << '\n';
    }
    return out.str();
}

std::string selection_text(const validation::SubsetSelection& selection, bool ranking) {
    std::ostringstream out;
    out << "best subset (size " << selection.best.size()
        << "): " << selection.best.to_string() << '\n'
        << "mean relative error: "
        << format::percent(selection.best_report.mean_relative_error) << '\n';
    if (ranking) {
        out << "ranking (" << selection.ranking.size() << " candidates):\n";
        std::size_t rank = 0;
        for (const auto& candidate : selection.ranking) {
            out << "  " << ++rank << ". "
                << pad_right(candidate.features.to_string(), 28)
                << pad_left(format::percent(candidate.mean_relative_error), 9) << '\n';
        }
    }
    return out.str();
}

std::string selection_json(const validation::SubsetSelection& selection, bool ranking) {
    ordered_json doc;
    ordered_json best = ordered_json::array();
    for (const auto& predictor : selection.best.predictors()) {
        best.push_back(std::string(predictor_name(predictor)));
    }
    doc["best"] = std::move(best);
    doc["mean_relative_error"] = selection.best_report.mean_relative_error;
    if (ranking) {
        ordered_json all = ordered_json::array();
        for (const auto& candidate : selection.ranking) {
            ordered_json entry;
            entry["features"] = candidate.features.to_string();
            entry["mean_relative_error"] = candidate.mean_relative_error;
            all.push_back(std::move(entry));
        }
        doc["ranking"] = std::move(all);
    }
    return doc.dump(2) + "\n";
}

namespace {

std::string group_label(const validation::ComparisonRow& row) {
    if (row.decoder.empty()) return row.codec;
    return row.codec + "/" + row.decoder;
}

void comparison_row_text(std::ostringstream& out, const validation::ComparisonRow& row,
                         std::size_t label_width) {
    out << pad_right(group_label(row), label_width) << pad_left(std::to_string(row.n_records), 6)
        << pad_left(percent_cell(row.one_pe), 9) << pad_left(percent_cell(row.four_pe), 9)
        << pad_left(percent_cell(row.nine_pe), 9) << pad_left(percent_cell(row.time), 9)
        << '\n';
}

ordered_json comparison_row_json(const validation::ComparisonRow& row) {
    ordered_json entry;
    entry["codec"] = row.codec;
    entry["decoder"] = row.decoder;
    entry["n_records"] = row.n_records;
    entry["1pe"] = json_or_null(row.one_pe);
    entry["4pe"] = json_or_null(row.four_pe);
    entry["9pe"] = json_or_null(row.nine_pe);
    entry["time"] = json_or_null(row.time);
    return entry;
}

}  // namespace

std::string comparison_text(const validation::ComparisonTable& table) {
    std::size_t label_width = 12;
    for (const auto& row : table.groups) {
        label_width = std::max(label_width, group_label(row).size() + 2);
    }

    std::ostringstream out;
    out << pad_right("group", label_width) << pad_left("n", 6) << pad_left("1 PE", 9)
        << pad_left("4 PE", 9) << pad_left("9 PE", 9) << pad_left("time", 9) << '\n';
    for (const auto& row : table.groups) {
        comparison_row_text(out, row, label_width);
    }
    comparison_row_text(out, table.all, label_width);
    return out.str();
}

std::string comparison_json(const validation::ComparisonTable& table) {
    ordered_json doc;
    ordered_json groups = ordered_json::array();
    for (const auto& row : table.groups) {
        groups.push_back(comparison_row_json(row));
    }
    doc["groups"] = std::move(groups);
    doc["all"] = comparison_row_json(table.all);
    return doc.dump(2) + "\n";
}

}  // namespace penergy::render
