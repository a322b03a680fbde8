#include "penergy/model_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace penergy::io {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kFormatVersion = 1;

}  // namespace

std::string model_to_json(const ModelCoefficients& model) {
    validate_coefficients(model);

    ordered_json doc;
    doc["format_version"] = kFormatVersion;

    ordered_json features = ordered_json::array();
    ordered_json coefficients = ordered_json::object();
    const auto& predictors = model.features.predictors();
    for (std::size_t i = 0; i < predictors.size(); ++i) {
        const std::string name(predictor_name(predictors[i]));
        features.push_back(name);
        coefficients[name] = model.values[i];
    }
    doc["feature_set"] = std::move(features);
    doc["coefficients"] = std::move(coefficients);
    doc["intercept"] = model.intercept;
    doc["trained_on"] = model.trained_on;
    doc["warnings"] = model.warnings;
    return doc.dump(2) + "\n";
}

void write_model_json(const std::string& path, const ModelCoefficients& model) {
    std::ofstream stream(path, std::ios::binary | std::ios::trunc);
    if (!stream) throw ParseError("cannot open '" + path + "' for writing");
    stream << model_to_json(model);
    if (!stream) throw ParseError("failed writing model to '" + path + "'");
}

ModelCoefficients model_from_json(const std::string& text, const std::string& source_name) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(source_name + ": invalid JSON: " + e.what());
    }

    try {
        if (!doc.is_object() || !doc.contains("format_version") ||
            doc["format_version"].get<int>() != kFormatVersion) {
            throw ParseError(source_name + ": expected a model document with format_version " +
                             std::to_string(kFormatVersion));
        }

        std::vector<EventKind> kinds;
        bool wants_time = false;
        for (const auto& entry : doc.at("feature_set")) {
            const auto name = entry.get<std::string>();
            if (name == "time") {
                wants_time = true;
            } else if (auto kind = event_kind_from_name(name)) {
                kinds.push_back(*kind);
            } else {
                throw ParseError(source_name + ": unknown predictor '" + name +
                                 "' in feature_set");
            }
        }
        if (wants_time && !kinds.empty()) {
            throw ParseError(source_name +
                             ": feature_set mixes decoding time with event predictors");
        }

        ModelCoefficients model;
        model.features = wants_time ? FeatureSet::of_decode_time()
                                    : FeatureSet::of_events(std::move(kinds));

        const auto& coefficients = doc.at("coefficients");
        if (!coefficients.is_object() || coefficients.size() != model.features.size()) {
            throw ParseError(source_name +
                             ": coefficients must hold exactly one value per feature");
        }
        for (const auto& predictor : model.features.predictors()) {
            const std::string name(predictor_name(predictor));
            if (!coefficients.contains(name)) {
                throw ParseError(source_name + ": coefficients is missing '" + name + "'");
            }
            const double value = coefficients.at(name).get<double>();
            if (!std::isfinite(value)) {
                throw ParseError(source_name + ": non-finite coefficient for '" + name + "'");
            }
            model.values.push_back(value);
        }

        if (doc.contains("intercept")) {
            model.intercept = doc.at("intercept").get<double>();
        }
        model.trained_on = doc.value("trained_on", std::string{});
        if (doc.contains("warnings")) {
            for (const auto& warning : doc.at("warnings")) {
                model.warnings.push_back(warning.get<std::string>());
            }
        }

        validate_coefficients(model);
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(source_name + ": malformed model document: " + e.what());
    } catch (const ValidationError& e) {
        throw ParseError(source_name + ": " + e.what());
    }
}

ModelCoefficients read_model_json(const std::string& path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) throw ParseError("cannot open model '" + path + "'");
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return model_from_json(buffer.str(), path);
}

}  // namespace penergy::io
