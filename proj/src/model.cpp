#include "penergy/model.hpp"

#include <cmath>
#include <sstream>

namespace penergy::model {

namespace {

double feature_value(const MeasurementRecord& record, const Predictor& p) {
    if (std::holds_alternative<DecodeTimeFeature>(p)) {
        return record.decode_time_seconds;
    }
    return static_cast<double>(record.events.count(std::get<EventKind>(p)));
}

}  // namespace

DesignMatrix build_design_matrix(const Dataset& dataset, const FeatureSet& features) {
    if (dataset.empty()) {
        throw ValidationError("cannot build a design matrix from an empty dataset");
    }
    if (features.size() == 0) {
        throw ValidationError("cannot build a design matrix without features");
    }
    const auto& records = dataset.records();
    const auto& predictors = features.predictors();

    DesignMatrix design;
    design.predictors.resize(static_cast<Eigen::Index>(records.size()),
                             static_cast<Eigen::Index>(predictors.size()));
    design.energy.resize(static_cast<Eigen::Index>(records.size()));
    design.ids.reserve(records.size());

    for (std::size_t m = 0; m < records.size(); ++m) {
        const auto& record = records[m];
        for (std::size_t j = 0; j < predictors.size(); ++j) {
            const double v = feature_value(record, predictors[j]);
            if (std::holds_alternative<DecodeTimeFeature>(predictors[j]) && !(v > 0.0)) {
                throw ModelError("record '" + record.id +
                                 "' provides no usable decoding time (must be > 0)");
            }
            design.predictors(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(j)) = v;
        }
        design.energy(static_cast<Eigen::Index>(m)) = record.energy_joules;
        design.ids.push_back(record.id);
    }
    return design;
}

ModelCoefficients fit_least_squares(const Dataset& dataset, const FeatureSet& features,
                                    std::string trained_on, bool include_intercept) {
    DesignMatrix design = build_design_matrix(dataset, features);
    const Eigen::Index rows = design.predictors.rows();
    const Eigen::Index feature_count = design.predictors.cols();
    const Eigen::Index cols = feature_count + (include_intercept ? 1 : 0);

    if (rows < cols) {
        std::ostringstream msg;
        msg << "underdetermined fit: " << rows << " records for " << cols
            << " fitted parameters";
        throw ModelError(msg.str());
    }
    if (!design.predictors.allFinite() || !design.energy.allFinite()) {
        throw ModelError("design matrix contains non-finite values");
    }

    ModelCoefficients model;
    model.features = features;
    model.trained_on = trained_on.empty()
                           ? std::to_string(rows) + " records"
                           : std::move(trained_on);

    Eigen::MatrixXd columns(rows, cols);
    columns.leftCols(feature_count) = design.predictors;
    if (include_intercept) columns.col(feature_count).setOnes();

    // Column scaling keeps the factorization well conditioned across the
    // ~1e4..1e10 spread of count magnitudes. Coefficients are mapped back
    // to the original scale afterwards.
    Eigen::VectorXd scale(cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        const double norm = columns.col(j).norm();
        scale(j) = norm > 0.0 ? norm : 1.0;
    }
    const Eigen::MatrixXd scaled = columns * scale.cwiseInverse().asDiagonal();

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(scaled);
    if (cod.rank() < cols) {
        std::ostringstream warning;
        warning << "rank-deficient design (rank " << cod.rank() << " of " << cols
                << " fitted parameters); returning the minimum-norm solution";
        model.warnings.push_back(warning.str());
    }

    const Eigen::VectorXd solution = cod.solve(design.energy).cwiseQuotient(scale);
    model.values.assign(solution.data(), solution.data() + feature_count);
    if (include_intercept) model.intercept = solution(feature_count);

    for (std::size_t j = 0; j < model.values.size(); ++j) {
        if (model.values[j] < 0.0) {
            model.warnings.push_back(
                std::string("negative specific energy for ") +
                std::string(predictor_name(features.predictors()[j])) +
                " (unconstrained least squares; physically expected to be >= 0)");
        }
    }

    validate_coefficients(model);
    return model;
}

double predict(const ModelCoefficients& model, const EventVector& events) {
    if (model.features.uses_decode_time()) {
        throw ModelError("decoding-time model cannot predict from event counts alone");
    }
    double energy = model.intercept;
    const auto& predictors = model.features.predictors();
    for (std::size_t j = 0; j < predictors.size(); ++j) {
        energy += static_cast<double>(events.count(std::get<EventKind>(predictors[j]))) *
                  model.values[j];
    }
    return energy;
}

double predict_from_time(const ModelCoefficients& model, double decode_time_seconds) {
    if (!model.features.uses_decode_time()) {
        throw ModelError("event-count model cannot predict from a decoding time alone");
    }
    return model.values.front() * decode_time_seconds + model.intercept;
}

double predict(const ModelCoefficients& model, const MeasurementRecord& record) {
    if (model.features.uses_decode_time()) {
        return predict_from_time(model, record.decode_time_seconds);
    }
    return predict(model, record.events);
}

double predict(const ModelCoefficients& model,
               const std::vector<std::pair<std::string, double>>& named_values) {
    double energy = model.intercept;
    const auto& predictors = model.features.predictors();
    for (std::size_t j = 0; j < predictors.size(); ++j) {
        const std::string_view name = predictor_name(predictors[j]);
        bool found = false;
        for (const auto& [key, value] : named_values) {
            if (key == name) {
                energy += value * model.values[j];
                found = true;
                break;
            }
        }
        if (!found) {
            throw ModelError("no value supplied for model predictor '" +
                             std::string(name) + "'");
        }
    }
    return energy;
}

double sum_squared_residuals(const ModelCoefficients& model, const Dataset& dataset) {
    double sse = 0.0;
    for (const auto& record : dataset.records()) {
        const double r = predict(model, record) - record.energy_joules;
        sse += r * r;
    }
    return sse;
}

double capacitance_energy(const CapacitanceModel& cm, std::uint64_t c_cpu) {
    return cm.capacitance_farads() * cm.voltage_volts() * cm.voltage_volts() *
           static_cast<double>(c_cpu);
}

CapacitanceEquivalence capacitance_equivalence(const Dataset& dataset) {
    const auto instruction_fetches = FeatureSet::parse("1pe");
    ModelCoefficients model = fit_least_squares(dataset, instruction_fetches);
    const double implied = model.values.front();
    return CapacitanceEquivalence{std::move(model), implied};
}

}  // namespace penergy::model
