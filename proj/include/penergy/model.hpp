#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "penergy/domain.hpp"

namespace penergy::model {

struct DesignMatrix {
    Eigen::MatrixXd predictors;  // one row per record, FeatureSet column order
    Eigen::VectorXd energy;      // measured energies, joules
    std::vector<std::string> ids;
};

// Lays out n_PE values (or decoding times) per record. No intercept column:
// the idle offset is subtracted upstream, so the model is homogeneous.
// Selecting the decoding-time predictor requires decode_time > 0 on every
// record.
DesignMatrix build_design_matrix(const Dataset& dataset, const FeatureSet& features);

// Least squares over the design matrix: minimizes the sum of squared
// absolute residuals. Columns are rescaled to unit norm before a complete
// orthogonal decomposition (count magnitudes span ~1e4..1e10); on rank
// deficiency the minimum-norm solution is returned together with a warning.
// Negative fitted coefficients are kept but flagged.
// include_intercept adds a constant offset term; it defaults off because
// the measured energies already have the idle offset removed.
// Throws ModelError when records < fitted parameters or on non-finite input.
ModelCoefficients fit_least_squares(const Dataset& dataset, const FeatureSet& features,
                                    std::string trained_on = {},
                                    bool include_intercept = false);

// Estimated energy = sum over model predictors of count * coefficient.
double predict(const ModelCoefficients& model, const EventVector& events);
double predict_from_time(const ModelCoefficients& model, double decode_time_seconds);
double predict(const ModelCoefficients& model, const MeasurementRecord& record);

// Prediction from an explicit predictor-name -> value map (CLI count input).
// Every model predictor must be present; extra entries are ignored.
double predict(const ModelCoefficients& model,
               const std::vector<std::pair<std::string, double>>& named_values);

// Residual sum of squares of a model on a dataset (training-error metric
// for nested model-class comparisons).
double sum_squared_residuals(const ModelCoefficients& model, const Dataset& dataset);

// E = C * V^2 * c_cpu (the capacitance form of the single-event model).
double capacitance_energy(const CapacitanceModel& cm, std::uint64_t c_cpu);

struct CapacitanceEquivalence {
    ModelCoefficients model;  // 1-PE fit over instruction fetches
    double implied_cv2;       // fitted e_Ir, i.e. the implied C * V^2 product
};

// Fits the instruction-count-only model, exposing the capacitance model as
// the single-event special case of the linear specific-energy model.
CapacitanceEquivalence capacitance_equivalence(const Dataset& dataset);

}  // namespace penergy::model
