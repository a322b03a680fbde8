// penergy - estimate software decoder processing energy from processor
// event counts. Subcommands ingest cachegrind profiles into CSV datasets,
// correlate events with measured energy, fit and cross-validate linear
// specific-energy models, search event subsets, and generate synthetic
// datasets with known ground truth.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "penergy/cachegrind.hpp"
#include "penergy/csv.hpp"
#include "penergy/domain.hpp"
#include "penergy/errors.hpp"
#include "penergy/format.hpp"
#include "penergy/model.hpp"
#include "penergy/model_io.hpp"
#include "penergy/render.hpp"
#include "penergy/stats.hpp"
#include "penergy/synthetic.hpp"
#include "penergy/validation.hpp"

namespace {

using namespace penergy;

bool is_json(const std::string& format) {
    if (format == "json") return true;
    if (format == "text") return false;
    throw ParseError("unknown --format '" + format + "' (expected text or json)");
}

std::vector<std::pair<std::string, double>> parse_named_values(const std::string& text) {
    std::vector<std::pair<std::string, double>> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        const std::string token = text.substr(start, end - start);
        const std::size_t eq = token.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ParseError("expected name=value, got '" + token + "'");
        }
        const std::string name = token.substr(0, eq);
        const std::string number = token.substr(eq + 1);
        char* parse_end = nullptr;
        const double value = std::strtod(number.c_str(), &parse_end);
        if (number.empty() || parse_end != number.c_str() + number.size() ||
            !std::isfinite(value) || value < 0.0) {
            throw ParseError("invalid value for '" + name + "': '" + number + "'");
        }
        values.emplace_back(name, value);
        if (end == text.size()) break;
        start = end + 1;
    }
    return values;
}

// --- ingest ----------------------------------------------------------------

struct IngestOptions {
    std::string profile_path;
    std::string out_path;
    double energy = 0.0;
    double time = 0.0;
    std::string id;
    std::string codec = "unknown";
    std::string decoder = "unknown";
};

int run_ingest(const IngestOptions& opt) {
    if (!(opt.energy > 0.0) || !std::isfinite(opt.energy)) {
        throw ValidationError("energy must be positive");
    }
    if (opt.time < 0.0 || !std::isfinite(opt.time)) {
        throw ValidationError("time must be non-negative");
    }
    const auto profile = cachegrind::parse_profile_file(opt.profile_path);
    const auto events = cachegrind::to_event_vector(profile);
    io::append_record_csv(opt.out_path, MeasurementRecord{opt.id, opt.codec, opt.decoder,
                                                          opt.energy, opt.time, events});
    std::cout << "appended '" << opt.id << "' to " << opt.out_path << "\n";
    return 0;
}

// --- correlate ---------------------------------------------------------------

int run_correlate(const std::string& dataset_path, const std::string& format) {
    const auto dataset = io::read_dataset_csv(dataset_path);
    const auto report = stats::correlation_report(dataset);
    std::cout << (is_json(format) ? render::correlation_json(report)
                                  : render::correlation_text(report));
    return 0;
}

// --- fit ---------------------------------------------------------------------

int run_fit(const std::string& dataset_path, const std::string& features,
            const std::string& out_path, const std::string& format, bool intercept) {
    const auto dataset = io::read_dataset_csv(dataset_path);
    const auto feature_set = FeatureSet::parse(features);
    const auto model = model::fit_least_squares(
        dataset, feature_set, std::to_string(dataset.size()) + " records from " + dataset_path,
        intercept);
    if (!out_path.empty()) {
        io::write_model_json(out_path, model);
    }
    std::cout << (is_json(format) ? io::model_to_json(model) : render::model_text(model));
    return 0;
}

// --- crossval ----------------------------------------------------------------

int run_crossval(const std::string& dataset_path, const std::string& features, int k,
                 std::uint64_t seed, bool per_record, const std::string& format) {
    const auto dataset = io::read_dataset_csv(dataset_path);
    const auto feature_set = FeatureSet::parse(features);
    const auto plan = validation::make_folds(dataset, k, seed);
    const auto report = validation::cross_validate(dataset, feature_set, plan);
    std::cout << (is_json(format) ? render::error_report_json(report, per_record)
                                  : render::error_report_text(report, per_record));
    return 0;
}

// --- select ------------------------------------------------------------------

int run_select(const std::string& dataset_path, int size, int k, std::uint64_t seed,
               bool ranking, const std::string& format) {
    const auto dataset = io::read_dataset_csv(dataset_path);
    const auto plan = validation::make_folds(dataset, k, seed);
    const auto selection = validation::select_subset(dataset, size, plan);
    std::cout << (is_json(format) ? render::selection_json(selection, ranking)
                                  : render::selection_text(selection, ranking));
    return 0;
}

// --- predict -----------------------------------------------------------------

struct PredictOptions {
    std::string model_path;
    std::string profile_path;
    std::string counts;
    double time = -1.0;
    std::string format = "text";
};

int run_predict(const PredictOptions& opt) {
    const auto model = io::read_model_json(opt.model_path);

    const bool has_profile = !opt.profile_path.empty();
    const bool has_counts = !opt.counts.empty();
    const bool has_time = opt.time >= 0.0;
    if (has_profile && has_counts) {
        throw ParseError("choose one of --profile or --counts");
    }

    double energy = 0.0;
    if (model.features.uses_decode_time()) {
        if (!has_time) {
            throw ModelError("the model predicts from decoding time; supply --time");
        }
        energy = model::predict_from_time(model, opt.time);
    } else if (has_profile) {
        const auto events =
            cachegrind::to_event_vector(cachegrind::parse_profile_file(opt.profile_path));
        energy = model::predict(model, events);
    } else if (has_counts) {
        energy = model::predict(model, parse_named_values(opt.counts));
    } else {
        throw ModelError("the model predicts from event counts; supply --profile or --counts");
    }

    if (is_json(opt.format)) {
        std::cout << "{\n  \"energy_J\": " << format::real(energy) << "\n}\n";
    } else {
        std::cout << "estimated energy: " << format::real(energy) << " J\n";
    }
    return 0;
}

// --- compare -----------------------------------------------------------------

int run_compare(const std::string& dataset_path, int k, std::uint64_t seed,
                const std::string& format) {
    const auto dataset = io::read_dataset_csv(dataset_path);
    const auto plan = validation::make_folds(dataset, k, seed);
    const auto table = validation::compare_models(dataset, plan);
    std::cout << (is_json(format) ? render::comparison_json(table)
                                  : render::comparison_text(table));
    return 0;
}

// --- generate ----------------------------------------------------------------

struct GenerateOptions {
    std::string out_path;
    std::size_t n = 100;
    std::uint64_t seed = 0;
    double noise = 0.0;
    std::string preset = "paper4";
    std::string coefficients;  // name=value list; replaces the preset when set
    std::string codec = "SYN";
    std::string decoder = "generator";
    double power = 2.0;
    std::vector<double> instruction_range;
    std::vector<double> read_range;
    std::vector<double> write_range;
};

int run_generate(const GenerateOptions& opt) {
    synthetic::GeneratorSpec spec;
    if (opt.preset == "paper4") {
        spec = synthetic::paper_four_event_spec();
    } else if (opt.preset == "none") {
        spec = synthetic::GeneratorSpec{};
    } else {
        throw ParseError("unknown --preset '" + opt.preset + "' (expected paper4 or none)");
    }

    if (!opt.coefficients.empty()) {
        spec.true_coefficients.fill(0.0);
        for (const auto& [name, value] : parse_named_values(opt.coefficients)) {
            const auto kind = event_kind_from_name(name);
            if (!kind) {
                throw ParseError("unknown event '" + name + "' in --coef");
            }
            spec.set_coefficient(*kind, value);
        }
    }

    const auto apply_range = [](const std::vector<double>& values,
                                synthetic::Log10Range& range, const char* flag) {
        if (values.empty()) return;
        if (values.size() != 2) {
            throw ParseError(std::string(flag) + " expects two log10 bounds");
        }
        range = synthetic::Log10Range{values[0], values[1]};
    };
    apply_range(opt.instruction_range, spec.instruction_range, "--irange");
    apply_range(opt.read_range, spec.data_read_range, "--rrange");
    apply_range(opt.write_range, spec.data_write_range, "--wrange");

    spec.n_records = opt.n;
    spec.seed = opt.seed;
    spec.noise_sigma = opt.noise;
    spec.codec = opt.codec;
    spec.decoder = opt.decoder;
    spec.nominal_power_watts = opt.power;

    const auto dataset = synthetic::generate(spec);
    io::write_dataset_csv(opt.out_path, dataset);
    std::cout << "wrote " << dataset.size() << " records to " << opt.out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decoder processing-energy estimation from processor event counts"};
    app.require_subcommand(1);

    IngestOptions ingest;
    auto* ingest_cmd =
        app.add_subcommand("ingest", "parse a cachegrind profile and append a dataset row");
    ingest_cmd->add_option("profile", ingest.profile_path, "cachegrind output file")->required();
    ingest_cmd->add_option("--energy", ingest.energy, "measured decoding energy [J]")->required();
    ingest_cmd->add_option("--time", ingest.time, "decoding time [s]")->required();
    ingest_cmd->add_option("--id", ingest.id, "unique record id")->required();
    ingest_cmd->add_option("--codec", ingest.codec, "codec label");
    ingest_cmd->add_option("--decoder", ingest.decoder, "decoder label");
    ingest_cmd->add_option("--out", ingest.out_path, "dataset CSV to append to")->required();

    std::string dataset_path;
    std::string format = "text";
    std::string features;
    int k = 10;
    std::uint64_t seed = 0;
    bool per_record = false;
    bool ranking = false;
    bool intercept = false;
    int subset_size = 4;
    std::string out_path;

    auto* correlate_cmd =
        app.add_subcommand("correlate", "event-versus-energy correlation grid");
    correlate_cmd->add_option("dataset", dataset_path, "dataset CSV")->required();
    correlate_cmd->add_option("--format", format, "text or json");

    auto* fit_cmd = app.add_subcommand("fit", "fit specific energies by least squares");
    fit_cmd->add_option("dataset", dataset_path, "dataset CSV")->required();
    fit_cmd->add_option("--features", features, "preset (1pe,4pe,9pe,time) or name list")
        ->required();
    fit_cmd->add_option("--out", out_path, "write the model JSON here");
    fit_cmd->add_flag("--intercept", intercept,
                      "fit a constant offset term (off by default; measured "
                      "energies already exclude the idle offset)");
    fit_cmd->add_option("--format", format, "text or json");

    auto* crossval_cmd =
        app.add_subcommand("crossval", "k-fold cross-validated estimation error");
    crossval_cmd->add_option("dataset", dataset_path, "dataset CSV")->required();
    crossval_cmd->add_option("--features", features, "preset or name list")->required();
    crossval_cmd->add_option("--k", k, "fold count");
    crossval_cmd->add_option("--seed", seed, "fold shuffle seed");
    crossval_cmd->add_flag("--per-record", per_record, "also list per-record errors");
    crossval_cmd->add_option("--format", format, "text or json");

    auto* select_cmd =
        app.add_subcommand("select", "exhaustive best event subset of a given size");
    select_cmd->add_option("dataset", dataset_path, "dataset CSV")->required();
    select_cmd->add_option("--size", subset_size, "subset size (1..9)");
    select_cmd->add_option("--k", k, "fold count");
    select_cmd->add_option("--seed", seed, "fold shuffle seed");
    select_cmd->add_flag("--ranking", ranking, "print every candidate, best first");
    select_cmd->add_option("--format", format, "text or json");

    PredictOptions predict;
    auto* predict_cmd = app.add_subcommand("predict", "estimate energy with a saved model");
    predict_cmd->add_option("model", predict.model_path, "model JSON")->required();
    predict_cmd->add_option("--profile", predict.profile_path, "cachegrind output file");
    predict_cmd->add_option("--counts", predict.counts, "name=value list, e.g. I_r=1e10,W_r=1e9");
    predict_cmd->add_option("--time", predict.time, "decoding time [s] for time models");
    predict_cmd->add_option("--format", predict.format, "text or json");

    auto* compare_cmd =
        app.add_subcommand("compare", "per-group and pooled error of the benchmark models");
    compare_cmd->add_option("dataset", dataset_path, "dataset CSV")->required();
    compare_cmd->add_option("--k", k, "fold count");
    compare_cmd->add_option("--seed", seed, "fold shuffle seed");
    compare_cmd->add_option("--format", format, "text or json");

    GenerateOptions generate;
    auto* generate_cmd =
        app.add_subcommand("generate", "synthetic dataset with known ground truth");
    generate_cmd->add_option("--out", generate.out_path, "dataset CSV to write")->required();
    generate_cmd->add_option("--n", generate.n, "number of records");
    generate_cmd->add_option("--seed", generate.seed, "generator seed");
    generate_cmd->add_option("--noise", generate.noise, "relative multiplicative noise sigma");
    generate_cmd->add_option("--preset", generate.preset, "coefficient preset: paper4 or none");
    generate_cmd->add_option("--coef", generate.coefficients,
                             "name=value list replacing the preset coefficients");
    generate_cmd->add_option("--codec", generate.codec, "codec label");
    generate_cmd->add_option("--decoder", generate.decoder, "decoder label");
    generate_cmd->add_option("--power", generate.power, "nominal power [W] tying time to energy");
    generate_cmd->add_option("--irange", generate.instruction_range,
                             "log10 bounds for instruction counts")->expected(2);
    generate_cmd->add_option("--rrange", generate.read_range,
                             "log10 bounds for data-read counts")->expected(2);
    generate_cmd->add_option("--wrange", generate.write_range,
                             "log10 bounds for data-write counts")->expected(2);

    try {
        app.parse(argc, argv);

        if (app.got_subcommand(ingest_cmd)) return run_ingest(ingest);
        if (app.got_subcommand(correlate_cmd)) return run_correlate(dataset_path, format);
        if (app.got_subcommand(fit_cmd)) {
            return run_fit(dataset_path, features, out_path, format, intercept);
        }
        if (app.got_subcommand(crossval_cmd)) {
            return run_crossval(dataset_path, features, k, seed, per_record, format);
        }
        if (app.got_subcommand(select_cmd)) {
            return run_select(dataset_path, subset_size, k, seed, ranking, format);
        }
        if (app.got_subcommand(predict_cmd)) return run_predict(predict);
        if (app.got_subcommand(compare_cmd)) return run_compare(dataset_path, k, seed, format);
        if (app.got_subcommand(generate_cmd)) return run_generate(generate);
        return 0;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const penergy::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
