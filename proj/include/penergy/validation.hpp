#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "penergy/domain.hpp"

namespace penergy::validation {

// Deterministic assignment of records to cross-validation folds. The
// assignment is a pure function of (record order, k, seed): record indices
// are shuffled with mt19937_64 (see penergy/random.hpp) and dealt
// round-robin, so fold sizes differ by at most one and plans reproduce
// across platforms.
struct FoldPlan {
    int k = 0;
    std::uint64_t seed = 0;
    std::unordered_map<std::string, int> assignment;  // record id -> fold

    int fold_of(const std::string& id) const;  // throws ValidationError if absent
    std::vector<std::size_t> fold_sizes() const;

    bool operator==(const FoldPlan&) const = default;
};

// Requires 2 <= k <= dataset size.
FoldPlan make_folds(const Dataset& dataset, int k, std::uint64_t seed);

// For each fold: fit on the complement, predict the held-out records. The
// held-out relative errors of all records are pooled into one report, not
// averaged per fold.
ErrorReport cross_validate(const Dataset& dataset, const FeatureSet& features,
                           const FoldPlan& plan);

struct SubsetRanking {
    FeatureSet features;
    double mean_relative_error = 0.0;
};

struct SubsetSelection {
    FeatureSet best;
    ErrorReport best_report;
    std::vector<SubsetRanking> ranking;  // all C(9, size) candidates, ascending error
};

// Exhaustively cross-validates every event subset of the given size under
// one fold plan and returns the minimum-error subset. Ties break toward the
// canonically first subset.
SubsetSelection select_subset(const Dataset& dataset, int size, const FoldPlan& plan);

// Cross-validated error of the four benchmark models, per (codec, decoder)
// group and pooled over everything ("All"). Cells that cannot be evaluated
// (group too small, missing decode times) are left empty.
struct ComparisonRow {
    std::string codec;
    std::string decoder;
    std::size_t n_records = 0;
    std::optional<double> one_pe;
    std::optional<double> four_pe;
    std::optional<double> nine_pe;
    std::optional<double> time;
};

struct ComparisonTable {
    std::vector<ComparisonRow> groups;  // in first-appearance order
    ComparisonRow all;
};

ComparisonTable compare_models(const Dataset& dataset, const FoldPlan& plan);

}  // namespace penergy::validation
