#include "penergy/validation.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "penergy/model.hpp"
#include "penergy/random.hpp"
#include "penergy/stats.hpp"

namespace penergy::validation {

int FoldPlan::fold_of(const std::string& id) const {
    const auto it = assignment.find(id);
    if (it == assignment.end()) {
        throw ValidationError("fold plan does not cover record '" + id + "'");
    }
    return it->second;
}

std::vector<std::size_t> FoldPlan::fold_sizes() const {
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
    for (const auto& [id, fold] : assignment) {
        sizes.at(static_cast<std::size_t>(fold))++;
    }
    return sizes;
}

FoldPlan make_folds(const Dataset& dataset, int k, std::uint64_t seed) {
    const std::size_t n = dataset.size();
    if (k < 2 || static_cast<std::size_t>(k) > n) {
        std::ostringstream msg;
        msg << "fold count k=" << k << " out of range for " << n << " records "
            << "(need 2 <= k <= record count)";
        throw ValidationError(msg.str());
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 gen(seed);
    rng::shuffle(order, gen);

    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.assignment.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        plan.assignment.emplace(dataset.records()[order[i]].id,
                                static_cast<int>(i % static_cast<std::size_t>(k)));
    }
    return plan;
}

ErrorReport cross_validate(const Dataset& dataset, const FeatureSet& features,
                           const FoldPlan& plan) {
    if (dataset.empty()) {
        throw ValidationError("cannot cross-validate an empty dataset");
    }
    const auto& records = dataset.records();

    std::vector<int> fold_of_record(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const int fold = plan.fold_of(records[i].id);
        if (fold < 0 || fold >= plan.k) {
            throw ValidationError("fold plan assigns record '" + records[i].id +
                                  "' to fold " + std::to_string(fold) +
                                  " outside [0, k)");
        }
        fold_of_record[i] = fold;
    }

    std::vector<double> predicted(records.size(), 0.0);
    std::vector<double> actual(records.size(), 0.0);
    std::vector<std::string> ids(records.size());

    for (int fold = 0; fold < plan.k; ++fold) {
        std::vector<std::size_t> train, held_out;
        for (std::size_t i = 0; i < records.size(); ++i) {
            (fold_of_record[i] == fold ? held_out : train).push_back(i);
        }
        if (held_out.empty()) continue;
        if (train.size() < features.size()) {
            std::ostringstream msg;
            msg << "fold " << fold << ": training complement has " << train.size()
                << " records for " << features.size() << " features";
            throw ModelError(msg.str());
        }

        const auto model = model::fit_least_squares(dataset.subset(train), features);
        for (std::size_t i : held_out) {
            predicted[i] = model::predict(model, records[i]);
        }
    }

    for (std::size_t i = 0; i < records.size(); ++i) {
        actual[i] = records[i].energy_joules;
        ids[i] = records[i].id;
    }
    return stats::mean_relative_error(predicted, actual, ids);
}

namespace {

// Lexicographically ordered combinations of {0..8} of the given size.
void enumerate_subsets(int size, std::vector<std::vector<int>>& out) {
    std::vector<int> pick(static_cast<std::size_t>(size));
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        out.push_back(pick);
        int i = size - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == kEventKindCount - size + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < size; ++j) {
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

std::optional<double> try_cross_validate(const Dataset& dataset, const FeatureSet& features,
                                         const FoldPlan& plan) {
    try {
        return cross_validate(dataset, features, plan).mean_relative_error;
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace

SubsetSelection select_subset(const Dataset& dataset, int size, const FoldPlan& plan) {
    if (size < 1 || size > kEventKindCount) {
        throw ValidationError("subset size must be between 1 and 9");
    }

    std::vector<std::vector<int>> combinations;
    enumerate_subsets(size, combinations);

    SubsetSelection selection;
    selection.ranking.reserve(combinations.size());
    for (const auto& combo : combinations) {
        std::vector<EventKind> kinds;
        kinds.reserve(combo.size());
        for (int index : combo) kinds.push_back(EventKind::from_index(index));
        auto features = FeatureSet::of_events(std::move(kinds));
        const double error = cross_validate(dataset, features, plan).mean_relative_error;
        selection.ranking.push_back(SubsetRanking{std::move(features), error});
    }

    // Stable sort keeps canonically earlier subsets first on ties.
    std::stable_sort(selection.ranking.begin(), selection.ranking.end(),
                     [](const SubsetRanking& a, const SubsetRanking& b) {
                         return a.mean_relative_error < b.mean_relative_error;
                     });

    selection.best = selection.ranking.front().features;
    selection.best_report = cross_validate(dataset, selection.best, plan);
    return selection;
}

ComparisonTable compare_models(const Dataset& dataset, const FoldPlan& plan) {
    if (dataset.empty()) {
        throw ValidationError("cannot compare models on an empty dataset");
    }

    const auto evaluate_into = [](ComparisonRow& row, const Dataset& subset,
                                  const FoldPlan& subset_plan) {
        row.n_records = subset.size();
        row.one_pe = try_cross_validate(subset, FeatureSet::parse("1pe"), subset_plan);
        row.four_pe = try_cross_validate(subset, FeatureSet::parse("4pe"), subset_plan);
        row.nine_pe = try_cross_validate(subset, FeatureSet::parse("9pe"), subset_plan);
        row.time = try_cross_validate(subset, FeatureSet::parse("time"), subset_plan);
    };

    ComparisonTable table;

    std::vector<std::pair<std::string, std::string>> group_keys;
    std::vector<std::vector<std::size_t>> group_indices;
    const auto& records = dataset.records();
    for (std::size_t i = 0; i < records.size(); ++i) {
        const std::pair<std::string, std::string> key{records[i].codec, records[i].decoder};
        auto it = std::find(group_keys.begin(), group_keys.end(), key);
        if (it == group_keys.end()) {
            group_keys.push_back(key);
            group_indices.emplace_back();
            it = std::prev(group_keys.end());
        }
        group_indices[static_cast<std::size_t>(it - group_keys.begin())].push_back(i);
    }

    for (std::size_t g = 0; g < group_keys.size(); ++g) {
        ComparisonRow row;
        row.codec = group_keys[g].first;
        row.decoder = group_keys[g].second;
        const Dataset group = dataset.subset(group_indices[g]);
        if (group.size() < 2) {
            row.n_records = group.size();  // too small for any cross-validation
        } else {
            // Small groups fall back to leave-one-out rather than failing.
            const int k_group = std::min<int>(plan.k, static_cast<int>(group.size()));
            evaluate_into(row, group, make_folds(group, k_group, plan.seed));
        }
        table.groups.push_back(std::move(row));
    }

    table.all.codec = "All";
    table.all.decoder = "";
    evaluate_into(table.all, dataset, plan);
    return table;
}

}  // namespace penergy::validation
