#include "penergy/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "penergy/random.hpp"

namespace penergy::synthetic {

GeneratorSpec paper_four_event_spec() {
    GeneratorSpec spec;
    spec.set_coefficient({AccessClass::instruction, CacheLevel::reference}, 0.47e-9);
    spec.set_coefficient({AccessClass::instruction, CacheLevel::ll_miss}, 0.43e-6);
    spec.set_coefficient({AccessClass::data_write, CacheLevel::reference}, 1.5e-9);
    spec.set_coefficient({AccessClass::data_write, CacheLevel::ll_miss}, 0.16e-6);
    return spec;
}

void validate_spec(const GeneratorSpec& spec) {
    if (spec.n_records < 1) {
        throw ValidationError("generator spec: n_records must be >= 1");
    }
    for (double c : spec.true_coefficients) {
        if (!std::isfinite(c) || c < 0.0) {
            throw ValidationError("generator spec: coefficients must be finite and >= 0");
        }
    }
    for (const Log10Range& range : {spec.instruction_range, spec.data_read_range,
                                    spec.data_write_range}) {
        if (!std::isfinite(range.lo) || !std::isfinite(range.hi) || range.lo > range.hi) {
            throw ValidationError("generator spec: count range must satisfy lo <= hi");
        }
    }
    if (spec.l1_miss_fraction_max < 0.0 || spec.l1_miss_fraction_max > 1.0 ||
        spec.ll_miss_fraction_max < 0.0 || spec.ll_miss_fraction_max > 1.0) {
        throw ValidationError("generator spec: miss fractions must lie in [0, 1]");
    }
    if (!(spec.noise_sigma >= 0.0) || !std::isfinite(spec.noise_sigma)) {
        throw ValidationError("generator spec: noise sigma must be finite and >= 0");
    }
    if (!(spec.nominal_power_watts > 0.0)) {
        throw ValidationError("generator spec: nominal power must be > 0");
    }
}

Dataset generate(const GeneratorSpec& spec) {
    validate_spec(spec);
    std::mt19937_64 gen(spec.seed);

    const auto draw_class =
        [&](const Log10Range& range) -> std::array<std::uint64_t, 3> {
        const double ref_real = std::pow(10.0, rng::uniform(gen, range.lo, range.hi));
        const auto ref = static_cast<std::uint64_t>(std::llround(ref_real));
        const double l1_fraction = rng::uniform(gen, 0.0, spec.l1_miss_fraction_max);
        auto l1 = static_cast<std::uint64_t>(
            std::llround(static_cast<double>(ref) * l1_fraction));
        l1 = std::min(l1, ref);
        const double ll_fraction = rng::uniform(gen, 0.0, spec.ll_miss_fraction_max);
        auto ll = static_cast<std::uint64_t>(
            std::llround(static_cast<double>(l1) * ll_fraction));
        ll = std::min(ll, l1);
        return {ref, l1, ll};
    };

    std::vector<MeasurementRecord> records;
    records.reserve(spec.n_records);
    for (std::size_t m = 0; m < spec.n_records; ++m) {
        // Fixed draw order per record: I, R, W counts, then energy noise,
        // then time noise.
        std::array<std::uint64_t, kEventKindCount> counts{};
        const auto instruction = draw_class(spec.instruction_range);
        const auto reads = draw_class(spec.data_read_range);
        const auto writes = draw_class(spec.data_write_range);
        for (int level = 0; level < 3; ++level) {
            counts[static_cast<std::size_t>(level)] = instruction[static_cast<std::size_t>(level)];
            counts[static_cast<std::size_t>(3 + level)] = reads[static_cast<std::size_t>(level)];
            counts[static_cast<std::size_t>(6 + level)] = writes[static_cast<std::size_t>(level)];
        }

        double true_energy = 0.0;
        for (int i = 0; i < kEventKindCount; ++i) {
            true_energy += static_cast<double>(counts[static_cast<std::size_t>(i)]) *
                           spec.true_coefficients[static_cast<std::size_t>(i)];
        }

        const double energy_noise = std::exp(spec.noise_sigma * rng::standard_normal(gen));
        const double energy = true_energy * energy_noise;
        const double time_noise = std::exp(0.01 * rng::standard_normal(gen));
        const double decode_time = energy / spec.nominal_power_watts * time_noise;

        char index_text[16];
        std::snprintf(index_text, sizeof(index_text), "%04zu", m);
        records.push_back(MeasurementRecord{
            spec.codec + "-" + spec.decoder + "-" + index_text,
            spec.codec,
            spec.decoder,
            energy,
            decode_time,
            EventVector::from_counts(counts),
        });
    }
    return Dataset(std::move(records));
}

}  // namespace penergy::synthetic
