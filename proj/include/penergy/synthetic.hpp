#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "penergy/domain.hpp"

namespace penergy::synthetic {

struct Log10Range {
    double lo = 0.0;  // log10 of the smallest count
    double hi = 0.0;  // log10 of the largest count
};

// Recipe for a seeded dataset with known ground-truth specific energies.
// Reference counts are drawn log-uniformly; miss counts are drawn as
// fractions of their parent count, so every generated vector satisfies the
// cache-hierarchy monotonicity invariant by construction. Default ranges
// are calibrated to the magnitudes of real decoding runs (instruction
// counts around 1e10, energies of a few tens of joules).
struct GeneratorSpec {
    std::size_t n_records = 100;
    std::array<double, kEventKindCount> true_coefficients{};  // J/occurrence
    Log10Range instruction_range{9.5, 10.7};
    Log10Range data_read_range{9.2, 10.4};
    Log10Range data_write_range{8.8, 10.0};
    double l1_miss_fraction_max = 0.05;   // of the reference count
    double ll_miss_fraction_max = 0.2;    // of the L1 miss count
    double noise_sigma = 0.0;             // multiplicative log-normal, relative
    double nominal_power_watts = 2.0;     // ties decode_time to energy
    std::uint64_t seed = 0;
    std::string codec = "SYN";
    std::string decoder = "generator";

    void set_coefficient(EventKind kind, double joules_per_event) {
        true_coefficients[static_cast<std::size_t>(kind.index())] = joules_per_event;
    }
};

// The specific energies reported for the four-event model trained over all
// decoders: e_Ir = 0.47 nJ, e_ILL = 0.43 uJ, e_Wr = 1.5 nJ, e_WLL = 0.16 uJ.
GeneratorSpec paper_four_event_spec();

void validate_spec(const GeneratorSpec& spec);

// Deterministic for a given spec. Energy is the coefficient dot product
// scaled by exp(noise_sigma * z); decode time is energy over nominal power
// with independent 1% multiplicative noise.
Dataset generate(const GeneratorSpec& spec);

}  // namespace penergy::synthetic
