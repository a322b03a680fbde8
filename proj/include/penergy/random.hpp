#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace penergy::rng {

// All randomized behavior in this project draws from std::mt19937_64 through
// the helpers below. The standard pins the mt19937_64 output sequence, and
// these transforms avoid std::*_distribution and std::shuffle, whose results
// are implementation-defined; fold plans and generated datasets therefore
// reproduce across platforms and standard libraries.

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
    return lo + (hi - lo) * uniform01(gen);
}

// Standard normal via Box-Muller; consumes exactly two engine draws.
inline double standard_normal(std::mt19937_64& gen) {
    const double u1 = 1.0 - uniform01(gen);  // (0, 1], keeps log finite
    const double u2 = uniform01(gen);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

// Fisher-Yates with a modulo draw; one engine draw per step.
template <typename T>
void shuffle(std::vector<T>& items, std::mt19937_64& gen) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(gen() % i);
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace penergy::rng
