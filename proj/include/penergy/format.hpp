#pragma once

#include <string>

namespace penergy::format {

// Canonical decimal rendering used by every writer: up to 12 significant
// digits, trailing zeros trimmed, plain notation (no exponent) at least for
// |x| in [1e-3, 1e6). Stable under write -> parse -> write.
std::string real(double value);

// "11.78%"-style percentage with two decimals.
std::string percent(double fraction);

// Specific energy with an SI-scaled companion, echoing how such values are
// usually quoted: "4.7e-10 J (0.47 nJ)".
std::string specific_energy(double joules);

}  // namespace penergy::format
