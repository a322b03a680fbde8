#include "penergy/format.hpp"

#include <cmath>
#include <cstdio>

namespace penergy::format {

std::string real(double value) {
    if (value == 0.0) return "0";
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

std::string percent(double fraction) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.2f%%", fraction * 100.0);
    return buffer;
}

std::string specific_energy(double joules) {
    if (joules == 0.0) return "0 J";

    struct Unit {
        double scale;
        const char* suffix;
    };
    // Largest unit in which the magnitude is still >= 0.1, so 4.7e-10 J
    // reads as 0.47 nJ and 4.3e-7 J as 0.43 uJ.
    static constexpr Unit units[] = {
        {1.0, "J"}, {1e-3, "mJ"}, {1e-6, "uJ"}, {1e-9, "nJ"}, {1e-12, "pJ"}};

    const Unit* chosen = &units[std::size(units) - 1];
    for (const Unit& unit : units) {
        if (std::abs(joules) / unit.scale >= 0.1) {
            chosen = &unit;
            break;
        }
    }

    char buffer[80];
    std::snprintf(buffer, sizeof(buffer), "%.12g J (%.3g %s)", joules,
                  joules / chosen->scale, chosen->suffix);
    return buffer;
}

}  // namespace penergy::format
