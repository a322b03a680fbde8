#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "penergy/domain.hpp"

namespace penergy::cachegrind {

// Header fields and program totals of one cachegrind output file
// ("cachegrind.out.<pid>" format). Only the summary totals are consumed;
// the per-file/per-function body is tolerated and skipped.
struct CachegrindProfile {
    std::string command;                         // cmd: value, verbatim
    std::vector<std::string> event_names;        // events: columns, in order
    std::vector<std::uint64_t> totals;           // summary: counts, same order
    std::vector<std::string> description_lines;  // desc: and unknown headers
};

CachegrindProfile parse_profile(std::istream& input);
CachegrindProfile parse_profile(const std::string& text);
CachegrindProfile parse_profile_file(const std::string& path);

// Maps the nine canonical columns (Ir I1mr ILmr Dr D1mr DLmr Dw D1mw DLmw)
// onto an EventVector; extra columns such as branch counters are ignored.
EventVector to_event_vector(const CachegrindProfile& profile);

}  // namespace penergy::cachegrind
