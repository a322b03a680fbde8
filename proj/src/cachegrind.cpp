#include "penergy/cachegrind.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

namespace penergy::cachegrind {

namespace {

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

std::string_view strip_one_leading_space(std::string_view text) {
    if (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    return text;
}

std::vector<std::string_view> split_spaces(std::string_view text) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && text[pos] == ' ') ++pos;
        std::size_t end = pos;
        while (end < text.size() && text[end] != ' ') ++end;
        if (end > pos) tokens.push_back(text.substr(pos, end - pos));
        pos = end;
    }
    return tokens;
}

// A header line is "key: value" with an identifier key. Position lines of
// the body ("fl=...", "fn=...") and digit-led cost lines are not headers.
bool looks_like_header(std::string_view line, std::string_view& key,
                       std::string_view& value) {
    std::size_t i = 0;
    while (i < line.size() &&
           (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_')) {
        ++i;
    }
    if (i == 0 || i >= line.size() || line[i] != ':') return false;
    key = line.substr(0, i);
    value = strip_one_leading_space(line.substr(i + 1));
    return true;
}

[[noreturn]] void fail(int line_no, const std::string& what) {
    std::ostringstream msg;
    msg << "malformed cachegrind profile, line " << line_no << ": " << what;
    throw ParseError(msg.str());
}

}  // namespace

CachegrindProfile parse_profile(std::istream& input) {
    CachegrindProfile profile;
    bool saw_events = false;
    bool saw_summary = false;

    std::string raw;
    int line_no = 0;
    while (std::getline(input, raw)) {
        ++line_no;
        const std::string_view line = strip_cr(raw);
        if (line.empty()) continue;

        std::string_view key, value;
        if (!looks_like_header(line, key, value)) {
            continue;  // fl=/fn= positions, digit-led cost lines, jumps
        }

        if (key == "desc") {
            profile.description_lines.emplace_back(value);
        } else if (key == "cmd") {
            profile.command = std::string(value);
        } else if (key == "events") {
            if (saw_events) fail(line_no, "duplicate events: line");
            for (auto token : split_spaces(value)) {
                profile.event_names.emplace_back(token);
            }
            if (profile.event_names.empty()) fail(line_no, "events: line lists no events");
            saw_events = true;
        } else if (key == "summary") {
            if (!saw_events) fail(line_no, "summary: line appears before events: line");
            if (saw_summary) fail(line_no, "duplicate summary: line");
            const auto tokens = split_spaces(value);
            if (tokens.size() != profile.event_names.size()) {
                std::ostringstream what;
                what << "summary: lists " << tokens.size() << " counts but events: lists "
                     << profile.event_names.size();
                fail(line_no, what.str());
            }
            for (auto token : tokens) {
                std::uint64_t count = 0;
                const auto [ptr, ec] =
                    std::from_chars(token.data(), token.data() + token.size(), count);
                if (ec != std::errc{} || ptr != token.data() + token.size()) {
                    fail(line_no, "non-integer summary count '" + std::string(token) + "'");
                }
                profile.totals.push_back(count);
            }
            saw_summary = true;
        } else {
            // Unknown header keys vary across profiler versions; keep them.
            profile.description_lines.push_back(std::string(key) + ": " + std::string(value));
        }
    }

    if (!saw_events) fail(line_no, "no events: line found");
    if (!saw_summary) fail(line_no, "no summary: line found");
    return profile;
}

CachegrindProfile parse_profile(const std::string& text) {
    std::istringstream stream(text);
    return parse_profile(stream);
}

CachegrindProfile parse_profile_file(const std::string& path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) {
        throw ParseError("cannot open cachegrind profile '" + path + "'");
    }
    return parse_profile(stream);
}

EventVector to_event_vector(const CachegrindProfile& profile) {
    std::array<std::uint64_t, kEventKindCount> counts{};
    for (EventKind kind : all_event_kinds()) {
        const std::string_view wanted = kind.cachegrind_name();
        bool found = false;
        for (std::size_t col = 0; col < profile.event_names.size(); ++col) {
            if (profile.event_names[col] == wanted) {
                counts[kind.index()] = profile.totals.at(col);
                found = true;
                break;
            }
        }
        if (!found) {
            throw ParseError("profile lists no '" + std::string(wanted) +
                             "' event; all nine cache events are required");
        }
    }
    return EventVector::from_counts(counts);
}

}  // namespace penergy::cachegrind
