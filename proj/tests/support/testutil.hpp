#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include <sys/wait.h>

#include "penergy/domain.hpp"

namespace testutil {

inline std::string fixture_path(const std::string& name) {
    return std::string(PENERGY_FIXTURE_DIR) + "/" + name;
}

// Scratch directory removed on destruction.
class TempDir {
public:
    TempDir() {
        auto base = std::filesystem::temp_directory_path();
        std::random_device rd;
        for (int attempt = 0; attempt < 32; ++attempt) {
            auto candidate = base / ("penergy-test-" + std::to_string(rd()));
            std::error_code ec;
            if (std::filesystem::create_directory(candidate, ec)) {
                path_ = candidate;
                return;
            }
        }
        throw std::runtime_error("cannot create scratch directory");
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline std::string read_file(const std::string& path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) throw std::runtime_error("cannot read " + path);
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return buffer.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream stream(path, std::ios::binary | std::ios::trunc);
    stream << content;
}

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout only
};

// Runs a command line, capturing stdout; stderr goes to a scratch file the
// caller can ignore.
inline RunResult run_command(const std::string& command) {
    const std::string full = command + " 2>/dev/null";
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed for: " + command);
    RunResult result;
    std::array<char, 4096> chunk{};
    std::size_t got = 0;
    while ((got = fread(chunk.data(), 1, chunk.size(), pipe)) > 0) {
        result.output.append(chunk.data(), got);
    }
    const int status = pclose(pipe);
    result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return result;
}

// Relative difference suited to tiny magnitudes (doctest's Approx mixes in
// an absolute scale of 1.0, which is far too lax for values near 1e-10).
inline double rel_diff(double a, double b) {
    const double denom = std::max(std::abs(a), std::abs(b));
    return denom == 0.0 ? 0.0 : std::abs(a - b) / denom;
}

inline penergy::EventVector make_events(std::uint64_t ir, std::uint64_t il1, std::uint64_t ill,
                                        std::uint64_t rr, std::uint64_t rl1, std::uint64_t rll,
                                        std::uint64_t wr, std::uint64_t wl1, std::uint64_t wll) {
    return penergy::EventVector::from_counts({ir, il1, ill, rr, rl1, rll, wr, wl1, wll});
}

}  // namespace testutil
