#pragma once

#include <stdexcept>
#include <string>

namespace penergy {

// Error taxonomy shared by the library and the CLI. The CLI maps each
// category to a fixed process exit code: 2 for input/parse problems,
// 3 for domain validation failures, 4 for modeling failures.
class Error : public std::runtime_error {
public:
    enum class Category { parse = 2, validation = 3, model = 4 };

    Error(Category category, const std::string& message)
        : std::runtime_error(message), category_(category) {}

    Category category() const noexcept { return category_; }
    int exit_code() const noexcept { return static_cast<int>(category_); }

private:
    Category category_;
};

// Malformed input: unreadable profiles, CSV files, model files.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& message)
        : Error(Category::parse, message) {}
};

// Data that parsed but violates a domain invariant (monotonicity,
// duplicate ids, non-positive energies, degenerate statistics inputs).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& message)
        : Error(Category::validation, message) {}
};

// Fitting or prediction failures: underdetermined systems, non-finite
// values, feature mismatches between a model and its input.
class ModelError : public Error {
public:
    explicit ModelError(const std::string& message)
        : Error(Category::model, message) {}
};

}  // namespace penergy
