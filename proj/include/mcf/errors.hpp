#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mcf {

// Both error types carry a machine-readable stage tag; the CLI maps the
// exception type to its exit code (validation -> 2, numerical -> 3).
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string stage, const std::string& what)
        : std::runtime_error(what), stage_(std::move(stage)) {}
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

class NumericalError : public std::runtime_error {
public:
    NumericalError(std::string stage, const std::string& what)
        : std::runtime_error(what), stage_(std::move(stage)) {}
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

} // namespace mcf
