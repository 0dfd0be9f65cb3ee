#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coreflow {

/// A parameter is outside the domain an operation accepts.
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A randomized generator exhausted its retry budget.
class GenerationFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input text could not be parsed; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, long line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    long line() const { return line_; }

private:
    long line_;
};

/// A charge state is inconsistent with the graph it is paired with.
class InvalidState : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A run produced no core nodes where one is required.
class EmptyCore : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Total load meets or exceeds total capacity; shedding cannot succeed.
class InfeasibleLoad : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative computation hit its round budget before the stop rule fired.
/// Keeps the values as of the last completed round.
class ConvergenceFailure : public std::runtime_error {
public:
    ConvergenceFailure(const std::string& what, std::vector<double> partial)
        : std::runtime_error(what), partial_values_(std::move(partial)) {}

    const std::vector<double>& partial_values() const { return partial_values_; }

private:
    std::vector<double> partial_values_;
};

} // namespace coreflow
