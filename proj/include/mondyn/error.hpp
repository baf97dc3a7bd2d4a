#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace mondyn {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input: precondition violations, dimension mismatches, malformed configs.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A construction that cannot exist for the given inputs (e.g. no convexity
// violation of a convex link).
class Infeasible : public Error {
public:
    using Error::Error;
};

// Failure during a numerical run: non-finite state, link domain violation,
// background fitness too small, LP breakdown.
class NumericalFailure : public Error {
public:
    explicit NumericalFailure(const std::string& what, std::optional<double> time = std::nullopt)
        : Error(time ? what + " (at t=" + std::to_string(*time) + ")" : what), time_(time) {}

    std::optional<double> time() const { return time_; }

private:
    std::optional<double> time_;
};

}  // namespace mondyn
