#pragma once

#include <stdexcept>
#include <string>

namespace fockproj {

/// Argument outside the mathematical domain of an operation (x <= 0 for log-Gamma, alpha <= 0 for a norm, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Structurally invalid input: dimension mismatch, malformed problem, violated precondition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Requested evaluation lies outside the region where the method is available.
class OutOfRangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// A defining integral does not converge (e.g. projecting a function that grows faster than the weight decays).
class DivergenceError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// No available method reached the requested accuracy.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double series_error = -1, double asymptotic_error = -1)
        : std::runtime_error(what), series_error_(series_error), asymptotic_error_(asymptotic_error) {}

    /// Error estimate of the series route, or -1 when it was not attempted.
    double series_error() const noexcept { return series_error_; }
    /// Error estimate of the asymptotic route, or -1 when it was not attempted.
    double asymptotic_error() const noexcept { return asymptotic_error_; }

private:
    double series_error_;
    double asymptotic_error_;
};

}  // namespace fockproj
