#pragma once
// Adaptive Gauss-Kronrod quadrature, plus a log-space driver for sharply peaked
// integrands on half-lines such as t^rho exp(B t - A t^2).

#include <functional>
#include <vector>

namespace fockproj::quad {

struct Options {
    double rel_tol = 1e-12;
    double abs_tol = 0.0;
    int max_intervals = 4000;
};

struct Result {
    double value = 0.0;
    double abs_error = 0.0;
    int intervals = 0;
    bool converged = false;
};

/// Globally adaptive G10/K21 on [a, b], splitting the interval with the largest error.
Result gauss_kronrod(const std::function<double(double)>& f, double a, double b, const Options& opt = {});

/// Same, seeded with the partition given by sorted breakpoints.
Result gauss_kronrod(const std::function<double(double)>& f, const std::vector<double>& breakpoints,
                     const Options& opt = {});

/// Location and approximate width of the maximum of a log-integrand.
struct PeakHint {
    double location = 0.0;
    double width = 1.0;
};

/// Scans log_f on a geometric grid above lo and refines by golden section. The width comes
/// from the curvature at the maximum (or the decay length when the maximum sits at lo).
PeakHint find_log_peak(const std::function<double(double)>& log_f, double lo);

struct LogResult {
    double log_value = 0.0;  // ln of the integral
    double rel_error = 0.0;
    bool converged = false;
};

/// ln of the integral of exp(log_f) over [lo, infinity). The integrand is normalised by its
/// maximum, breakpoints are placed at peak +- width * 2^k, and the range is cut where the
/// integrand drops below 1e-30 of the maximum.
LogResult integrate_log_peaked(const std::function<double(double)>& log_f, double lo, PeakHint hint,
                               const Options& opt = {});

/// As above on the finite interval [lo, hi].
LogResult integrate_log_peaked(const std::function<double(double)>& log_f, double lo, double hi, PeakHint hint,
                               const Options& opt = {});

}  // namespace fockproj::quad
