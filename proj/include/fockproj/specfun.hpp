#pragma once
//
// Special functions: log-Gamma, Gamma ratios and Mittag-Leffler functions
// E_{a,b}(z) = sum_k z^k / Gamma(a k + b) together with their derivatives.
//

#include <complex>
#include <cstddef>
#include <vector>

namespace fockproj::specfun {

using complex = std::complex<double>;

/// ln Gamma(x) for x > 0. Stirling series after shifting the argument to x >= 10,
/// with Taylor expansions around the zeros at x = 1 and x = 2.
double log_gamma(double x);

/// ln(Gamma(x) / Gamma(y)).
double log_gamma_ratio(double x, double y);

/// Gamma(x) / Gamma(y) evaluated in log space. Throws std::overflow_error when the
/// ratio itself is not representable as a double.
double gamma_ratio(double x, double y);

/// 1 / Gamma(x) for any real x (zero at the poles 0, -1, -2, ...).
double reciprocal_gamma(double x);

/// ln|1/Gamma(x)| and its sign; log_abs is -inf at the poles.
struct SignedLog {
    double log_abs;
    int sign;
};
SignedLog log_reciprocal_gamma(double x);

/// Parameters of the derivative E^{(deriv_order)}_{a,b}.
struct MLParams {
    double a = 1.0;
    double b = 1.0;
    int deriv_order = 0;

    void validate() const;
};

/// Parameters of the four-parameter family E^{gamma,delta}_{a,b}.
struct GenMLParams {
    double a = 1.0;
    double b = 1.0;
    double gamma_p = 1.0;
    double delta_p = 1.0;

    void validate() const;
};

enum class Regime { Series, AsymptoticPrincipal, AsymptoticMultiBranch, AlgebraicTail };

const char* to_string(Regime r);

/// Result of a Mittag-Leffler evaluation. Large values are carried in scaled form:
/// the represented number is value * exp(log_scale), and abs_error_est is in the same
/// scaled units. log_scale is 0 unless the unscaled value would come close to overflow.
struct EvalResult {
    complex value{};
    double abs_error_est = 0.0;
    Regime regime = Regime::Series;
    double log_scale = 0.0;

    /// value * exp(log_scale); may overflow to infinity.
    complex unscaled() const;
    /// ln|value * exp(log_scale)|.
    double log_abs() const;
    /// abs_error_est * exp(log_scale).
    double unscaled_error() const;
};

/// Acceptance test for an evaluation: |error| <= max(abs * e^{abs_log_scale}, rel * |value|).
/// abs_log_scale lets the absolute floor sit far outside the double range.
struct Tolerance {
    double abs = 1e-10;
    double rel = 1e-12;
    double abs_log_scale = 0.0;

    bool accepts(const EvalResult& r) const;
};

/// |z|^m = 25: below it the power series is used first, above it the asymptotic expansion.
inline constexpr double kSwitchRadius = 25.0;

/// Evaluator for E^{(d)}_{a,b}. Caches the log-coefficients of the power series, so an
/// instance must not be shared between threads; distinct instances are independent.
class MittagLeffler {
public:
    explicit MittagLeffler(MLParams params, double switch_radius = kSwitchRadius);

    const MLParams& params() const { return params_; }

    /// Best available value: series below the switch radius, asymptotics above it, and
    /// the other route as a fallback when the first one misses the tolerance, and the
    /// extended-precision series as the last resort for moderate |z|. Never throws
    /// on accuracy grounds; check the error estimate or use mittag_leffler().
    EvalResult evaluate(complex z, const Tolerance& tol = {});

    /// Power series sum_{k>=d} k!/(k-d)! z^{k-d} / Gamma(a k + b).
    EvalResult series(complex z);

    /// The same series summed in quad precision. Slow; used when cancellation
    /// between large terms defeats double precision.
    EvalResult series_extended(complex z) const;

    /// Exponential branch terms plus the algebraic tail -sum_k z^{-k}/Gamma(b - a k),
    /// both differentiated d times.
    EvalResult asymptotic(complex z) const;

private:
    double log_coefficient(std::size_t j);

    MLParams params_;
    double switch_radius_;
    std::vector<double> log_coef_;
    std::vector<double> branch_coef_;
};

/// E^{(d)}_{a,b}(z) to the requested tolerance; throws AccuracyError when neither the
/// series nor the asymptotic expansion can certify it.
EvalResult mittag_leffler(const MLParams& params, complex z, const Tolerance& tol = {});

/// Coefficients (constant term first) of p_k, where p_0 = 1 and
/// p_{k+1}(x) = (m x - k) p_k(x) + m x p_k'(x).
std::vector<double> p_polynomial(double m, int k);

/// Leading asymptotic term p_n(z^m) z^{-n} e^{z^m} of E^{(n-1)}_{1/m,1/m}(z) on the
/// principal branch. For m > 1/2 requires |arg z| <= pi/(2m).
complex ml_asymptotic_leading(double m, int n, complex z);

/// Series for Gamma(delta)/Gamma(gamma) sum_k Gamma(k+gamma) z^k / (Gamma(a k + b) Gamma(k + delta)).
/// Only available below the switch radius; throws OutOfRangeError beyond it.
EvalResult gen_mittag_leffler(const GenMLParams& params, complex z);

}  // namespace fockproj::specfun
