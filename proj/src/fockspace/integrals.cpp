#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fockproj/errors.hpp"
#include "fockproj/fockspace.hpp"
#include "fockproj/quadrature.hpp"

namespace fockproj::fock {

using specfun::log_gamma;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLogPi = 1.14472988584940017414;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// The integrators aim at 1e-12; callers accept a looser estimate.
void require_converged(const quad::LogResult& r, double rel_tol, const char* what) {
    if (!(r.rel_error <= rel_tol) || !std::isfinite(r.log_value)) {
        std::ostringstream msg;
        msg << what << ": quadrature did not reach the requested accuracy (relative error estimate " << r.rel_error
            << ")";
        throw AccuracyError(msg.str());
    }
}

// ln of the area of the unit sphere in R^{2n-2}, i.e. 2 pi^{n-1} / Gamma(n-1).
double log_sphere_area_2n_minus_3(int n) { return std::log(2.0) + (n - 1) * kLogPi - log_gamma(n - 1.0); }

// ln I(R), I(R) = 2 int_0^pi |E(R e^{i theta})| d theta  (E(conj z) = conj E(z)).
quad::LogResult log_circle_integral(specfun::MittagLeffler& ml, double R, double m, double rel_tol) {
    // |E| peaks at theta = 0, so accuracy elsewhere only matters relative to that value.
    const double log_peak = ml.evaluate(R).log_abs();
    const specfun::Tolerance tol{1e-12, 1e-12, std::isfinite(log_peak) ? log_peak : 0.0};
    auto log_f = [&](double theta) { return ml.evaluate(std::polar(R, theta), tol).log_abs(); };
    const double width = R > 0.0 ? std::min(kPi, 1.0 / (m * std::sqrt(std::pow(R, m)) + 1e-300)) : kPi;
    quad::LogResult r = quad::integrate_log_peaked(log_f, 0.0, kPi, {0.0, width}, {rel_tol, 0.0, 4000});
    r.log_value += std::log(2.0);
    return r;
}

specfun::MLParams ml_params(double m, int n) { return {1.0 / m, 1.0 / m, n - 1}; }

}  // namespace

double RadialMoment::value() const { return std::exp(log_value); }
double RadialMoment::envelope() const { return std::exp(log_envelope); }
double RadialMoment::ratio() const { return std::exp(log_value - log_envelope); }

double EnvelopeValue::value() const { return std::exp(log_value); }
double EnvelopeValue::ratio() const { return std::exp(log_value - log_envelope); }

RadialMoment radial_moment(double rho, double A, double B) {
    if (!(rho > -1.0) || !std::isfinite(rho)) throw DomainError("radial_moment: rho must exceed -1");
    if (!(A > 0.0) || !std::isfinite(A)) throw DomainError("radial_moment: A must be positive");
    if (!std::isfinite(B)) throw DomainError("radial_moment: B must be finite");

    const quad::Options opt{1e-12, 0.0, 4000};
    quad::LogResult r;
    const double w_t = 1.0 / std::sqrt(2.0 * A);
    if (rho >= 0.0) {
        // Critical point of rho ln t + B t - A t^2.
        const double disc = B * B + 8.0 * A * rho;
        const double t0 = std::max(0.0, (B + std::sqrt(disc)) / (4.0 * A));
        auto log_f = [=](double t) {
            if (t == 0.0) return rho == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
            return rho * std::log(t) + B * t - A * t * t;
        };
        r = quad::integrate_log_peaked(log_f, 0.0, {t0, w_t}, opt);
    } else {
        // t = u^s with s = 1/(rho+1) removes the endpoint singularity: t^rho dt = s du.
        const double s = 1.0 / (rho + 1.0);
        const double t_star = std::max(0.0, B / (2.0 * A));
        const double u_star = std::pow(t_star, rho + 1.0);
        const double w_u =
            t_star > w_t ? (rho + 1.0) * std::pow(t_star, rho) * w_t : std::pow(w_t, rho + 1.0);
        auto log_f = [=](double u) {
            const double t = std::pow(u, s);
            return std::log(s) + B * t - A * t * t;
        };
        r = quad::integrate_log_peaked(log_f, 0.0, {u_star, w_u}, opt);
    }
    require_converged(r, 1e-9, "radial_moment");

    RadialMoment out;
    out.log_value = r.log_value;
    out.rel_error = r.rel_error;
    out.log_envelope = B > 0.0 ? rho * std::log(B) + B * B / (4.0 * A) : kNaN;
    return out;
}

EnvelopeValue circle_ml_integral(double R, double m, int n) {
    if (!(R >= 0.0) || !std::isfinite(R)) throw DomainError("circle_ml_integral: R must be nonnegative");
    if (!(m > 0.0)) throw DomainError("circle_ml_integral: m must be positive");
    if (n < 1) throw InvalidArgument("circle_ml_integral: n must be at least 1");
    specfun::MittagLeffler ml(ml_params(m, n));
    const quad::LogResult r = log_circle_integral(ml, R, m, 1e-11);
    require_converged(r, 1e-9, "circle_ml_integral");
    EnvelopeValue out;
    out.log_value = r.log_value;
    out.rel_error = r.rel_error;
    out.log_envelope = R > 0.0 ? ((m - 1.0) * n - m / 2.0) * std::log(R) + std::pow(R, m) : kNaN;
    return out;
}

EnvelopeValue kernel_sphere_average(double r, const Point& y, const SpaceParams& space) {
    space.validate_normable();
    if (y.size() != static_cast<std::size_t>(space.n)) throw InvalidArgument("point dimension does not match n");
    if (!(r > 0.0)) throw DomainError("kernel_sphere_average: r must be positive");
    const double ynorm = norm(y);
    if (!(ynorm > 0.0)) throw DomainError("kernel_sphere_average: y must be nonzero");

    const double m = space.m;
    const int n = space.n;
    const double beta = space.alpha;
    const double Z = std::pow(beta, 1.0 / m) * r * ynorm;
    const double log_pref = std::log(m) + (n / m) * std::log(beta) - n * kLogPi;
    specfun::MittagLeffler ml(ml_params(m, n));

    quad::LogResult s;
    if (n == 1) {
        s = log_circle_integral(ml, Z, m, 1e-11);
    } else {
        // Rotate y to (|y|, 0, ..., 0); integrating out zeta' leaves
        //   2 pi^{n-1}/Gamma(n-1) * int_0^1 rho (1 - rho^2)^{n-2} I(Z rho) d rho.
        bool inner_ok = true;
        auto log_f = [&](double rho) {
            if (rho <= 0.0 || rho >= 1.0) {
                if (rho >= 1.0 && n == 2) return log_circle_integral(ml, Z, m, 1e-11).log_value;
                return -std::numeric_limits<double>::infinity();
            }
            const quad::LogResult c = log_circle_integral(ml, Z * rho, m, 1e-11);
            inner_ok = inner_ok && c.converged;
            return std::log(rho) + (n - 2) * std::log1p(-rho * rho) + c.log_value;
        };
        const double w = std::min(0.5, 1.0 / (m * std::pow(std::max(Z, 1.0), m)));
        const double peak = std::max(0.0, 1.0 - (n - 2) * w);
        s = quad::integrate_log_peaked(log_f, 0.0, 1.0, {peak, w}, {1e-10, 0.0, 2000});
        if (!inner_ok) s.converged = false;
        s.log_value += log_sphere_area_2n_minus_3(n);
    }
    require_converged(s, 1e-8, "kernel_sphere_average");

    EnvelopeValue out;
    out.log_value = log_pref + s.log_value;
    out.rel_error = s.rel_error;
    const double ry = r * ynorm;
    out.log_envelope = (m / 2.0 - n) * std::log(ry) + beta * std::pow(ry, m);
    return out;
}

EnvelopeValue weighted_kernel_integral(const Point& y, const SpaceParams& space, double C) {
    space.validate_normable();
    if (y.size() != static_cast<std::size_t>(space.n)) throw InvalidArgument("point dimension does not match n");
    if (!(C > 0.0) || !std::isfinite(C)) throw DomainError("weighted_kernel_integral: C must be positive");

    const double m = space.m;
    const int n = space.n;
    const double beta = space.alpha;
    const double Y = norm(y);
    const double scale = std::pow(beta, 1.0 / m) * Y;
    const double log_pref = std::log(m) + (n / m) * std::log(beta) - n * kLogPi;
    specfun::MittagLeffler ml(ml_params(m, n));

    // With y = (|y|, 0, ..., 0) the kernel depends on x_1 only. Integrating out x' gives
    //   h(s) = 2 pi^{n-1}/Gamma(n-1) int_s^inf r (r^2 - s^2)^{n-2} exp(-C r^{2m}) dr,  s = |x_1|,
    // and h(s) = exp(-C s^{2m}) when n = 1.
    bool inner_ok = true;
    auto log_h = [&](double s) {
        const double base = -C * std::pow(s, 2.0 * m);
        if (n == 1) return base;
        // r = s + u; exp(-C (r^{2m} - s^{2m})) with the difference formed without cancellation.
        auto log_g = [&](double u) {
            if (u <= 0.0) return n == 2 && s > 0.0 ? std::log(s) : -std::numeric_limits<double>::infinity();
            const double diff = s > 0.0 ? std::pow(s, 2.0 * m) * std::expm1(2.0 * m * std::log1p(u / s))
                                        : std::pow(u, 2.0 * m);
            return std::log(s + u) + (n - 2) * (std::log(u) + std::log(2.0 * s + u)) - C * diff;
        };
        const quad::PeakHint hint = quad::find_log_peak(log_g, 0.0);
        const quad::LogResult g = quad::integrate_log_peaked(log_g, 0.0, hint, {1e-12, 0.0, 2000});
        inner_ok = inner_ok && g.converged;
        return log_sphere_area_2n_minus_3(n) + g.log_value + base;
    };
    auto log_f = [&](double s) {
        if (s <= 0.0) return -std::numeric_limits<double>::infinity();
        const quad::LogResult c = log_circle_integral(ml, scale * s, m, 1e-11);
        inner_ok = inner_ok && c.converged;
        return std::log(s) + c.log_value + log_h(s);
    };

    // Exponent beta |y|^m s^m - C s^{2m} peaks at s^m = beta |y|^m / 2C.
    quad::PeakHint hint;
    const double s_star = std::pow(beta / (2.0 * C), 1.0 / m) * Y;
    if (scale * s_star >= 2.0) {
        hint = {s_star, 1.0 / (m * std::pow(s_star, m - 1.0) * std::sqrt(2.0 * C))};
    } else {
        hint = quad::find_log_peak(log_f, 0.0);
    }
    quad::LogResult r = quad::integrate_log_peaked(log_f, 0.0, hint, {1e-10, 0.0, 2000});
    if (!inner_ok) r.converged = false;
    require_converged(r, 1e-8, "weighted_kernel_integral");

    EnvelopeValue out;
    out.log_value = log_pref + r.log_value;
    out.rel_error = r.rel_error;
    out.log_envelope = beta * beta * std::pow(Y, 2.0 * m) / (4.0 * C);
    return out;
}

}  // namespace fockproj::fock
