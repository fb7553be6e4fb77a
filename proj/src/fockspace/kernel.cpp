#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fockproj/errors.hpp"
#include "fockproj/fockspace.hpp"

namespace fockproj::fock {

using specfun::log_gamma;

namespace {

constexpr double kLogPi = 1.14472988584940017414;

// ln(m alpha^{n/m} / pi^n)
double log_prefactor(const SpaceParams& s) { return std::log(s.m) + (s.n / s.m) * std::log(s.alpha) - s.n * kLogPi; }

void check_point(const KernelPoint& pt, const SpaceParams& space) {
    space.validate_normable();
    const auto n = static_cast<std::size_t>(space.n);
    if (pt.x.size() != n || pt.y.size() != n) throw InvalidArgument("kernel point dimension does not match n");
}

specfun::MLParams ml_params(const SpaceParams& s) { return {1.0 / s.m, 1.0 / s.m, s.n - 1}; }

}  // namespace

complex kernel_series(const KernelPoint& pt, const SpaceParams& space) {
    check_point(pt, space);
    const double m = space.m;
    const int n = space.n;
    const complex w = std::pow(space.alpha, 1.0 / m) * inner(pt.x, pt.y);
    const double pref = log_prefactor(space);
    if (w == complex{}) return std::exp(pref - log_gamma(n / m));

    const double L = std::log(std::abs(w));
    const double theta = std::arg(w);
    // t_k = w^k / k! * Gamma(n + k) / Gamma((n + k) / m), summed directly.
    std::complex<long double> sum{};
    long double abs_sum = 0.0L;
    double prev = -std::numeric_limits<double>::infinity();
    int quiet = 0;
    for (int k = 0; k < 100000; ++k) {
        const double lt = pref + k * L + log_gamma(n + k) - log_gamma(k + 1.0) - log_gamma((n + k) / m);
        const complex t = std::polar(std::exp(lt), k * theta);
        sum += std::complex<long double>(t.real(), t.imag());
        abs_sum += std::abs(t);
        const bool decreasing = lt < prev;
        prev = lt;
        if (decreasing && std::abs(t) <= 1e-17 * std::abs(sum)) {
            if (++quiet >= 3) {
                // Cancellation loses roughly |terms| / |sum| in relative accuracy.
                const double cond = static_cast<double>(abs_sum / std::abs(sum));
                if (cond * 1e-15 > 1e-11) break;
                return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
            }
        } else {
            quiet = 0;
        }
    }
    std::ostringstream msg;
    msg << "kernel_series: power series cannot reach 1e-11 relative accuracy at alpha^{1/m}<x,y> = " << w
        << "; use kernel_ml";
    throw AccuracyError(msg.str());
}

specfun::EvalResult kernel_ml_scaled(const KernelPoint& pt, const SpaceParams& space) {
    check_point(pt, space);
    const complex w = std::pow(space.alpha, 1.0 / space.m) * inner(pt.x, pt.y);
    // Aim for relative accuracy (the kernel can be tiny off the positive axis) but only fail
    // where the library's default contract fails.
    specfun::MittagLeffler ml(ml_params(space));
    specfun::EvalResult r = ml.evaluate(w, specfun::Tolerance{0.0, 1e-12});
    if (!specfun::Tolerance{}.accepts(r)) r = specfun::mittag_leffler(ml_params(space), w);
    const double f = std::exp(log_prefactor(space));
    r.value *= f;
    r.abs_error_est *= f;
    return r;
}

complex kernel_ml(const KernelPoint& pt, const SpaceParams& space) { return kernel_ml_scaled(pt, space).unscaled(); }

KernelEnvelope::KernelEnvelope(const SpaceParams& space) : space_(space) {
    space_.validate_normable();
    const double m = space_.m;
    const double alpha = space_.alpha;
    const int n = space_.n;
    specfun::MittagLeffler ml(ml_params(space_));
    const double pref = log_prefactor(space_);
    // |K(x,y)| <= K evaluated at |x||y| on the positive axis (nonnegative coefficients), so
    // the sup of the real-axis ratio over t >= 1 bounds the constant. The grid runs until
    // the ratio has settled at its limit.
    const double t_max = std::pow(4000.0 / alpha, 1.0 / m);
    double sup = std::log(limit_constant());
    const int steps = 600;
    for (int i = 0; i <= steps; ++i) {
        const double t = std::exp(std::log(t_max) * i / steps);
        const specfun::EvalResult e = ml.evaluate(std::pow(alpha, 1.0 / m) * t);
        const double log_k = pref + e.log_abs();
        sup = std::max(sup, log_k - ((m - 1.0) * n * std::log(t) + alpha * std::pow(t, m)));
    }
    // Margin for the gaps between grid points.
    constant_ = 1.02 * std::exp(sup);
}

double KernelEnvelope::limit_constant() const {
    return std::pow(space_.m, space_.n + 1) * std::pow(space_.alpha / std::numbers::pi, space_.n);
}

double KernelEnvelope::log_bound(double t) const {
    // K is increasing in |<x,y>| along the positive axis, so the t = 1 value covers t < 1.
    t = std::max(t, 1.0);
    return std::log(constant_) + (space_.m - 1.0) * space_.n * std::log(t) + space_.alpha * std::pow(t, space_.m);
}

double log_kernel_envelope(const KernelPoint& pt, const SpaceParams& space) {
    check_point(pt, space);
    return KernelEnvelope(space).log_bound(pt);
}

double kernel_envelope(const KernelPoint& pt, const SpaceParams& space) {
    return std::exp(log_kernel_envelope(pt, space));
}

}  // namespace fockproj::fock
