#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include <quadmath.h>

#include "fockproj/errors.hpp"
#include "fockproj/specfun.hpp"

namespace fockproj::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxSeriesTerms = 100000;
// Beyond |z|^{1/a} = 700 the series terms overflow any useful precision.
constexpr double kSeriesLimit = 700.0;
// Values whose log-magnitude exceeds this are returned in scaled form.
constexpr double kScaleThreshold = 600.0;
// Quad precision absorbs cancellation up to about e^{50}; beyond that the asymptotic
// expansion is accurate to e^{-50}.
constexpr double kExtendedLimit = 50.0;

// sum_{j>=0} exp(log_coef(j)) z^j with the stopping rule
//   |term| <= 1e-16 |partial sum| for three consecutive terms past the peak.
// The error estimate combines the geometric tail bound with accumulated rounding.
template <class LogCoef>
EvalResult sum_log_series(LogCoef&& log_coef, complex z) {
    EvalResult out;
    out.regime = Regime::Series;
    if (z == complex{}) {
        const double v = std::exp(log_coef(0));
        out.value = v;
        out.abs_error_est = 2.0 * kEps * v;
        return out;
    }

    const double L = std::log(std::abs(z));
    const double theta = std::arg(z);

    // Pass 1: locate the largest term so huge sums can be scaled.
    double peak = -kInf;
    double prev = -kInf;
    for (std::size_t j = 0; j < kMaxSeriesTerms; ++j) {
        const double lm = log_coef(j) + static_cast<double>(j) * L;
        peak = std::max(peak, lm);
        if (j > 0 && lm < prev && lm < peak - 45.0) break;
        prev = lm;
    }
    const double ls = peak > kScaleThreshold ? peak : 0.0;

    std::complex<long double> sum{};
    double rounding = 0.0;
    int small_run = 0;
    double last_lm = -kInf;
    std::size_t j = 0;
    bool converged = false;
    for (; j < kMaxSeriesTerms; ++j) {
        const double c = log_coef(j);
        const double jd = static_cast<double>(j);
        const double lm = c + jd * L - ls;
        const double mag = std::exp(lm);
        const complex t = std::polar(mag, jd * theta);
        sum += std::complex<long double>(t.real(), t.imag());
        rounding += mag * kEps * (2.0 + std::abs(c) + jd * (std::abs(L) + std::abs(theta)));

        const double abs_sum = static_cast<double>(std::abs(sum));
        const bool past_peak = lm < last_lm;
        if (mag <= 1e-16 * abs_sum && past_peak) {
            if (++small_run >= 3) {
                converged = true;
                ++j;
                break;
            }
        } else {
            small_run = 0;
        }
        last_lm = lm;
    }

    out.value = complex(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
    out.log_scale = ls;
    if (!converged) {
        out.abs_error_est = kInf;
        return out;
    }
    // Tail after term j-1: geometric bound from the next ratio.
    const double next_lm = log_coef(j) + static_cast<double>(j) * L - ls;
    const double ratio = std::exp(log_coef(j + 1) - log_coef(j) + L);
    const double next = std::exp(next_lm);
    const double tail = ratio < 1.0 ? next / (1.0 - ratio) : 1e3 * next;
    out.abs_error_est = tail + rounding + 2.0 * kEps * std::abs(out.value);
    return out;
}

bool better(const EvalResult& x, const EvalResult& y) {
    const double ex = std::log(x.abs_error_est) + x.log_scale;
    const double ey = std::log(y.abs_error_est) + y.log_scale;
    return ex <= ey;
}

}  // namespace

const char* to_string(Regime r) {
    switch (r) {
        case Regime::Series: return "Series";
        case Regime::AsymptoticPrincipal: return "AsymptoticPrincipal";
        case Regime::AsymptoticMultiBranch: return "AsymptoticMultiBranch";
        case Regime::AlgebraicTail: return "AlgebraicTail";
    }
    return "?";
}

complex EvalResult::unscaled() const {
    if (log_scale == 0.0) return value;
    return value * std::exp(log_scale);
}

double EvalResult::log_abs() const { return std::log(std::abs(value)) + log_scale; }

double EvalResult::unscaled_error() const {
    if (log_scale == 0.0) return abs_error_est;
    return abs_error_est * std::exp(log_scale);
}

bool Tolerance::accepts(const EvalResult& r) const {
    if (!std::isfinite(r.abs_error_est) || !std::isfinite(std::abs(r.value))) return false;
    const double abs_part = abs * std::exp(abs_log_scale - r.log_scale);
    return r.abs_error_est <= std::max(abs_part, rel * std::abs(r.value));
}

void MLParams::validate() const {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("Mittag-Leffler parameters a, b must be positive");
    if (deriv_order < 0) throw DomainError("Mittag-Leffler derivative order must be nonnegative");
}

void GenMLParams::validate() const {
    if (!(a > 0.0) || !(b > 0.0) || !(gamma_p > 0.0) || !(delta_p > 0.0))
        throw DomainError("generalized Mittag-Leffler parameters must all be positive");
}

MittagLeffler::MittagLeffler(MLParams params, double switch_radius)
    : params_(params), switch_radius_(switch_radius) {
    params_.validate();
    // d-th derivative of z^c e^{z^mu}: sum_i C_i z^{c - d + mu i} e^{z^mu}
    //   C_{k+1,i} = (c - k + mu i) C_{k,i} + mu C_{k,i-1}
    const double mu = 1.0 / params_.a;
    const double c = (1.0 - params_.b) / params_.a;
    branch_coef_ = {1.0};
    for (int k = 0; k < params_.deriv_order; ++k) {
        std::vector<double> next(branch_coef_.size() + 1, 0.0);
        for (std::size_t i = 0; i < next.size(); ++i) {
            if (i < branch_coef_.size()) next[i] += (c - k + mu * static_cast<double>(i)) * branch_coef_[i];
            if (i >= 1) next[i] += mu * branch_coef_[i - 1];
        }
        branch_coef_ = std::move(next);
    }
}

double MittagLeffler::log_coefficient(std::size_t j) {
    while (log_coef_.size() <= j) {
        const double jj = static_cast<double>(log_coef_.size());
        const double d = params_.deriv_order;
        // ln[(j+d)!/j!] - ln Gamma(a (j+d) + b)
        log_coef_.push_back(log_gamma(jj + d + 1.0) - log_gamma(jj + 1.0) -
                            log_gamma(params_.a * (jj + d) + params_.b));
    }
    return log_coef_[j];
}

EvalResult MittagLeffler::series(complex z) {
    return sum_log_series([this](std::size_t j) { return log_coefficient(j); }, z);
}

EvalResult MittagLeffler::series_extended(complex z) const {
    using q = __float128;
    EvalResult out;
    out.regime = Regime::Series;
    const q a = params_.a;
    const q b = params_.b;
    const q d = params_.deriv_order;
    auto log_coef = [&](std::size_t j) {
        const q jj = static_cast<q>(j);
        return lgammaq(jj + d + 1) - lgammaq(jj + 1) - lgammaq(a * (jj + d) + b);
    };
    if (z == complex{}) {
        out.value = static_cast<double>(expq(log_coef(0)));
        out.abs_error_est = kEps * std::abs(out.value);
        return out;
    }
    const q zr = z.real(), zi = z.imag();
    const q L = logq(hypotq(zr, zi));
    const q theta = atan2q(zi, zr);

    q peak = -1e300;
    for (std::size_t j = 0; j < kMaxSeriesTerms; ++j) {
        const q lm = log_coef(j) + static_cast<q>(j) * L;
        if (lm > peak) peak = lm;
        else if (lm < peak - 90) break;
    }
    const q ls = peak > kScaleThreshold ? peak : 0;

    q sr = 0, si = 0, rounding = 0;
    int small_run = 0;
    q last_lm = -1e300;
    std::size_t j = 0;
    for (; j < kMaxSeriesTerms; ++j) {
        const q c = log_coef(j);
        const q lm = c + static_cast<q>(j) * L - ls;
        const q mag = expq(lm);
        const q ph = static_cast<q>(j) * theta;
        sr += mag * cosq(ph);
        si += mag * sinq(ph);
        rounding += mag * (4 + fabsq(c) + static_cast<q>(j) * (fabsq(L) + fabsq(theta)));
        if (mag <= static_cast<q>(1e-30) * hypotq(sr, si) && lm < last_lm) {
            if (++small_run >= 3) break;
        } else {
            small_run = 0;
        }
        last_lm = lm;
    }
    out.value = complex(static_cast<double>(sr), static_cast<double>(si));
    out.log_scale = static_cast<double>(ls);
    if (j == kMaxSeriesTerms) {
        out.abs_error_est = kInf;
        return out;
    }
    const q tail = static_cast<q>(1e-28) * hypotq(sr, si);
    out.abs_error_est = static_cast<double>(rounding * FLT128_EPSILON + tail) + kEps * std::abs(out.value);
    return out;
}

EvalResult MittagLeffler::asymptotic(complex z) const {
    EvalResult out;
    if (z == complex{}) {
        out.abs_error_est = kInf;
        out.regime = Regime::AlgebraicTail;
        return out;
    }
    const double a = params_.a;
    const double b = params_.b;
    const int d = params_.deriv_order;
    const double mu = 1.0 / a;
    const double c = (1.0 - b) / a;
    const double L = std::log(std::abs(z));
    const double theta = std::arg(z);
    const double R = std::exp(mu * L);

    struct Branch {
        int j;
        double psi;
        double phi;
        double weight;
    };
    std::vector<Branch> branches;
    // Branch j contributes for |phi| < pi (Stokes lines at |phi| = pi); neighbours
    // within |phi| < 2 pi are kept for the Stokes-smoothing error estimate.
    const int jlo = static_cast<int>(std::ceil((-2.0 * kPi * a - theta) / (2.0 * kPi)));
    const int jhi = static_cast<int>(std::floor((2.0 * kPi * a - theta) / (2.0 * kPi)));
    double ls = -kInf;
    for (int j = jlo; j <= jhi; ++j) {
        const double psi = theta + 2.0 * kPi * j;
        const double phi = psi / a;
        if (std::abs(phi) >= 2.0 * kPi) continue;
        double weight = 0.0;
        if (std::abs(std::abs(phi) - kPi) <= 1e-12) weight = 0.5;
        else if (std::abs(phi) < kPi) weight = 1.0;
        branches.push_back({j, psi, phi, weight});
        if (weight > 0.0) ls = std::max(ls, R * std::cos(phi));
    }
    ls = ls > kScaleThreshold ? ls : 0.0;

    complex branch_sum{};
    double stokes_err = 0.0;
    double rounding = 0.0;
    int included = 0;
    bool principal_only = true;
    for (const Branch& br : branches) {
        const complex logw(L, br.psi);
        // The factor e^{R cos phi - ls} is applied last so excluded branches cannot overflow.
        const double grow = R * std::cos(br.phi) - ls;
        const complex spin = std::polar(1.0, R * std::sin(br.phi));
        complex term{};
        double term_abs = 0.0;
        for (std::size_t i = 0; i < branch_coef_.size(); ++i) {
            if (branch_coef_[i] == 0.0) continue;
            const double expo = c - d + mu * static_cast<double>(i);
            const complex t = branch_coef_[i] * std::exp(expo * logw) * spin;
            term += t;
            term_abs += std::abs(t) * (4.0 + R + std::abs(expo * logw));
        }
        term /= a;
        const double dist = std::abs(std::abs(br.phi) - kPi);
        const double x = dist * std::sqrt(0.5 * R);
        // ln(erfc(x) / 2), with the large-x form where erfc underflows.
        const double log_half_erfc =
            x < 20.0 ? std::log(0.5 * std::erfc(x)) : -x * x - std::log(2.0 * x * std::sqrt(kPi));
        const double mag = std::abs(term);
        stokes_err += std::exp(std::log(mag) + grow + log_half_erfc);
        if (br.weight > 0.0) {
            branch_sum += br.weight * term * std::exp(grow);
            rounding += term_abs / a * kEps * std::exp(grow);
            ++included;
            if (br.j != 0) principal_only = false;
        }
    }

    // Algebraic tail: -sum_k (-1)^d (k)_d z^{-k-d} / Gamma(b - a k).
    complex alg{};
    double alg_err = 0.0;
    double min_term = kInf;
    int zero_run = 0;
    const int sign_d = (d % 2 == 0) ? 1 : -1;
    for (int k = 1; k <= 4000; ++k) {
        const SignedLog rg = log_reciprocal_gamma(b - a * k);
        if (rg.sign == 0) {
            if (++zero_run >= 64 && min_term == kInf) break;
            continue;
        }
        zero_run = 0;
        const double log_rising = log_gamma(static_cast<double>(k + d)) - log_gamma(static_cast<double>(k));
        const double lm = log_rising + rg.log_abs - (k + d) * L - ls;
        const double mag = std::exp(lm);
        const double scale = std::abs(branch_sum) + std::abs(alg);
        if (mag > min_term && k > d + 3) {
            alg_err = min_term;
            break;
        }
        if (mag <= 1e-17 * scale) {
            alg_err = mag;
            break;
        }
        const complex term = static_cast<double>(-sign_d * rg.sign) * std::polar(mag, -(k + d) * theta);
        alg += term;
        rounding += mag * kEps * (4.0 + std::abs(lm + ls) + (k + d) * std::abs(theta));
        min_term = std::min(min_term, mag);
        if (k == 4000) alg_err = mag;
    }

    out.value = branch_sum + alg;
    out.log_scale = ls;
    out.abs_error_est = alg_err + stokes_err + rounding + 2.0 * kEps * std::abs(out.value);
    if (included == 0) out.regime = Regime::AlgebraicTail;
    else if (included == 1 && principal_only) out.regime = Regime::AsymptoticPrincipal;
    else out.regime = Regime::AsymptoticMultiBranch;
    return out;
}

EvalResult MittagLeffler::evaluate(complex z, const Tolerance& tol) {
    const double radius = std::pow(std::abs(z), 1.0 / params_.a);
    EvalResult best;
    if (radius <= switch_radius_) {
        EvalResult s = series(z);
        if (tol.accepts(s) || z == complex{}) return s;
        EvalResult as = asymptotic(z);
        best = better(s, as) ? s : as;
    } else {
        EvalResult as = asymptotic(z);
        if (tol.accepts(as) || radius > kSeriesLimit) return as;
        EvalResult s = series(z);
        best = better(s, as) ? s : as;
    }
    if (tol.accepts(best) || radius > kExtendedLimit) return best;
    EvalResult x = series_extended(z);
    return better(x, best) ? x : best;
}

EvalResult mittag_leffler(const MLParams& params, complex z, const Tolerance& tol) {
    MittagLeffler ml(params);
    EvalResult r = ml.evaluate(z, tol);
    if (tol.accepts(r)) return r;

    const double radius = std::pow(std::abs(z), 1.0 / params.a);
    const double s_err = radius <= kSeriesLimit ? ml.series(z).unscaled_error() : -1.0;
    const double a_err = z != complex{} ? ml.asymptotic(z).unscaled_error() : -1.0;
    std::ostringstream msg;
    msg << "mittag_leffler: cannot certify tolerance at z = " << z << " (series error " << s_err
        << ", asymptotic error " << a_err << ")";
    throw AccuracyError(msg.str(), s_err, a_err);
}

EvalResult gen_mittag_leffler(const GenMLParams& p, complex z) {
    p.validate();
    if (std::pow(std::abs(z), 1.0 / p.a) > kSwitchRadius)
        throw OutOfRangeError("gen_mittag_leffler: |z|^{1/a} beyond the series radius; no asymptotics available");
    const double lead = log_gamma(p.delta_p) - log_gamma(p.gamma_p);
    return sum_log_series(
        [&](std::size_t j) {
            const double k = static_cast<double>(j);
            return lead + log_gamma(k + p.gamma_p) - log_gamma(p.a * k + p.b) - log_gamma(k + p.delta_p);
        },
        z);
}

}  // namespace fockproj::specfun
