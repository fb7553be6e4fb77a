#include "fockproj/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

namespace fockproj::quad {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// exp(-70) ~ 4e-31: integrand values below this fraction of the peak are dropped.
constexpr double kLogCutoff = 70.0;

constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452, 0.930157491355708226001207180059508,
    0.865063366688984510732096688423493, 0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784, 0.294392862701460198131126603103866,
    0.148874338981631210884826001129720, 0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390, 0.054755896574351996031381300244580,
    0.075039674810919952767043140916190, 0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208287016480, 0.134709217311473325928054001771707, 0.142775938577060080797094273138717,
    0.147739104901338491374841515972068, 0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
                                       0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
                                       0.295524224714752870173892994651338};

struct Piece {
    double a, b, value, error;
    bool operator<(const Piece& o) const { return error < o.error; }
};

// QUADPACK qk21 with its error heuristic.
Piece kronrod21(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = fc * kWgk[10];
    double resg = 0.0;
    double resabs = std::abs(resk);
    std::array<double, 10> f1{}, f2{};
    for (int j = 0; j < 10; ++j) {
        const double dx = h * kXgk[j];
        f1[j] = f(c - dx);
        f2[j] = f(c + dx);
        const double s = f1[j] + f2[j];
        resk += kWgk[j] * s;
        resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * s;
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[10] * std::abs(fc - mean);
    for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double ah = std::abs(h);
    double err = std::abs((resk - resg) * h);
    resasc *= ah;
    resabs *= ah;
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
    return {a, b, resk * h, err};
}

}  // namespace

Result gauss_kronrod(const std::function<double(double)>& f, const std::vector<double>& breakpoints,
                     const Options& opt) {
    Result out;
    std::priority_queue<Piece> heap;
    double total = 0.0, total_err = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i + 1] > breakpoints[i])) continue;
        Piece p = kronrod21(f, breakpoints[i], breakpoints[i + 1]);
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }
    while (!heap.empty()) {
        if (total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
            out.converged = true;
            break;
        }
        if (static_cast<int>(heap.size()) >= opt.max_intervals) break;
        Piece worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        // Interval no longer resolvable in double precision.
        if (!(mid > worst.a && mid < worst.b)) break;
        heap.pop();
        Piece left = kronrod21(f, worst.a, mid);
        Piece right = kronrod21(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed the drift of the running updates.
    total = 0.0;
    total_err = 0.0;
    out.intervals = static_cast<int>(heap.size());
    while (!heap.empty()) {
        total += heap.top().value;
        total_err += heap.top().error;
        heap.pop();
    }
    out.value = total;
    out.abs_error = total_err;
    if (!out.converged) out.converged = total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    return out;
}

Result gauss_kronrod(const std::function<double(double)>& f, double a, double b, const Options& opt) {
    return gauss_kronrod(f, std::vector<double>{a, b}, opt);
}

PeakHint find_log_peak(const std::function<double(double)>& log_f, double lo) {
    double best_t = lo;
    double best = log_f(lo);
    if (std::isnan(best)) best = -std::numeric_limits<double>::infinity();
    int best_k = -41;
    for (int k = -40; k <= 60; ++k) {
        const double t = lo + std::ldexp(1.0, k);
        const double v = log_f(t);
        if (v > best) {
            best = v;
            best_t = t;
            best_k = k;
        }
    }
    double left = best_k <= -40 ? lo : lo + std::ldexp(1.0, best_k - 1);
    double right = lo + std::ldexp(1.0, best_k + 1);
    if (best_k == -41) right = lo + std::ldexp(1.0, -40);

    // Golden section on [left, right].
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = right - g * (right - left), x2 = left + g * (right - left);
    double f1 = log_f(x1), f2 = log_f(x2);
    for (int it = 0; it < 200 && right - left > 1e-15 * std::max(1.0, std::abs(right)); ++it) {
        if (f1 < f2) {
            left = x1;
            x1 = x2;
            f1 = f2;
            x2 = left + g * (right - left);
            f2 = log_f(x2);
        } else {
            right = x2;
            x2 = x1;
            f2 = f1;
            x1 = right - g * (right - left);
            f1 = log_f(x1);
        }
    }
    const double cand = 0.5 * (left + right);
    const double fc = log_f(cand);
    if (fc > best) {
        best = fc;
        best_t = cand;
    }

    // Width: distance to where log_f has dropped by 1/2, on whichever side is closer.
    auto half_drop = [&](double dir) {
        double step = std::max(1e-300, 1e-12 * std::max(1.0, std::abs(best_t)));
        double inner = 0.0;
        for (int i = 0; i < 2100; ++i) {
            const double t = best_t + dir * step;
            if (dir < 0 && t < lo) return std::numeric_limits<double>::infinity();
            const double v = log_f(t);
            if (!(v > best - 0.5)) break;
            inner = step;
            step *= 2.0;
            if (!std::isfinite(step)) return std::numeric_limits<double>::infinity();
        }
        double outer = step;
        for (int i = 0; i < 80; ++i) {
            const double midp = 0.5 * (inner + outer);
            if (log_f(best_t + dir * midp) > best - 0.5) inner = midp;
            else outer = midp;
        }
        return 0.5 * (inner + outer);
    };
    const double w = std::min(half_drop(1.0), half_drop(-1.0));
    return {best_t, std::isfinite(w) && w > 0.0 ? w : 1.0};
}

namespace {

LogResult integrate_log_impl(const std::function<double(double)>& log_f, double lo, double hi, PeakHint hint,
                             const Options& opt) {
    const double loc = std::clamp(hint.location, lo, hi);
    const double w = hint.width > 0.0 ? hint.width : 1.0;
    double lmax = log_f(loc);

    std::vector<double> pts{loc};
    double right_end = loc;
    for (int k = 0; k < 1100; ++k) {
        double t = loc + w * std::ldexp(1.0, k);
        if (t >= hi) {
            right_end = hi;
            break;
        }
        const double v = log_f(t);
        lmax = std::max(lmax, v);
        pts.push_back(t);
        right_end = t;
        if (v < lmax - kLogCutoff) break;
    }
    if (std::isfinite(hi)) {
        if (right_end >= hi) pts.push_back(hi);
    }
    double left_end = loc;
    for (int k = 0; k < 1100 && left_end > lo; ++k) {
        double t = loc - w * std::ldexp(1.0, k);
        if (t <= lo) {
            left_end = lo;
            break;
        }
        const double v = log_f(t);
        lmax = std::max(lmax, v);
        pts.push_back(t);
        left_end = t;
        if (v < lmax - kLogCutoff) break;
    }
    if (left_end <= lo) pts.push_back(lo);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    LogResult out;
    if (!std::isfinite(lmax)) {
        out.log_value = lmax;
        out.converged = lmax == -std::numeric_limits<double>::infinity();
        return out;
    }
    auto g = [&](double t) {
        const double v = log_f(t);
        return v == -std::numeric_limits<double>::infinity() ? 0.0 : std::exp(v - lmax);
    };
    const Result r = gauss_kronrod(g, pts, opt);
    out.log_value = lmax + std::log(r.value);
    out.rel_error = r.value > 0.0 ? r.abs_error / r.value : std::numeric_limits<double>::infinity();
    // The dropped tails are below exp(-70) of the peak times the covered length.
    out.rel_error += std::exp(-kLogCutoff) * (right_end - left_end) / std::max(r.value, 1e-300);
    out.converged = r.converged;
    return out;
}

}  // namespace

LogResult integrate_log_peaked(const std::function<double(double)>& log_f, double lo, PeakHint hint,
                               const Options& opt) {
    return integrate_log_impl(log_f, lo, std::numeric_limits<double>::infinity(), hint, opt);
}

LogResult integrate_log_peaked(const std::function<double(double)>& log_f, double lo, double hi, PeakHint hint,
                               const Options& opt) {
    return integrate_log_impl(log_f, lo, hi, hint, opt);
}

}  // namespace fockproj::quad
