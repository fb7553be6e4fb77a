#include <algorithm>
#include <cmath>
#include <string>

#include "fockproj/boundedness.hpp"
#include "fockproj/errors.hpp"

namespace fockproj::bound {

using fockproj::to_string;

namespace {

struct Quadratic {
    Rational a, b, c;  // a x^2 - b x + c
    Rational operator()(const Rational& x) const { return a * x * x - b * x + c; }
    Rational disc() const { return b * b - 4 * a * c; }
};

// sqrt(disc) > v, decided exactly.
bool sqrt_exceeds(const Rational& disc, const Rational& v) { return v < 0 || disc > v * v; }

}  // namespace

SchurWitness schur_feasibility(const Rational& p, const Rational& q, const Rational& c) {
    if (!(q > 1 && p >= q)) throw OutOfRangeError("schur_feasibility: the Schur test needs 1 < q <= p < infinity");
    SchurWitness out;
    const bool distinct = p != q;
    if (c <= 0) {
        out.constraint_report.push_back("infeasible: c <= 0");
        return out;
    }
    // (x - 1/p)(x - 1/q) <= (c - 1) x (1 - x)
    const Quadratic Q{c, 1 / p + 1 / q + c - 1, 1 / (p * q)};
    const Rational disc = Q.disc();
    const Rational t = distinct ? 1 / (q * c) : Rational(0);

    // Exact nonemptiness of {r1 <= x <= r2} with x in (t, 1), r1,2 = (b -+ sqrt(disc)) / 2a.
    bool feasible = disc >= 0;
    if (feasible) {
        // r2 > t  <=>  sqrt(disc) > 2 a t - b;   r1 < 1  <=>  sqrt(disc) > b - 2a.
        const bool upper_ok = (2 * Q.a * t - Q.b < 0) || sqrt_exceeds(disc, 2 * Q.a * t - Q.b);
        const bool lower_ok = (Q.b - 2 * Q.a < 0) || sqrt_exceeds(disc, Q.b - 2 * Q.a);
        feasible = upper_ok && lower_ok && t < 1;
    }

    if (disc >= 0) {
        const double sd = std::sqrt(to_double(disc));
        const double a = to_double(Q.a), b = to_double(Q.b);
        const double r1 = (b - sd) / (2 * a), r2 = (b + sd) / (2 * a);
        const double tl = to_double(t);
        out.interval_lo = std::max(r1, tl);
        out.interval_lo_open = tl >= r1;
        out.interval_hi = std::min(r2, 1.0);
        out.interval_hi_open = r2 >= 1.0;
    }

    auto admissible = [&](const Rational& x) { return x > 0 && x < 1 && x > t && Q(x) <= 0; };
    if (feasible) {
        std::vector<Rational> candidates{1 / q, 1 / p, Q.b / (2 * Q.a)};
        const double mid = 0.5 * (out.interval_lo + out.interval_hi);
        if (std::isfinite(mid)) candidates.push_back(Rational(mid));
        for (const Rational& x : candidates) {
            if (admissible(x)) {
                out.feasible = true;
                out.x = x;
                break;
            }
        }
        if (!out.feasible) {
            // Nonempty but too thin for the double midpoint: bisect in exact arithmetic.
            Rational lo = std::max(t, Rational(0)), hi = 1;
            for (int it = 0; it < 400 && !out.feasible; ++it) {
                const Rational xm = (lo + hi) / 2;
                if (admissible(xm)) {
                    out.feasible = true;
                    out.x = xm;
                } else if (xm < Q.b / (2 * Q.a)) {
                    lo = xm;
                } else {
                    hi = xm;
                }
            }
        }
    }

    const Rational x = out.x;
    if (out.feasible) {
        out.constraint_report.push_back("compatibility (x - 1/p)(x - 1/q) <= (c - 1) x (1 - x): " +
                                        std::string(Q(x) == 0 ? "tight" : "strict") + " at x = " + to_string(x));
        if (distinct) out.constraint_report.push_back("integrability x > 1/(qc): holds at x = " + to_string(x));
    } else {
        out.constraint_report.push_back(disc < 0 ? "infeasible: compatibility quadratic has no real roots"
                                                 : "infeasible: no x in (0, 1) meets both compatibility and "
                                                   "integrability");
    }
    return out;
}

SchurWitness schur_feasibility(const ProjectionProblem& P) {
    P.validate();
    SchurWitness w = schur_feasibility(P.p, P.q, c_value(P));
    if (!w.feasible) return w;

    const Rational& p = P.p;
    const Rational& q = P.q;
    const Rational& alpha = P.alpha;
    const Rational& beta = P.beta;
    const Rational& gamma = P.gamma;
    const Rational pp = p / (p - 1);  // p'
    const Rational qq = q / (q - 1);  // q'
    const Rational nu = (1 - w.x) * gamma / q;
    const Rational b2 = beta * beta;
    const bool distinct = p != q;

    // Row condition: beta - lambda p' > 0 and beta^2 / (4 (beta - lambda p')) <= nu q'.
    Rational hi = beta / pp - b2 / (4 * nu * qq * pp);
    // Column condition: gamma - nu q > 0 and alpha - beta + beta^2 / (4 (gamma - nu q)) <= lambda p.
    const Rational lo = b2 / (4 * (gamma - nu * q) * p) - (beta - alpha) / p;
    // Joint integrability (p != q): beta^2 < 4 (beta - lambda p')(gamma - nu q), strict.
    std::optional<Rational> strict_hi;
    if (distinct) strict_hi = beta / pp - b2 / (4 * (gamma - nu * q) * pp);

    w.nu = nu;
    w.lambda_lo = lo;
    w.lambda_hi = strict_hi ? std::min(hi, *strict_hi) : hi;
    Rational lambda = lo;
    if (strict_hi && !(lambda < *strict_hi)) lambda = (lo + std::min(hi, *strict_hi)) / 2;
    w.lambda = lambda;

    const Rational row_gap = beta - lambda * pp;
    const bool row = row_gap > 0 && b2 / (4 * row_gap) <= nu * qq;
    const Rational col_gap = gamma - nu * q;
    const bool col = col_gap > 0 && alpha - beta + b2 / (4 * col_gap) <= lambda * p;
    const bool joint = !distinct || b2 < 4 * row_gap * col_gap;
    auto status = [](bool ok, bool tight) { return std::string(ok ? (tight ? "holds (tight)" : "holds") : "fails"); };
    w.constraint_report.push_back("row condition on T phi: " + status(row, b2 / (4 * row_gap) == nu * qq));
    w.constraint_report.push_back("column condition on T* psi: " +
                                  status(col, alpha - beta + b2 / (4 * col_gap) == lambda * p));
    if (distinct) w.constraint_report.push_back("joint integrability: " + status(joint, false));
    if (!(row && col && joint)) {
        w.feasible = false;
        w.constraint_report.push_back("no admissible lambda for this x");
    }
    return w;
}

}  // namespace fockproj::bound
