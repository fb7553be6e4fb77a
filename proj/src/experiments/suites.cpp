#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "fockproj/errors.hpp"
#include "fockproj/experiments.hpp"
#include "fockproj/fockspace.hpp"

namespace fockproj::exper {

namespace {

double rel_change(double a, double b) { return std::abs(b / a - 1.0); }

// Largest relative deviation between any two ratios in rows[from..].
double spread(const std::vector<EnvelopeRow>& rows, std::size_t from) {
    double d = 0.0;
    for (std::size_t i = from; i < rows.size(); ++i)
        for (std::size_t j = from; j < rows.size(); ++j) d = std::max(d, rel_change(rows[i].ratio, rows[j].ratio));
    return d;
}

void finish(EnvelopeCheck& c, double drift, double tol) {
    c.drift = drift;
    c.tolerance = tol;
    bool finite = true;
    for (const auto& r : c.rows) finite = finite && std::isfinite(r.ratio) && r.ratio > 0.0;
    c.passed = finite && drift < tol;
    std::ostringstream s;
    s << "drift " << drift << (c.passed ? " < " : " >= ") << tol;
    if (!finite) s << "; non-finite ratio";
    c.detail = s.str();
}

template <class Fn>
EnvelopeCheck guarded(const std::string& label, Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        EnvelopeCheck c;
        c.label = label;
        c.passed = false;
        c.detail = std::string("error: ") + e.what();
        return c;
    }
}

}  // namespace

bool SuiteReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const EnvelopeCheck& c) { return c.passed; });
}

unsigned default_threads() {
    if (const char* env = std::getenv("FOCKPROJ_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SuiteReport lemma8_suite(const std::vector<double>& rho_grid, const std::vector<double>& A_grid,
                         const std::vector<double>& B_grid, unsigned threads) {
    if (B_grid.size() < 2) throw InvalidArgument("lemma8_suite needs at least two B values");
    struct Case {
        double rho, A;
    };
    std::vector<Case> cases;
    for (double rho : rho_grid)
        for (double A : A_grid) cases.push_back({rho, A});
    SuiteReport rep;
    rep.name = "lemma8";
    rep.checks = parallel_map<EnvelopeCheck>(
        cases.size(),
        [&](std::size_t i) {
            const Case cs = cases[i];
            std::ostringstream label;
            label << "rho=" << cs.rho << " A=" << cs.A;
            return guarded(label.str(), [&] {
                EnvelopeCheck c;
                c.label = label.str();
                for (double B : B_grid) {
                    const fock::RadialMoment r = fock::radial_moment(cs.rho, cs.A, B);
                    c.rows.push_back({{cs.rho, cs.A, B}, r.log_value, r.log_envelope, r.ratio()});
                }
                const std::size_t N = c.rows.size();
                finish(c, rel_change(c.rows[N - 2].ratio, c.rows[N - 1].ratio), cs.rho < 0.0 ? 0.08 : 0.05);
                return c;
            });
        },
        threads);
    return rep;
}

SuiteReport lemma15_suite(const std::vector<double>& m_grid, const std::vector<int>& n_grid,
                          const std::vector<double>& R_grid, const std::vector<double>& sphere_grid,
                          unsigned threads) {
    if (R_grid.size() < 2) throw InvalidArgument("lemma15_suite needs at least two R values");
    struct Case {
        double m;
        int n;
        bool sphere;
    };
    std::vector<Case> cases;
    for (double m : m_grid)
        for (int n : n_grid) cases.push_back({m, n, false});
    if (sphere_grid.size() >= 2)
        for (double m : m_grid)
            for (int n : n_grid) cases.push_back({m, n, true});

    SuiteReport rep;
    rep.name = "lemma15";
    rep.checks = parallel_map<EnvelopeCheck>(
        cases.size(),
        [&](std::size_t i) {
            const Case cs = cases[i];
            std::ostringstream label;
            label << (cs.sphere ? "sphere" : "circle") << " m=" << cs.m << " n=" << cs.n;
            return guarded(label.str(), [&] {
                EnvelopeCheck c;
                c.label = label.str();
                if (!cs.sphere) {
                    for (double R : R_grid) {
                        const fock::EnvelopeValue v = fock::circle_ml_integral(R, cs.m, cs.n);
                        c.rows.push_back({{cs.m, double(cs.n), R}, v.log_value, v.log_envelope, v.ratio()});
                    }
                } else {
                    const fock::SpaceParams space{1.0, cs.m, cs.n};
                    fock::Point y(static_cast<std::size_t>(cs.n), 0.0);
                    y[0] = 1.0;
                    for (double r : sphere_grid) {
                        const fock::EnvelopeValue v = fock::kernel_sphere_average(r, y, space);
                        c.rows.push_back({{cs.m, double(cs.n), r}, v.log_value, v.log_envelope, v.ratio()});
                    }
                }
                const std::size_t N = c.rows.size();
                finish(c, rel_change(c.rows[N - 2].ratio, c.rows[N - 1].ratio), 0.10);
                return c;
            });
        },
        threads);

    // m = n = 1: I(R) = 2 pi I_0(R) exactly, and 2 pi I_0(R) ~ sqrt(2 pi / R) e^R.
    const bool has_bessel = std::find(m_grid.begin(), m_grid.end(), 1.0) != m_grid.end() &&
                            std::find(n_grid.begin(), n_grid.end(), 1) != n_grid.end();
    if (has_bessel) {
        rep.checks.push_back(guarded("bessel asymptote m=1 n=1", [&] {
            EnvelopeCheck c;
            c.label = "bessel asymptote m=1 n=1";
            const fock::EnvelopeValue v = fock::circle_ml_integral(R_grid.back(), 1.0, 1);
            c.rows.push_back({{1.0, 1.0, R_grid.back()}, v.log_value, v.log_envelope, v.ratio()});
            finish(c, rel_change(std::sqrt(2.0 * std::numbers::pi), v.ratio()), 0.02);
            return c;
        }));
        rep.checks.push_back(guarded("bessel exact m=1 n=1", [&] {
            EnvelopeCheck c;
            c.label = "bessel exact m=1 n=1";
            double worst = 0.0;
            for (double R : R_grid) {
                if (R > 700.0) continue;
                const fock::EnvelopeValue v = fock::circle_ml_integral(R, 1.0, 1);
                const double exact = 2.0 * std::numbers::pi * std::cyl_bessel_i(0.0, R);
                c.rows.push_back({{1.0, 1.0, R}, v.log_value, std::log(exact), v.value() / exact});
                worst = std::max(worst, rel_change(exact, v.value()));
            }
            finish(c, worst, 1e-8);
            return c;
        }));
    }
    return rep;
}

std::vector<double> default_eq27_grid(double beta, double m) {
    const double top = std::pow(96.0 / beta, 1.0 / (2.0 * m));
    std::vector<double> z;
    for (int j = 4; j >= 0; --j) z.push_back(top * std::pow(2.0, -0.5 * j));
    return z;
}

SuiteReport eq27_suite(double beta, const std::vector<double>& m_grid, const std::vector<int>& n_grid,
                       const std::vector<double>& z_grid, unsigned threads) {
    SuiteReport rep;
    rep.name = "eq27";

    EnvelopeCheck identity;
    identity.label = "exponent identity 2(m/2 - n) + 2n - m = 0";
    bool exact = true;
    for (double m : m_grid)
        for (int n : n_grid) {
            const Rational mr = from_double(m).value;
            const Rational e = 2 * (mr / 2 - n) + 2 * n - mr;
            exact = exact && e == 0;
        }
    identity.passed = exact;
    identity.detail = exact ? "identically zero" : "nonzero exponent";
    rep.checks.push_back(identity);

    struct Case {
        double m;
        int n;
    };
    std::vector<Case> cases;
    for (double m : m_grid)
        for (int n : n_grid) cases.push_back({m, n});
    auto results = parallel_map<EnvelopeCheck>(
        cases.size(),
        [&](std::size_t i) {
            const Case cs = cases[i];
            std::ostringstream label;
            label << "weighted m=" << cs.m << " n=" << cs.n << " beta=" << beta;
            return guarded(label.str(), [&] {
                EnvelopeCheck c;
                c.label = label.str();
                const std::vector<double> zs = z_grid.empty() ? default_eq27_grid(beta, cs.m) : z_grid;
                const fock::SpaceParams space{beta, cs.m, cs.n};
                for (double z : zs) {
                    fock::Point y(static_cast<std::size_t>(cs.n), 0.0);
                    y[0] = z;
                    const fock::EnvelopeValue v = fock::weighted_kernel_integral(y, space, beta / 2.0);
                    const double log_env = (beta / 2.0) * std::pow(z, 2.0 * cs.m);
                    c.rows.push_back({{cs.m, double(cs.n), z}, v.log_value, log_env, std::exp(v.log_value - log_env)});
                }
                // Top octave: |z| >= |z|_max / 2.
                const double zmax = zs.back();
                std::size_t from = 0;
                while (from < zs.size() && zs[from] < zmax / 2.0 * (1.0 - 1e-12)) ++from;
                finish(c, spread(c.rows, from), 0.10);
                return c;
            });
        },
        threads);
    rep.checks.insert(rep.checks.end(), results.begin(), results.end());
    return rep;
}

}  // namespace fockproj::exper
