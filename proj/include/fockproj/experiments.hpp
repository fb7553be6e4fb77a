#pragma once
//
// Numerical experiments: growth of monomial ratio curves under the projection, log-slope fits
// at c = 1, the Stirling limit, and envelope-convergence suites for the radial and spherical
// kernel integrals. All results are deterministic functions of their inputs.
//

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "fockproj/boundedness.hpp"

namespace fockproj::exper {

enum class NuFamily { SingleAxis, Diagonal };
const char* to_string(NuFamily f);

struct LambdaRule {
    enum class Kind { Fixed, TMin, SlopeTest };
    Kind kind = Kind::TMin;
    double value = 0.0;  // Fixed only

    static LambdaRule fixed(double lambda) { return {Kind::Fixed, lambda}; }
    static LambdaRule t_min() { return {Kind::TMin, 0.0}; }
    /// lambda = 2 alpha / p - beta
    static LambdaRule slope_test() { return {Kind::SlopeTest, 0.0}; }
};
const char* to_string(LambdaRule::Kind k);

struct SweepConfig {
    std::vector<int> k_values;
    NuFamily family = NuFamily::SingleAxis;
    LambdaRule rule = LambdaRule::t_min();
    /// Divergence: last-quartile mean minus first-quartile mean above this, with rising tail.
    double divergence_gap = 10.0;
    /// |k coefficient| allowed when the linear term must cancel.
    double cancellation_tol = 1e-6;

    /// k = k_min, k_min + 1, ..., k_max
    static SweepConfig range(int k_min, int k_max, NuFamily family, LambdaRule rule);
};

struct SweepReport {
    std::vector<int> k;
    std::vector<double> L;
    double lambda = 0.0;
    bool t_min_fallback = false;
    double t_used = 0.0;

    /// Coefficient of k in the least-squares fit L ~ s k + a log k + b over all k.
    double linear_rate = 0.0;
    /// Fit over k in [k_max/4, k_max]: L ~ s k + a log k + b + d/k; s must vanish at c = 1.
    double window_linear_coef = 0.0;
    /// Fit over the same window of L ~ a log k + b.
    double log_slope = 0.0;
    double log_intercept = 0.0;

    bool diverges = false;
    int slope_sign = 0;
    double necessity_at_t_min = 0.0;
    std::vector<std::string> notes;
};

/// L_k = ((n + |nu|)/m) ln(beta/(beta - lambda)) + ln||z^nu||_{q,gamma,m} - ln||z^nu||_{p,alpha - lambda p,m}.
SweepReport eq14_ratio_curve(const bound::ProjectionProblem& P, const SweepConfig& config);

/// exp(ln Gamma(rho k + sigma) / (rho k)) / k, which tends to rho / e.
double stirling_limit_check(double rho, double sigma, int k);

/// Diagonal family with lambda = 2 alpha/p - beta; requires c = 1 and throws AccuracyError when
/// the linear-in-k term fails to cancel.
SweepReport prop10_slope_experiment(const bound::ProjectionProblem& P, int k_max = 400);
/// Same with the single-axis family.
SweepReport prop12_slope_experiment(const bound::ProjectionProblem& P, int k_max = 400);

/// ((2n-1) m - 2n)(q - p) / (2 m p q): the log-slope of the single-axis curve at c = 1.
double single_axis_slope(const bound::ProjectionProblem& P);

struct EnvelopeRow {
    std::vector<double> params;  // suite-specific parameter tuple
    double log_value = 0.0;
    double log_envelope = 0.0;
    double ratio = 0.0;
};

struct EnvelopeCheck {
    std::string label;
    std::vector<EnvelopeRow> rows;
    double drift = 0.0;      // relative change of the ratio across the compared points
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;
};

struct SuiteReport {
    std::string name;
    std::vector<EnvelopeCheck> checks;
    bool passed() const;
};

/// Ratio of the radial moment to B^rho exp(B^2/4A) on each (rho, A) pair; drift between the
/// last two B values, tolerance 5% (8% for rho < 0).
SuiteReport lemma8_suite(const std::vector<double>& rho_grid, const std::vector<double>& A_grid,
                         const std::vector<double>& B_grid, unsigned threads = 1);

/// Circle integral against R^{(m-1)n - m/2} exp(R^m) (drift 10% between the last two R), the
/// Bessel asymptote when m = n = 1 (2%), and the sphere average against (r|y|)^{m/2-n}
/// exp(r^m |y|^m) on sphere_grid (drift 10%).
SuiteReport lemma15_suite(const std::vector<double>& m_grid, const std::vector<int>& n_grid,
                          const std::vector<double>& R_grid, const std::vector<double>& sphere_grid,
                          unsigned threads = 1);

/// Weighted kernel integral with C = beta/2 against exp((beta/2)|z|^{2m}); drift over the top
/// octave of z_grid below 10%. Also checks 2(m/2 - n) + 2n - m = 0 exactly.
SuiteReport eq27_suite(double beta, const std::vector<double>& m_grid, const std::vector<int>& n_grid,
                       const std::vector<double>& z_grid, unsigned threads = 1);
/// Default z-grid: |z|_top 2^{-j/2}, j = 0..4, with (beta/2)|z|_top^{2m} = 48.
std::vector<double> default_eq27_grid(double beta, double m);

/// Runs fn(i) for i in [0, count) on up to `threads` workers, worker w taking i = w, w + T, ...
/// Results come back in index order, so output is independent of the thread count.
template <class T>
std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)>& fn, unsigned threads) {
    std::vector<T> out(count);
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += threads) out[i] = fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

/// FOCKPROJ_THREADS if set and positive, else the hardware concurrency.
unsigned default_threads();

}  // namespace fockproj::exper
