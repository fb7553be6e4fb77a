#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "fockproj/errors.hpp"
#include "fockproj/experiments.hpp"

using namespace fockproj;
using namespace fockproj::exper;

namespace {

Rational R(long a, long b = 1) { return Rational(a) / Rational(b); }

bound::ProjectionProblem problem(Rational alpha, Rational beta, Rational gamma, Rational p, Rational q, Rational m,
                                 int n = 1) {
    return {alpha, beta, gamma, p, q, m, n, false};
}

}  // namespace

TEST_CASE("Stirling limit") {
    CHECK(std::abs(stirling_limit_check(1.0, 0.0, 200) * std::exp(1.0) - 1.0) < 0.02);
    CHECK(std::abs(stirling_limit_check(2.5, -1.0, 400) * std::exp(1.0) / 2.5 - 1.0) < 0.01);
    // k!^{1/k} / k approaches 1/e from above, monotonically.
    double prev = stirling_limit_check(1.0, 1.0, 10);
    for (int k : {20, 40, 80, 160, 320}) {
        const double v = stirling_limit_check(1.0, 1.0, k);
        CHECK(v < prev);
        CHECK(v > std::exp(-1.0));
        prev = v;
    }
    CHECK_THROWS_AS(stirling_limit_check(1.0, -5.0, 2), DomainError);
}

TEST_CASE("ratio curve below the critical exponent diverges") {
    const auto P = problem(1, 1, 1, 3, 3, 1);  // c = 8/9
    REQUIRE(bound::c_value(P) < 1);
    const SweepReport r = eq14_ratio_curve(P, SweepConfig::range(1, 500, NuFamily::SingleAxis, LambdaRule::t_min()));
    CHECK(r.linear_rate > 0.0);
    CHECK(r.L.back() > r.L[r.L.size() / 2]);
    CHECK(r.necessity_at_t_min < 0.0);
}

TEST_CASE("ratio curve above the critical exponent stays bounded") {
    const auto P = problem(1, 1, 1, 3, 2, 1);  // c = 4/3
    const SweepReport r = eq14_ratio_curve(P, SweepConfig::range(1, 500, NuFamily::SingleAxis, LambdaRule::t_min()));
    CHECK_FALSE(r.diverges);
    CHECK(r.necessity_at_t_min > 0.0);
    CHECK(r.linear_rate < 0.0);
}

TEST_CASE("identity projection gives a flat curve") {
    const auto P = problem(1, 1, 1, 2, 2, 1);
    const SweepReport r = eq14_ratio_curve(P, SweepConfig::range(1, 100, NuFamily::Diagonal, LambdaRule::fixed(0.0)));
    for (double L : r.L) CHECK(std::abs(L) < 1e-11);
}

TEST_CASE("t_min fallback when c >= 2") {
    const auto P = problem(1, 1, 4, 2, 2, 1);  // c = 4
    const SweepReport r = eq14_ratio_curve(P, SweepConfig::range(1, 50, NuFamily::SingleAxis, LambdaRule::t_min()));
    CHECK(r.t_min_fallback);
    CHECK(r.lambda == doctest::Approx(0.0));  // t = beta - alpha/p = 1/2
}

TEST_CASE("sweep errors") {
    const auto P = problem(1, 1, 1, 2, 2, 1);
    CHECK_THROWS_AS(eq14_ratio_curve(P, SweepConfig::range(1, 5, NuFamily::SingleAxis, LambdaRule::t_min())),
                    InvalidArgument);
    CHECK_THROWS_AS(eq14_ratio_curve(P, SweepConfig::range(1, 50, NuFamily::SingleAxis, LambdaRule::fixed(0.6))),
                    DomainError);
    CHECK_THROWS_AS(prop10_slope_experiment(problem(1, 1, 1, 2, 3, 1)), InvalidArgument);
}

TEST_CASE("log-slope at the critical exponent") {
    // alpha = p/2, gamma = q/2, beta = 1 puts c at 1.
    const auto P = problem(2, 1, 1, 4, 2, 1);
    const SweepReport r = prop10_slope_experiment(P, 400);
    CHECK(std::abs(r.window_linear_coef) < 1e-6);
    CHECK(r.log_slope == doctest::Approx(0.125).epsilon(0.05));
    const auto Q = problem(R(3, 2), 1, R(3, 2), 3, 3, 3, 2);
    CHECK(std::abs(prop10_slope_experiment(Q, 400).log_slope) < 1e-3);
}

TEST_CASE("single-axis slope") {
    const auto P = problem(1, 1, R(3, 2), 2, 3, R(9, 5), 2);
    REQUIRE(bound::c_value(P) == 1);
    const double a = single_axis_slope(P);
    CHECK(a > 0.0);
    CHECK(prop12_slope_experiment(P, 500).log_slope == doctest::Approx(a).epsilon(0.1));
    CHECK(single_axis_slope(problem(1, 1, R(3, 2), 2, 3, R(4, 3), 2)) == doctest::Approx(0.0));
}

TEST_CASE("envelope suites") {
    const SuiteReport l8 = lemma8_suite({0.0, 1.0}, {1.0}, {20.0, 40.0}, 2);
    CHECK(l8.passed());
    CHECK(l8.checks.size() == 2);
    const SuiteReport l15 = lemma15_suite({1.0}, {1}, {20.0, 40.0}, {}, 2);
    CHECK(l15.passed());
    const SuiteReport e27 = eq27_suite(2.0, {1.0}, {1}, {3.0, 5.0, 8.0}, 1);
    CHECK(e27.passed());
    CHECK_THROWS_AS(lemma8_suite({0.0}, {1.0}, {20.0}), InvalidArgument);
}

TEST_CASE("parallel map is independent of the thread count") {
    auto f = [](std::size_t i) { return std::sin(static_cast<double>(i)) * static_cast<double>(i); };
    const auto a = parallel_map<double>(1000, f, 1);
    const auto b = parallel_map<double>(1000, f, 7);
    CHECK(a == b);
    CHECK_THROWS_AS(parallel_map<int>(10, [](std::size_t i) -> int {
                        if (i == 7) throw DomainError("boom");
                        return 0;
                    }, 3),
                    DomainError);
}

TEST_CASE("thread count from the environment") {
    setenv("FOCKPROJ_THREADS", "3", 1);
    CHECK(default_threads() == 3u);
    unsetenv("FOCKPROJ_THREADS");
    CHECK(default_threads() >= 1u);
}
