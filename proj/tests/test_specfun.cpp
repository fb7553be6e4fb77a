#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "fockproj/errors.hpp"
#include "fockproj/specfun.hpp"

using namespace fockproj::specfun;

namespace {

double rel(complex a, complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("log_gamma against the C library") {
    for (double x = 0.01; x < 300.0; x *= 1.07) {
        const double ref = std::lgamma(x);
        CHECK(std::abs(log_gamma(x) - ref) <= 2e-14 * std::max(1.0, std::abs(ref)));
    }
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(log_gamma(2.0)) < 1e-15);
}

TEST_CASE("log_gamma high-precision values") {
    // mpmath at 40 digits
    CHECK(log_gamma(10.5) == doctest::Approx(13.9406252194037636).epsilon(1e-15));
    CHECK(log_gamma_ratio(300.5, 150.25) == doctest::Approx(810.7920380087664).epsilon(1e-14));
    CHECK_THROWS_AS(gamma_ratio(300.5, 150.25), std::overflow_error);
    CHECK(gamma_ratio(5.0, 3.0) == doctest::Approx(12.0).epsilon(1e-14));
}

TEST_CASE("reciprocal gamma at and between the poles") {
    for (int k = 0; k <= 5; ++k) CHECK(reciprocal_gamma(-k) == 0.0);
    CHECK(reciprocal_gamma(-0.5) == doctest::Approx(-1.0 / (2.0 * std::sqrt(std::numbers::pi))).epsilon(1e-14));
    CHECK(reciprocal_gamma(-1.5) == doctest::Approx(3.0 / (4.0 * std::sqrt(std::numbers::pi))).epsilon(1e-14));
    const SignedLog s = log_reciprocal_gamma(-2.5);
    CHECK(s.sign == -1);
    CHECK(std::isinf(log_reciprocal_gamma(-3.0).log_abs));
}

TEST_CASE("E_{1,1} is the exponential on both routes") {
    for (complex z : {complex{1, 0}, complex{-3, 2}, complex{10, -5}, complex{40, 0}, complex{-40, 1}, complex{0, 60},
                      complex{300, 10}}) {
        const EvalResult r = mittag_leffler({1.0, 1.0, 0}, z);
        CHECK(std::abs(r.log_abs() - z.real()) < 1e-10);
        if (r.log_scale == 0.0) CHECK(rel(r.unscaled(), std::exp(z)) < 1e-10);
    }
    // First derivative of exp is exp.
    CHECK(rel(mittag_leffler({1.0, 1.0, 1}, {2.0, 1.0}).unscaled(), std::exp(complex{2.0, 1.0})) < 1e-12);
}

TEST_CASE("E_{2,1}(z^2) = cosh z and E_{1/2,1}(x) = exp(x^2) erfc(-x)") {
    for (complex z : {complex{0.5, 0}, complex{3, 1}, complex{-2, 4}, complex{8, 0}, complex{0, 9}})
        CHECK(rel(mittag_leffler({2.0, 1.0, 0}, z * z).unscaled(), std::cosh(z)) < 1e-10);
    for (double x : {-6.0, -2.0, -0.3, 0.0, 0.7, 2.5, 6.0}) {
        const double ref = std::exp(x * x) * std::erfc(-x);
        CHECK(std::abs(mittag_leffler({0.5, 1.0, 0}, x).unscaled().real() / ref - 1.0) < 1e-10);
    }
}

TEST_CASE("Mittag-Leffler derivatives against 500-digit references") {
    // E^{(d)}_{a,b}(z) summed termwise in mpmath at 500 digits.
    const MLParams half{0.5, 0.5, 1};
    CHECK(mittag_leffler(half, 3.0).unscaled().real() == doctest::Approx(307917.17336349343242).epsilon(1e-11));
    CHECK(mittag_leffler(half, 30.0).log_abs() == doctest::Approx(std::log(2.6398388828751332982) + 394.0 * std::log(10.0)).epsilon(1e-12));
    CHECK(rel(mittag_leffler(half, -30.0).unscaled(), {0.000020826546192229437951, 0.0}) < 1e-10);
    CHECK(rel(mittag_leffler(half, {0.0, 30.0}).unscaled(), {-2.5855651029993522781e-108, -0.000020965855272078228701}) <
          1e-10);
    CHECK(rel(mittag_leffler({2.0, 0.5, 0}, {-100.0, 5.0}).unscaled(), {-0.6765042036236888299, -0.77314214446750975478}) <
          1e-9);
    CHECK(rel(mittag_leffler({2.0 / 3.0, 2.0 / 3.0, 1}, {2.0, 1.0}).unscaled(),
              {-58.561112363732737992, 39.622723617541352376}) < 1e-11);
    CHECK(rel(mittag_leffler({4.0 / 3.0, 4.0 / 3.0, 2}, {-5.0, 3.0}).unscaled(),
              {-0.0048173328668065474071, 0.032776404705359581197}) < 1e-9);
}

TEST_CASE("series and asymptotic expansion agree where both apply") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ua(0.4, 1.6), uarg(-0.9, 0.9);
    for (int i = 0; i < 40; ++i) {
        const double a = ua(rng);
        const int d = static_cast<int>(rng() % 3);
        MittagLeffler ml({a, a, d});
        // |z|^{1/a} = 30: past the switch radius but still within reach of the series.
        const complex z = std::polar(std::pow(30.0, a), uarg(rng) * std::numbers::pi * std::min(1.0, a));
        const EvalResult s = ml.series(z);
        const EvalResult t = ml.asymptotic(z);
        const double tol = 1e-7 + (s.abs_error_est + t.abs_error_est) / std::abs(s.value) * 10.0;
        CAPTURE(a);
        CAPTURE(d);
        CAPTURE(z);
        CHECK(std::abs(s.log_abs() - t.log_abs()) < tol);
    }
}

TEST_CASE("error estimates are honest on a random grid") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ua(0.5, 2.0), ur(-12.0, 12.0);
    for (int i = 0; i < 60; ++i) {
        const double a = ua(rng);
        const complex z{ur(rng), ur(rng)};
        MittagLeffler ml({a, 1.0, 0});
        const EvalResult e = ml.evaluate(z);
        const EvalResult s = ml.series(z);
        CHECK(std::abs(e.unscaled() - s.unscaled()) <= 10.0 * (e.unscaled_error() + s.unscaled_error()) + 1e-300);
    }
}

TEST_CASE("p polynomials follow the recursion") {
    const double m = 1.7;
    CHECK(p_polynomial(m, 0) == std::vector<double>{1.0});
    const auto p1 = p_polynomial(m, 1);
    REQUIRE(p1.size() == 2);
    CHECK(p1[0] == 0.0);
    CHECK(p1[1] == doctest::Approx(m));
    const auto p2 = p_polynomial(m, 2);
    REQUIRE(p2.size() == 3);
    CHECK(p2[1] == doctest::Approx(m * m - m));
    CHECK(p2[2] == doctest::Approx(m * m));
    // Degree, leading coefficient m^k, zero constant term, and linear coefficient
    // m (m-1) ... (m-k+1) = Gamma(m+1) / Gamma(m-k+1).
    for (double mm : {0.4, 1.0, 1.7, 2.5, 3.0})
        for (int k = 1; k <= 4; ++k) {
            const auto pk = p_polynomial(mm, k);
            REQUIRE(pk.size() == static_cast<std::size_t>(k + 1));
            CHECK(pk.back() == doctest::Approx(std::pow(mm, k)).epsilon(1e-13));
            CHECK(pk[0] == 0.0);
            double falling = 1.0;
            for (int j = 0; j < k; ++j) falling *= mm - j;
            CHECK(pk[1] == doctest::Approx(falling).epsilon(1e-12));
            if (mm - k + 1 > 0.0)
                CHECK(pk[1] == doctest::Approx(std::tgamma(mm + 1) / std::tgamma(mm - k + 1)).epsilon(1e-12));
        }
    // m = 1, n = 1 leading term is exactly e^z.
    CHECK(rel(ml_asymptotic_leading(1.0, 1, {5.0, 1.0}), std::exp(complex{5.0, 1.0})) < 1e-14);
}

TEST_CASE("generalized family reduces to the two-parameter function") {
    const complex z{1.5, -0.5};
    const EvalResult g = gen_mittag_leffler({0.7, 1.2, 2.0, 2.0}, z);
    CHECK(rel(g.unscaled(), mittag_leffler({0.7, 1.2, 0}, z).unscaled()) < 1e-12);
    // gamma = 3, delta = 1 at b = b' + 2a gives E^{(2)}_{a,b'} / 2.
    const EvalResult h = gen_mittag_leffler({0.5, 1.5, 3.0, 1.0}, z);
    CHECK(rel(2.0 * h.unscaled(), mittag_leffler({0.5, 0.5, 2}, z).unscaled()) < 1e-12);
    CHECK_THROWS_AS(gen_mittag_leffler({1.0, 1.0, 1.0, 1.0}, 1000.0), fockproj::OutOfRangeError);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(MLParams({0.0, 1.0, 0}).validate(), fockproj::DomainError);
    CHECK_THROWS(MLParams({1.0, 1.0, -1}).validate());
    CHECK(Tolerance{1e-10, 1e-12}.accepts({complex{1.0, 0.0}, 1e-13, Regime::Series, 0.0}));
    CHECK_FALSE(Tolerance{1e-10, 1e-12}.accepts({complex{1e6, 0.0}, 1e-3, Regime::Series, 0.0}));
}
