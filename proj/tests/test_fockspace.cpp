#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <Eigen/Dense>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "doctest.h"
#include "fockproj/errors.hpp"
#include "fockproj/fockspace.hpp"

using namespace fockproj::fock;
using fockproj::DivergenceError;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(complex a, complex b) { return std::abs(a - b) / std::abs(b); }

Point random_point(std::mt19937_64& rng, int n, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    Point p(static_cast<std::size_t>(n));
    for (auto& z : p) z = {u(rng), u(rng)};
    return p;
}

// All multi-indices of length n and total degree k.
void indices_of_degree(int n, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == n - 1) {
        cur.push_back(k);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int j = 0; j <= k; ++j) {
        cur.push_back(j);
        indices_of_degree(n, k - j, cur, out);
        cur.pop_back();
    }
}

}  // namespace

TEST_CASE("sphere integrals") {
    CHECK(sphere_monomial_integral(MultiIndex::integer({0}), 1) == doctest::Approx(2.0 * kPi));
    CHECK(sphere_monomial_integral(MultiIndex::integer({0, 0}), 2) == doctest::Approx(2.0 * kPi * kPi));
    // |S^3| int |z_1|^2 = pi^2
    CHECK(sphere_monomial_integral(MultiIndex::integer({1, 0}), 2) == doctest::Approx(kPi * kPi));
}

TEST_CASE("classical Fock norms at m = 1") {
    for (int k = 0; k < 20; ++k)
        CHECK(monomial_norm_sq(MultiIndex::integer({k}), {1.0, 1.0, 1}) == doctest::Approx(kPi * std::tgamma(k + 1.0)));
    // alpha scaling: ||z^nu||^2 = pi^n nu! / alpha^{n + |nu|}
    CHECK(monomial_norm_sq(MultiIndex::integer({2, 1}), {3.0, 1.0, 2}) ==
          doctest::Approx(kPi * kPi * 2.0 / std::pow(3.0, 5.0)));
}

TEST_CASE("p-norm at p = 2 squares to the L2 norm") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 30; ++i) {
        const SpaceParams s{0.3 + 2.0 * (rng() % 100) / 100.0, 0.25 + 3.0 * (rng() % 100) / 100.0,
                            1 + static_cast<int>(rng() % 3)};
        std::vector<int> nu(static_cast<std::size_t>(s.n));
        for (auto& v : nu) v = static_cast<int>(rng() % 6);
        const MultiIndex mi = MultiIndex::integer(nu);
        CHECK(2.0 * log_monomial_norm_p(mi, 2.0, s) == doctest::Approx(log_monomial_norm_sq(mi, s)).epsilon(1e-13));
    }
}

TEST_CASE("p-norm against direct radial quadrature") {
    boost::math::quadrature::exp_sinh<double> es;
    for (double m : {0.5, 1.5, 3.0})
        for (double p : {1.0, 2.5})
            for (int k : {0, 3}) {
                const SpaceParams s{1.3, m, 1};
                auto f = [&](double r) { return std::exp((k * p + 1.0) * std::log(r) - s.alpha * std::pow(r, 2.0 * m)); };
                const double ref = std::pow(2.0 * kPi * es.integrate(f), 1.0 / p);
                CHECK(monomial_norm_p(MultiIndex::integer({k}), p, s) == doctest::Approx(ref).epsilon(1e-9));
            }
}

TEST_CASE("monomials are orthogonal with the stated norms (Gram matrix)") {
    // Polar quadrature on C: the angular part is exact for trigonometric polynomials.
    const SpaceParams s{1.0, 1.5, 1};
    const int N = 6;
    const int n_theta = 32;
    boost::math::quadrature::exp_sinh<double> es;
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(N, N);
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k) {
            complex ang = 0.0;
            for (int t = 0; t < n_theta; ++t) ang += std::polar(1.0, (j - k) * 2.0 * kPi * t / n_theta);
            ang *= 2.0 * kPi / n_theta;
            const double radial =
                es.integrate([&](double r) { return std::exp((j + k + 1.0) * std::log(r) - std::pow(r, 2.0 * s.m)); });
            G(j, k) = ang * radial;
        }
    Eigen::VectorXcd d(N);
    for (int j = 0; j < N; ++j) d(j) = monomial_norm_sq(MultiIndex::integer({j}), s);
    const Eigen::MatrixXcd D = d.asDiagonal();
    CHECK((G - D).norm() / D.norm() < 1e-10);
}

TEST_CASE("kernel is the sum over the orthonormal monomial basis") {
    std::mt19937_64 rng(5);
    for (int n : {1, 2, 3})
        for (double m : {0.5, 1.0, 1.7}) {
            const SpaceParams s{0.8, m, n};
            const KernelPoint pt{random_point(rng, n, 0.8), random_point(rng, n, 0.8)};
            complex sum = 0.0;
            for (int k = 0; k < 80; ++k) {
                std::vector<std::vector<int>> idx;
                std::vector<int> cur;
                indices_of_degree(n, k, cur, idx);
                for (const auto& nu : idx) {
                    complex term = 1.0;
                    for (int j = 0; j < n; ++j)
                        term *= std::pow(pt.x[static_cast<std::size_t>(j)] * std::conj(pt.y[static_cast<std::size_t>(j)]),
                                         nu[static_cast<std::size_t>(j)]);
                    sum += term / monomial_norm_sq(MultiIndex::integer(nu), s);
                }
            }
            CAPTURE(n);
            CAPTURE(m);
            CHECK(rel(kernel_ml(pt, s), sum) < 1e-11);
            CHECK(rel(kernel_series(pt, s), sum) < 1e-12);
        }
}

TEST_CASE("kernel properties") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 50; ++i) {
        const int n = 1 + static_cast<int>(rng() % 2);
        const SpaceParams s{0.5 + (rng() % 10) / 5.0, 0.5 + (rng() % 10) / 4.0, n};
        const Point x = random_point(rng, n, 2.0), y = random_point(rng, n, 2.0);
        // Hermitian symmetry and positivity on the diagonal.
        CHECK(rel(kernel_ml({x, y}, s), std::conj(kernel_ml({y, x}, s))) < 1e-12);
        CHECK(kernel_ml({x, x}, s).real() > 0.0);
        CHECK(std::abs(kernel_ml({x, x}, s).imag()) <= 1e-12 * kernel_ml({x, x}, s).real());
        // m = 1 closed form
        const SpaceParams g{s.alpha, 1.0, n};
        const complex ref = std::pow(g.alpha / kPi, n) * std::exp(g.alpha * inner(x, y));
        CHECK(rel(kernel_ml({x, y}, g), ref) < 1e-11);
    }
}

TEST_CASE("kernel envelope bounds the kernel") {
    std::mt19937_64 rng(13);
    for (double m : {0.5, 1.0, 2.0})
        for (int n : {1, 2}) {
            const SpaceParams s{1.0, m, n};
            const KernelEnvelope env(s);
            CHECK(env.constant() >= env.limit_constant() * 0.99);
            for (int i = 0; i < 40; ++i) {
                const KernelPoint pt{random_point(rng, n, 4.0), random_point(rng, n, 4.0)};
                if (norm(pt.x) * norm(pt.y) < 1.0) continue;
                CHECK(std::log(std::abs(kernel_ml(pt, s))) <= env.log_bound(pt) + 1e-9);
            }
        }
}

TEST_CASE("radial moments") {
    // int_0^inf e^{Bt - At^2} dt = sqrt(pi/4A) e^{B^2/4A} erfc(-B / 2 sqrt A)
    for (double A : {0.5, 2.0})
        for (double B : {-3.0, 0.0, 5.0, 30.0}) {
            const RadialMoment r = radial_moment(0.0, A, B);
            const double ref = std::log(std::sqrt(kPi / (4.0 * A)) * std::erfc(-B / (2.0 * std::sqrt(A)))) +
                               B * B / (4.0 * A);
            CHECK(r.log_value == doctest::Approx(ref).epsilon(1e-11));
        }
    CHECK(std::isnan(radial_moment(1.0, 1.0, -1.0).log_envelope));
    const RadialMoment neg = radial_moment(-0.5, 1.0, 4.0);
    boost::math::quadrature::exp_sinh<double> es;
    const double ref = es.integrate([](double t) { return std::exp(4.0 * t - t * t) / std::sqrt(t); });
    CHECK(neg.value() == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("circle integral is 2 pi I_0 at m = n = 1") {
    for (double R : {1.0, 5.0, 30.0, 200.0}) {
        const EnvelopeValue v = circle_ml_integral(R, 1.0, 1);
        CHECK(v.log_value == doctest::Approx(std::log(2.0 * kPi * std::cyl_bessel_i(0.0, R))).epsilon(1e-12));
    }
}

TEST_CASE("weighted kernel integral at m = 1") {
    // |K| integrates to (beta/C)^n e^{beta^2 |y|^2 / 4C}.
    for (int n : {1, 2})
        for (double C : {0.5, 1.5}) {
            const double beta = 1.2;
            Point y(static_cast<std::size_t>(n), 0.0);
            y[0] = 2.0;
            const EnvelopeValue v = weighted_kernel_integral(y, {beta, 1.0, n}, C);
            const double ref = n * std::log(beta / C) + beta * beta * 4.0 / (4.0 * C);
            CHECK(v.log_value == doctest::Approx(ref).epsilon(1e-9));
        }
}

TEST_CASE("projection of radial monomials") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 25; ++i) {
        const int n = 1 + static_cast<int>(rng() % 3);
        std::vector<int> nu(static_cast<std::size_t>(n));
        for (auto& v : nu) v = static_cast<int>(rng() % 4);
        const double beta = 0.5 + 2.0 * u(rng), m = 0.4 + 2.0 * u(rng), lambda = beta * (-0.5 + 1.4 * u(rng));
        const RadialMonomial f{MultiIndex::integer(nu), 0.0, 0.0, lambda, m};
        const double total = std::accumulate(nu.begin(), nu.end(), 0);
        CHECK(project_radial_monomial(f, beta, n) ==
              doctest::Approx(std::pow(beta / (beta - lambda), (n + total) / m)).epsilon(1e-9));
    }
    // Non-Gaussian radial part against direct quadrature.
    const RadialMonomial g{MultiIndex::integer({2}), 0.7, 1.1, 0.3, 1.5};
    const double beta = 1.0;
    boost::math::quadrature::exp_sinh<double> es;
    auto radial = [&](double r) {
        return std::exp((2.0 * 2 + 1.0 + g.A) * std::log(r) + g.B * std::pow(r, g.m) + (g.C - beta) * std::pow(r, 2.0 * g.m));
    };
    const double ref = 2.0 * kPi * es.integrate(radial) / monomial_norm_sq(g.nu, {beta, g.m, 1});
    CHECK(project_radial_monomial(g, beta, 1) == doctest::Approx(ref).epsilon(1e-9));
    CHECK_THROWS_AS(project_radial_monomial({MultiIndex::integer({1}), 0.0, 0.0, 1.0, 1.0}, 1.0, 1), DivergenceError);
}

TEST_CASE("input validation") {
    CHECK_THROWS(monomial_norm_sq(MultiIndex::integer({1, 2}), {1.0, 1.0, 1}));
    CHECK_THROWS(monomial_norm_sq(MultiIndex::integer({1}), {-1.0, 1.0, 1}));
    CHECK_THROWS(MultiIndex::real({-0.5}).validate());
    CHECK_THROWS(inner(Point{1.0}, Point{1.0, 2.0}));
}
