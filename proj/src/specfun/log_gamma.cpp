#include "fockproj/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fockproj/errors.hpp"

namespace fockproj::specfun {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr int kZetaTerms = 48;

// zeta(s) for s >= 2 by Euler-Maclaurin summation with cutoff N = 20.
double zeta(int s) {
    constexpr int N = 20;
    double sum = 0.0;
    for (int k = N - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
    const double n = N;
    sum += std::pow(n, 1 - s) / (s - 1) + 0.5 * std::pow(n, -s);
    // B_{2j}/(2j)! for j = 1..5
    constexpr std::array<double, 5> b = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0,
                                         1.0 / 47900160.0};
    double rising = s;  // s (s+1) ... (s+2j-2)
    for (int j = 1; j <= 5; ++j) {
        sum += b[j - 1] * rising * std::pow(n, -s - 2 * j + 1);
        rising *= (s + 2 * j - 1) * (s + 2 * j);
    }
    return sum;
}

const std::array<double, kZetaTerms + 1>& zeta_table() {
    static const auto table = [] {
        std::array<double, kZetaTerms + 1> t{};
        for (int s = 2; s <= kZetaTerms; ++s) t[s] = zeta(s);
        return t;
    }();
    return table;
}

// ln Gamma(1 + eps) = -gamma eps + sum_{k>=2} (-1)^k zeta(k) eps^k / k, |eps| <= 1/4.
double log_gamma_1p(double eps) {
    const auto& z = zeta_table();
    double sum = 0.0;
    double pw = eps * eps;
    for (int k = 2; k <= kZetaTerms; ++k) {
        const double term = ((k % 2 == 0) ? 1.0 : -1.0) * z[k] * pw / k;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        pw *= eps;
    }
    return -kEulerGamma * eps + sum;
}

double stirling(double x) {
    constexpr std::array<double, 8> c = {1.0 / 12.0,         -1.0 / 360.0,   1.0 / 1260.0,
                                         -1.0 / 1680.0,       1.0 / 1188.0,   -691.0 / 360360.0,
                                         1.0 / 156.0,         -3617.0 / 122400.0};
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    double pw = inv;
    for (double ci : c) {
        series += ci * pw;
        pw *= inv2;
    }
    return (x - 0.5) * std::log(x) - x + kHalfLog2Pi + series;
}

// sin(pi x) with exact zeros at the integers.
double sin_pi(double x) {
    const double r = x - 2.0 * std::round(0.5 * x);
    if (r == 0.0 || std::abs(r) == 1.0) return 0.0;
    return std::sin(std::numbers::pi * r);
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive, got " + std::to_string(x));
    if (std::isinf(x)) return x;
    if (x < 0.25) return log_gamma_1p(x) - std::log(x);
    if (std::abs(x - 1.0) <= 0.25) return log_gamma_1p(x - 1.0);
    if (std::abs(x - 2.0) <= 0.25) return log_gamma_1p(x - 2.0) + std::log1p(x - 2.0);
    if (x >= 10.0) return stirling(x);

    double shifted = x;
    double product = 1.0;
    while (shifted < 10.0) {
        product *= shifted;
        shifted += 1.0;
    }
    return stirling(shifted) - std::log(product);
}

double log_gamma_ratio(double x, double y) {
    if (!(x > 0.0) || !(y > 0.0)) throw DomainError("gamma_ratio: arguments must be positive");
    return log_gamma(x) - log_gamma(y);
}

double gamma_ratio(double x, double y) {
    const double lr = log_gamma_ratio(x, y);
    if (lr > std::log(std::numeric_limits<double>::max()))
        throw std::overflow_error("gamma_ratio: ratio exceeds double range (log ratio " + std::to_string(lr) + ")");
    return std::exp(lr);
}

SignedLog log_reciprocal_gamma(double x) {
    if (x > 0.0) return {-log_gamma(x), 1};
    if (x == std::floor(x)) return {-std::numeric_limits<double>::infinity(), 0};
    // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
    const double s = sin_pi(x);
    return {std::log(std::abs(s)) + log_gamma(1.0 - x) - std::log(std::numbers::pi), s > 0 ? 1 : -1};
}

double reciprocal_gamma(double x) {
    const SignedLog l = log_reciprocal_gamma(x);
    if (l.sign == 0) return 0.0;
    return l.sign * std::exp(l.log_abs);
}

}  // namespace fockproj::specfun
