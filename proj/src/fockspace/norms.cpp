#include <cmath>
#include <numbers>
#include <string>

#include "fockproj/errors.hpp"
#include "fockproj/fockspace.hpp"

namespace fockproj::fock {

using specfun::log_gamma;

namespace {

constexpr double kLogPi = 1.14472988584940017414;

void check_dimension(const MultiIndex& nu, int n) {
    if (n < 1) throw InvalidArgument("dimension n must be at least 1");
    if (nu.size() != static_cast<std::size_t>(n))
        throw InvalidArgument("multi-index has " + std::to_string(nu.size()) + " entries but n = " + std::to_string(n));
    nu.validate();
}

void check_monomial(const MultiIndex& nu, const SpaceParams& space) {
    space.validate_normable();
    check_dimension(nu, space.n);
    if (nu.mode != IndexMode::Integer) throw InvalidArgument("monomial norms need an integer multi-index");
}

}  // namespace

void SpaceParams::validate() const {
    if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("space parameter m must be positive");
    if (n < 1) throw InvalidArgument("dimension n must be at least 1");
    if (!std::isfinite(alpha)) throw DomainError("space parameter alpha must be finite");
}

void SpaceParams::validate_normable() const {
    validate();
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive for the norm of a nonzero entire function");
}

MultiIndex MultiIndex::integer(const std::vector<int>& nu) {
    MultiIndex out;
    for (int v : nu) out.exponents.push_back(v);
    out.mode = IndexMode::Integer;
    return out;
}

MultiIndex MultiIndex::real(const std::vector<double>& nu) { return {nu, IndexMode::RealNonneg}; }

MultiIndex MultiIndex::single_axis(int k, int n) {
    std::vector<int> nu(static_cast<std::size_t>(n), 0);
    nu[0] = k;
    return integer(nu);
}

MultiIndex MultiIndex::diagonal(int k, int n) { return integer(std::vector<int>(static_cast<std::size_t>(n), k)); }

double MultiIndex::total() const {
    double s = 0.0;
    for (double v : exponents) s += v;
    return s;
}

double MultiIndex::log_factorial() const {
    double s = 0.0;
    for (double v : exponents) s += log_gamma(v + 1.0);
    return s;
}

void MultiIndex::validate() const {
    for (double v : exponents) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("multi-index entries must be finite and nonnegative");
        if (mode == IndexMode::Integer && v != std::floor(v))
            throw InvalidArgument("integer multi-index has a non-integral entry");
    }
}

complex inner(const Point& x, const Point& y) {
    if (x.size() != y.size()) throw InvalidArgument("inner product of points of different dimension");
    complex s{};
    for (std::size_t j = 0; j < x.size(); ++j) s += x[j] * std::conj(y[j]);
    return s;
}

double norm(const Point& x) {
    double s = 0.0;
    for (const complex& v : x) s += std::norm(v);
    return std::sqrt(s);
}

double log_sphere_monomial_integral(const MultiIndex& nu, int n) {
    check_dimension(nu, n);
    return std::log(2.0) + n * kLogPi + nu.log_factorial() - log_gamma(n + nu.total());
}

double sphere_monomial_integral(const MultiIndex& nu, int n) { return std::exp(log_sphere_monomial_integral(nu, n)); }

double log_monomial_norm_sq(const MultiIndex& nu, const SpaceParams& space) {
    check_monomial(nu, space);
    const double s = space.n + nu.total();
    return space.n * kLogPi + nu.log_factorial() - std::log(space.m) - log_gamma(s) + log_gamma(s / space.m) -
           (s / space.m) * std::log(space.alpha);
}

double monomial_norm_sq(const MultiIndex& nu, const SpaceParams& space) {
    return std::exp(log_monomial_norm_sq(nu, space));
}

double log_monomial_norm_p(const MultiIndex& nu, double p, const SpaceParams& space) {
    check_monomial(nu, space);
    if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("exponent p must be positive and finite");
    double half_fact = 0.0;
    for (double v : nu.exponents) half_fact += log_gamma(v * p / 2.0 + 1.0);
    const double s = (nu.total() * p + 2.0 * space.n) / (2.0 * space.m);
    const double log_pth = space.n * kLogPi - std::log(space.m) + half_fact - log_gamma(space.n + nu.total() * p / 2.0) +
                           log_gamma(s) - s * std::log(space.alpha);
    return log_pth / p;
}

double monomial_norm_p(const MultiIndex& nu, double p, const SpaceParams& space) {
    return std::exp(log_monomial_norm_p(nu, p, space));
}

}  // namespace fockproj::fock
