#include <cmath>
#include <numbers>
#include <string>

#include "fockproj/errors.hpp"
#include "fockproj/specfun.hpp"

namespace fockproj::specfun {

std::vector<double> p_polynomial(double m, int k) {
    if (!(m > 0.0)) throw DomainError("p_polynomial: m must be positive");
    if (k < 0) throw DomainError("p_polynomial: degree must be nonnegative");
    std::vector<double> c{1.0};
    for (int step = 0; step < k; ++step) {
        // (m x - step) p + m x p'  ->  new[i] = m c[i-1] + (m i - step) c[i]
        std::vector<double> next(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < next.size(); ++i) {
            if (i >= 1) next[i] += m * c[i - 1];
            if (i < c.size()) next[i] += (m * static_cast<double>(i) - step) * c[i];
        }
        c = std::move(next);
    }
    return c;
}

complex ml_asymptotic_leading(double m, int n, complex z) {
    if (!(m > 0.0)) throw DomainError("ml_asymptotic_leading: m must be positive");
    if (n < 1) throw DomainError("ml_asymptotic_leading: n must be at least 1");
    if (z == complex{}) throw DomainError("ml_asymptotic_leading: z must be nonzero");
    if (m > 0.5 && std::abs(std::arg(z)) > std::numbers::pi / (2.0 * m) * (1.0 + 1e-14))
        throw DomainError("ml_asymptotic_leading: |arg z| exceeds pi/(2m) = " +
                          std::to_string(std::numbers::pi / (2.0 * m)));

    const auto coef = p_polynomial(m, n);
    const complex w = std::exp(m * std::log(z));
    complex poly{};
    for (auto it = coef.rbegin(); it != coef.rend(); ++it) poly = poly * w + *it;
    return poly * std::pow(z, -n) * std::exp(w);
}

}  // namespace fockproj::specfun
