#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "fockproj/errors.hpp"
#include "fockproj/fockspace.hpp"
#include "fockproj/quadrature.hpp"

namespace fockproj::fock {

double project_radial_monomial(const RadialMonomial& f, double beta, int n) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("projection: beta must be positive");
    const SpaceParams space{beta, f.m, n};
    space.validate();
    if (f.nu.size() != static_cast<std::size_t>(n)) throw InvalidArgument("projection: multi-index dimension must be n");
    if (f.nu.mode != IndexMode::Integer) throw InvalidArgument("projection: z^nu needs an integer multi-index");
    f.nu.validate();
    if (!(f.A >= 0.0) || !std::isfinite(f.A) || !std::isfinite(f.B) || !std::isfinite(f.C))
        throw DomainError("projection: radial parameters must be finite with A >= 0");
    if (f.C >= beta) {
        std::ostringstream msg;
        msg << "projection: integral diverges since C = " << f.C << " >= beta = " << beta;
        throw DivergenceError(msg.str());
    }

    // c = |S|_nu * int_0^inf r^{2|nu| + 2n - 1 + A} exp(B r^m + (C - beta) r^{2m}) dr / ||z^nu||^2
    const double power = 2.0 * f.nu.total() + 2.0 * n - 1.0 + f.A;
    const double D = beta - f.C;
    const double m = f.m;
    const double B = f.B;
    auto log_f = [=](double r) {
        if (r <= 0.0) return -std::numeric_limits<double>::infinity();
        return power * std::log(r) + B * std::pow(r, m) - D * std::pow(r, 2.0 * m);
    };
    const quad::PeakHint hint = quad::find_log_peak(log_f, 0.0);
    const quad::LogResult rad = quad::integrate_log_peaked(log_f, 0.0, hint, {1e-12, 0.0, 4000});
    if (!rad.converged || !(rad.rel_error <= 1e-9))
        throw AccuracyError("projection: radial quadrature did not converge (relative error " +
                            std::to_string(rad.rel_error) + ")");
    return std::exp(log_sphere_monomial_integral(f.nu, n) + rad.log_value - log_monomial_norm_sq(f.nu, space));
}

}  // namespace fockproj::fock
