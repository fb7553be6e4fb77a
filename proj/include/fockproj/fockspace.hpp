#pragma once
//
// Generalized Fock spaces over C^n with weight exp(-alpha |z|^{2m}): monomial norms,
// reproducing kernels, projections of radial monomials and the radial integrals
// that control kernel growth.
//

#include <complex>
#include <vector>

#include "fockproj/specfun.hpp"

namespace fockproj::fock {

using complex = std::complex<double>;
using Point = std::vector<complex>;

/// Weight exp(-alpha |z|^{2m}) on C^n.
struct SpaceParams {
    double alpha = 1.0;
    double m = 1.0;
    int n = 1;

    void validate() const;
    /// Also requires alpha > 0.
    void validate_normable() const;
};

enum class IndexMode { Integer, RealNonneg };

struct MultiIndex {
    std::vector<double> exponents;
    IndexMode mode = IndexMode::Integer;

    static MultiIndex integer(const std::vector<int>& nu);
    static MultiIndex real(const std::vector<double>& nu);
    /// (k, 0, ..., 0) and (k, ..., k) in dimension n.
    static MultiIndex single_axis(int k, int n);
    static MultiIndex diagonal(int k, int n);

    std::size_t size() const { return exponents.size(); }
    double total() const;
    /// sum_j ln Gamma(nu_j + 1)
    double log_factorial() const;
    void validate() const;
};

/// z^nu |z|^A exp(B |z|^m + C |z|^{2m}).
struct RadialMonomial {
    MultiIndex nu;
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
    double m = 1.0;
};

struct KernelPoint {
    Point x;
    Point y;
};

/// <x, y> = sum_j x_j conj(y_j).
complex inner(const Point& x, const Point& y);
double norm(const Point& x);

/// Integral of |zeta^nu|^2 over the unit sphere of C^n (unnormalised surface measure):
/// 2 pi^n nu! / Gamma(n + |nu|).
double sphere_monomial_integral(const MultiIndex& nu, int n);
double log_sphere_monomial_integral(const MultiIndex& nu, int n);

/// ||z^nu||^2 in L^2 of the weight.
double monomial_norm_sq(const MultiIndex& nu, const SpaceParams& space);
double log_monomial_norm_sq(const MultiIndex& nu, const SpaceParams& space);

/// ||z^nu|| in L^p of the weight (any p > 0).
double monomial_norm_p(const MultiIndex& nu, double p, const SpaceParams& space);
double log_monomial_norm_p(const MultiIndex& nu, double p, const SpaceParams& space);

/// Kernel by its power series in <x, y>; throws AccuracyError when the series cannot be
/// summed to 1e-11 relative within 1e5 terms.
complex kernel_series(const KernelPoint& pt, const SpaceParams& space);

/// Kernel through E^{(n-1)}_{1/m,1/m}. The returned result carries the kernel prefactor,
/// so value * exp(log_scale) is the kernel itself.
specfun::EvalResult kernel_ml_scaled(const KernelPoint& pt, const SpaceParams& space);
complex kernel_ml(const KernelPoint& pt, const SpaceParams& space);

/// Growth bound |K(x, y)| <= C (|x||y|)^{(m-1)n} exp(alpha |x|^m |y|^m) for |x||y| >= 1,
/// with C calibrated once per space.
class KernelEnvelope {
public:
    explicit KernelEnvelope(const SpaceParams& space);

    double constant() const { return constant_; }
    /// The large-|x||y| limit of the calibration ratio, m^{n+1} alpha^n / pi^n.
    double limit_constant() const;
    double log_bound(double t) const;
    double log_bound(const KernelPoint& pt) const { return log_bound(norm(pt.x) * norm(pt.y)); }

private:
    SpaceParams space_;
    double constant_ = 0.0;
};

double kernel_envelope(const KernelPoint& pt, const SpaceParams& space);
double log_kernel_envelope(const KernelPoint& pt, const SpaceParams& space);

/// Integral of t^rho exp(B t - A t^2) over t > 0 in log form, with the large-B envelope
/// B^rho exp(B^2 / 4A) alongside.
struct RadialMoment {
    double log_value = 0.0;
    double log_envelope = 0.0;
    double rel_error = 0.0;

    double value() const;
    double envelope() const;
    /// value / envelope
    double ratio() const;
};
RadialMoment radial_moment(double rho, double A, double B);

/// Log-form quadrature result paired with the log of its comparison envelope.
struct EnvelopeValue {
    double log_value = 0.0;
    double log_envelope = 0.0;
    double rel_error = 0.0;

    double value() const;
    double ratio() const;
};

/// I(R) = integral over theta in [-pi, pi] of |E^{(n-1)}_{1/m,1/m}(R e^{i theta})|, with envelope
/// R^{(m-1)n - m/2} exp(R^m).
EnvelopeValue circle_ml_integral(double R, double m, int n);

/// Integral of |K(r zeta, y)| over the unit sphere, with envelope (r|y|)^{m/2-n} exp(alpha r^m |y|^m).
/// space.alpha plays the role of the kernel parameter.
EnvelopeValue kernel_sphere_average(double r, const Point& y, const SpaceParams& space);

/// Integral over C^n of |K(x, y)| exp(-C |x|^{2m}) dx, with envelope exp(alpha^2 |y|^{2m} / 4C).
EnvelopeValue weighted_kernel_integral(const Point& y, const SpaceParams& space, double C);

/// Coefficient c with P f = c w^nu for the radial monomial f, projecting with the kernel
/// of weight exp(-beta |z|^{2m}). Throws DivergenceError when C >= beta.
double project_radial_monomial(const RadialMonomial& f, double beta, int n);

}  // namespace fockproj::fock
