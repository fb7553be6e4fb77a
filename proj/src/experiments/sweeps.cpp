#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "fockproj/errors.hpp"
#include "fockproj/experiments.hpp"
#include "fockproj/fockspace.hpp"
#include "fockproj/specfun.hpp"

namespace fockproj::exper {

namespace {

struct Doubles {
    double alpha, beta, gamma, p, q, m;
    int n;
};

Doubles as_doubles(const bound::ProjectionProblem& P) {
    return {to_double(P.alpha), to_double(P.beta), to_double(P.gamma), to_double(P.p),
            to_double(P.q),     to_double(P.m),    P.n};
}

// Least squares with columns scaled to unit max norm.
Eigen::VectorXd fit(const std::vector<std::function<double(double)>>& basis, const std::vector<int>& k,
                    const std::vector<double>& L, std::size_t from) {
    const auto rows = static_cast<Eigen::Index>(k.size() - from);
    const auto cols = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd X(rows, cols);
    Eigen::VectorXd y(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double kk = k[from + static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < cols; ++j) X(i, j) = basis[static_cast<std::size_t>(j)](kk);
        y(i) = L[from + static_cast<std::size_t>(i)];
    }
    Eigen::VectorXd scale(cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        scale(j) = X.col(j).cwiseAbs().maxCoeff();
        if (scale(j) == 0.0) scale(j) = 1.0;
        X.col(j) /= scale(j);
    }
    Eigen::VectorXd c = X.colPivHouseholderQr().solve(y);
    return c.cwiseQuotient(scale);
}

double mean(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s / static_cast<double>(hi - lo);
}

SweepReport slope_experiment(const bound::ProjectionProblem& P, int k_max, NuFamily family) {
    if (bound::c_value(P) != 1) throw InvalidArgument("slope experiment requires c = 1 exactly");
    if (k_max < 16) throw InvalidArgument("slope experiment needs k_max >= 16");
    SweepReport r = eq14_ratio_curve(P, SweepConfig::range(1, k_max, family, LambdaRule::slope_test()));
    if (!(std::abs(r.window_linear_coef) < 1e-6)) {
        std::ostringstream msg;
        msg << "linear-in-k term does not cancel (coefficient " << r.window_linear_coef << ")";
        throw AccuracyError(msg.str());
    }
    return r;
}

}  // namespace

const char* to_string(NuFamily f) { return f == NuFamily::SingleAxis ? "SingleAxis" : "Diagonal"; }

const char* to_string(LambdaRule::Kind k) {
    switch (k) {
        case LambdaRule::Kind::Fixed: return "Fixed";
        case LambdaRule::Kind::TMin: return "TMinRule";
        case LambdaRule::Kind::SlopeTest: return "Prop10Rule";
    }
    return "?";
}

SweepConfig SweepConfig::range(int k_min, int k_max, NuFamily family, LambdaRule rule) {
    SweepConfig c;
    for (int k = k_min; k <= k_max; ++k) c.k_values.push_back(k);
    c.family = family;
    c.rule = rule;
    return c;
}

SweepReport eq14_ratio_curve(const bound::ProjectionProblem& P, const SweepConfig& config) {
    P.validate();
    if (config.k_values.size() < 8) throw InvalidArgument("sweep needs at least 8 values of k");
    for (std::size_t i = 0; i < config.k_values.size(); ++i) {
        if (config.k_values[i] < 1) throw InvalidArgument("sweep degrees must be positive");
        if (i > 0 && config.k_values[i] <= config.k_values[i - 1])
            throw InvalidArgument("sweep degrees must be increasing");
    }
    const Doubles d = as_doubles(P);
    SweepReport r;
    const double ap = d.alpha / d.p;
    switch (config.rule.kind) {
        case LambdaRule::Kind::Fixed: r.lambda = config.rule.value; break;
        case LambdaRule::Kind::TMin: {
            const double tm = to_double(bound::t_min(P));
            if (tm > 0.0) {
                r.t_used = tm;
            } else {
                // No interior minimiser (c >= 2); any admissible t will do.
                r.t_min_fallback = true;
                r.t_used = d.beta - ap;
                r.notes.push_back("t_min <= 0: using t = beta - alpha/p");
            }
            r.lambda = ap - r.t_used;
            break;
        }
        case LambdaRule::Kind::SlopeTest: r.lambda = 2.0 * ap - d.beta; break;
    }
    r.t_used = ap - r.lambda;
    if (!(r.lambda < ap)) throw DomainError("lambda must be below alpha/p for the test function to lie in L^p");
    if (!(r.lambda < d.beta))
        throw DivergenceError("lambda >= beta: the projection of the test function diverges");
    r.necessity_at_t_min = to_double(bound::necessity_lhs(P, bound::t_min(P)));

    const fock::SpaceParams target{d.gamma, d.m, d.n};
    const fock::SpaceParams source{d.alpha - r.lambda * d.p, d.m, d.n};
    const double log_mult = std::log(d.beta / (d.beta - r.lambda));
    r.k = config.k_values;
    r.L.reserve(r.k.size());
    for (int k : r.k) {
        const fock::MultiIndex nu = config.family == NuFamily::SingleAxis ? fock::MultiIndex::single_axis(k, d.n)
                                                                          : fock::MultiIndex::diagonal(k, d.n);
        const double L = ((d.n + nu.total()) / d.m) * log_mult + fock::log_monomial_norm_p(nu, d.q, target) -
                         fock::log_monomial_norm_p(nu, d.p, source);
        if (!std::isfinite(L)) throw AccuracyError("non-finite ratio at k = " + std::to_string(k));
        r.L.push_back(L);
    }

    auto one = [](double) { return 1.0; };
    auto lin = [](double k) { return k; };
    auto lg = [](double k) { return std::log(k); };
    auto inv = [](double k) { return 1.0 / k; };
    r.linear_rate = fit({lin, lg, one}, r.k, r.L, 0)(0);

    const int k_max = r.k.back();
    std::size_t from = 0;
    while (from < r.k.size() && r.k[from] < k_max / 4) ++from;
    if (r.k.size() - from >= 8) {
        r.window_linear_coef = fit({lin, lg, one, inv}, r.k, r.L, from)(0);
        const Eigen::VectorXd ab = fit({lg, one}, r.k, r.L, from);
        r.log_slope = ab(0);
        r.log_intercept = ab(1);
    }

    const std::size_t N = r.L.size();
    const std::size_t quarter = std::max<std::size_t>(1, N / 4);
    bool rising = true;
    for (std::size_t i = N - quarter; i < N; ++i)
        if (!(r.L[i] > r.L[i - 1])) rising = false;
    r.diverges = rising && mean(r.L, N - quarter, N) - mean(r.L, 0, quarter) > config.divergence_gap;
    const double s = config.rule.kind == LambdaRule::Kind::SlopeTest ? r.log_slope : r.linear_rate;
    r.slope_sign = s > 0 ? 1 : (s < 0 ? -1 : 0);
    return r;
}

double stirling_limit_check(double rho, double sigma, int k) {
    if (!(rho > 0.0) || k < 1) throw DomainError("stirling_limit_check: need rho > 0 and k >= 1");
    const double x = rho * k + sigma;
    if (!(x > 0.0)) throw DomainError("stirling_limit_check: rho k + sigma must be positive");
    return std::exp(specfun::log_gamma(x) / (rho * k)) / k;
}

SweepReport prop10_slope_experiment(const bound::ProjectionProblem& P, int k_max) {
    return slope_experiment(P, k_max, NuFamily::Diagonal);
}

SweepReport prop12_slope_experiment(const bound::ProjectionProblem& P, int k_max) {
    return slope_experiment(P, k_max, NuFamily::SingleAxis);
}

double single_axis_slope(const bound::ProjectionProblem& P) {
    const Doubles d = as_doubles(P);
    return ((2.0 * d.n - 1.0) * d.m - 2.0 * d.n) * (d.q - d.p) / (2.0 * d.m * d.p * d.q);
}

}  // namespace fockproj::exper
