#pragma once
//
// Boundedness of the projection P_beta : L^p(exp(-alpha|z|^{2m})) -> L^q(exp(-gamma|z|^{2m}))
// over C^n. Everything is decided in exact rational arithmetic, since the verdict jumps
// exactly at c = 1.
//

#include <optional>
#include <string>
#include <vector>

#include "fockproj/rational.hpp"

namespace fockproj::bound {

struct ProjectionProblem {
    Rational alpha;
    Rational beta;
    Rational gamma;
    Rational p;
    Rational q;
    Rational m;
    int n = 1;
    /// Some parameter came from a binary double or a long decimal; c = 1 is then
    /// recognised within a tolerance band.
    bool approximate = false;

    /// Builds a problem from doubles through their shortest round-trip decimals.
    static ProjectionProblem from_doubles(double alpha, double beta, double gamma, double p, double q, double m,
                                          int n);

    /// Throws InvalidArgument naming the violated condition.
    void validate() const;
};

enum class Verdict { Bounded, Unbounded, Unknown };

/// Which rule decided the verdict.
enum class Justification {
    CBelowOne,               // c < 1: unbounded
    CAboveOne,               // c > 1: bounded
    CriticalEqualExponents,  // c = 1, p = q: bounded
    CriticalSmallM,          // c = 1, p < q, m <= 1: bounded
    CriticalShrinkingQ,      // c = 1, p > q, m < 2: unbounded
    CriticalSteepM,          // c = 1, p < q, m > 2n/(2n-1): unbounded
    OpenIntermediateM,       // c = 1, p < q, 1 < m <= 2n/(2n-1): undecided
    OpenLargeM,              // c = 1, p > q, m >= 2: undecided
};

const char* to_string(Verdict v);
/// Stable tag used in reports (e.g. "Prop7_cLt1").
const char* tag(Justification j);
/// Plain-language statement of the rule.
const char* describe(Justification j);
Verdict verdict_of(Justification j);

struct Classification {
    Verdict verdict = Verdict::Unknown;
    Justification justification = Justification::OpenIntermediateM;
    Rational c_value;
    Rational q_max_value;
    /// An approximate c within 1e-12 of 1 was treated as exactly 1.
    bool c_band_applied = false;
    std::vector<std::string> warnings;
};

/// (4 gamma / beta^2)(beta - alpha / p)
Rational q_max(const Rational& alpha, const Rational& beta, const Rational& gamma, const Rational& p);
Rational c_value(const ProjectionProblem& P);

/// The problem ((1 - c/4) p, 1, q) with the same c, p, q, m, n.
ProjectionProblem canonicalize(const ProjectionProblem& P);

Classification classify(const ProjectionProblem& P);

/// -(beta^2/gamma) q t + (beta - alpha/p + t)^2, the quantity whose nonnegativity for all
/// t > 0 is necessary for boundedness.
Rational necessity_lhs(const ProjectionProblem& P, const Rational& t);
double necessity_lhs(const ProjectionProblem& P, double t);
/// Minimiser of necessity_lhs: beta^2 q / (2 gamma) - beta + alpha / p.
Rational t_min(const ProjectionProblem& P);

/// (m - 2) n (q - p) / (2 m p q); requires c = 1 (InvalidArgument otherwise).
Rational slope_constant(const ProjectionProblem& P);

/// Schur-test test functions exp(lambda p' |x|^{2m}), exp(nu q |y|^{2m}) with
/// nu = (1 - x) gamma / q. Feasibility in x: c x^2 - (1/p + 1/q + c - 1) x + 1/(pq) <= 0 on (0, 1),
/// and x > 1/(qc) when p != q.
struct SchurWitness {
    bool feasible = false;
    Rational x;                     // witness, exact
    double interval_lo = 0.0;       // feasible x-interval (endpoints may be irrational)
    double interval_hi = 0.0;
    bool interval_lo_open = false;
    bool interval_hi_open = false;
    std::vector<std::string> constraint_report;
    // Filled by the ProjectionProblem overload.
    std::optional<Rational> nu;
    std::optional<Rational> lambda_lo;
    std::optional<Rational> lambda_hi;
    std::optional<Rational> lambda;
};

/// Requires 1 < q <= p; throws OutOfRangeError otherwise.
SchurWitness schur_feasibility(const Rational& p, const Rational& q, const Rational& c);
/// Also recovers nu and the admissible lambda range and verifies the three kernel conditions.
SchurWitness schur_feasibility(const ProjectionProblem& P);

enum class TaxonomyLetter { A, B, C, D };
const char* to_string(TaxonomyLetter l);

/// Which pattern the boundedness region follows at c = 1 for given (m, n):
///   A bounded iff p = q,  B iff p <= q,  C iff p >= q,  D always (never occurs).
struct TaxonomyCase {
    TaxonomyLetter letter = TaxonomyLetter::A;
    bool known = false;
    std::vector<TaxonomyLetter> candidates;  // guessed when not known
    std::string note;
};
TaxonomyCase taxonomy(const Rational& m, int n);

}  // namespace fockproj::bound
