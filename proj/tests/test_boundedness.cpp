#include <random>

#include "doctest.h"
#include "fockproj/boundedness.hpp"
#include "fockproj/errors.hpp"

using namespace fockproj;
using namespace fockproj::bound;

namespace {

Rational R(long a, long b = 1) { return Rational(a) / Rational(b); }

ProjectionProblem problem(Rational alpha, Rational beta, Rational gamma, Rational p, Rational q, Rational m, int n = 1) {
    return {alpha, beta, gamma, p, q, m, n, false};
}

// gamma chosen so that c takes the requested value.
ProjectionProblem with_c(const Rational& c, Rational alpha, Rational beta, Rational p, Rational q, Rational m, int n) {
    const Rational gamma = c * q * beta * beta / (4 * (beta - alpha / p));
    return problem(alpha, beta, gamma, p, q, m, n);
}

}  // namespace

TEST_CASE("rational parsing") {
    CHECK(parse_number("3/2").value == R(3, 2));
    CHECK(parse_number("1.5").value == R(3, 2));
    CHECK_FALSE(parse_number("1.5").approximate);
    CHECK(parse_number("-2e-3").value == R(-1, 500));
    CHECK(parse_number("1.5/7").value == R(3, 14));
    CHECK(parse_number("0.3333333333333333").approximate);
    CHECK(parse_number(" 7 ").value == 7);
    CHECK_THROWS_AS(parse_number("abc"), InvalidArgument);
    CHECK_THROWS_AS(parse_number("1/0"), InvalidArgument);
    CHECK_THROWS_AS(parse_number(""), InvalidArgument);
    CHECK_FALSE(from_double(0.5).approximate);
    CHECK(from_double(0.1).approximate);
    CHECK(from_double(0.1).value == R(1, 10));
    CHECK(to_string(R(6, 4)) == "3/2");
    CHECK(to_string(R(-4, 2)) == "-2");
}

TEST_CASE("documented classification examples") {
    const Classification a = classify(problem(1, 1, 1, 2, 2, 1));
    CHECK(a.verdict == Verdict::Bounded);
    CHECK(std::string(tag(a.justification)) == "Prop16_pEqQ");
    CHECK(a.c_value == 1);
    CHECK(a.q_max_value == 2);

    const Classification b = classify(problem(1, 1, 1, 2, 3, 1));
    CHECK(b.verdict == Verdict::Unbounded);
    CHECK(b.c_value == R(2, 3));

    const Classification c = classify(problem(1, 1, R(3, 2), 2, 3, R(3, 2)));
    CHECK(c.c_value == 1);
    CHECK(c.verdict == Verdict::Unknown);
    CHECK(std::string(tag(c.justification)) == "OpenCase_A");
}

TEST_CASE("each branch of the decision") {
    struct Case {
        Rational c, p, q, m;
        int n;
        Justification j;
    };
    const std::vector<Case> cases{
        {R(1, 2), 2, 2, 1, 1, Justification::CBelowOne},
        {R(3, 2), 3, 2, 5, 2, Justification::CAboveOne},
        {1, 3, 3, 5, 1, Justification::CriticalEqualExponents},
        {1, 2, 3, R(1, 2), 1, Justification::CriticalSmallM},
        {1, 2, 3, 1, 2, Justification::CriticalSmallM},
        {1, 3, 2, R(3, 2), 1, Justification::CriticalShrinkingQ},
        {1, 2, 3, R(3, 2), 2, Justification::CriticalSteepM},  // threshold 4/3 for n = 2
        {1, 2, 3, R(4, 3), 2, Justification::OpenIntermediateM},
        {1, 3, 2, 2, 1, Justification::OpenLargeM},
    };
    for (const auto& cs : cases) {
        const Classification r = classify(with_c(cs.c, 1, 1, cs.p, cs.q, cs.m, cs.n));
        CAPTURE(tag(cs.j));
        CHECK(r.justification == cs.j);
        CHECK(r.verdict == verdict_of(cs.j));
    }
}

TEST_CASE("approximate inputs near c = 1") {
    // gamma = 3/2 gives c = 1; perturb it below the band.
    ProjectionProblem P = problem(1, 1, Rational(3, 2) + Rational(1, 1000000000000000LL), 2, 3, 1);
    P.approximate = true;
    const Classification r = classify(P);
    CHECK(r.c_band_applied);
    CHECK(r.verdict == Verdict::Bounded);
    CHECK_FALSE(r.warnings.empty());
    P.approximate = false;
    CHECK(classify(P).justification == Justification::CAboveOne);
}

TEST_CASE("canonicalization preserves c and the verdict") {
    std::mt19937_64 rng(1);
    const std::vector<Rational> vals{R(1, 2), 1, R(3, 2), 2, 3};
    for (int i = 0; i < 200; ++i) {
        const ProjectionProblem P = problem(vals[rng() % 5], vals[rng() % 5], vals[rng() % 5], 1 + vals[rng() % 5],
                                            1 + vals[rng() % 5], vals[rng() % 5], 1 + static_cast<int>(rng() % 3));
        const ProjectionProblem Q = canonicalize(P);
        CHECK(c_value(Q) == c_value(P));
        CHECK(Q.beta == 1);
        CHECK(Q.gamma == Q.q);
        CHECK(classify(Q).verdict == classify(P).verdict);
    }
}

TEST_CASE("necessity quadratic: its minimum has the sign of c - 1") {
    std::mt19937_64 rng(2);
    const std::vector<Rational> vals{R(1, 3), R(1, 2), 1, R(3, 2), 2, 3};
    for (int i = 0; i < 200; ++i) {
        const ProjectionProblem P = problem(vals[rng() % 6], vals[rng() % 6], vals[rng() % 6], 1 + vals[rng() % 6],
                                            1 + vals[rng() % 6], 1, 1);
        if (P.beta - P.alpha / P.p <= 0) continue;
        const Rational c = c_value(P);
        const Rational lo = necessity_lhs(P, t_min(P));
        CHECK((lo > 0) == (c > 1));
        CHECK((lo == 0) == (c == 1));
        // t_min is the minimiser.
        CHECK(necessity_lhs(P, t_min(P) + R(1, 7)) >= lo);
        CHECK(necessity_lhs(P, t_min(P) - R(1, 7)) >= lo);
    }
}

TEST_CASE("slope constant") {
    const ProjectionProblem P = problem(2, 1, 1, 4, 2, 1);  // c = 1
    REQUIRE(c_value(P) == 1);
    CHECK(slope_constant(P) == R(1, 8));
    CHECK_THROWS_AS(slope_constant(problem(1, 1, 1, 2, 3, 1)), InvalidArgument);
}

TEST_CASE("Schur feasibility") {
    const SchurWitness eq = schur_feasibility(R(3), R(3), R(1));
    CHECK(eq.feasible);
    const SchurWitness gt = schur_feasibility(R(3), R(2), R(3, 2));
    CHECK(gt.feasible);
    CHECK(gt.x > 1 / (R(2) * R(3, 2)));
    CHECK_FALSE(schur_feasibility(R(3), R(2), R(1)).feasible);
    CHECK_THROWS_AS(schur_feasibility(R(2), R(3), R(1)), OutOfRangeError);

    // The problem overload recovers an admissible lambda.
    const ProjectionProblem P = with_c(R(2), 1, 1, 3, 2, 1, 1);
    const SchurWitness w = schur_feasibility(P);
    REQUIRE(w.feasible);
    REQUIRE(w.lambda.has_value());
    CHECK(*w.lambda_lo < *w.lambda_hi);
    CHECK(*w.lambda >= *w.lambda_lo);  // the column condition is not strict
    CHECK(*w.lambda < *w.lambda_hi);
}

TEST_CASE("taxonomy") {
    CHECK(taxonomy(R(1, 2), 1).letter == TaxonomyLetter::B);
    CHECK(taxonomy(R(1, 2), 1).known);
    CHECK(taxonomy(R(3, 2), 2).letter == TaxonomyLetter::A);  // 4/3 < 3/2 < 2
    CHECK(taxonomy(R(3, 2), 2).known);
    CHECK_FALSE(taxonomy(R(5, 4), 2).known);
    CHECK_FALSE(taxonomy(3, 1).known);
    CHECK(taxonomy(3, 1).letter == TaxonomyLetter::C);
}

TEST_CASE("validation names the violated condition") {
    CHECK_THROWS_WITH_AS(problem(1, 0, 1, 2, 2, 1).validate(), "beta must be positive", InvalidArgument);
    CHECK_THROWS_WITH_AS(problem(1, 1, 1, R(1, 2), 2, 1).validate(), "p must be at least 1", InvalidArgument);
}

TEST_CASE("problems built from doubles") {
    CHECK_FALSE(ProjectionProblem::from_doubles(1.0, 1.0, 1.5, 2.0, 3.0, 1.0, 1).approximate);
    const ProjectionProblem P = ProjectionProblem::from_doubles(1.0, 1.0, 0.1, 2.0, 3.0, 1.0, 1);
    CHECK(P.approximate);
    CHECK(P.gamma == R(1, 10));
}
