#include <cmath>
#include <string>

#include "fockproj/boundedness.hpp"
#include "fockproj/errors.hpp"

namespace fockproj::bound {

namespace {

// Approximate inputs: |c - 1| at most this is read as c = 1.
const Rational kCBand{1, 1000000000000LL};


}  // namespace

ProjectionProblem ProjectionProblem::from_doubles(double alpha, double beta, double gamma, double p, double q, double m,
                                                  int n) {
    ProjectionProblem P;
    bool approx = false;
    auto take = [&](double v) {
        const Number num = from_double(v);
        approx = approx || num.approximate;
        return num.value;
    };
    P.alpha = take(alpha);
    P.beta = take(beta);
    P.gamma = take(gamma);
    P.p = take(p);
    P.q = take(q);
    P.m = take(m);
    P.n = n;
    P.approximate = approx;
    return P;
}

void ProjectionProblem::validate() const {
    if (beta <= 0) throw InvalidArgument("beta must be positive");
    if (gamma <= 0) throw InvalidArgument("gamma must be positive");
    if (p < 1) throw InvalidArgument("p must be at least 1");
    if (q < 1) throw InvalidArgument("q must be at least 1");
    if (m <= 0) throw InvalidArgument("m must be positive");
    if (n < 1) throw InvalidArgument("n must be at least 1");
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Bounded: return "Bounded";
        case Verdict::Unbounded: return "Unbounded";
        case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

const char* tag(Justification j) {
    switch (j) {
        case Justification::CBelowOne: return "Prop7_cLt1";
        case Justification::CAboveOne: return "Prop9_cGt1";
        case Justification::CriticalEqualExponents: return "Prop16_pEqQ";
        case Justification::CriticalSmallM: return "Thm1_mLe1_pLeQ";
        case Justification::CriticalShrinkingQ: return "Cor11_mLt2_pGtQ";
        case Justification::CriticalSteepM: return "Cor13_mGtThresh_pLtQ";
        case Justification::OpenIntermediateM: return "OpenCase_A";
        case Justification::OpenLargeM: return "OpenCase_B";
    }
    return "?";
}

const char* describe(Justification j) {
    switch (j) {
        case Justification::CBelowOne:
            return "q exceeds q_max (c < 1): monomial test functions force unboundedness";
        case Justification::CAboveOne: return "q is below q_max (c > 1): bounded for all m and n";
        case Justification::CriticalEqualExponents: return "q = q_max and p = q: bounded for all m and n";
        case Justification::CriticalSmallM: return "q = q_max >= p with m <= 1: bounded";
        case Justification::CriticalShrinkingQ:
            return "q = q_max < p with m < 2: unbounded by the logarithmic slope test on diagonal monomials";
        case Justification::CriticalSteepM:
            return "q = q_max > p with m > 2n/(2n-1): unbounded by the logarithmic slope test on single-axis "
                   "monomials";
        case Justification::OpenIntermediateM:
            return "q = q_max > p with 1 < m <= 2n/(2n-1): not decided by any known result";
        case Justification::OpenLargeM: return "q = q_max < p with m >= 2: not decided by any known result";
    }
    return "?";
}

Verdict verdict_of(Justification j) {
    switch (j) {
        case Justification::CAboveOne:
        case Justification::CriticalEqualExponents:
        case Justification::CriticalSmallM: return Verdict::Bounded;
        case Justification::CBelowOne:
        case Justification::CriticalShrinkingQ:
        case Justification::CriticalSteepM: return Verdict::Unbounded;
        case Justification::OpenIntermediateM:
        case Justification::OpenLargeM: return Verdict::Unknown;
    }
    return Verdict::Unknown;
}

Rational q_max(const Rational& alpha, const Rational& beta, const Rational& gamma, const Rational& p) {
    if (beta <= 0 || gamma <= 0) throw InvalidArgument("q_max: beta and gamma must be positive");
    if (p < 1) throw InvalidArgument("q_max: p must be at least 1");
    return 4 * gamma / (beta * beta) * (beta - alpha / p);
}

Rational c_value(const ProjectionProblem& P) {
    P.validate();
    return q_max(P.alpha, P.beta, P.gamma, P.p) / P.q;
}

ProjectionProblem canonicalize(const ProjectionProblem& P) {
    const Rational c = c_value(P);
    ProjectionProblem out = P;
    out.alpha = (1 - c / 4) * P.p;
    out.beta = 1;
    out.gamma = P.q;
    return out;
}

Classification classify(const ProjectionProblem& P) {
    P.validate();
    Classification out;
    out.q_max_value = q_max(P.alpha, P.beta, P.gamma, P.p);
    out.c_value = out.q_max_value / P.q;

    Rational c = out.c_value;
    if (P.approximate && c != 1 && abs(c - 1) <= kCBand) {
        c = 1;
        out.c_band_applied = true;
        out.warnings.push_back("approximate input: |c - 1| = " + std::to_string(to_double(abs(out.c_value - 1))) +
                               " <= 1e-12 treated as c = 1");
    }
    if (out.q_max_value <= 0)
        out.warnings.push_back("q_max <= 0: unbounded for every q >= 1");

    Justification j;
    if (c < 1) {
        j = Justification::CBelowOne;
    } else if (c > 1) {
        j = Justification::CAboveOne;
    } else if (P.p == P.q) {
        j = Justification::CriticalEqualExponents;
    } else if (P.p > P.q) {
        j = P.m < 2 ? Justification::CriticalShrinkingQ : Justification::OpenLargeM;
    } else {
        const Rational threshold(2 * P.n, 2 * P.n - 1);
        if (P.m <= 1) j = Justification::CriticalSmallM;
        else if (P.m > threshold) j = Justification::CriticalSteepM;
        else j = Justification::OpenIntermediateM;
    }
    out.justification = j;
    out.verdict = verdict_of(j);
    return out;
}

Rational t_min(const ProjectionProblem& P) {
    P.validate();
    return P.beta * P.beta * P.q / (2 * P.gamma) - P.beta + P.alpha / P.p;
}

Rational necessity_lhs(const ProjectionProblem& P, const Rational& t) {
    P.validate();
    const Rational s = P.beta - P.alpha / P.p + t;
    return -(P.beta * P.beta / P.gamma) * P.q * t + s * s;
}

double necessity_lhs(const ProjectionProblem& P, double t) {
    P.validate();
    const double beta = to_double(P.beta), gamma = to_double(P.gamma), q = to_double(P.q);
    const double s = beta - to_double(P.alpha / P.p) + t;
    return -(beta * beta / gamma) * q * t + s * s;
}

Rational slope_constant(const ProjectionProblem& P) {
    if (c_value(P) != 1) throw InvalidArgument("slope_constant requires c = 1 exactly");
    return (P.m - 2) * P.n * (P.q - P.p) / (2 * P.m * P.p * P.q);
}

const char* to_string(TaxonomyLetter l) {
    switch (l) {
        case TaxonomyLetter::A: return "A";
        case TaxonomyLetter::B: return "B";
        case TaxonomyLetter::C: return "C";
        case TaxonomyLetter::D: return "D";
    }
    return "?";
}

TaxonomyCase taxonomy(const Rational& m, int n) {
    if (m <= 0) throw InvalidArgument("taxonomy: m must be positive");
    if (n < 1) throw InvalidArgument("taxonomy: n must be at least 1");
    const Rational threshold(2 * n, 2 * n - 1);
    TaxonomyCase out;
    if (m <= 1) {
        out.letter = TaxonomyLetter::B;
        out.known = true;
        out.note = "bounded at c = 1 iff p <= q";
    } else if (m >= 2) {
        out.letter = TaxonomyLetter::C;
        out.candidates = {TaxonomyLetter::C};
        out.note = "undecided; conjectured: bounded at c = 1 iff p >= q";
    } else if (m > threshold) {
        out.letter = TaxonomyLetter::A;
        out.known = true;
        out.note = "bounded at c = 1 iff p = q";
    } else {
        out.letter = TaxonomyLetter::A;
        out.candidates = {TaxonomyLetter::A};
        out.note = "undecided; conjectured: bounded at c = 1 iff p = q";
    }
    return out;
}

}  // namespace fockproj::bound
