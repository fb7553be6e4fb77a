#include <cmath>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "fockproj/boundedness.hpp"
#include "fockproj/cli.hpp"
#include "fockproj/errors.hpp"
#include "fockproj/experiments.hpp"
#include "fockproj/fockspace.hpp"
#include "fockproj/rational.hpp"
#include "fockproj/specfun.hpp"

namespace fockproj::cli {

namespace {

using fock::complex;

// String-valued options of one subcommand, echoed verbatim into the report.
class OptionSet {
public:
    explicit OptionSet(CLI::App* app) : app_(app) {}

    void add(const std::string& name, const std::string& desc, const std::string& default_value = "",
             bool required = false) {
        order_.push_back(name);
        values_[name] = default_value;
        auto* opt = app_->add_option("--" + name, values_[name], desc);
        if (required) opt->required();
        else if (!default_value.empty()) opt->default_str(default_value);
    }

    const std::string& operator[](const std::string& name) const { return values_.at(name); }
    bool given(const std::string& name) const { return app_->count("--" + name) > 0; }

    Json echo() const {
        Json j = Json::object();
        for (const auto& name : order_)
            if (!values_.at(name).empty()) j[name] = values_.at(name);
        return j;
    }

private:
    CLI::App* app_;
    std::vector<std::string> order_;
    std::map<std::string, std::string> values_;
};

double to_real(const std::string& name, const std::string& text) {
    try {
        return parse_number(text).to_double();
    } catch (const InvalidArgument& e) {
        throw InvalidArgument("--" + name + ": " + e.what());
    }
}

Number to_exact(const std::string& name, const std::string& text) {
    try {
        return parse_number(text);
    } catch (const InvalidArgument& e) {
        throw InvalidArgument("--" + name + ": " + e.what());
    }
}

int to_int(const std::string& name, const std::string& text) {
    const Rational v = to_exact(name, text).value;
    if (boost::multiprecision::denominator(v) != 1 || v > 1000000 || v < -1000000)
        throw InvalidArgument("--" + name + " must be an integer");
    return static_cast<int>(boost::multiprecision::numerator(v));
}

// "re" or "re:im"
complex to_complex(const std::string& name, const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) return {to_real(name, text), 0.0};
    return {to_real(name, text.substr(0, colon)), to_real(name, text.substr(colon + 1))};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

fock::Point to_point(const std::string& name, const std::string& text) {
    fock::Point p;
    for (const auto& part : split(text, ',')) p.push_back(to_complex(name, part));
    return p;
}

fock::MultiIndex to_nu(const std::string& text) {
    std::vector<int> nu;
    for (const auto& part : split(text, ',')) nu.push_back(to_int("nu", part));
    return fock::MultiIndex::integer(nu);
}

Json complex_json(complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Json rational_json(const Rational& r) { return {{"exact", to_string(r)}, {"decimal", to_double(r)}}; }

bound::ProjectionProblem problem_from(const OptionSet& o) {
    bound::ProjectionProblem P;
    bool approx = false;
    auto take = [&](const char* name) {
        const Number v = to_exact(name, o[name]);
        approx = approx || v.approximate;
        return v.value;
    };
    P.alpha = take("alpha");
    P.beta = take("beta");
    P.gamma = take("gamma");
    P.p = take("p");
    P.q = take("q");
    P.m = take("m");
    P.n = to_int("n", o["n"]);
    P.approximate = approx;
    P.validate();
    return P;
}

Json problem_json(const bound::ProjectionProblem& P) {
    return {{"alpha", to_string(P.alpha)}, {"beta", to_string(P.beta)}, {"gamma", to_string(P.gamma)},
            {"p", to_string(P.p)},         {"q", to_string(P.q)},       {"m", to_string(P.m)},
            {"n", P.n}};
}

void cmd_classify(const OptionSet& o, Report& r) {
    const bound::ProjectionProblem P = problem_from(o);
    const bound::Classification c = bound::classify(P);
    r.outputs["verdict"] = bound::to_string(c.verdict);
    r.outputs["justification"] = bound::tag(c.justification);
    r.outputs["justification_text"] = bound::describe(c.justification);
    r.outputs["c"] = rational_json(c.c_value);
    r.outputs["q_max"] = rational_json(c.q_max_value);
    r.outputs["c_band_applied"] = c.c_band_applied;
    r.outputs["exact_inputs"] = !P.approximate;
    r.outputs["canonical_problem"] = problem_json(bound::canonicalize(P));
    const bound::TaxonomyCase t = bound::taxonomy(P.m, P.n);
    Json cand = Json::array();
    for (auto l : t.candidates) cand.push_back(bound::to_string(l));
    r.outputs["taxonomy"] = {{"case", bound::to_string(t.letter)}, {"known", t.known}, {"candidates", cand},
                             {"note", t.note}};
    r.provenance.push_back(bound::describe(c.justification));
    r.provenance.push_back("c = q_max / q with q_max = (4 gamma / beta^2)(beta - alpha / p), in exact arithmetic");
    for (const auto& w : c.warnings) r.warnings.push_back(w);
    if (P.approximate) r.warnings.push_back("some inputs are approximate; c = 1 is recognised within 1e-12");
}

void cmd_qmax(const OptionSet& o, Report& r) {
    const Rational alpha = to_exact("alpha", o["alpha"]).value;
    const Rational beta = to_exact("beta", o["beta"]).value;
    const Rational gamma = to_exact("gamma", o["gamma"]).value;
    const Rational p = to_exact("p", o["p"]).value;
    r.outputs["q_max"] = rational_json(bound::q_max(alpha, beta, gamma, p));
    r.provenance.push_back("q_max = (4 gamma / beta^2)(beta - alpha / p)");
}

void cmd_ml(const OptionSet& o, double tol, Report& r) {
    const specfun::MLParams params{to_real("a", o["a"]), to_real("b", o["b"]), to_int("d", o["d"])};
    params.validate();
    const complex z = to_complex("z", o["z"]);
    const specfun::EvalResult e = specfun::mittag_leffler(params, z, {1e-10, tol});
    const complex v = e.unscaled();
    r.outputs["value"] = complex_json(v);
    r.outputs["abs_error_est"] = e.unscaled_error();
    r.outputs["regime"] = specfun::to_string(e.regime);
    r.outputs["log_abs"] = e.log_abs();
    if (e.log_scale != 0.0) {
        r.outputs["scaled_value"] = complex_json(e.value);
        r.outputs["log_scale"] = e.log_scale;
    }
    r.provenance.push_back(e.regime == specfun::Regime::Series
                               ? "power series of the Mittag-Leffler derivative"
                               : "exponential branch terms plus algebraic tail of the Mittag-Leffler asymptotics");
}

void cmd_kernel(const OptionSet& o, Report& r) {
    const fock::SpaceParams space{to_real("alpha", o["alpha"]), to_real("m", o["m"]), to_int("n", o["n"])};
    const fock::KernelPoint pt{to_point("x", o["x"]), to_point("y", o["y"])};
    const std::string route = o["route"];
    if (route != "both" && route != "series" && route != "ml")
        throw InvalidArgument("--route must be series, ml or both");
    complex s{}, m{};
    bool have_s = false, have_m = false;
    if (route != "ml") {
        try {
            s = fock::kernel_series(pt, space);
            have_s = true;
            r.outputs["series"] = complex_json(s);
        } catch (const AccuracyError& e) {
            if (route == "series") throw;
            r.warnings.push_back(std::string("series route unavailable: ") + e.what());
        }
    }
    if (route != "series") {
        const specfun::EvalResult e = fock::kernel_ml_scaled(pt, space);
        m = e.unscaled();
        have_m = true;
        r.outputs["ml"] = complex_json(m);
        r.outputs["ml_abs_error_est"] = e.unscaled_error();
        r.outputs["ml_regime"] = specfun::to_string(e.regime);
        r.outputs["log_abs"] = e.log_abs();
    }
    if (have_s && have_m) r.outputs["relative_difference"] = std::abs(s - m) / std::abs(m);
    const double t = fock::norm(pt.x) * fock::norm(pt.y);
    if (t >= 1.0) {
        const fock::KernelEnvelope env(space);
        r.outputs["log_envelope"] = env.log_bound(pt);
        r.outputs["envelope_constant"] = env.constant();
    }
    r.provenance.push_back("kernel = (m alpha^{n/m} / pi^n) E^{(n-1)}_{1/m,1/m}(alpha^{1/m} <x,y>)");
}

void cmd_norm(const OptionSet& o, Report& r) {
    const fock::SpaceParams space{to_real("alpha", o["alpha"]), to_real("m", o["m"]), to_int("n", o["n"])};
    const fock::MultiIndex nu = to_nu(o["nu"]);
    const double p = to_real("p", o["p"]);
    const double ln = fock::log_monomial_norm_p(nu, p, space);
    r.outputs["norm"] = std::exp(ln);
    r.outputs["log_norm"] = ln;
    r.outputs["norm_p_power"] = std::exp(p * ln);
    r.provenance.push_back("closed-form L^p norm of z^nu for the weight exp(-alpha |z|^{2m})");
}

void cmd_project(const OptionSet& o, Report& r) {
    const int n = to_int("n", o["n"]);
    fock::RadialMonomial f;
    f.nu = to_nu(o["nu"]);
    f.m = to_real("m", o["m"]);
    f.A = to_real("A", o["A"]);
    f.B = to_real("B", o["B"]);
    if (o.given("lambda") && o.given("C")) throw InvalidArgument("give either --lambda or --C, not both");
    f.C = o.given("lambda") ? to_real("lambda", o["lambda"]) : to_real("C", o["C"]);
    const double beta = to_real("beta", o["beta"]);
    const double c = fock::project_radial_monomial(f, beta, n);
    r.outputs["coefficient"] = c;
    if (f.A == 0.0 && f.B == 0.0) {
        const double closed = std::pow(beta / (beta - f.C), (n + f.nu.total()) / f.m);
        r.outputs["closed_form"] = closed;
        r.outputs["relative_difference"] = std::abs(c - closed) / closed;
    }
    r.provenance.push_back("P(z^nu phi(|z|)) = c z^nu, c from the radial integral against the monomial norm");
    r.provenance.push_back("test function z^nu |z|^A exp(B |z|^m + C |z|^{2m}); --lambda sets C");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bergman-type projections on generalized Fock spaces: boundedness classification, "
                 "kernel and norm evaluation, and numerical verification suites.",
                 "fockproj"};
    app.require_subcommand(1);
    bool want_csv = false;
    bool want_json = false;
    double tol = 1e-12;
    int k_max = 500;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    auto add_globals = [&](CLI::App* a) {
        a->add_flag("--json", want_json, "emit the JSON report (default)");
        a->add_flag("--csv", want_csv,
                    "emit CSV tables instead: one block per table, '# name' line, header row, data rows");
        a->add_option("--tol", tol, "relative tolerance for Mittag-Leffler evaluation")->check(CLI::PositiveNumber);
        a->add_option("--kmax", k_max, "largest monomial degree in the sweeps")->check(CLI::Range(16, 2000));
        a->add_option("--seed", seed, "seed for the randomised checks");
        a->add_option("--threads", threads, "worker threads (default: FOCKPROJ_THREADS, else all cores)");
    };

    auto* classify = app.add_subcommand("classify", "decide boundedness of P_beta : L^p_alpha -> L^q_gamma");
    OptionSet classify_opts(classify);
    for (const char* name : {"alpha", "beta", "gamma", "p", "q", "m"})
        classify_opts.add(name, std::string(name) + " (integer, decimal or a/b)", "", true);
    classify_opts.add("n", "complex dimension", "1");
    add_globals(classify);

    auto* eval = app.add_subcommand("eval", "evaluate one quantity");
    eval->require_subcommand(1);
    auto* ev_kernel = eval->add_subcommand("kernel", "reproducing kernel K(x, y); points as re[:im],re[:im],...");
    OptionSet kernel_opts(ev_kernel);
    kernel_opts.add("alpha", "weight coefficient", "1");
    kernel_opts.add("m", "weight exponent", "1");
    kernel_opts.add("n", "complex dimension", "1");
    kernel_opts.add("x", "first point", "", true);
    kernel_opts.add("y", "second point", "", true);
    kernel_opts.add("route", "series, ml or both", "both");
    add_globals(ev_kernel);

    auto* ev_norm = eval->add_subcommand("norm", "L^p norm of the monomial z^nu");
    OptionSet norm_opts(ev_norm);
    norm_opts.add("nu", "multi-index, comma separated", "", true);
    norm_opts.add("p", "exponent", "2");
    norm_opts.add("alpha", "weight coefficient", "1");
    norm_opts.add("m", "weight exponent", "1");
    norm_opts.add("n", "complex dimension", "1");
    add_globals(ev_norm);

    auto* ev_ml = eval->add_subcommand("ml", "Mittag-Leffler derivative E^{(d)}_{a,b}(z); z as re[:im]");
    OptionSet ml_opts(ev_ml);
    ml_opts.add("a", "first parameter", "1");
    ml_opts.add("b", "second parameter", "1");
    ml_opts.add("d", "derivative order", "0");
    ml_opts.add("z", "argument", "", true);
    add_globals(ev_ml);

    auto* ev_project = eval->add_subcommand("project", "projection coefficient of z^nu |z|^A exp(B|z|^m + C|z|^{2m})");
    OptionSet project_opts(ev_project);
    project_opts.add("nu", "multi-index, comma separated", "", true);
    project_opts.add("beta", "projection weight coefficient", "", true);
    project_opts.add("m", "weight exponent", "1");
    project_opts.add("n", "complex dimension", "1");
    project_opts.add("lambda", "sets C = lambda");
    project_opts.add("A", "power of |z|", "0");
    project_opts.add("B", "coefficient of |z|^m", "0");
    project_opts.add("C", "coefficient of |z|^{2m}", "0");
    add_globals(ev_project);

    auto* ev_qmax = eval->add_subcommand("qmax", "critical exponent q_max");
    OptionSet qmax_opts(ev_qmax);
    for (const char* name : {"alpha", "beta", "gamma", "p"}) qmax_opts.add(name, name, "", true);
    add_globals(ev_qmax);

    auto* verify = app.add_subcommand("verify", "run a verification suite; exit code 1 if any check fails");
    std::string suite;
    verify->add_option("suite", suite, "lemma8, lemma15, eq14, prop10, prop12, eq27, stirling, schur or all")
        ->required()
        ->check(CLI::IsMember({"lemma8", "lemma15", "eq14", "prop10", "prop12", "eq27", "stirling", "schur", "all"}));
    add_globals(verify);
    add_globals(&app);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (want_csv && want_json) {
        err << "error: --json and --csv are mutually exclusive\n";
        return kExitUsage;
    }

    Report report;
    try {
        if (classify->parsed()) {
            report.command = "classify";
            report.inputs = classify_opts.echo();
            cmd_classify(classify_opts, report);
        } else if (ev_kernel->parsed()) {
            report.command = "eval kernel";
            report.inputs = kernel_opts.echo();
            cmd_kernel(kernel_opts, report);
        } else if (ev_norm->parsed()) {
            report.command = "eval norm";
            report.inputs = norm_opts.echo();
            cmd_norm(norm_opts, report);
        } else if (ev_ml->parsed()) {
            report.command = "eval ml";
            report.inputs = ml_opts.echo();
            report.inputs["tol"] = format_double(tol);
            cmd_ml(ml_opts, tol, report);
        } else if (ev_project->parsed()) {
            report.command = "eval project";
            report.inputs = project_opts.echo();
            cmd_project(project_opts, report);
        } else if (ev_qmax->parsed()) {
            report.command = "eval qmax";
            report.inputs = qmax_opts.echo();
            cmd_qmax(qmax_opts, report);
        } else {
            report.command = "verify " + suite;
            VerifyOptions opt;
            opt.k_max = k_max;
            opt.seed = seed;
            opt.threads = threads > 0 ? threads : exper::default_threads();
            // The thread count does not affect results, so it is not echoed.
            report.inputs = {{"suite", suite}, {"kmax", std::to_string(k_max)}, {"seed", std::to_string(seed)}};
            run_suite(suite, opt, report);
        }
    } catch (const AccuracyError& e) {
        err << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (want_csv) out << report.to_csv();
    else out << report.to_json().dump(2) << "\n";
    if (!report.assertions.empty() && !report.all_passed()) return kExitCheckFailed;
    return kExitOk;
}

}  // namespace fockproj::cli
