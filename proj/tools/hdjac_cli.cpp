// Command-line front end: exp / table / check-* / kernel / verify-hd /
// conjugate. Exit codes: 0 = yes/pass, 1 = no/fail, 2 = unknown, 3 = usage or
// parse error.

#include "hdjac/decide.hpp"
#include "hdjac/expr.hpp"
#include "hdjac/higher.hpp"
#include "hdjac/json_io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iostream>
#include <sstream>

using namespace hdjac;
using nlohmann::json;

namespace {

struct GlobalOpts {
    std::uint32_t p = 3;
    std::string vars_list = "x,y";
    std::uint32_t trunc = 64;
    std::uint32_t dmax = 0;
    std::uint32_t slice_candidates = 64;
    std::uint64_t seed = 0;
    bool json_out = false;

    std::vector<std::string> vars() const { return split_var_names(vars_list); }
    Budgets budgets() const {
        Budgets b;
        b.trunc = trunc;
        b.dmax = dmax;
        b.slice_candidates = slice_candidates;
        b.seed = seed;
        return b;
    }
};

std::string series_to_string(const TruncatedSeries& s, const std::vector<std::string>& vars) {
    std::ostringstream os;
    bool first = true;
    for (std::uint32_t i = 0; i <= s.trunc(); ++i) {
        const PolyMod& c = s.coeff(i);
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        std::string cs = format_poly(c, vars);
        if (i == 0) {
            os << cs;
        } else {
            bool simple = c.terms().size() == 1;
            if (cs == "1")
                os << "t";
            else if (simple)
                os << cs << "*t";
            else
                os << "(" << cs << ")*t";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

std::vector<PolyMod> parse_tuple(const std::vector<std::string>& texts, const GlobalOpts& g) {
    std::vector<PolyMod> F;
    for (const auto& t : texts) F.push_back(parse_poly_mod(t, g.vars(), g.p));
    return F;
}

void print_definedness_failure(const DefinednessFailure& f, const GlobalOpts& g) {
    auto vars = g.vars();
    std::cout << "not defined: l!^-1 [d]^l fails at generator " << vars[f.generator]
              << ", l = " << f.ell << "\n";
    std::cout << "  coefficient " << f.coefficient.str() << " of monomial "
              << format_poly(PolyZ::from_terms(static_cast<std::uint32_t>(vars.size()),
                                               {{f.monomial, BigInt(1)}}),
                             vars)
              << " has valuation " << f.valuation << " < e(" << f.ell << ") = " << f.required_e
              << " (required " << g.p << "^" << f.required_e << ")\n";
}

int cmd_exp(const GlobalOpts& g, const std::vector<std::string>& ftexts, bool plain) {
    auto vars = g.vars();
    auto F = parse_tuple(ftexts, g);
    HDSpec spec = plain ? HDSpec::from_derivation(delta_modp(F), g.trunc)
                        : HDSpec::canonical(F, g.trunc);
    if (g.json_out) {
        json out;
        out["p"] = g.p;
        out["vars"] = vars;
        out["trunc"] = g.trunc;
        if (spec.failure) {
            out["defined"] = false;
            Witness w = *spec.failure;
            json img;
            out["witness"] = verdict_to_json(
                                 [&] {
                                     Verdict v;
                                     v.answer = Verdict::Answer::No;
                                     v.witness = w;
                                     return v;
                                 }(),
                                 vars, g.p)["witness"];
        } else {
            out["defined"] = true;
            json images;
            for (std::uint32_t k = 0; k < spec.arity; ++k) {
                json arr = json::array();
                for (std::uint32_t i = 0; i <= spec.window; ++i)
                    arr.push_back(format_poly(spec.images[k].coeff(i), vars));
                images[vars[k]] = arr;
            }
            out["images"] = images;
            out["exact"] = json::array();
            for (const auto& im : spec.images) out["exact"].push_back(im.exact());
        }
        std::cout << out.dump(2) << "\n";
        return spec.failure ? 1 : 0;
    }
    if (spec.failure) {
        print_definedness_failure(*spec.failure, g);
        return 1;
    }
    for (std::uint32_t k = 0; k < spec.arity; ++k) {
        std::cout << "Exp(t*d)(" << vars[k] << ") = " << series_to_string(spec.images[k], vars);
        if (spec.images[k].exact())
            std::cout << "   (exact)";
        else
            std::cout << "   (through t^" << spec.window << ")";
        std::cout << "\n";
    }
    if (g.trunc < g.p)
        std::cerr << "warning: truncation below p checks no nontrivial index\n";
    return 0;
}

int cmd_table(const GlobalOpts& g, const std::vector<std::string>& ftexts, bool plain) {
    auto vars = g.vars();
    auto F = parse_tuple(ftexts, g);
    DerivationZ d = plain ? lift_with(delta_modp(F), LiftPolicy::Balanced) : delta_tilde(F);
    json jout;
    for (std::uint32_t k = 0; k < d.arity; ++k) {
        std::cout << "generator " << vars[k] << ":\n";
        json rows = json::array();
        PolyZ cur = PolyZ::variable(d.arity, k);
        bool terminated = false;
        for (std::uint32_t ell = 1; ell <= g.trunc; ++ell) {
            cur = d.apply(cur);
            if (cur.is_zero()) {
                std::cout << "  l >= " << ell << "  bracket = 0  value = 0\n";
                if (g.json_out)
                    rows.push_back({{"l_from", ell}, {"bracket", "0"}, {"value", "0"}});
                terminated = true;
                break;
            }
            FactorialSplit fs = FactorialSplit::compute(ell, g.p);
            // l! = p^e * m, printed with the exact integer m
            BigInt fact = 1;
            for (std::uint32_t i = 2; i <= ell; ++i) fact *= i;
            BigInt peq = 1;
            for (std::uint64_t i = 0; i < fs.e; ++i) peq *= g.p;
            BigInt m = fact / peq;
            auto v = cur.min_p_valuation(g.p);
            std::string value;
            if (*v < fs.e) {
                value = "not defined (valuation " + std::to_string(*v) + " < " +
                        std::to_string(fs.e) + ")";
            } else {
                PolyMod val = reduce_mod_p(cur.divide_exact_by_p_power(g.p, fs.e), g.p)
                                  .scaled(fs.m_inv);
                value = format_poly(val, vars);
            }
            std::cout << "  l = " << ell << "  l! = " << g.p << "^" << fs.e << "*" << m.str()
                      << "  bracket = " << format_poly(cur, vars) << "  value = " << value
                      << "\n";
            if (g.json_out)
                rows.push_back({{"l", ell},
                                {"e", fs.e},
                                {"m", m.str()},
                                {"bracket", format_poly(cur, vars)},
                                {"value", value}});
            if (value.rfind("not defined", 0) == 0) {
                terminated = true;
                break;
            }
        }
        if (!terminated)
            std::cout << "  (no exact termination through l = " << g.trunc << ")\n";
        if (g.json_out) jout[vars[k]] = rows;
    }
    if (g.json_out) std::cout << jout.dump(2) << "\n";
    return 0;
}

int verdict_exit(const Verdict& v) {
    switch (v.answer) {
        case Verdict::Answer::Yes: return 0;
        case Verdict::Answer::No: return 1;
        default: return 2;
    }
}

void print_verdict_text(const Verdict& v, const std::vector<std::string>& vars,
                        std::uint32_t p) {
    switch (v.answer) {
        case Verdict::Answer::Yes: std::cout << "YES\n"; break;
        case Verdict::Answer::No: std::cout << "NO\n"; break;
        default: std::cout << "UNKNOWN\n"; break;
    }
    if (v.certificate) {
        auto syms = certificate_symbols(v.certificate->expressions.empty()
                                            ? 1
                                            : v.certificate->expressions[0].arity() - 1);
        std::cout << "certificate: s = " << format_poly(v.certificate->slice, vars) << "\n";
        for (std::size_t k = 0; k < v.certificate->expressions.size(); ++k)
            std::cout << "  " << vars[k] << " = "
                      << format_poly(v.certificate->expressions[k], syms) << "\n";
    }
    if (v.univariate) {
        std::cout << "univariate in g = " << format_poly(v.univariate->g, vars) << "\n";
        std::cout << "  f = " << format_poly(v.univariate->expression, {"G"}) << "\n";
    }
    if (v.witness) {
        json w = verdict_to_json(v, vars, p)["witness"];
        std::cout << "witness: " << w.dump() << "\n";
    }
    for (const auto& dstr : v.diagnostics) std::cout << "note: " << dstr << "\n";
}

int report_verdict(const Verdict& v, const GlobalOpts& g) {
    if (g.json_out)
        std::cout << verdict_to_json(v, g.vars(), g.p).dump(2) << "\n";
    else
        print_verdict_text(v, g.vars(), g.p);
    return verdict_exit(v);
}

int cmd_kernel(const GlobalOpts& g, const std::vector<std::string>& ftexts) {
    auto vars = g.vars();
    auto F = parse_tuple(ftexts, g);
    HDSpec spec = HDSpec::canonical(F, g.trunc);
    std::uint32_t dmax = g.budgets().effective_dmax(
        std::max<std::uint64_t>(1, F[0].degree()));
    KernelBasis kb = kernel_up_to_degree(spec, dmax, g.trunc);
    if (g.json_out) {
        json out;
        out["dmax"] = kb.dmax;
        out["order"] = kb.order;
        json arr = json::array();
        for (const auto& b : kb.basis) arr.push_back(format_poly(b, vars));
        out["basis"] = arr;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "kernel basis (degree <= " << kb.dmax << ", verified through t^"
                  << kb.order << "):\n";
        for (const auto& b : kb.basis) std::cout << "  " << format_poly(b, vars) << "\n";
    }
    return 0;
}

int cmd_verify_hd(const GlobalOpts& g, const std::string& path) {
    SpecDocument doc = load_spec_file(path);
    const auto& vars = doc.vars;
    std::vector<std::pair<PolyMod, PolyMod>> samples = doc.samples;
    if (samples.empty()) {
        // default: generator pairs
        const std::uint32_t n = doc.spec.arity;
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = i; j < n; ++j)
                samples.emplace_back(PolyMod::variable(n, doc.spec.p, i),
                                     PolyMod::variable(n, doc.spec.p, j));
    }
    AxiomReport ar = verify_axioms(doc.spec, samples);
    LocalFiniteness lf = is_locally_finite_up_to(doc.spec);
    IterativityReport ir = is_iterative_up_to(doc.spec, doc.spec.window);
    json out;
    out["axioms"] = {{"identity", ar.identity_ok}, {"product_rule", ar.leibniz_ok}};
    if (ar.failure)
        out["axioms"]["failure"] = {{"order", ar.failure->order},
                                    {"sample", ar.failure->sample},
                                    {"detail", ar.failure->detail}};
    out["locally_finite"] = [&] {
        switch (lf.kind) {
            case LocalFiniteness::Kind::ExactPolynomial: return std::string("exact_polynomial");
            case LocalFiniteness::Kind::ZeroTailWindow: return std::string("zero_tail_window");
            default: return std::string("not_within_window");
        }
    }();
    out["observed_t_degree"] = lf.observed_degree;
    out["iterative"] = ir.pass;
    if (!ir.pass)
        out["iterativity_counterexample"] = {{"i", ir.i}, {"j", ir.j},
                                             {"generator", vars[ir.generator]}};
    bool ok = ar.identity_ok && ar.leibniz_ok && ir.pass;
    if (!doc.F.empty()) {
        JacobianTypeReport rep = is_jacobian_type(doc.spec, doc.F, doc.spec.window);
        auto st = [](CheckStatus s) {
            switch (s) {
                case CheckStatus::Pass: return "pass";
                case CheckStatus::Fail: return "fail";
                default: return "inconclusive";
            }
        };
        out["jacobian_type"] = {{"independence", st(rep.independence)},
                                {"fixes_components", st(rep.fixes)},
                                {"first_term", st(rep.first_term)},
                                {"divided_powers", st(rep.divided_powers)}};
        ok = ok && rep.all_pass();
    }
    if (g.json_out) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "axioms: identity " << (ar.identity_ok ? "pass" : "FAIL")
                  << ", product rule " << (ar.leibniz_ok ? "pass" : "FAIL") << "\n";
        std::cout << "locally finite: " << out["locally_finite"].get<std::string>()
                  << " (observed t-degree " << lf.observed_degree << ")\n";
        std::cout << "iterative: " << (ir.pass ? "pass" : "FAIL") << "\n";
        if (out.contains("jacobian_type"))
            std::cout << "jacobian type: " << out["jacobian_type"].dump() << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_conjugate(const GlobalOpts& g, const std::vector<std::string>& ftexts,
                  const std::vector<std::string>& sig, const std::vector<std::string>& sig_inv) {
    auto vars = g.vars();
    auto F = parse_tuple(ftexts, g);
    std::vector<PolyZ> s, si;
    for (const auto& t : sig) s.push_back(parse_poly_z(t, vars));
    for (const auto& t : sig_inv) si.push_back(parse_poly_z(t, vars));
    ConjugationReport rep = conjugation_check(F, s, si, g.trunc);
    json out;
    out["z_exact_lift"] = rep.z_exact_lift;
    int rc = 1;
    switch (rep.status) {
        case ConjugationReport::Status::Pass:
            out["status"] = "pass";
            rc = 0;
            break;
        case ConjugationReport::Status::Mismatch:
            out["status"] = "mismatch";
            out["generator"] = vars[rep.generator];
            out["order"] = rep.order;
            break;
        case ConjugationReport::Status::BaseUndefined:
            out["status"] = "base_not_defined";
            rc = 2;
            break;
        case ConjugationReport::Status::ConjugateUndefined:
            out["status"] = "conjugate_not_defined";
            break;
    }
    if (g.json_out)
        std::cout << out.dump(2) << "\n";
    else
        std::cout << "conjugation: " << out["status"].get<std::string>()
                  << (rep.z_exact_lift ? " (Z-exact lift)" : " (lift not Z-exact)") << "\n";
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"higher derivations of Jacobian type over F_p: exponential maps, kernels and "
                 "variable/extendability certificates"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--p", g.p, "prime characteristic")->capture_default_str();
    app.add_option("--vars", g.vars_list, "comma-separated variable names")
        ->capture_default_str();
    app.add_option("--trunc", g.trunc, "series truncation order")->capture_default_str();
    app.add_option("--dmax", g.dmax, "degree budget (0 = auto)")->capture_default_str();
    app.add_option("--slice-candidates", g.slice_candidates, "slice candidate budget")
        ->capture_default_str();
    app.add_option("--seed", g.seed, "seed for randomized candidates")->capture_default_str();
    app.add_flag("--json", g.json_out, "emit JSON on stdout");

    std::vector<std::string> ftexts;
    bool plain = false;

    auto* exp = app.add_subcommand("exp", "generator images of Exp(t d) or the failure");
    exp->add_option("F", ftexts, "tuple components f1 ... f(n-1)")->required();
    exp->add_flag("--plain-jacobian", plain, "use the mod-p Jacobian derivation instead");

    auto* table = app.add_subcommand("table", "bracket table over Z per generator");
    table->add_option("F", ftexts, "tuple components")->required();
    table->add_flag("--plain-jacobian", plain, "use the mod-p Jacobian derivation instead");

    auto* ext = app.add_subcommand("check-extendable", "is the tuple extendable?");
    ext->add_option("F", ftexts, "tuple components")->required();

    auto* var = app.add_subcommand("check-variable", "is f a variable?");
    var->add_option("F", ftexts, "the polynomial f")->required()->expected(1);

    auto* uni = app.add_subcommand("check-univariate", "is f univariate?");
    uni->add_option("F", ftexts, "the polynomial f")->required()->expected(1);

    auto* ker = app.add_subcommand("kernel", "bounded-degree kernel basis");
    ker->add_option("F", ftexts, "tuple components")->required();

    std::string spec_path;
    auto* vh = app.add_subcommand("verify-hd", "verify an explicit family from JSON");
    vh->add_option("file", spec_path, "spec document")->required();

    std::vector<std::string> sig, sig_inv;
    auto* conj = app.add_subcommand("conjugate", "conjugation identity check");
    conj->add_option("F", ftexts, "tuple components")->required();
    conj->add_option("--sigma", sig, "images of the generators under sigma")->required();
    conj->add_option("--sigma-inv", sig_inv, "images under sigma^{-1}")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    try {
        if (!is_prime(g.p)) throw std::invalid_argument("--p must be prime");
        if (g.trunc < 1) throw std::invalid_argument("--trunc must be >= 1");
        if (exp->parsed()) return cmd_exp(g, ftexts, plain);
        if (table->parsed()) return cmd_table(g, ftexts, plain);
        if (ext->parsed()) return report_verdict(decide_extendable(parse_tuple(ftexts, g), g.budgets()), g);
        if (var->parsed())
            return report_verdict(decide_variable(parse_tuple(ftexts, g)[0], g.budgets()), g);
        if (uni->parsed())
            return report_verdict(decide_univariate(parse_tuple(ftexts, g)[0], g.budgets()), g);
        if (ker->parsed()) return cmd_kernel(g, ftexts);
        if (vh->parsed()) return cmd_verify_hd(g, spec_path);
        if (conj->parsed()) return cmd_conjugate(g, ftexts, sig, sig_inv);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
