#include "hdjac/json_io.hpp"

#include "hdjac/expr.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <stdexcept>

namespace hdjac {

using nlohmann::json;

SpecDocument load_spec_document(const json& j) {
    SpecDocument doc;
    if (!j.contains("p") || !j.contains("vars") || !j.contains("images"))
        throw std::invalid_argument("spec document requires p, vars and images");
    std::uint32_t p = j.at("p").get<std::uint32_t>();
    doc.vars = j.at("vars").get<std::vector<std::string>>();
    const std::uint32_t n = static_cast<std::uint32_t>(doc.vars.size());
    std::uint32_t trunc = j.value("trunc", 8u);

    std::vector<TruncatedSeries> images;
    for (std::uint32_t k = 0; k < n; ++k) {
        const std::string& name = doc.vars[k];
        if (!j.at("images").contains(name))
            throw std::invalid_argument("missing image for variable " + name);
        auto arr = j.at("images").at(name).get<std::vector<std::string>>();
        TruncatedSeries s(n, p, trunc);
        for (std::uint32_t i = 0; i < arr.size() && i <= trunc; ++i)
            s.coeff(i) = parse_poly_mod(arr[i], doc.vars, p);
        // finite data: coefficients beyond the listed ones are zero
        s.set_exact(arr.size() <= trunc + 1);
        images.push_back(std::move(s));
    }
    doc.spec = HDSpec::explicit_images(std::move(images));

    if (j.contains("F"))
        for (const auto& fs : j.at("F").get<std::vector<std::string>>())
            doc.F.push_back(parse_poly_mod(fs, doc.vars, p));
    if (j.contains("samples"))
        for (const auto& pair : j.at("samples")) {
            doc.samples.emplace_back(parse_poly_mod(pair.at(0).get<std::string>(), doc.vars, p),
                                     parse_poly_mod(pair.at(1).get<std::string>(), doc.vars, p));
        }
    return doc;
}

SpecDocument load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return load_spec_document(j);
}

std::vector<std::string> certificate_symbols(std::size_t tuple_size) {
    std::vector<std::string> syms;
    if (tuple_size == 1) {
        syms.push_back("F");
    } else {
        for (std::size_t i = 1; i <= tuple_size; ++i) syms.push_back("F" + std::to_string(i));
    }
    syms.push_back("S");
    return syms;
}

namespace {

json witness_to_json(const Witness& w, const std::vector<std::string>& vars, std::uint32_t p) {
    json out;
    if (const auto* df = std::get_if<DefinednessFailure>(&w)) {
        out["kind"] = "definedness_failure";
        out["generator"] = vars[df->generator];
        out["order"] = df->ell;
        out["required_power"] = std::to_string(p) + "^" + std::to_string(df->required_e);
        out["valuation"] = df->valuation;
        out["monomial"] =
            format_poly(PolyZ::from_terms(static_cast<std::uint32_t>(vars.size()),
                                          {{df->monomial, BigInt(1)}}),
                        vars);
        out["coefficient"] = df->coefficient.str();
        out["reverified"] = df->reverify(p);
    } else if (const auto* ic = std::get_if<IterativityCounterexample>(&w)) {
        out["kind"] = "iterativity_counterexample";
        out["i"] = ic->i;
        out["j"] = ic->j;
        out["generator"] = vars[ic->generator];
    } else if (const auto* ff = std::get_if<FixesFailure>(&w)) {
        out["kind"] = "fixes_failure";
        out["polynomial"] = format_poly(ff->f, vars);
        out["order"] = ff->order;
        out["residual"] = format_poly(ff->residual, vars);
    } else if (const auto* ir = std::get_if<IndependenceResult>(&w)) {
        out["kind"] = "dependence_relation";
        auto syms = certificate_symbols(ir->witness.arity());
        syms.pop_back();  // relations use only the F symbols
        out["relation"] = format_poly(ir->witness, syms);
        out["detail"] = ir->detail;
    } else if (std::holds_alternative<ZeroJacobianWitness>(w)) {
        out["kind"] = "zero_jacobian_derivation";
    }
    return out;
}

}  // namespace

json verdict_to_json(const Verdict& v, const std::vector<std::string>& vars, std::uint32_t p) {
    json out;
    switch (v.answer) {
        case Verdict::Answer::Yes: out["answer"] = "yes"; break;
        case Verdict::Answer::No: out["answer"] = "no"; break;
        case Verdict::Answer::Unknown: out["answer"] = "unknown"; break;
    }
    if (v.certificate) {
        json cert;
        cert["slice"] = format_poly(v.certificate->slice, vars);
        auto syms = certificate_symbols(v.certificate->expressions.empty()
                                            ? 1
                                            : v.certificate->expressions[0].arity() - 1);
        json exprs;
        for (std::size_t k = 0; k < v.certificate->expressions.size(); ++k)
            exprs[vars[k]] = format_poly(v.certificate->expressions[k], syms);
        cert["expressions"] = exprs;
        out["certificate"] = cert;
    }
    if (v.witness) out["witness"] = witness_to_json(*v.witness, vars, p);
    if (v.univariate) {
        json u;
        u["g"] = format_poly(v.univariate->g, vars);
        u["expression_in_g"] = format_poly(v.univariate->expression, {"G"});
        json gcert;
        gcert["slice"] = format_poly(v.univariate->g_cert.slice, vars);
        auto syms = certificate_symbols(1);
        json exprs;
        for (std::size_t k = 0; k < v.univariate->g_cert.expressions.size(); ++k)
            exprs[vars[k]] = format_poly(v.univariate->g_cert.expressions[k], syms);
        gcert["expressions"] = exprs;
        u["g_certificate"] = gcert;
        out["univariate"] = u;
    }
    out["budgets"] = {{"trunc", v.budgets.trunc},
                      {"dmax", v.budgets.dmax},
                      {"slice_candidates", v.budgets.slice_candidates},
                      {"seed", v.budgets.seed}};
    out["diagnostics"] = v.diagnostics;
    return out;
}

}  // namespace hdjac
