// homcli: load JSON specs, run law bundles, twists, solvers and Moyal
// harnesses; emit deterministic reports.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "homalg/homcli.hpp"

using namespace homalg;
using cli::json;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw SchemaError("invalid JSON in '" + path + "': " + e.what());
    }
    return j;
}

std::map<std::string, GRat> parse_instantiations(const std::vector<std::string>& kvs) {
    std::map<std::string, GRat> out;
    for (const auto& kv : kvs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw SchemaError("--instantiate expects name=rational, got '" + kv + "'");
        out.emplace(kv.substr(0, eq), GRat(Rat(kv.substr(eq + 1))));
    }
    return out;
}

void emit(const json& report, bool as_json, int exit_code) {
    if (as_json) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << report["command"].get<std::string>() << ": "
                  << report["status"].get<std::string>() << "\n";
        if (report.contains("laws"))
            for (const auto& l : report["laws"]) {
                std::cout << "  " << l["law"].get<std::string>() << ": "
                          << l["status"].get<std::string>();
                if (l["status"] != "holds")
                    std::cout << " (" << l["nonzero_entries"].get<size_t>()
                              << " nonzero entries)";
                std::cout << "\n";
            }
        if (report.contains("solution"))
            std::cout << "  dimension " << report["solution"]["dimension"] << ", "
                      << report["solution"]["constraints"].size() << " constraints\n";
    }
    std::exit(exit_code);
}

json poly_law_json(const std::string& law, const std::string& status, const json& witnesses,
                   size_t nonzero) {
    return json{
        {"law", law}, {"status", status}, {"nonzero_entries", nonzero}, {"witnesses", witnesses}};
}

bool rpoly_parametric(const RPoly& p) {
    for (const auto& [e, c] : p.terms)
        for (size_t v = 0; v < c.num.nvars; ++v)
            if (c.num.depends_on(v) || c.den.depends_on(v)) return true;
    return false;
}

std::string rpoly_list_status(const std::vector<RPoly>& polys) {
    bool any = false, all_parametric = true;
    for (const auto& p : polys)
        if (!p.is_zero()) {
            any = true;
            if (!rpoly_parametric(p)) all_parametric = false;
        }
    if (!any) return "holds";
    return all_parametric ? "conditional" : "fails";
}

int run_check(const cli::SpecFile& spec, const json& raw, std::vector<std::string> laws,
              const std::map<std::string, GRat>& inst, unsigned degree_override,
              bool as_json) {
    json report;
    report["tool"] = "homcli";
    report["command"] = "check";
    report["input_digest"] = cli::digest(raw.dump());
    json law_reports = json::array();
    std::vector<std::string> statuses;

    if (spec.structure) {
        Structure S = *spec.structure;
        if (!inst.empty()) S = cli::instantiate(S, inst);
        if (laws.empty()) laws = cli::default_laws(spec);
        for (const auto& law : laws) {
            Residual r = check_law(S, law);
            law_reports.push_back(cli::residual_to_json(r, S.ctx));
            statuses.push_back(cli::residual_status(r));
        }
    } else if (spec.kind == "poly_poisson") {
        if (laws.empty()) {
            laws = {"jacobi"};
            if (spec.endo) laws.push_back("bracket_morphism");
        }
        for (const auto& law : laws) {
            if (law == "jacobi") {
                if (!spec.bivector) throw SchemaError("jacobi requires a bivector");
                json wit = json::array();
                std::vector<RPoly> polys;
                for (const auto& [i, j, k, r] : jacobi_residuals(*spec.bivector)) {
                    polys.push_back(r);
                    if (!r.is_zero())
                        wit.push_back({{"index", {i + 1, j + 1, k + 1}},
                                       {"value", to_string(r, *spec.ring)}});
                }
                statuses.push_back(rpoly_list_status(polys));
                law_reports.push_back(poly_law_json(law, statuses.back(), wit, wit.size()));
            } else if (law == "bracket_morphism") {
                if (!spec.bivector || !spec.endo)
                    throw SchemaError("bracket_morphism requires bivector and endo");
                json wit = json::array();
                std::vector<RPoly> polys;
                for (const auto& [i, j, r] : bracket_morphism_residual(*spec.endo,
                                                                      *spec.bivector)) {
                    polys.push_back(r);
                    if (!r.is_zero())
                        wit.push_back(
                            {{"index", {i + 1, j + 1}}, {"value", to_string(r, *spec.ring)}});
                }
                statuses.push_back(rpoly_list_status(polys));
                law_reports.push_back(poly_law_json(law, statuses.back(), wit, wit.size()));
            } else if (law == "eq_alpha") {
                if (!spec.endo) throw SchemaError("eq_alpha requires an endo");
                RPoly r = eq_alpha_residual(*spec.endo);
                statuses.push_back(rpoly_list_status({r}));
                json wit = json::array();
                if (!r.is_zero()) wit.push_back({{"value", to_string(r, *spec.ring)}});
                law_reports.push_back(poly_law_json(law, statuses.back(), wit, wit.size()));
            } else if (law == "capped_bundle") {
                unsigned cap = degree_override ? degree_override : spec.degree_cap;
                CappedStructure cs =
                    to_fdhom(*spec.ring, spec.bivector, spec.endo, cap);
                for (const auto& r : capped_poisson_bundle(cs)) {
                    law_reports.push_back(cli::residual_to_json(r, spec.ring->coeff));
                    statuses.push_back(cli::residual_status(r));
                }
                json flags;
                flags["mult_overflow"] = cs.mult_overflow;
                flags["bracket_overflow"] = cs.bracket_overflow;
                flags["alpha_overflow"] = cs.alpha_overflow;
                report["cap_flags"] = flags;
            } else {
                throw UnsupportedLaw(law);
            }
        }
    } else if (spec.deformation) {
        for (const auto& r : check_deformation(*spec.deformation)) {
            law_reports.push_back(cli::residual_to_json(r, spec.ctx));
            statuses.push_back(cli::residual_status(r));
        }
    } else {
        throw SchemaError("kind '" + spec.kind + "' is not checkable with cmd check");
    }

    report["laws"] = law_reports;
    report["status"] = cli::combine_status(statuses);
    emit(report, as_json, cli::status_exit_code(report["status"].get<std::string>()));
    return 0;
}

int run_twist(const cli::SpecFile& spec, const json& raw, const std::string& morphism_path,
              bool weak, const std::string& out_path, bool as_json) {
    if (!spec.structure) throw SchemaError("twist expects a hom_algebra/hom_coalgebra spec");
    json mj = read_json_file(morphism_path);
    cli::cli_detail::reject_unknown(mj, {"matrix"}, "morphism file");
    const Structure& S = *spec.structure;
    LinMap beta(S.dim, S.ctx.nparams());
    const json& m = mj.at("matrix");
    if (!m.is_array() || m.size() != S.dim) throw SchemaError("morphism matrix must be n x n");
    for (size_t i = 0; i < S.dim; ++i) {
        if (!m[i].is_array() || m[i].size() != S.dim)
            throw SchemaError("morphism matrix must be n x n");
        for (size_t s = 0; s < S.dim; ++s)
            beta.A[i][s] = parse_coeff(m[i][s].get<std::string>(), S.ctx);
    }

    Structure twisted = (spec.kind == "hom_coalgebra") ? twist_coalgebra(S, beta)
                                                       : twist_algebra(S, beta, weak);
    json out_spec = cli::structure_to_spec(twisted, spec.kind);
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << out_spec.dump(2) << "\n";
    }

    json report;
    report["tool"] = "homcli";
    report["command"] = "twist";
    report["input_digest"] = cli::digest(raw.dump());
    report["morphism_digest"] = cli::digest(mj.dump());
    report["weak"] = weak;
    cli::SpecFile tw_spec;
    tw_spec.kind = spec.kind;
    tw_spec.structure = twisted;
    json law_reports = json::array();
    std::vector<std::string> statuses;
    for (const auto& law : cli::default_laws(tw_spec)) {
        Residual r = check_law(twisted, law);
        law_reports.push_back(cli::residual_to_json(r, twisted.ctx));
        statuses.push_back(cli::residual_status(r));
    }
    report["laws"] = law_reports;
    report["status"] = cli::combine_status(statuses);
    if (out_path.empty()) report["twisted_spec"] = out_spec;
    emit(report, as_json, cli::status_exit_code(report["status"].get<std::string>()));
    return 0;
}

int run_solve(const cli::SpecFile& spec, const json& raw,
              const std::map<std::string, GRat>& inst, bool as_json) {
    if (!spec.structure || !spec.structure->bracket)
        throw SchemaError("solve-poisson expects a hom_algebra spec with a bracket");
    Structure S = *spec.structure;
    if (!inst.empty()) S = cli::instantiate(S, inst);
    PoissonSearch ps = find_poisson_products(S);
    json report;
    report["tool"] = "homcli";
    report["command"] = "solve_poisson";
    report["input_digest"] = cli::digest(raw.dump());
    report["pivot_rule"] = "first nonzero entry, columns left to right";
    report["solution"] = cli::solution_space_to_json(ps);
    report["status"] = ps.constraints.empty() ? "holds" : "conditional";
    emit(report, as_json, cli::status_exit_code(report["status"].get<std::string>()));
    return 0;
}

int run_moyal(const cli::SpecFile& spec, const json& raw, const std::string& harness,
              unsigned order_override, unsigned degree_override, bool as_json) {
    if (!spec.moyal) throw SchemaError("moyal expects a moyal_config spec");
    MoyalConfig cfg = *spec.moyal;
    if (order_override) cfg.order = order_override;
    if (degree_override) cfg.degree_cap = degree_override;
    const RingContext& ring = cfg.ring;
    size_t nv = ring.nvars(), np = ring.coeff.nparams();

    json report;
    report["tool"] = "homcli";
    report["command"] = "moyal";
    report["input_digest"] = cli::digest(raw.dump());
    report["harness"] = harness;
    std::vector<std::string> statuses;

    if (harness == "assoc") {
        // plain or (with endo) twisted-star Hom-associativity over capped triples
        std::vector<Exp> basis = capped_basis(nv, cfg.degree_cap);
        json wit = json::array();
        size_t nonzero = 0;
        bool parametric_only = true;
        for (const auto& ea : basis)
            for (const auto& eb : basis)
                for (const auto& ec : basis) {
                    if (exp_degree(ea) + exp_degree(eb) + exp_degree(ec) > cfg.degree_cap)
                        continue;
                    RPoly f = RPoly::monomial(ea, CoeffExpr::one(np), nv);
                    RPoly g = RPoly::monomial(eb, CoeffExpr::one(np), nv);
                    RPoly h = RPoly::monomial(ec, CoeffExpr::one(np), nv);
                    TruncSeries r = spec.endo
                                        ? twisted_star_hom_associator(*spec.endo, f, g, h, cfg)
                                        : star_associator(f, g, h, cfg);
                    if (!r.is_zero()) {
                        ++nonzero;
                        for (const auto& c : r.coeffs)
                            if (!c.is_zero() && !rpoly_parametric(c)) parametric_only = false;
                        if (wit.size() < 8)
                            wit.push_back({{"triple",
                                            {to_string(f, ring), to_string(g, ring),
                                             to_string(h, ring)}},
                                           {"value", to_string(r, ring)}});
                    }
                }
        std::string status =
            nonzero == 0 ? "holds" : (parametric_only ? "conditional" : "fails");
        statuses.push_back(status);
        report["laws"] = json::array(
            {poly_law_json(spec.endo ? "twisted_star_hom_assoc" : "star_assoc", status, wit,
                           nonzero)});
    } else if (harness == "intertwine") {
        if (!spec.endo) throw SchemaError("intertwine harness requires an endo");
        json law_reports = json::array();
        for (unsigned m = 0; m <= cfg.order; ++m) {
            auto res = intertwine_residual(*spec.endo, m, cfg);
            json wit = json::array();
            std::vector<RPoly> polys;
            for (const auto& [ep, eq, r] : res) {
                polys.push_back(r);
                if (wit.size() < 8)
                    wit.push_back(
                        {{"pair",
                          {detail::monomial_to_string(ep, ring.vars),
                           detail::monomial_to_string(eq, ring.vars)}},
                         {"value", to_string(r, ring)}});
            }
            std::string status = rpoly_list_status(polys);
            statuses.push_back(status);
            law_reports.push_back(
                poly_law_json("intertwine_m" + std::to_string(m), status, wit, res.size()));
        }
        report["laws"] = law_reports;
    } else if (harness == "families") {
        if (nv < 2) throw SchemaError("families harness requires at least 2 variables");
        json fams = json::array();
        RPoly x = RPoly::variable(0, nv, np), y = RPoly::variable(1, nv, np);
        for (const auto& [name, endo] : spec.families) {
            json f;
            f["name"] = name;
            RPoly eq(nv, np);
            if (nv == 2) {
                eq = eq_alpha_residual(endo);
                f["eq_alpha_residual"] = to_string(eq, ring);
                bool deg1 = endo.images[0].total_degree() <= 1 &&
                            endo.images[1].total_degree() <= 1;
                if (deg1)
                    f["degree1_constraint"] =
                        to_string(degree1_constraint(endo), ring.coeff);
            }
            TruncSeries as = star_hom_associator(endo, x, y, y, cfg);
            f["hom_associator_xyy"] = to_string(as, ring);
            std::string status =
                (eq.is_zero() && as.is_zero()) ? "holds"
                : (rpoly_list_status({eq}) == "fails" ? "fails" : "conditional");
            // a nonzero associator means the family does not deform the star product
            if (!as.is_zero()) status = "fails";
            f["status"] = status;
            statuses.push_back(status);
            fams.push_back(f);
        }
        report["families"] = fams;
    } else {
        throw SchemaError("unknown harness '" + harness + "'");
    }
    report["status"] = cli::combine_status(statuses);
    emit(report, as_json, cli::status_exit_code(report["status"].get<std::string>()));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hom-structure checker"};
    app.require_subcommand(1);

    std::string spec_path, morphism_path, out_path, harness = "assoc", field_override;
    std::vector<std::string> laws, instantiations;
    bool weak = false, as_json = false, as_text = false;
    unsigned order = 0, degree = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("spec", spec_path, "input spec JSON")->required();
        cmd->add_flag("--json", as_json, "emit the JSON report");
        cmd->add_flag("--text", as_text, "emit the text summary (default)");
        cmd->add_option("--field", field_override, "override the base field (Q | Qi)");
        cmd->add_option("--instantiate", instantiations,
                        "substitute name=rational for a parameter");
    };

    CLI::App* c_check = app.add_subcommand("check", "run law residuals");
    add_common(c_check);
    c_check->add_option("--law", laws, "law identifiers (default: kind bundle)");
    c_check->add_option("--degree", degree, "degree cap override");

    CLI::App* c_twist = app.add_subcommand("twist", "twist by a morphism");
    add_common(c_twist);
    c_twist->add_option("--morphism", morphism_path, "morphism matrix JSON")->required();
    c_twist->add_flag("--weak", weak, "skip the multiplicativity guard");
    c_twist->add_option("--out", out_path, "write the twisted spec here");

    CLI::App* c_solve = app.add_subcommand("solve-poisson", "Hom-Leibniz solver");
    add_common(c_solve);

    CLI::App* c_moyal = app.add_subcommand("moyal", "Moyal harnesses");
    add_common(c_moyal);
    c_moyal->add_option("--harness", harness, "assoc | intertwine | families");
    c_moyal->add_option("--order", order, "truncation order override");
    c_moyal->add_option("--degree", degree, "degree cap override");

    CLI11_PARSE(app, argc, argv);

    try {
        json raw = read_json_file(spec_path);
        if (!field_override.empty()) raw["field"] = field_override;
        cli::SpecFile spec = cli::load_spec(raw);
        auto inst = parse_instantiations(instantiations);
        if (c_check->parsed()) return run_check(spec, raw, laws, inst, degree, as_json);
        if (c_twist->parsed()) return run_twist(spec, raw, morphism_path, weak, out_path, as_json);
        if (c_solve->parsed()) return run_solve(spec, raw, inst, as_json);
        if (c_moyal->parsed()) return run_moyal(spec, raw, harness, order, degree, as_json);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
