#ifndef HOMALG_HOMCLI_HPP
#define HOMALG_HOMCLI_HPP

#include <json.hpp>

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "homalg/homsolve.hpp"
#include "homalg/moyal.hpp"

namespace homalg::cli {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// spec files

/// Parsed input file: exactly one of the payload members is populated,
/// according to kind.
struct SpecFile {
    std::string kind;  // hom_algebra | hom_coalgebra | hom_bialgebra |
                       // poly_poisson | moyal_config | deformation
    Context ctx;
    std::optional<Structure> structure;
    std::optional<RingContext> ring;
    std::optional<Bivector> bivector;
    std::optional<PolyEndo> endo;
    std::optional<MoyalConfig> moyal;
    std::vector<std::pair<std::string, PolyEndo>> families;
    std::optional<Deformation> deformation;
    unsigned degree_cap = 2;
};

namespace cli_detail {

inline void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                           const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw SchemaError("unknown field '" + it.key() + "' in " + where);
}

inline Context parse_context(const json& spec) {
    Context ctx;
    if (spec.contains("params")) {
        if (!spec["params"].is_array()) throw SchemaError("params must be an array");
        for (const auto& p : spec["params"]) {
            if (!p.is_string()) throw SchemaError("parameter names must be strings");
            ctx.params.push_back(p.get<std::string>());
        }
    }
    std::string field = spec.value("field", "Q");
    if (field == "Q(i)" || field == "Qi")
        ctx.gaussian = true;
    else if (field != "Q")
        throw SchemaError("field must be Q or Q(i)");
    return ctx;
}

/// Entries [i, j, k, "coeff"], 1-based, into a rank-3 tensor.
inline Tensor3 parse_tensor(const json& arr, size_t dim, const Context& ctx,
                            const std::string& name) {
    Tensor3 t(dim, ctx.nparams());
    if (!arr.is_array()) throw SchemaError(name + " must be an array of entries");
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 4)
            throw SchemaError(name + " entries must be [i, j, k, coeff]");
        long i = e[0].get<long>(), j = e[1].get<long>(), k = e[2].get<long>();
        if (i < 1 || j < 1 || k < 1 || size_t(i) > dim || size_t(j) > dim || size_t(k) > dim)
            throw SchemaError(name + " index out of range");
        t.C[i - 1][j - 1][k - 1] = parse_coeff(e[3].get<std::string>(), ctx);
    }
    return t;
}

inline LinMap parse_linmap(const json& arr, size_t dim, const Context& ctx,
                           const std::string& name) {
    LinMap m(dim, ctx.nparams());
    if (!arr.is_array()) throw SchemaError(name + " must be an array of entries");
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 3)
            throw SchemaError(name + " entries must be [i, s, coeff]");
        long i = e[0].get<long>(), s = e[1].get<long>();
        if (i < 1 || s < 1 || size_t(i) > dim || size_t(s) > dim)
            throw SchemaError(name + " index out of range");
        m.A[i - 1][s - 1] = parse_coeff(e[2].get<std::string>(), ctx);
    }
    return m;
}

inline std::vector<CoeffExpr> parse_vector(const json& arr, size_t dim, const Context& ctx,
                                           const std::string& name) {
    if (!arr.is_array() || arr.size() != dim)
        throw SchemaError(name + " must be an array of length dim");
    std::vector<CoeffExpr> v;
    for (const auto& e : arr) v.push_back(parse_coeff(e.get<std::string>(), ctx));
    return v;
}

inline Structure parse_structure(const json& payload, const Context& ctx) {
    reject_unknown(payload,
                   {"dim", "mult", "bracket", "alpha", "beta", "coproduct", "cobracket",
                    "unit", "counit", "flags"},
                   "payload");
    if (!payload.contains("dim")) throw SchemaError("payload.dim is required");
    size_t dim = payload["dim"].get<size_t>();
    Structure S;
    S.ctx = ctx;
    S.dim = dim;
    if (payload.contains("mult")) S.mult = parse_tensor(payload["mult"], dim, ctx, "mult");
    if (payload.contains("bracket"))
        S.bracket = parse_tensor(payload["bracket"], dim, ctx, "bracket");
    if (payload.contains("coproduct"))
        S.coproduct = parse_tensor(payload["coproduct"], dim, ctx, "coproduct");
    if (payload.contains("cobracket"))
        S.cobracket = parse_tensor(payload["cobracket"], dim, ctx, "cobracket");
    S.alpha = payload.contains("alpha") ? parse_linmap(payload["alpha"], dim, ctx, "alpha")
                                        : LinMap::identity(dim, ctx.nparams());
    if (payload.contains("beta")) S.beta = parse_linmap(payload["beta"], dim, ctx, "beta");
    if (payload.contains("unit")) S.unit = parse_vector(payload["unit"], dim, ctx, "unit");
    if (payload.contains("counit"))
        S.counit = parse_vector(payload["counit"], dim, ctx, "counit");
    if (payload.contains("flags"))
        for (const auto& f : payload["flags"]) S.flags.insert(f.get<std::string>());
    return S;
}

inline RingContext parse_ring(const json& payload, const Context& ctx) {
    if (!payload.contains("vars")) throw SchemaError("payload.vars is required");
    RingContext ring{ctx, {}};
    for (const auto& v : payload["vars"]) ring.vars.push_back(v.get<std::string>());
    if (ring.vars.empty()) throw SchemaError("at least one ring variable required");
    return ring;
}

inline PolyEndo parse_endo(const json& arr, const RingContext& ring) {
    if (!arr.is_array() || arr.size() != ring.nvars())
        throw SchemaError("endo must list one image per variable");
    PolyEndo e{ring, {}};
    for (const auto& s : arr) e.images.push_back(parse_rpoly(s.get<std::string>(), ring));
    return e;
}

}  // namespace cli_detail

inline SpecFile load_spec(const json& spec) {
    using namespace cli_detail;
    reject_unknown(spec, {"kind", "field", "params", "payload"}, "spec");
    if (!spec.contains("kind")) throw SchemaError("kind is required");
    SpecFile out;
    out.kind = spec["kind"].get<std::string>();
    out.ctx = parse_context(spec);
    if (!spec.contains("payload") || !spec["payload"].is_object())
        throw SchemaError("payload object is required");
    const json& payload = spec["payload"];

    if (out.kind == "hom_algebra" || out.kind == "hom_coalgebra" ||
        out.kind == "hom_bialgebra") {
        out.structure = parse_structure(payload, out.ctx);
    } else if (out.kind == "poly_poisson") {
        reject_unknown(payload, {"vars", "bivector", "endo", "degree_cap"}, "payload");
        out.ring = parse_ring(payload, out.ctx);
        size_t n = out.ring->nvars(), np = out.ctx.nparams();
        if (payload.contains("bivector")) {
            Bivector bv{*out.ring, {}};
            const json& m = payload["bivector"];
            if (!m.is_array() || m.size() != n) throw SchemaError("bivector must be n x n");
            for (const auto& row : m) {
                if (!row.is_array() || row.size() != n)
                    throw SchemaError("bivector must be n x n");
                std::vector<RPoly> r;
                for (const auto& s : row)
                    r.push_back(parse_rpoly(s.get<std::string>(), *out.ring));
                bv.pi.push_back(std::move(r));
            }
            bv.validate();
            out.bivector = std::move(bv);
        }
        if (payload.contains("endo")) out.endo = parse_endo(payload["endo"], *out.ring);
        out.degree_cap = payload.value("degree_cap", 2u);
        (void)np;
    } else if (out.kind == "moyal_config") {
        reject_unknown(payload, {"vars", "sigma", "order", "degree_cap", "endo", "families"},
                       "payload");
        MoyalConfig cfg;
        cfg.ring = parse_ring(payload, out.ctx);
        size_t n = cfg.ring.nvars();
        if (!payload.contains("sigma")) throw SchemaError("payload.sigma is required");
        const json& sg = payload["sigma"];
        if (!sg.is_array() || sg.size() != n) throw SchemaError("sigma must be n x n");
        for (const auto& row : sg) {
            if (!row.is_array() || row.size() != n) throw SchemaError("sigma must be n x n");
            std::vector<Rat> r;
            for (const auto& s : row) r.emplace_back(s.get<std::string>());
            cfg.sigma.push_back(std::move(r));
        }
        cfg.order = payload.value("order", 4u);
        cfg.degree_cap = payload.value("degree_cap", 5u);
        out.ring = cfg.ring;
        if (payload.contains("endo")) out.endo = parse_endo(payload["endo"], cfg.ring);
        if (payload.contains("families"))
            for (const auto& f : payload["families"]) {
                reject_unknown(f, {"name", "endo"}, "family");
                out.families.emplace_back(f["name"].get<std::string>(),
                                          parse_endo(f["endo"], cfg.ring));
            }
        out.moyal = std::move(cfg);
    } else if (out.kind == "deformation") {
        reject_unknown(payload, {"dim", "alpha", "cochains", "order"}, "payload");
        size_t dim = payload["dim"].get<size_t>();
        Deformation D;
        D.base.ctx = out.ctx;
        D.base.dim = dim;
        D.base.alpha = payload.contains("alpha")
                           ? cli_detail::parse_linmap(payload["alpha"], dim, out.ctx, "alpha")
                           : LinMap::identity(dim, out.ctx.nparams());
        if (!payload.contains("cochains") || !payload["cochains"].is_array() ||
            payload["cochains"].empty())
            throw SchemaError("cochains must be a nonempty array of tables");
        for (const auto& t : payload["cochains"])
            D.cochains.push_back(cli_detail::parse_tensor(t, dim, out.ctx, "cochain"));
        D.base.mult = D.cochains[0];
        D.order = payload.value("order", unsigned(D.cochains.size() - 1));
        out.deformation = std::move(D);
    } else {
        throw SchemaError("unknown kind '" + out.kind + "'");
    }
    return out;
}

// ---------------------------------------------------------------------------
// reports

/// FNV-1a over the canonical dump; stable across runs by construction.
inline std::string digest(const std::string& text) {
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

/// holds / fails / conditional by inspecting the residual entries: entries
/// free of parameters witness outright failure; purely parametric entries
/// leave the law conditional on the parameters.
inline std::string residual_status(const Residual& r) {
    if (r.empty()) return "holds";
    for (const auto& [idx, v] : r.entries) {
        bool parametric = false;
        for (size_t p = 0; p < v.num.nvars; ++p)
            if (v.num.depends_on(p) || v.den.depends_on(p)) parametric = true;
        if (!parametric) return "fails";
    }
    return "conditional";
}

inline json residual_to_json(const Residual& r, const Context& ctx, size_t max_entries = 16) {
    json entries = json::array();
    size_t count = 0;
    for (const auto& [idx, v] : r.entries) {
        if (count++ >= max_entries) break;
        entries.push_back({{"index", idx}, {"value", to_string(v, ctx)}});
    }
    return json{{"law", r.law},
                {"status", residual_status(r)},
                {"nonzero_entries", r.entries.size()},
                {"witnesses", entries}};
}

/// Worst status across laws: fails > conditional > holds.
inline std::string combine_status(const std::vector<std::string>& statuses) {
    std::string out = "holds";
    for (const auto& s : statuses) {
        if (s == "fails") return "fails";
        if (s == "conditional") out = "conditional";
    }
    return out;
}

inline int status_exit_code(const std::string& s) {
    if (s == "holds") return 0;
    if (s == "fails") return 1;
    return 2;
}

/// Default law bundle for a structure kind, driven by the present tables.
inline std::vector<std::string> default_laws(const SpecFile& spec) {
    std::vector<std::string> laws;
    const Structure& S = *spec.structure;
    if (spec.kind == "hom_algebra") {
        if (S.mult) laws.push_back("hom_assoc");
        if (S.bracket) {
            laws.push_back("antisymmetry");
            laws.push_back("hom_jacobi");
        }
        if (S.mult && S.bracket) {
            laws.push_back("commutativity");
            laws.push_back("hom_leibniz");
        }
        if (S.mult && S.unit) laws.push_back("unital");
    } else if (spec.kind == "hom_coalgebra") {
        if (S.coproduct) laws.push_back("hom_coassoc");
        if (S.coproduct && S.counit) laws.push_back("counit");
        if (S.cobracket) {
            laws.push_back("cobracket_antisymmetry");
            laws.push_back("hom_cojacobi");
        }
        if (S.coproduct && S.cobracket) {
            laws.push_back("cocommutativity");
            laws.push_back("hom_coleibniz");
        }
    } else if (spec.kind == "hom_bialgebra") {
        if (S.mult) laws.push_back("hom_assoc");
        if (S.coproduct) laws.push_back("hom_coassoc");
        if (S.mult && S.coproduct) laws.push_back("bialg_compat");
        if (S.unit && S.counit) laws.push_back("bialg_unit");
        if (S.bracket && S.cobracket) laws.push_back("lie_bialg_compat");
        if (S.mult && S.bracket && S.coproduct) laws.push_back("poisson_bialg");
        if (S.mult && S.coproduct && S.cobracket) laws.push_back("copoisson_bialg");
    }
    return laws;
}

/// Substitute rational values for named parameters in every table of S.
inline Structure instantiate(const Structure& S,
                             const std::map<std::string, GRat>& values) {
    std::map<size_t, GRat> point;
    for (const auto& [name, v] : values) {
        int idx = S.ctx.param_index(name);
        if (idx < 0) throw SchemaError("unknown parameter '" + name + "' in --instantiate");
        point.emplace(size_t(idx), v);
    }
    Structure out = S;
    auto sub_tensor = [&](std::optional<Tensor3>& t) {
        if (!t) return;
        for (auto& plane : t->C)
            for (auto& row : plane)
                for (auto& v : row) v = v.eval_partial(point);
    };
    sub_tensor(out.mult);
    sub_tensor(out.bracket);
    sub_tensor(out.coproduct);
    sub_tensor(out.cobracket);
    auto sub_map = [&](LinMap& m) {
        for (auto& row : m.A)
            for (auto& v : row) v = v.eval_partial(point);
    };
    sub_map(out.alpha);
    if (out.beta) sub_map(*out.beta);
    auto sub_vec = [&](std::optional<std::vector<CoeffExpr>>& v) {
        if (!v) return;
        for (auto& x : *v) x = x.eval_partial(point);
    };
    sub_vec(out.unit);
    sub_vec(out.counit);
    return out;
}

// ---------------------------------------------------------------------------
// serialization back to spec JSON (for twist outputs)

inline json tensor_to_json(const Tensor3& t, const Context& ctx) {
    json arr = json::array();
    for (size_t i = 0; i < t.dim; ++i)
        for (size_t j = 0; j < t.dim; ++j)
            for (size_t k = 0; k < t.dim; ++k)
                if (!t.C[i][j][k].is_zero())
                    arr.push_back({i + 1, j + 1, k + 1, to_string(t.C[i][j][k], ctx)});
    return arr;
}

inline json linmap_to_json(const LinMap& m, const Context& ctx) {
    json arr = json::array();
    for (size_t i = 0; i < m.dim; ++i)
        for (size_t s = 0; s < m.dim; ++s)
            if (!m.A[i][s].is_zero())
                arr.push_back({i + 1, s + 1, to_string(m.A[i][s], ctx)});
    return arr;
}

inline json structure_to_spec(const Structure& S, const std::string& kind) {
    json payload;
    payload["dim"] = S.dim;
    if (S.mult) payload["mult"] = tensor_to_json(*S.mult, S.ctx);
    if (S.bracket) payload["bracket"] = tensor_to_json(*S.bracket, S.ctx);
    payload["alpha"] = linmap_to_json(S.alpha, S.ctx);
    if (S.beta) payload["beta"] = linmap_to_json(*S.beta, S.ctx);
    if (S.coproduct) payload["coproduct"] = tensor_to_json(*S.coproduct, S.ctx);
    if (S.cobracket) payload["cobracket"] = tensor_to_json(*S.cobracket, S.ctx);
    auto vec_to_json = [&](const std::vector<CoeffExpr>& v) {
        json arr = json::array();
        for (const auto& x : v) arr.push_back(to_string(x, S.ctx));
        return arr;
    };
    if (S.unit) payload["unit"] = vec_to_json(*S.unit);
    if (S.counit) payload["counit"] = vec_to_json(*S.counit);
    if (!S.flags.empty()) payload["flags"] = S.flags;
    json spec;
    spec["kind"] = kind;
    spec["field"] = S.ctx.gaussian ? "Q(i)" : "Q";
    spec["params"] = S.ctx.params;
    spec["payload"] = payload;
    return spec;
}

inline json solution_space_to_json(const PoissonSearch& ps) {
    const Context& base = ps.ext_ctx;
    json particular = json::array();
    for (size_t c = 0; c < ps.space.particular.size(); ++c)
        if (!ps.space.particular[c].is_zero())
            particular.push_back({{"unknown", ps.system.unknown_name(c)},
                                  {"value", to_string(ps.space.particular[c], base)}});
    json basis = json::array();
    for (size_t r = 0; r < ps.space.basis.size(); ++r) {
        json dir = json::array();
        for (size_t c = 0; c < ps.space.basis[r].size(); ++c)
            if (!ps.space.basis[r][c].is_zero())
                dir.push_back({{"unknown", ps.system.unknown_name(c)},
                               {"value", to_string(ps.space.basis[r][c], base)}});
        basis.push_back({{"param", ps.space.free_params[r]}, {"direction", dir}});
    }
    json constraints = json::array();
    for (const auto& c : ps.constraints) constraints.push_back(to_string(c, ps.ext_ctx));
    return json{{"unknowns", ps.system.unknowns()},
                {"rows", ps.system.rows.size()},
                {"dimension", ps.space.dimension()},
                {"particular", particular},
                {"basis", basis},
                {"constraints", constraints}};
}

}  // namespace homalg::cli

#endif
