#pragma once

// Shared fixture builders for the test suites: the worked examples plus a
// seeded random-table generator used by the property-based checks.

#include <random>
#include <string>

#include "homalg/homcli.hpp"

namespace builders {

using namespace homalg;

inline CoeffExpr pc(const std::string& s, const Context& ctx) { return parse_coeff(s, ctx); }

/// 3-dim algebra over Q(a,b): e1e1 = a e1, e1e2 = e2e1 = e2e2 = a e2,
/// e1e3 = e3e1 = e2e3 = b e3, alpha = diag(a,a,b).
inline Structure param_algebra3(bool id_alpha = false) {
    Context ctx{{"a", "b"}, false};
    Structure S;
    S.ctx = ctx;
    S.dim = 3;
    Tensor3 C(3, 2);
    C.C[0][0][0] = pc("a", ctx);
    C.C[0][1][1] = pc("a", ctx);
    C.C[1][0][1] = pc("a", ctx);
    C.C[0][2][2] = pc("b", ctx);
    C.C[2][0][2] = pc("b", ctx);
    C.C[1][1][1] = pc("a", ctx);
    C.C[1][2][2] = pc("b", ctx);
    S.mult = C;
    if (id_alpha) {
        S.alpha = LinMap::identity(3, 2);
    } else {
        S.alpha = LinMap(3, 2);
        S.alpha.A[0][0] = pc("a", ctx);
        S.alpha.A[1][1] = pc("a", ctx);
        S.alpha.A[2][2] = pc("b", ctx);
    }
    return S;
}

/// Jackson sl2 over Q(t).
inline Structure jackson_sl2(bool id_alpha = false) {
    Context ctx{{"t"}, false};
    Structure S;
    S.ctx = ctx;
    S.dim = 3;
    Tensor3 B(3, 1);
    B.C[0][1][1] = pc("2", ctx);
    B.C[1][0][1] = pc("-2", ctx);
    B.C[0][2][2] = pc("-2*(1+t)", ctx);
    B.C[2][0][2] = pc("2*(1+t)", ctx);
    B.C[1][2][0] = pc("1+t/2", ctx);
    B.C[2][1][0] = pc("-(1+t/2)", ctx);
    S.bracket = B;
    if (id_alpha) {
        S.alpha = LinMap::identity(3, 1);
    } else {
        S.alpha = LinMap(3, 1);
        S.alpha.A[0][0] = pc("1", ctx);
        S.alpha.A[1][1] = pc("(2+t)/(2*(1+t))", ctx);
        S.alpha.A[2][2] = pc("1+t/2", ctx);
    }
    S.flags.insert("bracket_antisymmetric");
    return S;
}

/// Classical sl2 with basis (e, f, h) over Q(lambda, mu, nu).
inline Structure sl2() {
    Context ctx{{"lambda", "mu", "nu"}, false};
    Structure S;
    S.ctx = ctx;
    S.dim = 3;
    Tensor3 B(3, 3);
    B.C[2][0][0] = pc("2", ctx);
    B.C[0][2][0] = pc("-2", ctx);
    B.C[2][1][1] = pc("-2", ctx);
    B.C[1][2][1] = pc("2", ctx);
    B.C[0][1][2] = pc("1", ctx);
    B.C[1][0][2] = pc("-1", ctx);
    S.bracket = B;
    S.alpha = LinMap::identity(3, 3);
    S.flags.insert("bracket_antisymmetric");
    return S;
}

/// The three Lie-algebra-morphism families of sl2, rows = images of (e, f, h).
inline LinMap sl2_twist(int family, const Context& ctx) {
    LinMap m(3, ctx.nparams());
    auto row = [&](size_t i, const std::string& a, const std::string& b,
                   const std::string& c) {
        m.A[i][0] = pc(a, ctx);
        m.A[i][1] = pc(b, ctx);
        m.A[i][2] = pc(c, ctx);
    };
    switch (family) {
        case 1:
            row(0, "lambda", "0", "0");
            row(1, "-lambda*mu^2", "1/lambda", "mu");
            row(2, "-2*lambda*mu", "0", "1");
            break;
        case 2:
            row(0, "-(lambda*mu^2)/4", "lambda", "(lambda*mu)/2");
            row(1, "1/lambda", "0", "0");
            row(2, "mu", "0", "-1");
            break;
        case 3:
            row(0, "(1/4)*lambda*(mu+1)^2", "-(1/4)*lambda*nu^2",
                "-(1/4)*lambda*(mu+1)*nu");
            row(1, "-(mu-1)^2/(lambda*nu^2)", "1/lambda", "(mu-1)/(lambda*nu)");
            row(2, "(1-mu^2)/nu", "nu", "mu");
            break;
        default:
            throw SchemaError("no such twist family");
    }
    return m;
}

/// Sklyanin bracket on Q(i)(k, lambda)[x0..x3].
inline Bivector sklyanin() {
    Context kc{{"k", "lambda"}, true};
    RingContext ring{kc, {"x0", "x1", "x2", "x3"}};
    Bivector bv{ring, {}};
    bv.pi.assign(4, std::vector<RPoly>(4, RPoly::zero(4, 2)));
    auto P = [&](const std::string& s) { return parse_rpoly(s, ring); };
    for (int i = 0; i < 4; ++i) {
        int i1 = (i + 1) % 4, i2 = (i + 2) % 4, i3 = (i + 3) % 4;
        std::string xi = "x" + std::to_string(i), xi1 = "x" + std::to_string(i1),
                    xi2 = "x" + std::to_string(i2), xi3 = "x" + std::to_string(i3);
        RPoly b1 = P("k^2*" + xi + "*" + xi1 + " - " + xi2 + "*" + xi3);
        bv.pi[i][i1] = bv.pi[i][i1] + b1;
        bv.pi[i1][i] = bv.pi[i1][i] - b1;
        if (i < 2) {
            RPoly b2 = P("k*(" + xi3 + "^2 - " + xi1 + "^2)");
            bv.pi[i][i2] = bv.pi[i][i2] + b2;
            bv.pi[i2][i] = bv.pi[i2][i] - b2;
        }
    }
    return bv;
}

/// Diagonal ring endomorphism x_v -> c_v * x_v on the Sklyanin ring.
inline PolyEndo diag_endo(const RingContext& ring, const std::vector<std::string>& cs) {
    PolyEndo e{ring, {}};
    for (size_t v = 0; v < ring.nvars(); ++v)
        e.images.push_back(parse_rpoly(cs[v] + "*" + ring.vars[v], ring));
    return e;
}

/// The 3-dim Hom-Lie algebra fed to the Hom-Leibniz solver, instantiated at
/// rational structure constants: [e1,e2] = c122 e2 + c123 e3,
/// [e1,e3] = c132 e2 + c133 e3, alpha = diag(0, b, b).
inline Structure solver3(long c122, long c123, long c132, long c133, long b) {
    Context ctx{{}, false};
    Structure S;
    S.ctx = ctx;
    S.dim = 3;
    auto q = [](long v) { return CoeffExpr::from_rat(Rat(v), 0); };
    Tensor3 B(3, 0);
    B.C[0][1][1] = q(c122);
    B.C[0][1][2] = q(c123);
    B.C[1][0][1] = q(-c122);
    B.C[1][0][2] = q(-c123);
    B.C[0][2][1] = q(c132);
    B.C[0][2][2] = q(c133);
    B.C[2][0][1] = q(-c132);
    B.C[2][0][2] = q(-c133);
    S.bracket = B;
    S.alpha = LinMap(3, 0);
    S.alpha.A[1][1] = q(b);
    S.alpha.A[2][2] = q(b);
    S.flags.insert("bracket_antisymmetric");
    return S;
}

/// Seeded random table over Q with small entries; alpha random as well.
inline Structure random_algebra(std::mt19937& rng, size_t dim, bool diagonal_alpha) {
    Structure S;
    S.ctx = Context{{}, false};
    S.dim = dim;
    std::uniform_int_distribution<int> num(-2, 2);
    auto q = [&]() { return CoeffExpr::from_rat(Rat(num(rng)), 0); };
    Tensor3 C(dim, 0);
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j)
            for (size_t k = 0; k < dim; ++k) C.C[i][j][k] = q();
    S.mult = std::move(C);
    S.alpha = LinMap(dim, 0);
    for (size_t i = 0; i < dim; ++i) {
        if (diagonal_alpha) {
            S.alpha.A[i][i] = q();
        } else {
            for (size_t s = 0; s < dim; ++s) S.alpha.A[i][s] = q();
        }
    }
    return S;
}

}  // namespace builders
