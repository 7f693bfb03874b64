#ifndef HOMALG_POLYPOIS_HPP
#define HOMALG_POLYPOIS_HPP

#include <algorithm>
#include <optional>
#include <tuple>
#include <vector>

#include "homalg/fdhom.hpp"
#include "homalg/rpoly.hpp"

namespace homalg {

/// Antisymmetric matrix of ring polynomials defining the biderivation bracket
/// {f,g} = sum_{i,j} pi_{ij} d_i f d_j g.
struct Bivector {
    RingContext ring;
    std::vector<std::vector<RPoly>> pi;

    size_t nvars() const { return ring.nvars(); }

    /// Throws unless pi_{ij} = -pi_{ji} and pi_{ii} = 0.
    void validate() const {
        size_t n = nvars();
        if (pi.size() != n) throw SchemaError("bivector row count != nvars");
        for (size_t i = 0; i < n; ++i) {
            if (pi[i].size() != n) throw SchemaError("bivector is not square");
            for (size_t j = 0; j < n; ++j)
                if (!(pi[i][j] + pi[j][i]).is_zero())
                    throw NotAntisymmetric("bivector matrix is not antisymmetric");
        }
    }
};

/// Ring endomorphism given by generator images alpha(x_i) = Gamma_i.
struct PolyEndo {
    RingContext ring;
    std::vector<RPoly> images;

    static PolyEndo identity(const RingContext& r) {
        PolyEndo e{r, {}};
        for (size_t v = 0; v < r.nvars(); ++v)
            e.images.push_back(RPoly::variable(v, r.nvars(), r.coeff.nparams()));
        return e;
    }
};

inline RPoly pbracket(const RPoly& f, const RPoly& g, const Bivector& bv) {
    size_t n = bv.nvars();
    RPoly r(f.nvars, f.nparams);
    for (size_t i = 0; i < n; ++i) {
        RPoly df = f.derivative(i);
        if (df.is_zero()) continue;
        for (size_t j = 0; j < n; ++j) {
            if (bv.pi[i][j].is_zero()) continue;
            RPoly dg = g.derivative(j);
            if (dg.is_zero()) continue;
            r += bv.pi[i][j] * df * dg;
        }
    }
    return r;
}

/// Jacobi cyclic sums on generator triples i < j < k; all zero iff Poisson.
inline std::vector<std::tuple<size_t, size_t, size_t, RPoly>> jacobi_residuals(
    const Bivector& bv) {
    bv.validate();
    size_t n = bv.nvars(), np = bv.ring.coeff.nparams();
    std::vector<std::tuple<size_t, size_t, size_t, RPoly>> out;
    auto xv = [&](size_t v) { return RPoly::variable(v, n, np); };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                RPoly r = pbracket(xv(i), pbracket(xv(j), xv(k), bv), bv) +
                          pbracket(xv(j), pbracket(xv(k), xv(i), bv), bv) +
                          pbracket(xv(k), pbracket(xv(i), xv(j), bv), bv);
                out.emplace_back(i, j, k, std::move(r));
            }
    return out;
}

inline RPoly apply_endo(const PolyEndo& e, const RPoly& f) { return f.substitute(e.images); }

/// Composition acting as first inner, then outer: (outer . inner)(x_i).
inline PolyEndo compose(const PolyEndo& outer, const PolyEndo& inner) {
    PolyEndo r{outer.ring, {}};
    for (const auto& img : inner.images) r.images.push_back(apply_endo(outer, img));
    return r;
}

/// Entries alpha({x_i,x_j}) - {alpha(x_i), alpha(x_j)} for i < j.
inline std::vector<std::tuple<size_t, size_t, RPoly>> bracket_morphism_residual(
    const PolyEndo& e, const Bivector& bv) {
    size_t n = bv.nvars(), np = bv.ring.coeff.nparams();
    std::vector<std::tuple<size_t, size_t, RPoly>> out;
    auto xv = [&](size_t v) { return RPoly::variable(v, n, np); };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            RPoly r = apply_endo(e, pbracket(xv(i), xv(j), bv)) -
                      pbracket(e.images[i], e.images[j], bv);
            out.emplace_back(i, j, std::move(r));
        }
    return out;
}

/// Two-variable Jacobian condition: d_x G1 d_y G2 - d_y G1 d_x G2 - 1.
inline RPoly eq_alpha_residual(const PolyEndo& e) {
    if (e.ring.nvars() != 2) throw SchemaError("eq_alpha requires exactly 2 variables");
    const RPoly& g1 = e.images[0];
    const RPoly& g2 = e.images[1];
    return g1.derivative(0) * g2.derivative(1) - g1.derivative(1) * g2.derivative(0) -
           RPoly::one(2, g1.nparams);
}

/// Degree-1 specialization a10 b01 - a01 b10 - 1 (constant terms ignored).
inline CoeffExpr degree1_constraint(const PolyEndo& e) {
    if (e.ring.nvars() != 2) throw SchemaError("degree1_constraint requires 2 variables");
    for (const auto& img : e.images)
        if (img.total_degree() > 1) throw DegreeTooHigh("image has total degree > 1");
    size_t np = e.images[0].nparams;
    auto coeff_of = [&](const RPoly& p, unsigned ex, unsigned ey) {
        Exp key{ex, ey};
        auto it = p.terms.find(key);
        return it == p.terms.end() ? CoeffExpr::zero(np) : it->second;
    };
    CoeffExpr a10 = coeff_of(e.images[0], 1, 0), a01 = coeff_of(e.images[0], 0, 1);
    CoeffExpr b10 = coeff_of(e.images[1], 1, 0), b01 = coeff_of(e.images[1], 0, 1);
    return a10 * b01 - a01 * b10 - CoeffExpr::one(np);
}

// ---------------------------------------------------------------------------
// finite-dimensional truncation bridge

/// Exponent vectors of total degree <= cap, ascending grlex (constant first).
inline std::vector<Exp> capped_basis(size_t nvars, unsigned cap) {
    std::vector<Exp> out;
    Exp cur(nvars, 0);
    // enumerate all exponent tuples with sum <= cap
    auto rec = [&](auto&& self, size_t v, unsigned left) -> void {
        if (v == nvars) {
            out.push_back(cur);
            return;
        }
        for (unsigned d = 0; d <= left; ++d) {
            cur[v] = d;
            self(self, v + 1, left - d);
        }
        cur[v] = 0;
    };
    rec(rec, 0, cap);
    std::sort(out.begin(), out.end(), [](const Exp& a, const Exp& b) {
        GrlexGreater gt;
        return gt(b, a);  // ascending
    });
    return out;
}

/// A polynomial Poisson structure projected onto the monomials of total
/// degree <= cap. Terms that leave the cap are dropped and flagged.
struct CappedStructure {
    Structure S;
    std::vector<Exp> basis;
    unsigned cap = 0;
    bool mult_overflow = false;
    bool bracket_overflow = false;
    bool alpha_overflow = false;
};

inline CappedStructure to_fdhom(const RingContext& ring, const std::optional<Bivector>& bv,
                                const std::optional<PolyEndo>& alpha, unsigned cap) {
    size_t nv = ring.nvars(), np = ring.coeff.nparams();
    CappedStructure out;
    out.cap = cap;
    out.basis = capped_basis(nv, cap);
    size_t dim = out.basis.size();
    std::map<Exp, size_t, GrlexGreater> index;
    for (size_t k = 0; k < dim; ++k) index.emplace(out.basis[k], k);

    out.S.ctx = ring.coeff;
    out.S.dim = dim;

    auto project = [&](const RPoly& p, std::vector<CoeffExpr>& row, bool& overflow) {
        for (const auto& [e, c] : p.terms) {
            auto it = index.find(e);
            if (it == index.end())
                overflow = true;
            else
                row[it->second] += c;
        }
    };

    Tensor3 mult(dim, np);
    for (size_t a = 0; a < dim; ++a)
        for (size_t b = 0; b < dim; ++b) {
            Exp e(nv);
            for (size_t v = 0; v < nv; ++v) e[v] = out.basis[a][v] + out.basis[b][v];
            auto it = index.find(e);
            if (it == index.end())
                out.mult_overflow = true;
            else
                mult.C[a][b][it->second] = CoeffExpr::one(np);
        }
    out.S.mult = std::move(mult);

    if (bv) {
        bv->validate();
        Tensor3 br(dim, np);
        for (size_t a = 0; a < dim; ++a) {
            RPoly pa = RPoly::monomial(out.basis[a], CoeffExpr::one(np), nv);
            for (size_t b = 0; b < dim; ++b) {
                RPoly pb = RPoly::monomial(out.basis[b], CoeffExpr::one(np), nv);
                project(pbracket(pa, pb, *bv), br.C[a][b], out.bracket_overflow);
            }
        }
        out.S.bracket = std::move(br);
        out.S.flags.insert("bracket_antisymmetric");
    }

    LinMap A(dim, np);
    if (alpha) {
        for (size_t a = 0; a < dim; ++a) {
            RPoly pa = RPoly::monomial(out.basis[a], CoeffExpr::one(np), nv);
            project(apply_endo(*alpha, pa), A.A[a], out.alpha_overflow);
        }
    } else {
        A = LinMap::identity(dim, np);
    }
    out.S.alpha = std::move(A);
    return out;
}

/// Keep only residual entries whose input monomial degrees sum within the cap
/// (the capped tables are faithful exactly there).
inline Residual restrict_to_cap(const Residual& r, const CappedStructure& cs,
                                size_t ninputs) {
    Residual out{r.law, r.arity, {}};
    for (const auto& [idx, v] : r.entries) {
        unsigned deg = 0;
        for (size_t k = 0; k < ninputs; ++k) deg += exp_degree(cs.basis[idx[k] - 1]);
        if (deg <= cs.cap) out.entries.emplace(idx, v);
    }
    return out;
}

/// The Hom-Poisson bundle on the capped structure, restricted to in-cap
/// input triples (pairs for the arity-2 laws).
inline std::vector<Residual> capped_poisson_bundle(const CappedStructure& cs) {
    std::vector<Residual> out;
    for (const auto& r : poisson_bundle(cs.S))
        out.push_back(restrict_to_cap(r, cs, r.arity == 3 ? 2 : 3));
    return out;
}

}  // namespace homalg

#endif
