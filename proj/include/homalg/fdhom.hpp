#ifndef HOMALG_FDHOM_HPP
#define HOMALG_FDHOM_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "homalg/coeffexpr.hpp"

namespace homalg {

/// Rank-3 structure tensor. As a multiplication table, C[i][j][k] is the
/// coefficient of e_k in e_i * e_j; as a costructure tensor, D[i][j][k] is
/// the coefficient of e_i (x) e_j in Delta(e_k).
struct Tensor3 {
    size_t dim = 0;
    std::vector<std::vector<std::vector<CoeffExpr>>> C;

    Tensor3() = default;
    Tensor3(size_t n, size_t nparams)
        : dim(n),
          C(n, std::vector<std::vector<CoeffExpr>>(n, std::vector<CoeffExpr>(
                                                          n, CoeffExpr::zero(nparams)))) {}

    const CoeffExpr& at(size_t i, size_t j, size_t k) const { return C[i][j][k]; }
    CoeffExpr& at(size_t i, size_t j, size_t k) { return C[i][j][k]; }

    friend bool operator==(const Tensor3& a, const Tensor3& b) {
        return a.dim == b.dim && a.C == b.C;
    }
    friend bool operator!=(const Tensor3& a, const Tensor3& b) { return !(a == b); }
};

using MultTable = Tensor3;

/// Linear self-map: A[i][s] is the coefficient of e_s in alpha(e_i).
struct LinMap {
    size_t dim = 0;
    std::vector<std::vector<CoeffExpr>> A;

    LinMap() = default;
    LinMap(size_t n, size_t nparams)
        : dim(n), A(n, std::vector<CoeffExpr>(n, CoeffExpr::zero(nparams))) {}

    static LinMap identity(size_t n, size_t nparams) {
        LinMap m(n, nparams);
        for (size_t i = 0; i < n; ++i) m.A[i][i] = CoeffExpr::one(nparams);
        return m;
    }

    LinMap transpose() const {
        LinMap m(dim, 0);
        m.A = A;
        for (size_t i = 0; i < dim; ++i)
            for (size_t s = 0; s < dim; ++s) m.A[i][s] = A[s][i];
        return m;
    }

    friend bool operator==(const LinMap& a, const LinMap& b) {
        return a.dim == b.dim && a.A == b.A;
    }
    friend bool operator!=(const LinMap& a, const LinMap& b) { return !(a == b); }
};

/// Composition "first f, then g" as a table: (g.f)(e_i) = sum_k M[i][k] e_k.
inline LinMap compose(const LinMap& g, const LinMap& f) {
    size_t n = f.dim;
    size_t np = n ? f.A[0][0].nvars() : 0;
    LinMap m(n, np);
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            CoeffExpr acc = CoeffExpr::zero(np);
            for (size_t s = 0; s < n; ++s)
                if (!f.A[i][s].is_zero() && !g.A[s][k].is_zero())
                    acc += f.A[i][s] * g.A[s][k];
            m.A[i][k] = acc;
        }
    return m;
}

/// Post-compose a multiplication table with a linear map: (b . mu).
inline Tensor3 post_compose(const LinMap& b, const Tensor3& t) {
    size_t np = t.dim ? t.C[0][0][0].nvars() : 0;
    Tensor3 r(t.dim, np);
    for (size_t i = 0; i < t.dim; ++i)
        for (size_t j = 0; j < t.dim; ++j)
            for (size_t k = 0; k < t.dim; ++k) {
                CoeffExpr acc = CoeffExpr::zero(np);
                for (size_t s = 0; s < t.dim; ++s)
                    if (!t.C[i][j][s].is_zero() && !b.A[s][k].is_zero())
                        acc += t.C[i][j][s] * b.A[s][k];
                r.C[i][j][k] = acc;
            }
    return r;
}

/// Pre-compose a costructure tensor with a linear map: Delta . b.
inline Tensor3 pre_compose(const Tensor3& t, const LinMap& b) {
    size_t np = t.dim ? t.C[0][0][0].nvars() : 0;
    Tensor3 r(t.dim, np);
    for (size_t p = 0; p < t.dim; ++p)
        for (size_t q = 0; q < t.dim; ++q)
            for (size_t k = 0; k < t.dim; ++k) {
                CoeffExpr acc = CoeffExpr::zero(np);
                for (size_t s = 0; s < t.dim; ++s)
                    if (!b.A[k][s].is_zero() && !t.C[p][q][s].is_zero())
                        acc += b.A[k][s] * t.C[p][q][s];
                r.C[p][q][k] = acc;
            }
    return r;
}

/// Finite-dimensional Hom-structure: any subset of the tables may be present,
/// and each law names the tables it needs.
struct Structure {
    Context ctx;
    size_t dim = 0;
    std::optional<Tensor3> mult;
    std::optional<Tensor3> bracket;
    LinMap alpha;
    std::optional<LinMap> beta;  // second twist for Hom-(Lie-)bialgebras
    std::optional<Tensor3> coproduct;
    std::optional<Tensor3> cobracket;
    std::optional<std::vector<CoeffExpr>> unit;    // coordinates of eta(1)
    std::optional<std::vector<CoeffExpr>> counit;  // coordinates of epsilon
    std::set<std::string> flags;

    size_t np() const { return ctx.nparams(); }
    const LinMap& cotwist() const { return beta ? *beta : alpha; }
    CoeffExpr zero() const { return CoeffExpr::zero(np()); }
};

/// Sparse exact defect tensor of one law; empty iff the law holds identically.
/// Indices are 1-based in reports.
struct Residual {
    std::string law;
    size_t arity = 0;
    std::map<std::vector<int>, CoeffExpr> entries;

    bool empty() const { return entries.empty(); }
    size_t size() const { return entries.size(); }

    void add(std::vector<int> idx, const CoeffExpr& v) {
        if (!v.is_zero()) entries.emplace(std::move(idx), v);
    }

    /// Distinct entry values up to sign, in canonical form.
    std::vector<CoeffExpr> distinct_values() const {
        std::vector<CoeffExpr> vals;
        for (const auto& [idx, v] : entries) {
            bool seen = false;
            for (const auto& w : vals)
                if (w == v || w == -v) {
                    seen = true;
                    break;
                }
            if (!seen) vals.push_back(v);
        }
        return vals;
    }
};

namespace fdhom_detail {

inline const Tensor3& need(const std::optional<Tensor3>& t, const char* name) {
    if (!t) throw MissingTable(name);
    return *t;
}
inline const std::vector<CoeffExpr>& need(const std::optional<std::vector<CoeffExpr>>& v,
                                          const char* name) {
    if (!v) throw MissingTable(name);
    return *v;
}

}  // namespace fdhom_detail

// ---------------------------------------------------------------------------
// law residual engines

/// mu((e_i e_j), alpha(e_k)) - mu(alpha(e_i), (e_j e_k)), entry (i,j,k,s).
inline Residual hom_associator(const Structure& S) {
    const Tensor3& C = fdhom_detail::need(S.mult, "mult");
    const auto& A = S.alpha.A;
    size_t n = S.dim;
    Residual r{"hom_assoc", 4, {}};
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                for (size_t s = 0; s < n; ++s) {
                    CoeffExpr acc = S.zero();
                    for (size_t p = 0; p < n; ++p)
                        for (size_t q = 0; q < n; ++q) {
                            if (C.C[p][q][s].is_zero()) continue;
                            CoeffExpr w =
                                C.C[i][j][p] * A[k][q] - A[i][p] * C.C[j][k][q];
                            if (!w.is_zero()) acc += w * C.C[p][q][s];
                        }
                    r.add({int(i) + 1, int(j) + 1, int(k) + 1, int(s) + 1}, acc);
                }
    return r;
}

/// Antisymmetry defect of a rank-3 table, entry (i,j,k) for i <= j.
inline Residual antisymmetry_residual(const Tensor3& B, size_t nparams,
                                      const std::string& law = "antisymmetry") {
    Residual r{law, 3, {}};
    (void)nparams;
    for (size_t i = 0; i < B.dim; ++i)
        for (size_t j = i; j < B.dim; ++j)
            for (size_t k = 0; k < B.dim; ++k)
                r.add({int(i) + 1, int(j) + 1, int(k) + 1}, B.C[i][j][k] + B.C[j][i][k]);
    return r;
}

/// Cyclic sum [alpha(e_i), [e_j, e_k]] + cyc., entry (i,j,k,s).
inline Residual hom_jacobian(const Structure& S) {
    const Tensor3& B = fdhom_detail::need(S.bracket, "bracket");
    if (!antisymmetry_residual(B, S.np()).empty()) throw NotAntisymmetric();
    const auto& A = S.alpha.A;
    size_t n = S.dim;
    Residual r{"hom_jacobi", 4, {}};
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                for (size_t s = 0; s < n; ++s) {
                    CoeffExpr acc = S.zero();
                    for (size_t p = 0; p < n; ++p)
                        for (size_t q = 0; q < n; ++q) {
                            if (B.C[p][q][s].is_zero()) continue;
                            CoeffExpr w = A[i][p] * B.C[j][k][q] + A[j][p] * B.C[k][i][q] +
                                          A[k][p] * B.C[i][j][q];
                            if (!w.is_zero()) acc += w * B.C[p][q][s];
                        }
                    r.add({int(i) + 1, int(j) + 1, int(k) + 1, int(s) + 1}, acc);
                }
    return r;
}

/// {e_i e_j, alpha(e_k)} - alpha(e_i){e_j,e_k} - {e_i,e_k} alpha(e_j).
inline Residual hom_leibniz_residual(const Structure& S) {
    const Tensor3& C = fdhom_detail::need(S.mult, "mult");
    const Tensor3& B = fdhom_detail::need(S.bracket, "bracket");
    const auto& A = S.alpha.A;
    size_t n = S.dim;
    Residual r{"hom_leibniz", 4, {}};
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                for (size_t s = 0; s < n; ++s) {
                    CoeffExpr acc = S.zero();
                    for (size_t p = 0; p < n; ++p)
                        for (size_t q = 0; q < n; ++q) {
                            if (!B.C[p][q][s].is_zero())
                                acc += C.C[i][j][p] * A[k][q] * B.C[p][q][s];
                            if (!C.C[p][q][s].is_zero())
                                acc -= (A[i][p] * B.C[j][k][q] + B.C[i][k][p] * A[j][q]) *
                                       C.C[p][q][s];
                        }
                    r.add({int(i) + 1, int(j) + 1, int(k) + 1, int(s) + 1}, acc);
                }
    return r;
}

namespace fdhom_detail {

/// One associator component vector entry for basis triple (i,j,k).
inline CoeffExpr assoc_entry(const Tensor3& C, const std::vector<std::vector<CoeffExpr>>& A,
                             size_t i, size_t j, size_t k, size_t s, const CoeffExpr& zero) {
    size_t n = C.dim;
    CoeffExpr acc = zero;
    for (size_t p = 0; p < n; ++p)
        for (size_t q = 0; q < n; ++q) {
            if (C.C[p][q][s].is_zero()) continue;
            CoeffExpr w = C.C[i][j][p] * A[k][q] - A[i][p] * C.C[j][k][q];
            if (!w.is_zero()) acc += w * C.C[p][q][s];
        }
    return acc;
}

}  // namespace fdhom_detail

/// as(x,y,z) + as(z,y,x) on basis triples; empty iff the algebra is flexible.
inline Residual flexibility_residual(const Structure& S) {
    const Tensor3& C = fdhom_detail::need(S.mult, "mult");
    const auto& A = S.alpha.A;
    size_t n = S.dim;
    Residual r{"flexibility", 4, {}};
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = i; k < n; ++k)
                for (size_t s = 0; s < n; ++s)
                    r.add({int(i) + 1, int(j) + 1, int(k) + 1, int(s) + 1},
                          fdhom_detail::assoc_entry(C, A, i, j, k, s, S.zero()) +
                              fdhom_detail::assoc_entry(C, A, k, j, i, s, S.zero()));
    return r;
}

/// 3 as(x,y,z) = (xz)a(y) + (yz)a(x) - (yx)a(z) - (zx)a(y).
inline Residual one_op_residual(const Structure& S) {
    const Tensor3& C = fdhom_detail::need(S.mult, "mult");
    const auto& A = S.alpha.A;
    size_t n = S.dim;
    Residual r{"one_op", 4, {}};
    CoeffExpr three = CoeffExpr::from_rat(Rat(3), S.np());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                for (size_t s = 0; s < n; ++s) {
                    CoeffExpr acc =
                        three * fdhom_detail::assoc_entry(C, A, i, j, k, s, S.zero());
                    for (size_t p = 0; p < n; ++p)
                        for (size_t q = 0; q < n; ++q) {
                            if (C.C[p][q][s].is_zero()) continue;
                            CoeffExpr w = C.C[i][k][p] * A[j][q] + C.C[j][k][p] * A[i][q] -
                                          C.C[j][i][p] * A[k][q] - C.C[k][i][p] * A[j][q];
                            if (!w.is_zero()) acc -= w * C.C[p][q][s];
                        }
                    r.add({int(i) + 1, int(j) + 1, int(k) + 1, int(s) + 1}, acc);
                }
    return r;
}

/// beta . T - T . beta^(x2) for a multiplication-type table T.
inline Residual multiplicativity_residual(const Tensor3& T, const LinMap& beta, size_t nparams,
                                          const std::string& law = "multiplicativity") {
    size_t n = T.dim;
    const auto& Bm = beta.A;
    Residual r{law, 3, {}};
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t s = 0; s < n; ++s) {
                CoeffExpr acc = CoeffExpr::zero(nparams);
                for (size_t p = 0; p < n; ++p) {
                    if (!T.C[i][j][p].is_zero()) acc += T.C[i][j][p] * Bm[p][s];
                    for (size_t q = 0; q < n; ++q)
                        if (!T.C[p][q][s].is_zero())
                            acc -= Bm[i][p] * Bm[j][q] * T.C[p][q][s];
                }
                r.add({int(i) + 1, int(j) + 1, int(s) + 1}, acc);
            }
    return r;
}

/// (beta (x) beta) . Delta - Delta . beta for a costructure table.
inline Residual comorphism_residual(const Tensor3& D, const LinMap& beta, size_t nparams,
                                    const std::string& law = "comorphism") {
    size_t n = D.dim;
    const auto& Bm = beta.A;
    Residual r{law, 3, {}};
    for (size_t k = 0; k < n; ++k)
        for (size_t p = 0; p < n; ++p)
            for (size_t q = 0; q < n; ++q) {
                CoeffExpr acc = CoeffExpr::zero(nparams);
                for (size_t a = 0; a < n; ++a) {
                    for (size_t b = 0; b < n; ++b)
                        if (!D.C[a][b][k].is_zero()) acc += D.C[a][b][k] * Bm[a][p] * Bm[b][q];
                    if (!Bm[k][a].is_zero()) acc -= Bm[k][a] * D.C[p][q][a];
                }
                r.add({int(k) + 1, int(p) + 1, int(q) + 1}, acc);
            }
    return r;
}

/// mu(x, 1) = alpha(x) = mu(1, x); entries (side, i, s).
inline Residual unital_residual(const Structure& S) {
    const Tensor3& C = fdhom_detail::need(S.mult, "mult");
    const auto& u = fdhom_detail::need(S.unit, "unit");
    size_t n = S.dim;
    Residual r{"unital", 3, {}};
    for (size_t i = 0; i < n; ++i)
        for (size_t s = 0; s < n; ++s) {
            CoeffExpr right = S.zero(), left = S.zero();
            for (size_t j = 0; j < n; ++j) {
                if (u[j].is_zero()) continue;
                right += u[j] * C.C[i][j][s];
                left += u[j] * C.C[j][i][s];
            }
            r.add({1, int(i) + 1, int(s) + 1}, right - S.alpha.A[i][s]);
            r.add({2, int(i) + 1, int(s) + 1}, left - S.alpha.A[i][s]);
        }
    return r;
}

/// (alpha (x) Delta) Delta - (Delta (x) alpha) Delta, entry (p,q,r,k).
inline Residual hom_coassoc_residual(const Structure& S) {
    const Tensor3& D = fdhom_detail::need(S.coproduct, "coproduct");
    const auto& A = S.alpha.A;
    size_t n = S.dim;
    Residual r{"hom_coassoc", 4, {}};
    for (size_t k = 0; k < n; ++k)
        for (size_t p = 0; p < n; ++p)
            for (size_t q = 0; q < n; ++q)
                for (size_t t = 0; t < n; ++t) {
                    CoeffExpr acc = S.zero();
                    for (size_t a = 0; a < n; ++a)
                        for (size_t b = 0; b < n; ++b) {
                            if (D.C[a][b][k].is_zero()) continue;
                            CoeffExpr w = A[a][p] * D.C[q][t][b] - D.C[p][q][a] * A[b][t];
                            if (!w.is_zero()) acc += D.C[a][b][k] * w;
                        }
                    r.add({int(p) + 1, int(q) + 1, int(t) + 1, int(k) + 1}, acc);
                }
    return r;
}

/// (id (x) eps) Delta = alpha = (eps (x) id) Delta; entries (side, k, s).
inline Residual counit_residual(const Structure& S) {
    const Tensor3& D = fdhom_detail::need(S.coproduct, "coproduct");
    const auto& eps = fdhom_detail::need(S.counit, "counit");
    size_t n = S.dim;
    Residual r{"counit", 3, {}};
    for (size_t k = 0; k < n; ++k)
        for (size_t s = 0; s < n; ++s) {
            CoeffExpr right = S.zero(), left = S.zero();
            for (size_t b = 0; b < n; ++b) {
                if (eps[b].is_zero()) continue;
                right += D.C[s][b][k] * eps[b];
                left += eps[b] * D.C[b][s][k];
            }
            r.add({1, int(k) + 1, int(s) + 1}, right - S.alpha.A[k][s]);
            r.add({2, int(k) + 1, int(s) + 1}, left - S.alpha.A[k][s]);
        }
    return r;
}

/// (Id + sigma + sigma^2) (alpha (x) T) T with sigma(x1,x2,x3) = (x3,x1,x2).
inline Residual cojacobi_residual(const Tensor3& T, const LinMap& alpha, size_t nparams,
                                  const std::string& law) {
    size_t n = T.dim;
    const auto& A = alpha.A;
    Residual r{law, 4, {}};
    // U[p][q][t] for each k, then symmetrize cyclically
    for (size_t k = 0; k < n; ++k) {
        std::vector<std::vector<std::vector<CoeffExpr>>> U(
            n, std::vector<std::vector<CoeffExpr>>(n, std::vector<CoeffExpr>(
                                                          n, CoeffExpr::zero(nparams))));
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b) {
                if (T.C[a][b][k].is_zero()) continue;
                for (size_t p = 0; p < n; ++p) {
                    if (A[a][p].is_zero()) continue;
                    for (size_t q = 0; q < n; ++q)
                        for (size_t t = 0; t < n; ++t)
                            if (!T.C[q][t][b].is_zero())
                                U[p][q][t] += T.C[a][b][k] * A[a][p] * T.C[q][t][b];
                }
            }
        for (size_t p = 0; p < n; ++p)
            for (size_t q = 0; q < n; ++q)
                for (size_t t = 0; t < n; ++t)
                    r.add({int(p) + 1, int(q) + 1, int(t) + 1, int(k) + 1},
                          U[p][q][t] + U[q][t][p] + U[t][p][q]);
    }
    return r;
}

/// (Delta (x) alpha) delta = (alpha (x) delta) Delta + tau23 (delta (x) alpha) Delta.
inline Residual hom_coleibniz_residual(const Structure& S) {
    const Tensor3& D = fdhom_detail::need(S.coproduct, "coproduct");
    const Tensor3& d = fdhom_detail::need(S.cobracket, "cobracket");
    const auto& A = S.alpha.A;
    size_t n = S.dim;
    Residual r{"hom_coleibniz", 4, {}};
    for (size_t k = 0; k < n; ++k)
        for (size_t p = 0; p < n; ++p)
            for (size_t q = 0; q < n; ++q)
                for (size_t t = 0; t < n; ++t) {
                    CoeffExpr acc = S.zero();
                    for (size_t a = 0; a < n; ++a)
                        for (size_t b = 0; b < n; ++b) {
                            if (!d.C[a][b][k].is_zero())
                                acc += d.C[a][b][k] * D.C[p][q][a] * A[b][t];
                            if (!D.C[a][b][k].is_zero()) {
                                acc -= D.C[a][b][k] * A[a][p] * d.C[q][t][b];
                                // tau23 of (delta (x) alpha) Delta: swap q <-> t
                                acc -= D.C[a][b][k] * d.C[p][t][a] * A[b][q];
                            }
                        }
                    r.add({int(p) + 1, int(q) + 1, int(t) + 1, int(k) + 1}, acc);
                }
    return r;
}

/// Delta(xy) = Delta(x) . Delta(y) (componentwise product on the tensor square).
inline Residual bialg_compat_residual(const Structure& S) {
    const Tensor3& C = fdhom_detail::need(S.mult, "mult");
    const Tensor3& D = fdhom_detail::need(S.coproduct, "coproduct");
    size_t n = S.dim;
    Residual r{"bialg_compat", 4, {}};
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t p = 0; p < n; ++p)
                for (size_t q = 0; q < n; ++q) {
                    CoeffExpr acc = S.zero();
                    for (size_t k = 0; k < n; ++k)
                        if (!C.C[i][j][k].is_zero()) acc += C.C[i][j][k] * D.C[p][q][k];
                    for (size_t a = 0; a < n; ++a)
                        for (size_t b = 0; b < n; ++b) {
                            if (D.C[a][b][i].is_zero()) continue;
                            for (size_t c = 0; c < n; ++c) {
                                if (C.C[a][c][p].is_zero()) continue;
                                for (size_t e = 0; e < n; ++e)
                                    if (!D.C[c][e][j].is_zero())
                                        acc -= D.C[a][b][i] * D.C[c][e][j] * C.C[a][c][p] *
                                               C.C[b][e][q];
                            }
                        }
                    r.add({int(i) + 1, int(j) + 1, int(p) + 1, int(q) + 1}, acc);
                }
    return r;
}

/// Unit/counit compatibilities of a Hom-bialgebra; entries (part, i, j).
inline Residual bialg_unit_residual(const Structure& S) {
    const Tensor3& C = fdhom_detail::need(S.mult, "mult");
    const Tensor3& D = fdhom_detail::need(S.coproduct, "coproduct");
    const auto& u = fdhom_detail::need(S.unit, "unit");
    const auto& eps = fdhom_detail::need(S.counit, "counit");
    size_t n = S.dim;
    Residual r{"bialg_unit", 3, {}};
    // Delta(e) = e (x) e
    for (size_t p = 0; p < n; ++p)
        for (size_t q = 0; q < n; ++q) {
            CoeffExpr acc = S.zero();
            for (size_t k = 0; k < n; ++k)
                if (!u[k].is_zero()) acc += u[k] * D.C[p][q][k];
            r.add({1, int(p) + 1, int(q) + 1}, acc - u[p] * u[q]);
        }
    // eps(e) = 1
    {
        CoeffExpr acc = S.zero();
        for (size_t k = 0; k < n; ++k) acc += u[k] * eps[k];
        r.add({2, 1, 1}, acc - CoeffExpr::one(S.np()));
    }
    // eps(xy) = eps(x) eps(y)
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            CoeffExpr acc = S.zero();
            for (size_t k = 0; k < n; ++k)
                if (!C.C[i][j][k].is_zero()) acc += C.C[i][j][k] * eps[k];
            r.add({3, int(i) + 1, int(j) + 1}, acc - eps[i] * eps[j]);
        }
    // eps . alpha = eps
    for (size_t i = 0; i < n; ++i) {
        CoeffExpr acc = S.zero();
        for (size_t s = 0; s < n; ++s) acc += S.alpha.A[i][s] * eps[s];
        r.add({4, int(i) + 1, 1}, acc - eps[i]);
    }
    return r;
}

/// Delta([x,y]) = ad_{alpha(x)}(Delta(y)) - ad_{alpha(y)}(Delta(x)), with the
/// adjoint action twisting the untouched slot by beta.
inline Residual lie_bialg_compat_residual(const Structure& S) {
    const Tensor3& B = fdhom_detail::need(S.bracket, "bracket");
    const Tensor3& d = fdhom_detail::need(S.cobracket, "cobracket");
    const auto& A = S.alpha.A;
    const auto& Bt = S.cotwist().A;
    size_t n = S.dim;
    Residual r{"lie_bialg_compat", 4, {}};
    // bracket with alpha(e_i) in the first slot: br[i][a][p] = [alpha(e_i), e_a]_p
    std::vector<std::vector<std::vector<CoeffExpr>>> br(
        n, std::vector<std::vector<CoeffExpr>>(n,
                                               std::vector<CoeffExpr>(n, S.zero())));
    for (size_t i = 0; i < n; ++i)
        for (size_t a = 0; a < n; ++a)
            for (size_t p = 0; p < n; ++p) {
                CoeffExpr acc = S.zero();
                for (size_t s = 0; s < n; ++s)
                    if (!A[i][s].is_zero() && !B.C[s][a][p].is_zero())
                        acc += A[i][s] * B.C[s][a][p];
                br[i][a][p] = acc;
            }
    auto ad_term = [&](size_t i, size_t j, size_t p, size_t q) {
        // ad_{alpha(e_i)}(delta(e_j))[p][q]
        CoeffExpr acc = S.zero();
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b) {
                if (d.C[a][b][j].is_zero()) continue;
                acc += d.C[a][b][j] * (br[i][a][p] * Bt[b][q] + Bt[a][p] * br[i][b][q]);
            }
        return acc;
    };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t p = 0; p < n; ++p)
                for (size_t q = 0; q < n; ++q) {
                    CoeffExpr acc = S.zero();
                    for (size_t k = 0; k < n; ++k)
                        if (!B.C[i][j][k].is_zero()) acc += B.C[i][j][k] * d.C[p][q][k];
                    acc -= ad_term(i, j, p, q) - ad_term(j, i, p, q);
                    r.add({int(i) + 1, int(j) + 1, int(p) + 1, int(q) + 1}, acc);
                }
    return r;
}

/// Delta({a,b}) = {Delta(a), Delta(b)} on the tensor square.
inline Residual poisson_bialg_residual(const Structure& S) {
    const Tensor3& C = fdhom_detail::need(S.mult, "mult");
    const Tensor3& B = fdhom_detail::need(S.bracket, "bracket");
    const Tensor3& D = fdhom_detail::need(S.coproduct, "coproduct");
    size_t n = S.dim;
    Residual r{"poisson_bialg", 4, {}};
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t p = 0; p < n; ++p)
                for (size_t q = 0; q < n; ++q) {
                    CoeffExpr acc = S.zero();
                    for (size_t k = 0; k < n; ++k)
                        if (!B.C[i][j][k].is_zero()) acc += B.C[i][j][k] * D.C[p][q][k];
                    for (size_t a = 0; a < n; ++a)
                        for (size_t b = 0; b < n; ++b) {
                            if (D.C[a][b][i].is_zero()) continue;
                            for (size_t c = 0; c < n; ++c)
                                for (size_t e = 0; e < n; ++e) {
                                    if (D.C[c][e][j].is_zero()) continue;
                                    CoeffExpr w = B.C[a][c][p] * C.C[b][e][q] +
                                                  C.C[a][c][p] * B.C[b][e][q];
                                    if (!w.is_zero()) acc -= D.C[a][b][i] * D.C[c][e][j] * w;
                                }
                        }
                    r.add({int(i) + 1, int(j) + 1, int(p) + 1, int(q) + 1}, acc);
                }
    return r;
}

/// delta . mu = (mu (x) mu) tau23 (delta (x) Delta + Delta (x) delta).
inline Residual copoisson_bialg_residual(const Structure& S) {
    const Tensor3& C = fdhom_detail::need(S.mult, "mult");
    const Tensor3& D = fdhom_detail::need(S.coproduct, "coproduct");
    const Tensor3& d = fdhom_detail::need(S.cobracket, "cobracket");
    size_t n = S.dim;
    Residual r{"copoisson_bialg", 4, {}};
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t p = 0; p < n; ++p)
                for (size_t q = 0; q < n; ++q) {
                    CoeffExpr acc = S.zero();
                    for (size_t k = 0; k < n; ++k)
                        if (!C.C[i][j][k].is_zero()) acc += C.C[i][j][k] * d.C[p][q][k];
                    for (size_t a = 0; a < n; ++a)
                        for (size_t b = 0; b < n; ++b)
                            for (size_t c = 0; c < n; ++c) {
                                if (C.C[a][c][p].is_zero()) continue;
                                for (size_t e = 0; e < n; ++e) {
                                    if (C.C[b][e][q].is_zero()) continue;
                                    CoeffExpr w = d.C[a][b][i] * D.C[c][e][j] +
                                                  D.C[a][b][i] * d.C[c][e][j];
                                    if (!w.is_zero()) acc -= w * C.C[a][c][p] * C.C[b][e][q];
                                }
                            }
                    r.add({int(i) + 1, int(j) + 1, int(p) + 1, int(q) + 1}, acc);
                }
    return r;
}

/// Commutativity defect of the multiplication, entry (i,j,k) for i < j.
inline Residual commutativity_residual(const Structure& S) {
    const Tensor3& C = fdhom_detail::need(S.mult, "mult");
    Residual r{"commutativity", 3, {}};
    for (size_t i = 0; i < S.dim; ++i)
        for (size_t j = i + 1; j < S.dim; ++j)
            for (size_t k = 0; k < S.dim; ++k)
                r.add({int(i) + 1, int(j) + 1, int(k) + 1}, C.C[i][j][k] - C.C[j][i][k]);
    return r;
}

/// Cocommutativity defect of the coproduct.
inline Residual cocommutativity_residual(const Structure& S) {
    const Tensor3& D = fdhom_detail::need(S.coproduct, "coproduct");
    Residual r{"cocommutativity", 3, {}};
    for (size_t p = 0; p < S.dim; ++p)
        for (size_t q = p + 1; q < S.dim; ++q)
            for (size_t k = 0; k < S.dim; ++k)
                r.add({int(p) + 1, int(q) + 1, int(k) + 1}, D.C[p][q][k] - D.C[q][p][k]);
    return r;
}

/// Dispatch by law identifier.
inline Residual check_law(const Structure& S, const std::string& law) {
    using fdhom_detail::need;
    if (law == "hom_assoc" || law == "associativity") return hom_associator(S);
    if (law == "hom_jacobi") return hom_jacobian(S);
    if (law == "antisymmetry")
        return antisymmetry_residual(need(S.bracket, "bracket"), S.np());
    if (law == "commutativity") return commutativity_residual(S);
    if (law == "hom_leibniz") return hom_leibniz_residual(S);
    if (law == "flexibility") return flexibility_residual(S);
    if (law == "one_op") return one_op_residual(S);
    if (law == "multiplicativity")
        return multiplicativity_residual(need(S.mult, "mult"), S.alpha, S.np());
    if (law == "bracket_multiplicativity")
        return multiplicativity_residual(need(S.bracket, "bracket"), S.alpha, S.np(),
                                         "bracket_multiplicativity");
    if (law == "unital") return unital_residual(S);
    if (law == "hom_coassoc") return hom_coassoc_residual(S);
    if (law == "counit") return counit_residual(S);
    if (law == "comultiplicativity")
        return comorphism_residual(need(S.coproduct, "coproduct"), S.alpha, S.np(),
                                   "comultiplicativity");
    if (law == "cocommutativity") return cocommutativity_residual(S);
    if (law == "cobracket_antisymmetry") {
        Residual r = antisymmetry_residual(need(S.cobracket, "cobracket"), S.np(),
                                           "cobracket_antisymmetry");
        return r;
    }
    if (law == "hom_lie_coalg")
        return cojacobi_residual(need(S.coproduct, "coproduct"), S.alpha, S.np(),
                                 "hom_lie_coalg");
    if (law == "hom_cojacobi")
        return cojacobi_residual(need(S.cobracket, "cobracket"), S.alpha, S.np(),
                                 "hom_cojacobi");
    if (law == "hom_coleibniz") return hom_coleibniz_residual(S);
    if (law == "bialg_compat") return bialg_compat_residual(S);
    if (law == "bialg_unit") return bialg_unit_residual(S);
    if (law == "lie_bialg_compat") return lie_bialg_compat_residual(S);
    if (law == "poisson_bialg") return poisson_bialg_residual(S);
    if (law == "copoisson_bialg") return copoisson_bialg_residual(S);
    throw UnsupportedLaw(law);
}

// ---------------------------------------------------------------------------
// constructions

/// Yau twist: (A, beta . mu, beta . alpha), brackets twisted alongside.
/// With weak = false, beta must be multiplicative for every present operation.
inline Structure twist_algebra(const Structure& S, const LinMap& beta, bool weak) {
    if (beta.dim != S.dim) throw SchemaError("twist map dimension mismatch");
    if (!weak) {
        if (S.mult) {
            Residual r = multiplicativity_residual(*S.mult, beta, S.np());
            if (!r.empty()) throw NotMultiplicative("twist map not multiplicative for mult (" +
                                                    std::to_string(r.size()) +
                                                    " nonzero residual entries)");
        }
        if (S.bracket) {
            Residual r = multiplicativity_residual(*S.bracket, beta, S.np());
            if (!r.empty())
                throw NotMultiplicative("twist map not multiplicative for bracket (" +
                                        std::to_string(r.size()) +
                                        " nonzero residual entries)");
        }
    }
    Structure out = S;
    if (S.mult) out.mult = post_compose(beta, *S.mult);
    if (S.bracket) out.bracket = post_compose(beta, *S.bracket);
    out.alpha = compose(beta, S.alpha);
    return out;
}

/// Coalgebra twist: (A, Delta . beta, alpha . beta); beta must be a weak
/// coalgebra morphism. Cobrackets are twisted alongside; counit is preserved.
inline Structure twist_coalgebra(const Structure& S, const LinMap& beta) {
    if (beta.dim != S.dim) throw SchemaError("twist map dimension mismatch");
    const Tensor3& D = fdhom_detail::need(S.coproduct, "coproduct");
    Residual r = comorphism_residual(D, beta, S.np());
    if (!r.empty())
        throw NotComorphism("twist map is not a weak coalgebra morphism (" +
                            std::to_string(r.size()) + " nonzero residual entries)");
    Structure out = S;
    out.coproduct = pre_compose(D, beta);
    if (S.cobracket) out.cobracket = pre_compose(*S.cobracket, beta);
    out.alpha = compose(S.alpha, beta);
    return out;
}

/// Attach the commutator bracket [x,y] = xy - yx.
inline Structure commutator_hlie(const Structure& S) {
    const Tensor3& C = fdhom_detail::need(S.mult, "mult");
    Structure out = S;
    Tensor3 B(S.dim, S.np());
    for (size_t i = 0; i < S.dim; ++i)
        for (size_t j = 0; j < S.dim; ++j)
            for (size_t k = 0; k < S.dim; ++k) B.C[i][j][k] = C.C[i][j][k] - C.C[j][i][k];
    out.bracket = std::move(B);
    out.flags.insert("bracket_antisymmetric");
    return out;
}

/// Split one operation into its symmetric product and antisymmetric bracket:
/// x . y  ->  (x*y + y*x, x*y - y*x).
inline Structure polarize(const Structure& S) {
    const Tensor3& M = fdhom_detail::need(S.mult, "mult");
    Structure out = S;
    Tensor3 sym(S.dim, S.np()), anti(S.dim, S.np());
    for (size_t i = 0; i < S.dim; ++i)
        for (size_t j = 0; j < S.dim; ++j)
            for (size_t k = 0; k < S.dim; ++k) {
                sym.C[i][j][k] = M.C[i][j][k] + M.C[j][i][k];
                anti.C[i][j][k] = M.C[i][j][k] - M.C[j][i][k];
            }
    out.mult = std::move(sym);
    out.bracket = std::move(anti);
    out.flags.insert("bracket_antisymmetric");
    return out;
}

/// Inverse of polarize: x . y = (1/2)({x,y} + x o y).
inline Structure depolarize(const Structure& S) {
    const Tensor3& M = fdhom_detail::need(S.mult, "mult");
    const Tensor3& B = fdhom_detail::need(S.bracket, "bracket");
    Structure out = S;
    CoeffExpr half = CoeffExpr::from_rat(Rat(1, 2), S.np());
    Tensor3 dot(S.dim, S.np());
    for (size_t i = 0; i < S.dim; ++i)
        for (size_t j = 0; j < S.dim; ++j)
            for (size_t k = 0; k < S.dim; ++k)
                dot.C[i][j][k] = half * (M.C[i][j][k] + B.C[i][j][k]);
    out.mult = std::move(dot);
    out.bracket.reset();
    out.flags.erase("bracket_antisymmetric");
    return out;
}

/// Finite-dimensional duality: transpose every structure tensor and exchange
/// algebra and coalgebra roles. An involution.
inline Structure dualize(const Structure& S) {
    Structure out;
    out.ctx = S.ctx;
    out.dim = S.dim;
    out.alpha = S.alpha.transpose();
    if (S.beta) out.beta = S.beta->transpose();
    out.mult = S.coproduct;
    out.coproduct = S.mult;
    out.bracket = S.cobracket;
    out.cobracket = S.bracket;
    out.unit = S.counit;
    out.counit = S.unit;
    out.flags = S.flags;
    return out;
}

/// Formal deformation of a Hom-associative multiplication: cochains mu_0..mu_N
/// with mu_0 the base table, twist map fixed.
struct Deformation {
    Structure base;
    std::vector<Tensor3> cochains;  // cochains[0] == *base.mult
    unsigned order = 0;
};

/// One residual per order s = 0..N of the deformation equation
/// sum_{i+j=s} mu_i o_alpha mu_j = 0.
inline std::vector<Residual> check_deformation(const Deformation& D) {
    size_t n = D.base.dim;
    const auto& A = D.base.alpha.A;
    std::vector<Residual> out;
    for (unsigned s = 0; s <= D.order; ++s) {
        Residual r{"deformation_order_" + std::to_string(s), 4, {}};
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                for (size_t k = 0; k < n; ++k)
                    for (size_t l = 0; l < n; ++l) {
                        CoeffExpr acc = D.base.zero();
                        for (unsigned p = 0; p <= s; ++p) {
                            const Tensor3& Mp = D.cochains[p];
                            const Tensor3& Mq = D.cochains[s - p];
                            for (size_t a = 0; a < n; ++a)
                                for (size_t b = 0; b < n; ++b) {
                                    if (Mp.C[a][b][l].is_zero()) continue;
                                    CoeffExpr w = A[i][a] * Mq.C[j][k][b] -
                                                  Mq.C[i][j][a] * A[k][b];
                                    if (!w.is_zero()) acc += w * Mp.C[a][b][l];
                                }
                        }
                        r.add({int(i) + 1, int(j) + 1, int(k) + 1, int(l) + 1}, acc);
                    }
        out.push_back(std::move(r));
    }
    return out;
}

/// Quasi-classical limit: the antisymmetrization of the first-order cochain,
/// attached as a bracket over the (commutative) base.
inline Structure quasi_classical_limit(const Deformation& D) {
    Structure out = D.base;
    if (!commutativity_residual(D.base).empty()) throw BaseNotCommutative();
    if (D.cochains.size() < 2) throw MissingTable("first-order cochain");
    const Tensor3& M1 = D.cochains[1];
    size_t n = D.base.dim;
    Tensor3 B(n, D.base.np());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k) B.C[i][j][k] = M1.C[i][j][k] - M1.C[j][i][k];
    out.bracket = std::move(B);
    out.flags.insert("bracket_antisymmetric");
    return out;
}

/// Co-version of the quasi-classical limit: cobracket = Delta_1 - Delta_1^op
/// over a cocommutative base coproduct.
inline Structure co_quasi_classical_limit(const Structure& base,
                                          const std::vector<Tensor3>& cochains) {
    Structure out = base;
    if (!cocommutativity_residual(base).empty())
        throw BaseNotCommutative("base coproduct is not cocommutative");
    if (cochains.size() < 2) throw MissingTable("first-order cochain");
    size_t n = base.dim;
    Tensor3 cb(n, base.np());
    for (size_t p = 0; p < n; ++p)
        for (size_t q = 0; q < n; ++q)
            for (size_t k = 0; k < n; ++k)
                cb.C[p][q][k] = cochains[1].C[p][q][k] - cochains[1].C[q][p][k];
    out.cobracket = std::move(cb);
    out.flags.insert("cobracket_antisymmetric");
    return out;
}

/// The full Hom-Poisson law bundle (commutativity, Hom-associativity,
/// antisymmetry, Hom-Jacobi, Hom-Leibniz).
inline std::vector<Residual> poisson_bundle(const Structure& S) {
    return {commutativity_residual(S), hom_associator(S),
            antisymmetry_residual(fdhom_detail::need(S.bracket, "bracket"), S.np()),
            hom_jacobian(S), hom_leibniz_residual(S)};
}

/// The Hom-coPoisson bundle (cocommutativity, Hom-coassociativity, cobracket
/// antisymmetry, Hom-coJacobi, Hom-coLeibniz).
inline std::vector<Residual> copoisson_bundle(const Structure& S) {
    return {cocommutativity_residual(S), hom_coassoc_residual(S),
            antisymmetry_residual(fdhom_detail::need(S.cobracket, "cobracket"), S.np(),
                                  "cobracket_antisymmetry"),
            cojacobi_residual(fdhom_detail::need(S.cobracket, "cobracket"), S.alpha, S.np(),
                              "hom_cojacobi"),
            hom_coleibniz_residual(S)};
}

inline bool all_empty(const std::vector<Residual>& rs) {
    for (const auto& r : rs)
        if (!r.empty()) return false;
    return true;
}

}  // namespace homalg

#endif
