#ifndef HOMALG_HOMSOLVE_HPP
#define HOMALG_HOMSOLVE_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "homalg/fdhom.hpp"

namespace homalg {

/// Widen the parameter arity of a polynomial (new parameters appended).
inline MPoly extend_arity(const MPoly& p, size_t nv) {
    MPoly r(nv);
    for (const auto& [e, c] : p.terms) {
        Exp e2(nv, 0);
        for (size_t k = 0; k < e.size(); ++k) e2[k] = e[k];
        r.terms.emplace(std::move(e2), c);
    }
    return r;
}

inline CoeffExpr extend_arity(const CoeffExpr& x, size_t nv) {
    return CoeffExpr(extend_arity(x.num, nv), extend_arity(x.den, nv));
}

/// The Hom-Leibniz conditions as a homogeneous linear system in the unknown
/// commutative products M_{ij}^l (i <= j).
struct LinSystem {
    size_t dim = 0;
    size_t nparams = 0;
    std::vector<std::vector<CoeffExpr>> rows;   // dense, length = unknowns()
    std::vector<std::array<int, 4>> provenance;  // 1-based (i,j,k,s) per row

    size_t unknowns() const { return dim * dim * (dim + 1) / 2; }

    /// Column of M_{ij}^l with commutativity folded in (any order of i, j).
    size_t column(size_t i, size_t j, size_t l) const {
        if (i > j) std::swap(i, j);
        size_t pair = i * dim - i * (i - 1) / 2 + (j - i);
        return pair * dim + l;
    }

    /// Human-readable unknown name for column c: "M_{ij}^l", 1-based.
    std::string unknown_name(size_t c) const {
        size_t l = c % dim, pair = c / dim;
        size_t i = 0;
        while (pair >= dim - i) {
            pair -= dim - i;
            ++i;
        }
        size_t j = i + pair;
        return "M_" + std::to_string(i + 1) + std::to_string(j + 1) + "^" +
               std::to_string(l + 1);
    }
};

/// Affine parametrization of a solution set: particular + sum lambda_i basis_i.
struct AffineSolutionSpace {
    std::vector<CoeffExpr> particular;
    std::vector<std::vector<CoeffExpr>> basis;
    std::vector<std::string> free_params;  // lambda_1 .. lambda_r
    std::vector<size_t> pivot_cols;

    size_t dimension() const { return basis.size(); }
};

/// Rows S_{ijks} = 0: M_{ij}^p a_k^q C_{pq}^s - (a_i^p C_{jk}^q + C_{ik}^p a_j^q) M_{pq}^s.
inline LinSystem build_leibniz_system(const Structure& L) {
    const Tensor3& C = fdhom_detail::need(L.bracket, "bracket");
    if (!antisymmetry_residual(C, L.np()).empty()) throw NotAntisymmetric();
    const auto& A = L.alpha.A;
    size_t n = L.dim;
    LinSystem sys;
    sys.dim = n;
    sys.nparams = L.np();
    size_t m = sys.unknowns();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                for (size_t s = 0; s < n; ++s) {
                    std::vector<CoeffExpr> row(m, CoeffExpr::zero(L.np()));
                    bool nonzero = false;
                    for (size_t p = 0; p < n; ++p) {
                        CoeffExpr acc = CoeffExpr::zero(L.np());
                        for (size_t q = 0; q < n; ++q)
                            if (!A[k][q].is_zero() && !C.C[p][q][s].is_zero())
                                acc += A[k][q] * C.C[p][q][s];
                        if (!acc.is_zero()) {
                            row[sys.column(i, j, p)] += acc;
                            nonzero = true;
                        }
                    }
                    for (size_t p = 0; p < n; ++p)
                        for (size_t q = 0; q < n; ++q) {
                            CoeffExpr w = A[i][p] * C.C[j][k][q] + C.C[i][k][p] * A[j][q];
                            if (!w.is_zero()) {
                                row[sys.column(p, q, s)] -= w;
                                nonzero = true;
                            }
                        }
                    if (nonzero) {
                        sys.rows.push_back(std::move(row));
                        sys.provenance.push_back(
                            {int(i) + 1, int(j) + 1, int(k) + 1, int(s) + 1});
                    }
                }
    return sys;
}

namespace solve_detail {

/// In-place reduced row echelon form over the coefficient fraction field.
/// Pivot rule: columns left to right, first remaining row with a nonzero entry.
inline std::vector<size_t> rref(std::vector<std::vector<CoeffExpr>>& M) {
    std::vector<size_t> pivots;
    if (M.empty()) return pivots;
    size_t nrows = M.size(), ncols = M[0].size(), r = 0;
    for (size_t c = 0; c < ncols && r < nrows; ++c) {
        size_t sel = nrows;
        for (size_t i = r; i < nrows; ++i)
            if (!M[i][c].is_zero()) {
                sel = i;
                break;
            }
        if (sel == nrows) continue;
        std::swap(M[r], M[sel]);
        CoeffExpr inv = M[r][c].inverse();
        for (size_t j = c; j < ncols; ++j)
            if (!M[r][j].is_zero()) M[r][j] *= inv;
        for (size_t i = 0; i < nrows; ++i) {
            if (i == r || M[i][c].is_zero()) continue;
            CoeffExpr f = M[i][c];
            for (size_t j = c; j < ncols; ++j)
                if (!M[r][j].is_zero()) M[i][j] -= f * M[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/// Fraction-free Bareiss forward elimination on a polynomial matrix.
/// Returns pivot columns; M ends in (unnormalized) row echelon form.
inline std::vector<size_t> bareiss_echelon(std::vector<std::vector<MPoly>>& M) {
    std::vector<size_t> pivots;
    if (M.empty()) return pivots;
    size_t nrows = M.size(), ncols = M[0].size(), r = 0;
    size_t np = M[0].empty() ? 0 : M[0][0].nvars;
    MPoly prev = MPoly::one(np);
    for (size_t c = 0; c < ncols && r < nrows; ++c) {
        size_t sel = nrows;
        for (size_t i = r; i < nrows; ++i)
            if (!M[i][c].is_zero()) {
                sel = i;
                break;
            }
        if (sel == nrows) continue;
        std::swap(M[r], M[sel]);
        for (size_t i = r + 1; i < nrows; ++i) {
            for (size_t j = c + 1; j < ncols; ++j)
                M[i][j] = exact_div(M[r][c] * M[i][j] - M[i][c] * M[r][j], prev);
            M[i][c] = MPoly(np);
        }
        prev = M[r][c];
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline size_t bareiss_rank(std::vector<std::vector<MPoly>> M) {
    return bareiss_echelon(M).size();
}

/// Clear denominators row-wise so Bareiss applies.
inline std::vector<std::vector<MPoly>> clear_denominators(
    const std::vector<std::vector<CoeffExpr>>& M) {
    std::vector<std::vector<MPoly>> R;
    R.reserve(M.size());
    for (const auto& row : M) {
        size_t np = row.empty() ? 0 : row[0].nvars();
        MPoly d = MPoly::one(np);
        for (const auto& x : row)
            if (!x.den.is_constant()) {
                MPoly g = gcd(d, x.den);
                d *= exact_div(x.den, g);
            } else if (!x.den.constant_value().is_one()) {
                d = d.scaled(x.den.constant_value());
            }
        std::vector<MPoly> out;
        out.reserve(row.size());
        for (const auto& x : row)
            out.push_back(x.num * exact_div(d, x.den));
        R.push_back(std::move(out));
    }
    return R;
}

}  // namespace solve_detail

/// Exact nullspace of a homogeneous system, parametrized by fresh symbols
/// lambda_1..lambda_r attached to the free columns in ascending order.
inline AffineSolutionSpace nullspace(const LinSystem& S) {
    size_t m = S.unknowns();
    AffineSolutionSpace out;
    out.particular.assign(m, CoeffExpr::zero(S.nparams));

    std::vector<std::vector<CoeffExpr>> M = S.rows;
    std::vector<size_t> pivots;
    bool polynomial = true;
    for (const auto& row : M)
        for (const auto& x : row)
            if (!x.is_polynomial()) polynomial = false;
    if (polynomial && !M.empty()) {
        // fraction-free forward pass, then field normalization
        std::vector<std::vector<MPoly>> B = solve_detail::clear_denominators(M);
        solve_detail::bareiss_echelon(B);
        for (size_t i = 0; i < M.size(); ++i)
            for (size_t j = 0; j < m; ++j) M[i][j] = CoeffExpr(B[i][j]);
    }
    pivots = solve_detail::rref(M);

    std::vector<bool> is_pivot(m, false);
    for (size_t c : pivots) is_pivot[c] = true;
    size_t idx = 0;
    for (size_t c = 0; c < m; ++c) {
        if (is_pivot[c]) continue;
        std::vector<CoeffExpr> v(m, CoeffExpr::zero(S.nparams));
        v[c] = CoeffExpr::one(S.nparams);
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -M[r][c];
        out.basis.push_back(std::move(v));
        out.free_params.push_back("lambda_" + std::to_string(++idx));
    }
    out.pivot_cols = pivots;
    return out;
}

/// The nonlinear Hom-associativity system R_{ijks} on a symbolic commutative
/// table, returned as the distinct nonzero constraint polynomials.
inline std::vector<CoeffExpr> assoc_constraints(const Tensor3& M, const LinMap& alpha,
                                                const Context& ctx) {
    Structure S;
    S.ctx = ctx;
    S.dim = M.dim;
    S.mult = M;
    S.alpha = alpha;
    return hom_associator(S).distinct_values();
}

/// Result of the paper's two-stage construction: the Hom-Leibniz solution
/// space, the symbolic candidate table over the extended parameter context,
/// and the residual associativity constraints in the lambda_i.
struct PoissonSearch {
    LinSystem system;
    AffineSolutionSpace space;
    Context ext_ctx;  // base parameters followed by the lambda_i
    Tensor3 candidate;
    std::vector<CoeffExpr> constraints;
};

inline PoissonSearch find_poisson_products(const Structure& L) {
    const Tensor3& B = fdhom_detail::need(L.bracket, "bracket");
    if (!antisymmetry_residual(B, L.np()).empty()) throw NotAntisymmetric();
    if (!hom_jacobian(L).empty())
        throw Error("bracket does not satisfy the Hom-Jacobi identity");

    PoissonSearch out;
    out.system = build_leibniz_system(L);
    out.space = nullspace(out.system);

    out.ext_ctx = L.ctx;
    for (const auto& name : out.space.free_params) out.ext_ctx.params.push_back(name);
    size_t npx = out.ext_ctx.nparams();

    size_t n = L.dim;
    out.candidate = Tensor3(n, npx);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t l = 0; l < n; ++l) {
                size_t c = out.system.column(i, j, l);
                CoeffExpr v = extend_arity(out.space.particular[c], npx);
                for (size_t r = 0; r < out.space.basis.size(); ++r)
                    v += CoeffExpr::param(L.np() + r, npx) *
                         extend_arity(out.space.basis[r][c], npx);
                out.candidate.C[i][j][l] = v;
            }

    LinMap ax(n, npx);
    for (size_t i = 0; i < n; ++i)
        for (size_t s = 0; s < n; ++s) ax.A[i][s] = extend_arity(L.alpha.A[i][s], npx);
    out.constraints = assoc_constraints(out.candidate, ax, out.ext_ctx);
    return out;
}

}  // namespace homalg

#endif
