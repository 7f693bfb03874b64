#ifndef HOMALG_MOYAL_HPP
#define HOMALG_MOYAL_HPP

#include <tuple>
#include <vector>

#include "homalg/polypois.hpp"

namespace homalg {

/// Truncated Moyal-Weyl star product configuration: sigma is the (generally
/// non-antisymmetric) half of the Poisson matrix, order the t-truncation N,
/// degree_cap the basis bound D for sweeps.
struct MoyalConfig {
    RingContext ring;
    std::vector<std::vector<Rat>> sigma;
    unsigned order = 4;
    unsigned degree_cap = 5;

    static std::vector<std::vector<Rat>> sigma_from_tau(
        const std::vector<std::vector<Rat>>& tau) {
        auto s = tau;
        for (auto& row : s)
            for (auto& v : row) v /= 2;
        return s;
    }

    /// 2-var standard config: sigma = [[0,1],[0,0]] so mu_n differentiates
    /// f by x and g by y.
    static MoyalConfig standard2(const Context& coeff, unsigned N = 4, unsigned D = 5) {
        MoyalConfig c;
        c.ring = RingContext{coeff, {"x", "y"}};
        c.sigma = {{Rat(0), Rat(1)}, {Rat(0), Rat(0)}};
        c.order = N;
        c.degree_cap = D;
        return c;
    }
};

/// mu_m(f,g) = (1/m!) sum sigma_{i1 j1}..sigma_{im jm} d^m f d^m g.
inline RPoly moyal_term(const RPoly& f, const RPoly& g, unsigned m, const MoyalConfig& cfg) {
    size_t n = cfg.ring.nvars();
    // branches (a, b, c): c * a * b summed at the end
    std::vector<std::tuple<RPoly, RPoly, Rat>> branches{{f, g, Rat(1)}};
    for (unsigned step = 0; step < m; ++step) {
        std::vector<std::tuple<RPoly, RPoly, Rat>> next;
        for (const auto& [a, b, c] : branches)
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) {
                    if (cfg.sigma[i][j] == 0) continue;
                    RPoly da = a.derivative(i);
                    if (da.is_zero()) continue;
                    RPoly db = b.derivative(j);
                    if (db.is_zero()) continue;
                    next.emplace_back(std::move(da), std::move(db), c * cfg.sigma[i][j]);
                }
        branches = std::move(next);
        if (branches.empty()) break;
    }
    RPoly r(f.nvars, f.nparams);
    Rat fact(1);
    for (unsigned k = 2; k <= m; ++k) fact *= k;
    for (const auto& [a, b, c] : branches)
        r += (a * b).scaled(CoeffExpr::from_rat(c / fact, f.nparams));
    return r;
}

/// f * g = sum_{m <= N} mu_m(f,g) t^m.
inline TruncSeries star(const RPoly& f, const RPoly& g, const MoyalConfig& cfg) {
    TruncSeries s(cfg.order, f.nvars, f.nparams);
    for (unsigned m = 0; m <= cfg.order; ++m) s.coeffs[m] = moyal_term(f, g, m, cfg);
    return s;
}

/// Star product of two truncated series (bilinear over t).
inline TruncSeries star_series(const TruncSeries& F, const TruncSeries& G,
                               const MoyalConfig& cfg) {
    if (F.order != G.order) throw OrderMismatch();
    TruncSeries s(F.order, F.coeffs[0].nvars, F.coeffs[0].nparams);
    for (unsigned p = 0; p <= s.order; ++p)
        for (unsigned i = 0; i <= p; ++i)
            for (unsigned j = 0; i + j <= p; ++j)
                s.coeffs[p] += moyal_term(F.coeffs[i], G.coeffs[j], p - i - j, cfg);
    return s;
}

inline TruncSeries apply_endo(const PolyEndo& e, const TruncSeries& F) {
    TruncSeries s = F;
    for (auto& c : s.coeffs) c = apply_endo(e, c);
    return s;
}

/// Twisted star f *_alpha g = alpha applied to every cochain of f * g.
inline TruncSeries twisted_star(const PolyEndo& e, const RPoly& f, const RPoly& g,
                                const MoyalConfig& cfg) {
    return apply_endo(e, star(f, g, cfg));
}

inline TruncSeries twisted_star_series(const PolyEndo& e, const TruncSeries& F,
                                       const TruncSeries& G, const MoyalConfig& cfg) {
    return apply_endo(e, star_series(F, G, cfg));
}

/// Plain associator ((f*g)*h - f*(g*h)) truncated at N.
inline TruncSeries star_associator(const RPoly& f, const RPoly& g, const RPoly& h,
                                   const MoyalConfig& cfg) {
    TruncSeries fh = TruncSeries::from_poly(h, cfg.order);
    TruncSeries ff = TruncSeries::from_poly(f, cfg.order);
    return star_series(star(f, g, cfg), fh, cfg) - star_series(ff, star(g, h, cfg), cfg);
}

/// Hom-associator of the twisted star *_alpha = alpha . * :
/// (f *_a g) *_a alpha(h) - alpha(f) *_a (g *_a h).
inline TruncSeries twisted_star_hom_associator(const PolyEndo& e, const RPoly& f,
                                               const RPoly& g, const RPoly& h,
                                               const MoyalConfig& cfg) {
    TruncSeries ah = TruncSeries::from_poly(apply_endo(e, h), cfg.order);
    TruncSeries af = TruncSeries::from_poly(apply_endo(e, f), cfg.order);
    return twisted_star_series(e, twisted_star(e, f, g, cfg), ah, cfg) -
           twisted_star_series(e, af, twisted_star(e, g, h, cfg), cfg);
}

/// The twisted cochain mu_{m,alpha}(f,g) = mu_m(alpha(f), alpha(g)) as printed
/// in the Hom-Poisson subsection; distinct from alpha . mu_m.
inline RPoly twisted_cochain(const PolyEndo& e, const RPoly& f, const RPoly& g, unsigned m,
                             const MoyalConfig& cfg) {
    return moyal_term(apply_endo(e, f), apply_endo(e, g), m, cfg);
}

/// as_{*_alpha,alpha}(P,Q,R) built from the twisted cochains:
/// coeff of t^p is sum_n mu_{p-n,a}(mu_{n,a}(P,Q), a(R)) - mu_{p-n,a}(a(P), mu_{n,a}(Q,R)).
inline TruncSeries star_hom_associator(const PolyEndo& e, const RPoly& P, const RPoly& Q,
                                       const RPoly& R, const MoyalConfig& cfg) {
    TruncSeries s(cfg.order, P.nvars, P.nparams);
    RPoly aR = apply_endo(e, R), aP = apply_endo(e, P);
    for (unsigned p = 0; p <= cfg.order; ++p)
        for (unsigned n = 0; n <= p; ++n) {
            RPoly inner_pq = twisted_cochain(e, P, Q, n, cfg);
            RPoly inner_qr = twisted_cochain(e, Q, R, n, cfg);
            s.coeffs[p] += twisted_cochain(e, inner_pq, aR, p - n, cfg) -
                           twisted_cochain(e, aP, inner_qr, p - n, cfg);
        }
    return s;
}

/// alpha(mu_m(p,q)) - mu_m(alpha(p), alpha(q)) over all basis monomial pairs
/// of total degree <= degree_cap; returns the nonzero entries.
inline std::vector<std::tuple<Exp, Exp, RPoly>> intertwine_residual(const PolyEndo& e,
                                                                    unsigned m,
                                                                    const MoyalConfig& cfg) {
    size_t nv = cfg.ring.nvars(), np = cfg.ring.coeff.nparams();
    std::vector<std::tuple<Exp, Exp, RPoly>> out;
    std::vector<Exp> basis = capped_basis(nv, cfg.degree_cap);
    for (const auto& ep : basis) {
        RPoly p = RPoly::monomial(ep, CoeffExpr::one(np), nv);
        for (const auto& eq : basis) {
            RPoly q = RPoly::monomial(eq, CoeffExpr::one(np), nv);
            RPoly r = apply_endo(e, moyal_term(p, q, m, cfg)) -
                      moyal_term(apply_endo(e, p), apply_endo(e, q), m, cfg);
            if (!r.is_zero()) out.emplace_back(ep, eq, std::move(r));
        }
    }
    return out;
}

}  // namespace homalg

#endif
