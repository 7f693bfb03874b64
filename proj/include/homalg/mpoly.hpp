#ifndef HOMALG_MPOLY_HPP
#define HOMALG_MPOLY_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "homalg/errors.hpp"
#include "homalg/rational.hpp"

namespace homalg {

/// Declared symbol set for a session: parameter names (coefficient field)
/// and, for polynomial rings, variable names. The two sets are disjoint.
struct Context {
    std::vector<std::string> params;
    bool gaussian = false;  // adjoin i with i^2 = -1

    int param_index(const std::string& name) const {
        for (size_t k = 0; k < params.size(); ++k)
            if (params[k] == name) return static_cast<int>(k);
        return -1;
    }
    size_t nparams() const { return params.size(); }
};

using Exp = std::vector<unsigned>;

inline unsigned exp_degree(const Exp& e) { return std::accumulate(e.begin(), e.end(), 0u); }

/// Graded lexicographic, descending: the map's first entry is the leading term.
struct GrlexGreater {
    bool operator()(const Exp& a, const Exp& b) const {
        unsigned da = exp_degree(a), db = exp_degree(b);
        if (da != db) return da > db;
        return a > b;  // lex on exponent vectors, earlier variables dominate
    }
};

/// Sparse multivariate polynomial over Q or Q(i) with a fixed arity.
/// No zero coefficients are stored; term order is graded lexicographic.
class MPoly {
public:
    std::map<Exp, GRat, GrlexGreater> terms;
    size_t nvars = 0;

    MPoly() = default;
    explicit MPoly(size_t nv) : nvars(nv) {}

    static MPoly constant(GRat c, size_t nv) {
        MPoly p(nv);
        if (!c.is_zero()) p.terms.emplace(Exp(nv, 0), std::move(c));
        return p;
    }
    static MPoly zero(size_t nv) { return MPoly(nv); }
    static MPoly one(size_t nv) { return constant(GRat(1), nv); }
    static MPoly variable(size_t idx, size_t nv) {
        MPoly p(nv);
        Exp e(nv, 0);
        e.at(idx) = 1;
        p.terms.emplace(std::move(e), GRat(1));
        return p;
    }
    static MPoly monomial(Exp e, GRat c, size_t nv) {
        MPoly p(nv);
        if (!c.is_zero()) p.terms.emplace(std::move(e), std::move(c));
        return p;
    }

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const {
        return terms.empty() || (terms.size() == 1 && exp_degree(terms.begin()->first) == 0);
    }
    GRat constant_value() const {
        return terms.empty() ? GRat(0) : terms.begin()->second;
    }

    unsigned total_degree() const {
        return terms.empty() ? 0 : exp_degree(terms.begin()->first);
    }
    unsigned degree_in(size_t v) const {
        unsigned d = 0;
        for (const auto& [e, c] : terms) d = std::max(d, e[v]);
        return d;
    }
    bool depends_on(size_t v) const {
        for (const auto& [e, c] : terms)
            if (e[v] > 0) return true;
        return false;
    }

    const GRat& leading_coeff() const {
        static const GRat z{};
        return terms.empty() ? z : terms.begin()->second;
    }

    void add_term(const Exp& e, const GRat& c) {
        auto it = terms.find(e);
        if (it == terms.end()) {
            if (!c.is_zero()) terms.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    friend MPoly operator+(const MPoly& a, const MPoly& b) {
        MPoly r = a;
        for (const auto& [e, c] : b.terms) r.add_term(e, c);
        return r;
    }
    friend MPoly operator-(const MPoly& a) {
        MPoly r = a;
        for (auto& [e, c] : r.terms) c = -c;
        return r;
    }
    friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r(a.nvars);
        Exp e(a.nvars);
        for (const auto& [ea, ca] : a.terms)
            for (const auto& [eb, cb] : b.terms) {
                for (size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    MPoly scaled(const GRat& c) const {
        if (c.is_zero()) return MPoly(nvars);
        MPoly r = *this;
        for (auto& [e, v] : r.terms) v *= c;
        return r;
    }

    MPoly pow(unsigned n) const {
        MPoly r = one(nvars);
        MPoly base = *this;
        while (n > 0) {
            if (n & 1u) r *= base;
            base *= base;
            n >>= 1u;
        }
        return r;
    }

    friend bool operator==(const MPoly& a, const MPoly& b) {
        return a.nvars == b.nvars && a.terms == b.terms;
    }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    GRat eval(const std::vector<GRat>& point) const {
        GRat acc(0);
        for (const auto& [e, c] : terms) {
            GRat t = c;
            for (size_t v = 0; v < nvars; ++v)
                for (unsigned k = 0; k < e[v]; ++k) t *= point[v];
            acc += t;
        }
        return acc;
    }

    /// Substitute rational values for a subset of the variables; the arity is kept.
    MPoly eval_partial(const std::map<size_t, GRat>& point) const {
        MPoly r(nvars);
        Exp e2(nvars);
        for (const auto& [e, c] : terms) {
            GRat t = c;
            e2 = e;
            for (const auto& [v, val] : point) {
                for (unsigned k = 0; k < e[v]; ++k) t *= val;
                e2[v] = 0;
            }
            r.add_term(e2, t);
        }
        return r;
    }

    /// Divide by leading coefficient so the grlex-leading coefficient is 1.
    MPoly monic() const {
        if (is_zero()) return *this;
        return scaled(leading_coeff().inverse());
    }
};

/// Exact division; throws if b does not divide a.
inline MPoly exact_div(const MPoly& a, const MPoly& b) {
    if (b.is_zero()) throw DivisionByZero("exact_div by zero polynomial");
    MPoly r = a, q(a.nvars);
    const auto& ltb = *b.terms.begin();
    Exp e(a.nvars);
    while (!r.is_zero()) {
        const auto& ltr = *r.terms.begin();
        for (size_t k = 0; k < e.size(); ++k) {
            if (ltr.first[k] < ltb.first[k]) throw Error("exact_div: not divisible");
            e[k] = ltr.first[k] - ltb.first[k];
        }
        GRat c = ltr.second / ltb.second;
        MPoly t = MPoly::monomial(e, c, a.nvars);
        q += t;
        r -= t * b;
    }
    return q;
}

namespace detail {

/// View as univariate in variable v with MPoly coefficients.
inline std::vector<MPoly> uni_coeffs(const MPoly& p, size_t v) {
    std::vector<MPoly> cs(p.degree_in(v) + 1, MPoly(p.nvars));
    for (const auto& [e, c] : p.terms) {
        Exp e2 = e;
        unsigned d = e2[v];
        e2[v] = 0;
        cs[d].add_term(e2, c);
    }
    return cs;
}

inline MPoly from_uni_coeffs(const std::vector<MPoly>& cs, size_t v, size_t nvars) {
    MPoly r(nvars);
    for (size_t d = 0; d < cs.size(); ++d) {
        for (const auto& [e, c] : cs[d].terms) {
            Exp e2 = e;
            e2[v] = static_cast<unsigned>(d);
            r.add_term(e2, c);
        }
    }
    return r;
}

MPoly gcd_impl(const MPoly& a, const MPoly& b);  // forward

inline MPoly content_wrt(const MPoly& p, size_t v) {
    auto cs = uni_coeffs(p, v);
    MPoly g(p.nvars);
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : gcd_impl(g, c);
        if (g.is_constant()) break;
    }
    return g.is_zero() ? MPoly::one(p.nvars) : g.monic();
}

/// Pseudo-remainder of f by g in the variable v.
inline MPoly prem(MPoly f, const MPoly& g, size_t v) {
    unsigned dg = g.degree_in(v);
    auto gcs = uni_coeffs(g, v);
    const MPoly& lcg = gcs[dg];
    while (!f.is_zero() && f.degree_in(v) >= dg) {
        unsigned df = f.degree_in(v);
        auto fcs = uni_coeffs(f, v);
        MPoly shift = MPoly::one(f.nvars);
        if (df > dg) shift = MPoly::variable(v, f.nvars).pow(df - dg);
        f = lcg * f - fcs[df] * g * shift;
    }
    return f;
}

inline MPoly gcd_impl(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return MPoly::one(a.nvars);
    // main variable: highest index appearing in either operand
    size_t v = 0;
    bool found = false;
    for (size_t k = a.nvars; k-- > 0;) {
        if (a.depends_on(k) || b.depends_on(k)) {
            v = k;
            found = true;
            break;
        }
    }
    if (!found) return MPoly::one(a.nvars);
    MPoly ca = content_wrt(a, v), cb = content_wrt(b, v);
    MPoly f = exact_div(a, ca), g = exact_div(b, cb);
    if (f.degree_in(v) < g.degree_in(v)) std::swap(f, g);
    // primitive PRS
    while (!g.is_zero()) {
        MPoly r = prem(f, g, v);
        f = g;
        if (r.is_zero()) {
            g = r;
        } else {
            MPoly cr = content_wrt(r, v);
            g = exact_div(r, cr);
        }
    }
    MPoly cg = gcd_impl(ca, cb);
    MPoly pf = content_wrt(f, v);
    return (cg * exact_div(f, pf)).monic();
}

}  // namespace detail

/// Monic gcd over the coefficient field.
inline MPoly gcd(const MPoly& a, const MPoly& b) { return detail::gcd_impl(a, b); }

}  // namespace homalg

#endif
