#ifndef HOMALG_RPOLY_HPP
#define HOMALG_RPOLY_HPP

#include <map>
#include <string>
#include <vector>

#include "homalg/coeffexpr.hpp"

namespace homalg {

/// Polynomial ring R[x_1..x_n] over the coefficient field, together with the
/// parameter context. Variable names are disjoint from parameter names.
struct RingContext {
    Context coeff;
    std::vector<std::string> vars;

    size_t nvars() const { return vars.size(); }
    int var_index(const std::string& name) const {
        for (size_t k = 0; k < vars.size(); ++k)
            if (vars[k] == name) return static_cast<int>(k);
        return -1;
    }
};

/// Sparse polynomial in the ring variables with CoeffExpr coefficients.
class RPoly {
public:
    std::map<Exp, CoeffExpr, GrlexGreater> terms;
    size_t nvars = 0;    // ring variables
    size_t nparams = 0;  // coefficient-field parameters

    RPoly() = default;
    RPoly(size_t nv, size_t np) : nvars(nv), nparams(np) {}

    static RPoly zero(size_t nv, size_t np) { return RPoly(nv, np); }
    static RPoly constant(CoeffExpr c, size_t nv) {
        RPoly p(nv, c.nvars());
        if (!c.is_zero()) p.terms.emplace(Exp(nv, 0), std::move(c));
        return p;
    }
    static RPoly one(size_t nv, size_t np) {
        return constant(CoeffExpr::one(np), nv);
    }
    static RPoly variable(size_t idx, size_t nv, size_t np) {
        RPoly p(nv, np);
        Exp e(nv, 0);
        e.at(idx) = 1;
        p.terms.emplace(std::move(e), CoeffExpr::one(np));
        return p;
    }
    static RPoly monomial(Exp e, CoeffExpr c, size_t nv) {
        RPoly p(nv, c.nvars());
        if (!c.is_zero()) p.terms.emplace(std::move(e), std::move(c));
        return p;
    }

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const {
        return terms.empty() || (terms.size() == 1 && exp_degree(terms.begin()->first) == 0);
    }
    CoeffExpr constant_value() const {
        return terms.empty() ? CoeffExpr::zero(nparams) : terms.begin()->second;
    }
    unsigned total_degree() const {
        return terms.empty() ? 0 : exp_degree(terms.begin()->first);
    }

    void add_term(const Exp& e, const CoeffExpr& c) {
        auto it = terms.find(e);
        if (it == terms.end()) {
            if (!c.is_zero()) terms.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    friend RPoly operator+(const RPoly& a, const RPoly& b) {
        RPoly r = a;
        for (const auto& [e, c] : b.terms) r.add_term(e, c);
        return r;
    }
    friend RPoly operator-(const RPoly& a) {
        RPoly r = a;
        for (auto& [e, c] : r.terms) c = -c;
        return r;
    }
    friend RPoly operator-(const RPoly& a, const RPoly& b) { return a + (-b); }
    friend RPoly operator*(const RPoly& a, const RPoly& b) {
        RPoly r(a.nvars, a.nparams);
        Exp e(a.nvars);
        for (const auto& [ea, ca] : a.terms)
            for (const auto& [eb, cb] : b.terms) {
                for (size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    /// Division by a constant polynomial only.
    friend RPoly operator/(const RPoly& a, const RPoly& b) {
        if (!b.is_constant()) throw Error("polynomial division by a nonconstant divisor");
        if (b.is_zero()) throw DivisionByZero();
        return a.scaled(b.constant_value().inverse());
    }
    RPoly& operator+=(const RPoly& o) { return *this = *this + o; }
    RPoly& operator-=(const RPoly& o) { return *this = *this - o; }
    RPoly& operator*=(const RPoly& o) { return *this = *this * o; }

    RPoly scaled(const CoeffExpr& c) const {
        if (c.is_zero()) return RPoly(nvars, nparams);
        RPoly r = *this;
        for (auto& [e, v] : r.terms) v *= c;
        return r;
    }

    RPoly pow(unsigned n) const {
        RPoly r = one(nvars, nparams);
        for (unsigned k = 0; k < n; ++k) r *= *this;
        return r;
    }

    friend bool operator==(const RPoly& a, const RPoly& b) {
        return a.nvars == b.nvars && a.terms == b.terms;
    }
    friend bool operator!=(const RPoly& a, const RPoly& b) { return !(a == b); }

    RPoly derivative(size_t v) const {
        RPoly r(nvars, nparams);
        for (const auto& [e, c] : terms) {
            if (e[v] == 0) continue;
            Exp e2 = e;
            e2[v] -= 1;
            r.add_term(e2, c * CoeffExpr::from_rat(Rat(e[v]), nparams));
        }
        return r;
    }

    /// Ring-morphism substitution x_v -> images[v].
    RPoly substitute(const std::vector<RPoly>& images) const {
        RPoly r(nvars, nparams);
        for (const auto& [e, c] : terms) {
            RPoly t = RPoly::constant(c, nvars);
            for (size_t v = 0; v < nvars; ++v)
                if (e[v] > 0) t *= images[v].pow(e[v]);
            r += t;
        }
        return r;
    }

    /// Drop all terms of total degree above cap; returns true if anything was dropped.
    bool truncate_degree(unsigned cap) {
        bool dropped = false;
        for (auto it = terms.begin(); it != terms.end();) {
            if (exp_degree(it->first) > cap) {
                it = terms.erase(it);
                dropped = true;
            } else {
                ++it;
            }
        }
        return dropped;
    }
};

inline std::string to_string(const RPoly& p, const RingContext& ring) {
    if (p.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [e, c] : p.terms) {
        std::string mono = detail::monomial_to_string(e, ring.vars);
        std::string cs = to_string(c, ring.coeff);
        bool neg = false;
        if (cs.size() > 1 && cs[0] == '-' && cs.find(' ') == std::string::npos &&
            cs.find('+') == std::string::npos) {
            // single negative coefficient: move the sign into the join
            neg = true;
            cs = cs.substr(1);
        }
        std::string piece;
        if (mono.empty())
            piece = cs;
        else if (cs == "1")
            piece = mono;
        else if (cs.find(' ') != std::string::npos || (cs.find('+') != std::string::npos) ||
                 (cs.find('-') != std::string::npos && !c.is_polynomial()))
            piece = "(" + cs + ")*" + mono;
        else
            piece = cs + "*" + mono;
        if (first) {
            s = neg ? "-" + piece : piece;
            first = false;
        } else {
            s += neg ? " - " : " + ";
            s += piece;
        }
    }
    return s;
}

/// Parse polynomial text over ring variables and parameters.
inline RPoly parse_rpoly(const std::string& text, const RingContext& ring) {
    size_t nv = ring.nvars(), np = ring.coeff.nparams();
    auto resolve = [&](const std::string& name) -> RPoly {
        if (!name.empty() && std::isdigit(static_cast<unsigned char>(name[0])))
            return RPoly::constant(CoeffExpr::from_rat(Rat(Int(name)), np), nv);
        int vi = ring.var_index(name);
        if (vi >= 0) return RPoly::variable(static_cast<size_t>(vi), nv, np);
        if (name == "i") {
            if (!ring.coeff.gaussian) throw ParseError("'i' used outside a Q(i) session");
            return RPoly::constant(CoeffExpr::from_grat(GRat::imaginary_unit(), np), nv);
        }
        int pi = ring.coeff.param_index(name);
        if (pi < 0) throw ParseError("unknown symbol '" + name + "'");
        return RPoly::constant(CoeffExpr::param(static_cast<size_t>(pi), np), nv);
    };
    detail::ExprParser<RPoly, decltype(resolve)> p(text, resolve, RPoly::zero(nv, np));
    return p.parse();
}

/// Formal series in the deformation variable t, truncated at order N;
/// coefficients are ring polynomials.
class TruncSeries {
public:
    unsigned order = 0;
    std::vector<RPoly> coeffs;  // length order + 1

    TruncSeries() = default;
    TruncSeries(unsigned n, size_t nvars, size_t nparams)
        : order(n), coeffs(n + 1, RPoly::zero(nvars, nparams)) {}

    static TruncSeries from_poly(const RPoly& p, unsigned n) {
        TruncSeries s(n, p.nvars, p.nparams);
        s.coeffs[0] = p;
        return s;
    }

    bool is_zero() const {
        for (const auto& c : coeffs)
            if (!c.is_zero()) return false;
        return true;
    }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        if (a.order != b.order) throw OrderMismatch();
        TruncSeries r = a;
        for (unsigned k = 0; k <= r.order; ++k) r.coeffs[k] += b.coeffs[k];
        return r;
    }
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
        if (a.order != b.order) throw OrderMismatch();
        TruncSeries r = a;
        for (unsigned k = 0; k <= r.order; ++k) r.coeffs[k] -= b.coeffs[k];
        return r;
    }
    friend TruncSeries operator-(const TruncSeries& a) {
        TruncSeries r = a;
        for (auto& c : r.coeffs) c = -c;
        return r;
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        return a.order == b.order && a.coeffs == b.coeffs;
    }
    friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }
};

/// Cauchy product, discarding every power of t above the truncation order.
inline TruncSeries series_mul(const TruncSeries& f, const TruncSeries& g) {
    if (f.order != g.order) throw OrderMismatch();
    if (!f.coeffs.empty() && !g.coeffs.empty() &&
        (f.coeffs[0].nvars != g.coeffs[0].nvars))
        throw OrderMismatch("series variable arity mismatch");
    TruncSeries r(f.order, f.coeffs[0].nvars, f.coeffs[0].nparams);
    for (unsigned s = 0; s <= r.order; ++s)
        for (unsigned i = 0; i <= s; ++i) r.coeffs[s] += f.coeffs[i] * g.coeffs[s - i];
    return r;
}

inline std::string to_string(const TruncSeries& s, const RingContext& ring) {
    std::string out;
    bool first = true;
    for (unsigned k = 0; k <= s.order; ++k) {
        if (s.coeffs[k].is_zero()) continue;
        std::string c = to_string(s.coeffs[k], ring);
        std::string piece = "(" + c + ")";
        if (k == 1) piece += "*t";
        if (k > 1) piece += "*t^" + std::to_string(k);
        out += first ? piece : " + " + piece;
        first = false;
    }
    return first ? "0" : out;
}

}  // namespace homalg

#endif
