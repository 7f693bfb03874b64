#ifndef HOMALG_COEFFEXPR_HPP
#define HOMALG_COEFFEXPR_HPP

#include <string>
#include <utility>

#include "homalg/mpoly.hpp"

namespace homalg {

/// Element of the fraction field of the parameter polynomial ring.
/// Canonical form: gcd(num, den) = 1 and den monic in grlex order;
/// equality of canonical forms is structural equality.
class CoeffExpr {
public:
    MPoly num;
    MPoly den;

    CoeffExpr() = default;
    explicit CoeffExpr(size_t nv) : num(nv), den(MPoly::one(nv)) {}
    CoeffExpr(MPoly n, MPoly d) : num(std::move(n)), den(std::move(d)) { normalize(); }
    explicit CoeffExpr(MPoly n) : num(std::move(n)), den(MPoly::one(num.nvars)) { normalize(); }

    static CoeffExpr zero(size_t nv) { return CoeffExpr(nv); }
    static CoeffExpr one(size_t nv) { return from_grat(GRat(1), nv); }
    static CoeffExpr from_grat(const GRat& c, size_t nv) {
        CoeffExpr r(nv);
        r.num = MPoly::constant(c, nv);
        return r;
    }
    static CoeffExpr from_rat(const Rat& c, size_t nv) { return from_grat(GRat(c), nv); }
    static CoeffExpr param(size_t idx, size_t nv) {
        CoeffExpr r(nv);
        r.num = MPoly::variable(idx, nv);
        return r;
    }

    size_t nvars() const { return den.nvars; }
    bool is_zero() const { return num.is_zero(); }
    bool is_one() const { return den.is_constant() && num == den; }
    bool is_polynomial() const { return den.is_constant(); }

    void normalize() {
        if (den.is_zero()) throw DivisionByZero("zero denominator");
        if (num.is_zero()) {
            den = MPoly::one(num.nvars);
            return;
        }
        if (!den.is_constant() && !num.is_constant()) {
            MPoly g = gcd(num, den);
            if (!g.is_constant()) {
                num = exact_div(num, g);
                den = exact_div(den, g);
            }
        } else if (!den.is_constant() && num.is_constant()) {
            // constants never share a factor with a nonconstant denominator
        }
        GRat lc = den.leading_coeff();
        if (!lc.is_one()) {
            GRat inv = lc.inverse();
            num = num.scaled(inv);
            den = den.scaled(inv);
        }
    }

    friend CoeffExpr operator+(const CoeffExpr& a, const CoeffExpr& b) {
        return CoeffExpr(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend CoeffExpr operator-(const CoeffExpr& a, const CoeffExpr& b) {
        return CoeffExpr(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend CoeffExpr operator-(const CoeffExpr& a) {
        CoeffExpr r = a;
        r.num = -r.num;
        return r;
    }
    friend CoeffExpr operator*(const CoeffExpr& a, const CoeffExpr& b) {
        return CoeffExpr(a.num * b.num, a.den * b.den);
    }
    friend CoeffExpr operator/(const CoeffExpr& a, const CoeffExpr& b) {
        if (b.is_zero()) throw DivisionByZero();
        return CoeffExpr(a.num * b.den, a.den * b.num);
    }
    CoeffExpr& operator+=(const CoeffExpr& o) { return *this = *this + o; }
    CoeffExpr& operator-=(const CoeffExpr& o) { return *this = *this - o; }
    CoeffExpr& operator*=(const CoeffExpr& o) { return *this = *this * o; }
    CoeffExpr& operator/=(const CoeffExpr& o) { return *this = *this / o; }

    CoeffExpr inverse() const {
        if (is_zero()) throw DivisionByZero();
        return CoeffExpr(den, num);
    }
    CoeffExpr pow(unsigned n) const {
        CoeffExpr r = one(nvars());
        for (unsigned k = 0; k < n; ++k) r *= *this;
        return r;
    }

    friend bool operator==(const CoeffExpr& a, const CoeffExpr& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const CoeffExpr& a, const CoeffExpr& b) { return !(a == b); }

    /// Evaluate at a rational (or Gaussian) parameter point; fails loudly when
    /// the denominator vanishes there.
    GRat eval(const std::vector<GRat>& point) const {
        GRat d = den.eval(point);
        if (d.is_zero()) throw SingularEvaluation("denominator vanishes at the given point");
        return num.eval(point) / d;
    }

    /// Substitute rational values for a subset of the parameters.
    CoeffExpr eval_partial(const std::map<size_t, GRat>& point) const {
        MPoly d = den.eval_partial(point);
        if (d.is_zero()) throw SingularEvaluation("denominator vanishes at the given point");
        return CoeffExpr(num.eval_partial(point), d);
    }
};

// ---------------------------------------------------------------------------
// canonical printing

namespace detail {

inline bool grat_prints_negative(const GRat& c) {
    return c.re < 0 || (c.re == 0 && c.im < 0);
}

inline std::string monomial_to_string(const Exp& e, const std::vector<std::string>& names) {
    std::string s;
    for (size_t v = 0; v < e.size(); ++v) {
        if (e[v] == 0) continue;
        if (!s.empty()) s += "*";
        s += names[v];
        if (e[v] > 1) s += "^" + std::to_string(e[v]);
    }
    return s;
}

inline std::string coeff_factor_to_string(const GRat& c) {
    // |c| as a factor in front of a monomial
    if (c.im == 0) return rat_to_string(c.re);
    if (c.re == 0) {
        if (c.im == 1) return "i";
        return rat_to_string(c.im) + "*i";
    }
    return "(" + grat_to_string(c) + ")";
}

}  // namespace detail

inline std::string mpoly_to_string(const MPoly& p, const std::vector<std::string>& names) {
    if (p.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [e, c] : p.terms) {
        bool neg = detail::grat_prints_negative(c);
        GRat mag = neg ? -c : c;
        std::string mono = detail::monomial_to_string(e, names);
        std::string piece;
        if (mono.empty()) {
            piece = grat_to_string(mag);  // sign carried by the join
        } else if (mag.is_one()) {
            piece = mono;
        } else {
            piece = detail::coeff_factor_to_string(mag) + "*" + mono;
        }
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

inline std::string to_string(const CoeffExpr& x, const Context& ctx) {
    if (x.is_polynomial()) return mpoly_to_string(x.num, ctx.params);
    return "(" + mpoly_to_string(x.num, ctx.params) + ")/(" + mpoly_to_string(x.den, ctx.params) +
           ")";
}

// ---------------------------------------------------------------------------
// parsing (shared grammar for coefficient expressions and ring polynomials)

namespace detail {

/// Recursive-descent parser over +, -, *, /, ^, parentheses, integers and
/// symbols. V must support field arithmetic; Resolver maps names to V.
template <typename V, typename Resolver>
class ExprParser {
public:
    ExprParser(const std::string& src, const Resolver& resolve, V zero)
        : src_(src), resolve_(resolve), zero_(std::move(zero)) {}

    V parse() {
        V v = expr();
        skip_ws();
        if (pos_ != src_.size()) throw ParseError("trailing input at '" + src_.substr(pos_) + "'");
        return v;
    }

private:
    const std::string& src_;
    const Resolver& resolve_;
    V zero_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    V expr() {
        V acc = eat('-') ? zero_ - term() : term();
        while (true) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                break;
        }
        return acc;
    }

    V term() {
        V acc = factor();
        while (true) {
            if (eat('*'))
                acc = acc * factor();
            else if (eat('/'))
                acc = acc / factor();
            else
                break;
        }
        return acc;
    }

    V factor() {
        if (eat('-')) return zero_ - factor();
        V base = atom();
        if (eat('^')) {
            unsigned n = uint_lit();
            V r = base;  // base^n with n >= 1 handled below; n = 0 gives 1
            if (n == 0) {
                // x^0 = 1
                return resolve_one();
            }
            for (unsigned k = 1; k < n; ++k) r = r * base;
            return r;
        }
        return base;
    }

    V resolve_one() { return resolve_("1"); }

    unsigned uint_lit() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected integer exponent");
        return static_cast<unsigned>(std::stoul(src_.substr(start, pos_ - start)));
    }

    V atom() {
        skip_ws();
        if (eat('(')) {
            V v = expr();
            if (!eat(')')) throw ParseError("expected ')'");
            return v;
        }
        if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            return resolve_(src_.substr(start, pos_ - start));
        }
        if (pos_ < src_.size() &&
            (std::isalpha(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            size_t start = pos_;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                          src_[pos_] == '_'))
                ++pos_;
            return resolve_(src_.substr(start, pos_ - start));
        }
        throw ParseError("unexpected character in '" + src_ + "' at position " +
                         std::to_string(pos_));
    }
};

}  // namespace detail

/// Parse canonical (or hand-written) coefficient text over the declared parameters.
inline CoeffExpr parse_coeff(const std::string& text, const Context& ctx) {
    size_t nv = ctx.nparams();
    auto resolve = [&](const std::string& name) -> CoeffExpr {
        if (!name.empty() && std::isdigit(static_cast<unsigned char>(name[0])))
            return CoeffExpr::from_rat(Rat(Int(name)), nv);
        if (name == "i") {
            if (!ctx.gaussian) throw ParseError("'i' used outside a Q(i) session");
            return CoeffExpr::from_grat(GRat::imaginary_unit(), nv);
        }
        int idx = ctx.param_index(name);
        if (idx < 0) throw ParseError("unknown parameter '" + name + "'");
        return CoeffExpr::param(static_cast<size_t>(idx), nv);
    };
    detail::ExprParser<CoeffExpr, decltype(resolve)> p(text, resolve, CoeffExpr::zero(nv));
    return p.parse();
}

}  // namespace homalg

#endif
