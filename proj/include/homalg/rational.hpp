#ifndef HOMALG_RATIONAL_HPP
#define HOMALG_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "homalg/errors.hpp"

namespace homalg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string rat_to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Element of Q(i), stored as re + im*i with i^2 = -1.
struct GRat {
    Rat re;
    Rat im;

    GRat() = default;
    GRat(Rat r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    GRat(long n) : re(n) {}            // NOLINT(google-explicit-constructor)
    GRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static GRat imaginary_unit() { return GRat{Rat(0), Rat(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return re == 1 && im == 0; }
    bool is_rational() const { return im == 0; }

    GRat conj() const { return GRat{re, -im}; }

    Rat norm() const { return re * re + im * im; }

    friend GRat operator+(const GRat& a, const GRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend GRat operator-(const GRat& a, const GRat& b) { return {a.re - b.re, a.im - b.im}; }
    friend GRat operator-(const GRat& a) { return {-a.re, -a.im}; }
    friend GRat operator*(const GRat& a, const GRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GRat operator/(const GRat& a, const GRat& b) {
        if (b.is_zero()) throw DivisionByZero();
        Rat n = b.norm();
        GRat c = a * b.conj();
        return {c.re / n, c.im / n};
    }
    GRat& operator+=(const GRat& o) { return *this = *this + o; }
    GRat& operator-=(const GRat& o) { return *this = *this - o; }
    GRat& operator*=(const GRat& o) { return *this = *this * o; }
    GRat& operator/=(const GRat& o) { return *this = *this / o; }

    GRat inverse() const { return GRat{Rat(1)} / *this; }

    friend bool operator==(const GRat& a, const GRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GRat& a, const GRat& b) { return !(a == b); }

    // Total order used only for deterministic serialization.
    friend bool operator<(const GRat& a, const GRat& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }
};

/// Canonical text: "3", "-1/2", "i", "-i", "2*i", "1+i", "1/2-3*i".
inline std::string grat_to_string(const GRat& c) {
    if (c.im == 0) return rat_to_string(c.re);
    std::string im_part;
    if (c.im == 1)
        im_part = "i";
    else if (c.im == -1)
        im_part = "-i";
    else
        im_part = rat_to_string(c.im) + "*i";
    if (c.re == 0) return im_part;
    std::string s = rat_to_string(c.re);
    if (c.im > 0) s += "+";
    return s + im_part;
}

}  // namespace homalg

#endif
