#pragma once

#include <gmpxx.h>

#include <array>
#include <string>

#include "nilcx/errors.hpp"

namespace nilcx {

using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

// Parses "p", "-p" or "p/q" written in base 10.
inline Rat parse_rat(const std::string& text) {
    Rat r;
    if (r.set_str(text, 10) != 0)
        fail("ParseError", "bad rational literal '" + text + "'");
    if (r.get_den() == 0)
        fail("ParseError", "zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
}

// Element of Q(i)(sqrt 3) stored on the basis {1, i, s, i*s} with s = sqrt 3.
// Multiplication respects i^2 = -1 and s^2 = 3; equality is coordinate-wise
// on reduced fractions, so the representation is canonical.
class Tower {
public:
    Tower() : c_{} {}
    Tower(long n) : c_{} { c_[0] = rat(n); }
    explicit Tower(const Rat& r) : c_{} { c_[0] = r; }

    static Tower of(Rat c0, Rat c1, Rat c2, Rat c3) {
        Tower t;
        t.c_ = {std::move(c0), std::move(c1), std::move(c2), std::move(c3)};
        return t;
    }
    static Tower i() { return of(0, 1, 0, 0); }
    static Tower sqrt3() { return of(0, 0, 1, 0); }

    const Rat& coord(int k) const { return c_[static_cast<std::size_t>(k)]; }

    bool is_zero() const {
        return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
    }
    bool is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
    // Fixed by complex conjugation, i.e. lies in Q(sqrt 3).
    bool is_real() const { return c_[1] == 0 && c_[3] == 0; }

    Rat rational() const {
        if (!is_rational()) fail("NonConstant", "tower element is not rational");
        return c_[0];
    }

    friend Tower operator+(const Tower& x, const Tower& y) {
        Tower r;
        for (int k = 0; k < 4; ++k) r.c_[k] = x.c_[k] + y.c_[k];
        return r;
    }
    friend Tower operator-(const Tower& x, const Tower& y) {
        Tower r;
        for (int k = 0; k < 4; ++k) r.c_[k] = x.c_[k] - y.c_[k];
        return r;
    }
    Tower operator-() const {
        Tower r;
        for (int k = 0; k < 4; ++k) r.c_[k] = -c_[k];
        return r;
    }
    friend Tower operator*(const Tower& x, const Tower& y) {
        const auto& a = x.c_;
        const auto& b = y.c_;
        Tower r;
        r.c_[0] = a[0] * b[0] - a[1] * b[1] + 3 * (a[2] * b[2] - a[3] * b[3]);
        r.c_[1] = a[0] * b[1] + a[1] * b[0] + 3 * (a[2] * b[3] + a[3] * b[2]);
        r.c_[2] = a[0] * b[2] + a[2] * b[0] - a[1] * b[3] - a[3] * b[1];
        r.c_[3] = a[0] * b[3] + a[3] * b[0] + a[1] * b[2] + a[2] * b[1];
        return r;
    }
    Tower& operator+=(const Tower& y) { return *this = *this + y; }
    Tower& operator-=(const Tower& y) { return *this = *this - y; }
    Tower& operator*=(const Tower& y) { return *this = *this * y; }

    friend bool operator==(const Tower& x, const Tower& y) { return x.c_ == y.c_; }
    friend bool operator!=(const Tower& x, const Tower& y) { return !(x == y); }

    // i -> -i, fixing sqrt 3.
    Tower conj() const { return of(c_[0], -c_[1], c_[2], -c_[3]); }
    // sqrt 3 -> -sqrt 3, fixing i.
    Tower conj_sqrt3() const { return of(c_[0], c_[1], -c_[2], -c_[3]); }

    // Exact inverse via the product of the three nontrivial conjugates: the
    // full norm x * conj(x) * conj_s(x) * conj(conj_s(x)) is rational.
    Tower inverse() const {
        if (is_zero()) fail("ZeroInverse", "division by zero tower element");
        Tower num = conj() * conj_sqrt3() * conj_sqrt3().conj();
        Tower norm = *this * num;
        // The norm is rational by Galois symmetry.
        Rat n = norm.rational();
        Tower r;
        for (int k = 0; k < 4; ++k) r.c_[k] = num.c_[k] / n;
        return r;
    }

    Tower div(const Tower& y) const { return *this * y.inverse(); }

    // Exact sign of a real element c0 + c2*sqrt3; requires is_real().
    int sign_real() const {
        if (!is_real()) fail("NonConstant", "sign of a non-real tower element");
        int s0 = sgn(c_[0]), s2 = sgn(c_[2]);
        if (s2 == 0) return s0;
        if (s0 == 0) return s2;
        if (s0 == s2) return s0;
        Rat d = c_[0] * c_[0] - 3 * c_[2] * c_[2];
        return s0 * sgn(d);
    }

    // Exact string in the DSL scalar syntax, e.g. "-1/2 + (3/4)*i + s3".
    std::string str() const;

private:
    static int sgn(const Rat& r) { return mpq_sgn(r.get_mpq_t()); }

    std::array<Rat, 4> c_;
};

namespace detail {

// One signed product like "(3/2)*i*s3"; used by Tower and Scalar printing.
inline std::string coeff_term(const Rat& r, const std::string& sym) {
    if (sym.empty()) return rat_str(r);
    if (r == 1) return sym;
    if (r == -1) return "-" + sym;
    std::string c = rat_str(r);
    if (r.get_den() != 1) c = "(" + c + ")";
    return c + "*" + sym;
}

inline void append_term(std::string& out, const std::string& term) {
    if (out.empty()) {
        out = term;
    } else if (!term.empty() && term[0] == '-') {
        out += " - " + term.substr(1);
    } else {
        out += " + " + term;
    }
}

} // namespace detail

inline std::string Tower::str() const {
    static const char* syms[4] = {"", "i", "s3", "i*s3"};
    std::string out;
    for (int k = 0; k < 4; ++k)
        if (c_[k] != 0) detail::append_term(out, detail::coeff_term(c_[k], syms[k]));
    return out.empty() ? "0" : out;
}

} // namespace nilcx
