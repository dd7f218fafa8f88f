#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "nilcx/tower.hpp"

namespace nilcx {

// Monomial a^da * b^db, ordered lexicographically by (da, db).
struct Mono {
    unsigned da = 0, db = 0;
    friend auto operator<=>(const Mono&, const Mono&) = default;
};

// Sparse polynomial in the real parameters a, b with Tower coefficients.
// This is a commutative ring without zero divisors; no stored coefficient
// is ever zero, so equality is structural.
class Scalar {
public:
    Scalar() = default;
    Scalar(long n) { set(Mono{}, Tower(n)); }
    explicit Scalar(const Rat& r) { set(Mono{}, Tower(r)); }
    explicit Scalar(const Tower& t) { set(Mono{}, t); }

    static Scalar i() { return Scalar(Tower::i()); }
    static Scalar sqrt3() { return Scalar(Tower::sqrt3()); }
    static Scalar param_a() {
        Scalar s;
        s.set(Mono{1, 0}, Tower(1));
        return s;
    }
    static Scalar param_b() {
        Scalar s;
        s.set(Mono{0, 1}, Tower(1));
        return s;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Mono{});
    }
    bool depends_on_a() const {
        for (const auto& [m, c] : terms_)
            if (m.da > 0) return true;
        return false;
    }
    bool depends_on_b() const {
        for (const auto& [m, c] : terms_)
            if (m.db > 0) return true;
        return false;
    }

    Tower constant() const {
        if (!is_constant())
            fail("SymbolicParameters", "scalar '" + str() + "' involves parameters");
        return terms_.empty() ? Tower() : terms_.begin()->second;
    }

    const std::map<Mono, Tower>& terms() const { return terms_; }

    friend Scalar operator+(const Scalar& x, const Scalar& y) {
        Scalar r = x;
        for (const auto& [m, c] : y.terms_) r.add(m, c);
        return r;
    }
    friend Scalar operator-(const Scalar& x, const Scalar& y) {
        Scalar r = x;
        for (const auto& [m, c] : y.terms_) r.add(m, -c);
        return r;
    }
    Scalar operator-() const {
        Scalar r;
        for (const auto& [m, c] : terms_) r.set(m, -c);
        return r;
    }
    friend Scalar operator*(const Scalar& x, const Scalar& y) {
        Scalar r;
        for (const auto& [mx, cx] : x.terms_)
            for (const auto& [my, cy] : y.terms_)
                r.add(Mono{mx.da + my.da, mx.db + my.db}, cx * cy);
        return r;
    }
    Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
    Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
    Scalar& operator*=(const Scalar& y) { return *this = *this * y; }

    friend bool operator==(const Scalar& x, const Scalar& y) { return x.terms_ == y.terms_; }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

    // Coefficient-wise complex conjugation; a and b are real parameters.
    Scalar conj() const {
        Scalar r;
        for (const auto& [m, c] : terms_) r.set(m, c.conj());
        return r;
    }

    // Exact inverse; defined for nonzero constants only.
    Scalar inverse() const {
        if (is_zero()) fail("ZeroInverse", "inverse of zero");
        if (!is_constant())
            fail("NonConstant", "inverse of parameter-dependent scalar '" + str() + "'");
        return Scalar(constant().inverse());
    }

    // Full specialization; every parameter occurring here must be assigned.
    Tower evaluate(const std::optional<Rat>& a, const std::optional<Rat>& b) const {
        if (depends_on_a() && !a)
            fail("UnboundParameter", "parameter a unassigned in '" + str() + "'");
        if (depends_on_b() && !b)
            fail("UnboundParameter", "parameter b unassigned in '" + str() + "'");
        return substitute(a, b).constant();
    }

    // Partial specialization: assigned parameters are substituted, the rest stay.
    Scalar substitute(const std::optional<Rat>& a, const std::optional<Rat>& b) const {
        Scalar r;
        for (const auto& [m, c] : terms_) {
            Mono nm = m;
            Tower nc = c;
            if (a && m.da > 0) {
                nc = nc * Tower(pow_rat(*a, m.da));
                nm.da = 0;
            }
            if (b && m.db > 0) {
                nc = nc * Tower(pow_rat(*b, m.db));
                nm.db = 0;
            }
            r.add(nm, nc);
        }
        return r;
    }

    // Exact division, valid when y divides *this in the polynomial ring
    // (the Bareiss elimination only ever requests such quotients).
    Scalar divexact(const Scalar& y) const {
        if (y.is_zero()) fail("ZeroInverse", "division by zero scalar");
        if (y.is_constant()) return *this * y.inverse();
        Scalar rem = *this, quot;
        const auto& [ym, yc] = *y.terms_.rbegin();
        Tower yinv = yc.inverse();
        while (!rem.is_zero()) {
            const auto& [rm, rc] = *rem.terms_.rbegin();
            if (rm.da < ym.da || rm.db < ym.db)
                fail("NonConstant", "inexact polynomial division");
            Scalar t;
            t.set(Mono{rm.da - ym.da, rm.db - ym.db}, rc * yinv);
            quot += t;
            rem -= t * y;
        }
        return quot;
    }

    // Exact string in the DSL scalar syntax; terms ordered by monomial,
    // tower basis elements split into separate summands for round-tripping.
    std::string str() const {
        static const char* syms[4] = {"", "i", "s3", "i*s3"};
        std::string out;
        for (const auto& [m, c] : terms_) {
            std::string vars;
            for (unsigned k = 0; k < m.da; ++k) vars += vars.empty() ? "a" : "*a";
            for (unsigned k = 0; k < m.db; ++k) vars += vars.empty() ? "b" : "*b";
            for (int k = 0; k < 4; ++k) {
                if (c.coord(k) == 0) continue;
                std::string sym = syms[k];
                if (!sym.empty() && !vars.empty()) sym += "*" + vars;
                else if (sym.empty()) sym = vars;
                detail::append_term(out, detail::coeff_term(c.coord(k), sym));
            }
        }
        return out.empty() ? "0" : out;
    }

private:
    static Rat pow_rat(const Rat& base, unsigned e) {
        Rat r = 1;
        for (unsigned k = 0; k < e; ++k) r *= base;
        return r;
    }

    void set(const Mono& m, const Tower& c) {
        if (!c.is_zero()) terms_[m] = c;
    }
    void add(const Mono& m, const Tower& c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            set(m, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    std::map<Mono, Tower> terms_;
};

inline Scalar operator*(long n, const Scalar& s) { return Scalar(n) * s; }

} // namespace nilcx
