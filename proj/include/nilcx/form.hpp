#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nilcx/frame.hpp"
#include "nilcx/scalar.hpp"

namespace nilcx {

using Mask = std::uint64_t;

// Parity of the shuffle putting the concatenation (a, b) of two disjoint
// sorted index sets into sorted order: counts pairs (x in a, y in b), x > y.
inline bool merge_parity(Mask a, Mask b) {
    bool odd = false;
    while (b) {
        int pos = std::countr_zero(b);
        odd ^= (std::popcount(a >> (pos + 1)) & 1) != 0;
        b &= b - 1;
    }
    return odd;
}

// Lexicographic order on the ascending index sequences of two masks.
inline bool mask_lex_less(Mask a, Mask b) {
    while (a && b) {
        int ia = std::countr_zero(a), ib = std::countr_zero(b);
        if (ia != ib) return ia < ib;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

// All degree-k index sets of {0..n-1} as masks, in lexicographic order.
inline std::vector<Mask> lex_masks(int n, int k) {
    std::vector<Mask> out;
    if (k < 0 || k > n) return out;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) idx[static_cast<std::size_t>(j)] = j;
    while (true) {
        Mask m = 0;
        for (int j : idx) m |= Mask(1) << j;
        out.push_back(m);
        int j = k - 1;
        while (j >= 0 && idx[static_cast<std::size_t>(j)] == n - k + j) --j;
        if (j < 0) break;
        ++idx[static_cast<std::size_t>(j)];
        for (int t = j + 1; t < k; ++t)
            idx[static_cast<std::size_t>(t)] = idx[static_cast<std::size_t>(t - 1)] + 1;
    }
    return out;
}

inline std::vector<int> mask_indices(Mask m) {
    std::vector<int> out;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

// Homogeneous sparse exterior form. Terms map strictly increasing multi-
// indices (as masks) to nonzero Scalar coefficients. The empty form is the
// zero form and is compatible with any degree.
class Form {
public:
    explicit Form(const Frame& f, int degree = 0) : frame_(f), degree_(degree) {}

    static Form generator(const Frame& f, int slot) {
        Form r(f, 1);
        r.add_term(Mask(1) << slot, Scalar(1));
        return r;
    }
    static Form term(const Frame& f, Mask m, const Scalar& c) {
        Form r(f, std::popcount(m));
        r.add_term(m, c);
        return r;
    }

    const Frame& frame() const { return frame_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Mask, Scalar>& terms() const { return terms_; }

    Scalar coeff(Mask m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar() : it->second;
    }

    void add_term(Mask m, const Scalar& c) {
        if (c.is_zero()) return;
        if (std::popcount(m) != degree_)
            fail("BadDimension", "mixed-degree form term");
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_[m] = c;
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    friend Form operator+(const Form& x, const Form& y) {
        require_same_frame(x.frame_, y.frame_);
        if (x.is_zero()) return y;
        if (y.is_zero()) return x;
        if (x.degree_ != y.degree_) fail("BadDimension", "adding forms of different degree");
        Form r = x;
        for (const auto& [m, c] : y.terms_) r.add_term(m, c);
        return r;
    }
    friend Form operator-(const Form& x, const Form& y) { return x + (-y); }
    Form operator-() const {
        Form r(frame_, degree_);
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }
    friend Form operator*(const Scalar& s, const Form& f) {
        Form r(f.frame_, f.degree_);
        for (const auto& [m, c] : f.terms_) r.add_term(m, s * c);
        return r;
    }

    friend bool operator==(const Form& x, const Form& y) {
        return x.frame_ == y.frame_ && (x.is_zero() ? y.is_zero()
                   : y.degree_ == x.degree_ && x.terms_ == y.terms_);
    }
    friend bool operator!=(const Form& x, const Form& y) { return !(x == y); }

    // Graded-commutative product; repeated indices kill the term, the sign
    // is the parity of the merge shuffle.
    Form wedge(const Form& y) const {
        require_same_frame(frame_, y.frame_);
        Form r(frame_, degree_ + y.degree_);
        if (is_zero() || y.is_zero()) return r;
        for (const auto& [mx, cx] : terms_) {
            for (const auto& [my, cy] : y.terms_) {
                if (mx & my) continue;
                Scalar c = cx * cy;
                if (merge_parity(mx, my)) c = -c;
                r.add_term(mx | my, c);
            }
        }
        return r;
    }

    bool uses_params() const {
        for (const auto& [m, c] : terms_)
            if (!c.is_constant()) return true;
        return false;
    }
    Form substitute(const std::optional<Rat>& a, const std::optional<Rat>& b) const {
        Form r(frame_, degree_);
        for (const auto& [m, c] : terms_) r.add_term(m, c.substitute(a, b));
        return r;
    }
    Form conj_coefficients() const {
        Form r(frame_, degree_);
        for (const auto& [m, c] : terms_) r.add_term(m, c.conj());
        return r;
    }

    // Complex-frame conjugation: swaps w^k and cw^k slots, conjugates the
    // coefficients, and resorts with signs. A (p,q)-form goes to (q,p).
    Form conj() const {
        frame_.require_complex();
        Form r(frame_, degree_);
        int n = frame_.rank();
        Mask low = (Mask(1) << n) - 1;
        for (const auto& [m, c] : terms_) {
            Mask hol = m & low, bar = m >> n;
            Mask nm = (hol << n) | bar;
            Scalar nc = c.conj();
            // Both halves keep their internal order; crossing pairs are
            // (new-holomorphic, new-conjugate) inversions.
            if ((std::popcount(hol) * std::popcount(bar)) % 2 != 0) nc = -nc;
            r.add_term(nm, nc);
        }
        return r;
    }

    std::pair<int, int> bidegree_of(Mask m) const {
        frame_.require_complex();
        int n = frame_.rank();
        Mask low = (Mask(1) << n) - 1;
        return {std::popcount(m & low), std::popcount(m >> n)};
    }

    Form bidegree_project(int p, int q) const {
        frame_.require_complex();
        Form r(frame_, p + q);
        if (p + q != degree_) return r;
        for (const auto& [m, c] : terms_)
            if (bidegree_of(m) == std::pair<int, int>{p, q}) r.add_term(m, c);
        return r;
    }

    // DSL-syntax string with terms in lexicographic multi-index order.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::vector<Mask> order;
        for (const auto& [m, c] : terms_) order.push_back(m);
        std::sort(order.begin(), order.end(), mask_lex_less);
        std::string out;
        for (Mask m : order) {
            std::string mono;
            for (int slot : mask_indices(m))
                mono += (mono.empty() ? "" : "^") + frame_.gen_name(slot);
            const Scalar& c = terms_.at(m);
            std::string term;
            if (mono.empty()) {
                term = c.str();
            } else if (c == Scalar(1)) {
                term = mono;
            } else if (c == Scalar(-1)) {
                term = "-" + mono;
            } else {
                std::string cs = c.str();
                bool wrap = cs.find(' ') != std::string::npos ||
                            cs.find('/') != std::string::npos;
                term = (wrap ? "(" + cs + ")" : cs) + "*" + mono;
            }
            detail::append_term(out, term);
        }
        return out;
    }

private:
    Frame frame_;
    int degree_;
    std::map<Mask, Scalar> terms_;
};

inline Form wedge(const Form& x, const Form& y) { return x.wedge(y); }

} // namespace nilcx
