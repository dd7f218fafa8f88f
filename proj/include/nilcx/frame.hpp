#pragma once

#include <cstdint>
#include <string>

#include "nilcx/errors.hpp"

namespace nilcx {

enum class FrameKind { Real, Complex };

// A fixed coframe. Real flavor: generators e1..en. Complex flavor of rank n:
// generators w1..wn followed by their conjugates cw1..cwn, so generator slots
// 0..n-1 are holomorphic and n..2n-1 are conjugate. Multi-indices elsewhere
// are bitmasks over these slots, which makes the canonical order (holomorphic
// before conjugate, ascending) structural.
class Frame {
public:
    static Frame real(int n) { return Frame(FrameKind::Real, n); }
    static Frame complex(int rank) { return Frame(FrameKind::Complex, rank); }

    FrameKind kind() const { return kind_; }
    bool is_complex() const { return kind_ == FrameKind::Complex; }
    int rank() const { return rank_; }
    int generators() const { return is_complex() ? 2 * rank_ : rank_; }

    int conj_slot(int g) const {
        require_complex();
        return g < rank_ ? g + rank_ : g - rank_;
    }

    std::string gen_name(int g) const {
        if (!is_complex()) return "e" + std::to_string(g + 1);
        return g < rank_ ? "w" + std::to_string(g + 1)
                         : "cw" + std::to_string(g - rank_ + 1);
    }

    void require_complex() const {
        if (!is_complex()) fail("RealFrame", "operation needs a complex frame");
    }

    friend bool operator==(const Frame&, const Frame&) = default;

private:
    Frame(FrameKind k, int rank) : kind_(k), rank_(rank) {
        if (rank < 1 || generators() > 60)
            fail("BadDimension", "frame rank out of range: " + std::to_string(rank));
    }

    FrameKind kind_;
    int rank_;
};

inline void require_same_frame(const Frame& f, const Frame& g) {
    if (!(f == g)) fail("FrameMismatch", "forms live over different frames");
}

} // namespace nilcx
