#pragma once

#include <string>
#include <vector>

#include "nilcx/presentation.hpp"

namespace nilcx {

// Hermitian coefficient matrix h on a complex frame of rank n, with the
// fundamental (1,1)-form F = i sum h[j][k] w^j ^ cw^k. Hermitian symmetry
// h[k][j] = conj(h[j][k]) is exact and checked, which makes conj(F) = F.
class HermitianForm {
public:
    HermitianForm(const Frame& f, Mat<Scalar> h) : frame_(f), h_(std::move(h)) {
        f.require_complex();
        const int n = f.rank();
        if (static_cast<int>(h_.size()) != n)
            fail("DimensionMismatch", "metric matrix must be rank x rank");
        for (const auto& row : h_)
            if (static_cast<int>(row.size()) != n)
                fail("DimensionMismatch", "metric matrix must be square");
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (h_[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] !=
                    h_[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)].conj())
                    fail("NotHermitian", "matrix entries are not Hermitian-symmetric");
    }

    // Displayed matrix with an explicit global factor, so transcriptions can
    // be entered exactly as printed (e.g. a display that defines 2F).
    static HermitianForm scaled(const Frame& f, const Mat<Scalar>& displayed,
                                const Scalar& factor) {
        Mat<Scalar> h = displayed;
        for (auto& row : h)
            for (auto& c : row) c = factor * c;
        return HermitianForm(f, std::move(h));
    }

    const Frame& frame() const { return frame_; }
    const Mat<Scalar>& matrix() const { return h_; }

    Form fundamental() const {
        const int n = frame_.rank();
        Form f(frame_, 2);
        Scalar i = Scalar::i();
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Scalar& c = h_[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
                if (c.is_zero()) continue;
                // w^j comes before cw^k in the canonical slot order.
                f.add_term((Mask(1) << j) | (Mask(1) << (n + k)), i * c);
            }
        return f;
    }

    HermitianForm substitute(const std::optional<Rat>& a, const std::optional<Rat>& b) const {
        Mat<Scalar> h = h_;
        for (auto& row : h)
            for (auto& c : row) c = c.substitute(a, b);
        return HermitianForm(frame_, std::move(h));
    }

    HermitianForm scale(const Rat& t) const {
        Mat<Scalar> h = h_;
        for (auto& row : h)
            for (auto& c : row) c = Scalar(t) * c;
        return HermitianForm(frame_, std::move(h));
    }

private:
    Frame frame_;
    Mat<Scalar> h_;
};

enum class PositivityVerdict {
    PositiveDefinite,
    PositiveForPositiveParams,
    NotPositiveDefinite,
    NeedsSpecialization,
};

inline const char* to_string(PositivityVerdict v) {
    switch (v) {
        case PositivityVerdict::PositiveDefinite: return "positive-definite";
        case PositivityVerdict::PositiveForPositiveParams: return "positive-for-positive-parameters";
        case PositivityVerdict::NotPositiveDefinite: return "not positive-definite";
        case PositivityVerdict::NeedsSpecialization: return "needs specialization";
    }
    return "?";
}

struct PositivityReport {
    std::vector<Scalar> minors; // leading principal minors, real scalars
    PositivityVerdict verdict = PositivityVerdict::NeedsSpecialization;
};

// Leading principal minors of the coefficient matrix with an exact verdict:
// positive rational/real constants give positive-definite; nonzero minors
// whose monomial coefficients are all nonnegative are positive for every
// positive parameter value; anything else needs specialization.
inline PositivityReport positivity_report(const HermitianForm& F) {
    const int n = F.frame().rank();
    PositivityReport out;
    bool all_constant = true, any_bad_constant = false, all_param_safe = true;
    for (int k = 1; k <= n; ++k) {
        Mat<Scalar> sub(static_cast<std::size_t>(k), Vec<Scalar>(static_cast<std::size_t>(k)));
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c)
                sub[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                    F.matrix()[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        Scalar minor = det(sub);
        if (minor != minor.conj())
            fail("NotHermitian", "principal minor is not real");
        if (minor.is_constant()) {
            if (minor.constant().sign_real() <= 0) any_bad_constant = true;
        } else {
            all_constant = false;
        }
        if (minor.is_zero()) {
            all_param_safe = false;
        } else {
            for (const auto& [m, c] : minor.terms())
                if (c.sign_real() < 0) all_param_safe = false;
        }
        out.minors.push_back(std::move(minor));
    }
    if (any_bad_constant)
        out.verdict = PositivityVerdict::NotPositiveDefinite;
    else if (all_constant)
        out.verdict = PositivityVerdict::PositiveDefinite;
    else if (all_param_safe)
        out.verdict = PositivityVerdict::PositiveForPositiveParams;
    else
        out.verdict = PositivityVerdict::NeedsSpecialization;
    return out;
}

inline Form wedge_power(const Form& f, int p) {
    Form out = Form::term(f.frame(), 0, Scalar(1));
    for (int t = 0; t < p; ++t) out = out.wedge(f);
    return out;
}

// The invariant reduction of the k-th Gauduchon constant: the unique scalar
// c with (i/2) del delbar(F^k) ^ F^{n-k-1} = c F^n, as a ratio of top-form
// coefficients. Vanishes iff F is k-th Gauduchon.
inline Scalar gauduchon_constant(const Presentation& g, const HermitianForm& F, int k) {
    g.frame().require_complex();
    require_same_frame(g.frame(), F.frame());
    const int n = g.frame().rank();
    if (k < 1 || k > n - 1) fail("BadK", "k must lie in 1..n-1");
    Form f = F.fundamental();
    Form fn = wedge_power(f, n);
    if (fn.is_zero()) fail("DegenerateMetric", "F^n = 0");
    const Differential& d = g.differential();
    Form lhs = Scalar(rat(1, 2)) * (Scalar::i() *
               del(d, delbar(d, wedge_power(f, k))).wedge(wedge_power(f, n - k - 1)));
    if (lhs.is_zero()) return Scalar();
    Mask top = (Mask(1) << (2 * n)) - 1;
    Scalar num = lhs.coeff(top), den = fn.coeff(top);
    try {
        return num.divexact(den);
    } catch (const Error&) {
        fail("SymbolicParameters",
             "constant is not polynomial in the parameters; specialize first");
    }
}

enum class MetricCondition { Gauduchon, Balanced, Skt, AsthenoKahler, StronglyGauduchon };

struct ConditionReport {
    bool holds = false;
    Form witness;            // nonzero residual, or the solved potential
    std::string certificate; // human-readable rank/solve evidence
    explicit ConditionReport(const Frame& f) : witness(f, 0) {}
};

inline ConditionReport condition_check(const Presentation& g, const HermitianForm& F,
                                       MetricCondition cond, int k = 0) {
    g.frame().require_complex();
    require_same_frame(g.frame(), F.frame());
    const int n = g.frame().rank();
    const Differential& d = g.differential();
    Form f = F.fundamental();
    ConditionReport out(g.frame());

    auto residual_report = [&](const Form& residual, const std::string& what) {
        out.holds = residual.is_zero();
        out.witness = residual;
        out.certificate = out.holds ? what + " residual vanishes" : what + " residual is nonzero";
        return out;
    };

    switch (cond) {
        case MetricCondition::Gauduchon:
            if (k < 1 || k > n - 1) fail("BadK", "k must lie in 1..n-1");
            return residual_report(
                del(d, delbar(d, wedge_power(f, k))).wedge(wedge_power(f, n - k - 1)),
                "del delbar F^" + std::to_string(k) + " ^ F^" + std::to_string(n - k - 1));
        case MetricCondition::Balanced:
            return residual_report(d.apply(wedge_power(f, n - 1)),
                                   "d F^" + std::to_string(n - 1));
        case MetricCondition::Skt:
            return residual_report(del(d, delbar(d, f)), "del delbar F");
        case MetricCondition::AsthenoKahler:
            return residual_report(del(d, delbar(d, wedge_power(f, n - 2))),
                                   "del delbar F^" + std::to_string(n - 2));
        case MetricCondition::StronglyGauduchon:
            break;
    }

    // Strongly Gauduchon: solve del F^{n-1} = delbar(gamma) over the
    // invariant (n, n-2)-forms; a solution gamma is the witness, otherwise
    // the rank pair certifies unsolvability.
    Form rhs = del(d, wedge_power(f, n - 1));
    if (rhs.is_zero()) {
        out.holds = true;
        out.witness = Form(g.frame(), 2 * n - 2);
        out.certificate = "del F^" + std::to_string(n - 1) + " = 0; gamma = 0";
        return out;
    }
    Mask holo_full = (Mask(1) << n) - 1;
    std::vector<Mask> dom, codom;
    for (Mask m : lex_masks(n, n - 2)) dom.push_back(holo_full | (m << n));
    for (Mask m : lex_masks(n, n - 1)) codom.push_back(holo_full | (m << n));

    auto coords_in = [&](const Form& x, const std::vector<Mask>& basis) {
        Vec<Tower> v(basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j) {
            Scalar c = x.coeff(basis[j]);
            if (!c.is_zero()) v[j] = c.constant();
        }
        return v;
    };

    Mat<Tower> a(codom.size(), Vec<Tower>(dom.size()));
    for (std::size_t j = 0; j < dom.size(); ++j) {
        Form db = delbar(d, Form::term(g.frame(), dom[j], Scalar(1)));
        Vec<Tower> col = coords_in(db, codom);
        for (std::size_t r = 0; r < codom.size(); ++r)
            if (!col[r].is_zero()) a[r][j] = col[r];
    }
    TowerSolve s = solve(a, coords_in(rhs, codom));
    if (s.solution) {
        Form gamma(g.frame(), 2 * n - 2);
        for (std::size_t j = 0; j < dom.size(); ++j)
            if (!(*s.solution)[j].is_zero())
                gamma.add_term(dom[j], Scalar((*s.solution)[j]));
        out.holds = true;
        out.witness = gamma;
        out.certificate = "gamma solves delbar(gamma) = del F^" + std::to_string(n - 1);
    } else {
        out.holds = false;
        out.witness = rhs;
        out.certificate = "unsolvable: rank A = " + std::to_string(s.rank_a) +
                          ", rank [A|b] = " + std::to_string(s.rank_augmented);
    }
    return out;
}

} // namespace nilcx
