#pragma once

#include <utility>
#include <vector>

#include "nilcx/form.hpp"

namespace nilcx {

// Structure equations: a degree-2 form assigned to each degree-1 generator,
// extended to all forms as an anti-derivation. On complex frames only the
// holomorphic rows are assignable; conjugate rows are kept as conjugates, so
// conj(d f) = d(conj f) holds by construction.
class Differential {
public:
    explicit Differential(const Frame& f)
        : frame_(f), rows_(static_cast<std::size_t>(f.generators()), Form(f, 2)) {}

    const Frame& frame() const { return frame_; }

    void set(int gen, const Form& rhs) {
        require_same_frame(frame_, rhs.frame());
        if (!rhs.is_zero() && rhs.degree() != 2)
            fail("BadDimension", "generator differential must have degree 2");
        if (frame_.is_complex()) {
            if (gen >= frame_.rank())
                fail("BadDimension", "conjugate generator rows are derived, not set");
            rows_[static_cast<std::size_t>(gen)] = rhs;
            rows_[static_cast<std::size_t>(frame_.conj_slot(gen))] = rhs.conj();
        } else {
            rows_[static_cast<std::size_t>(gen)] = rhs;
        }
    }

    const Form& of_gen(int gen) const { return rows_[static_cast<std::size_t>(gen)]; }

    // d(c e^{i1..ik}) = c sum_j (-1)^(j-1) d(e^{ij}) ^ e^{i1..^ij..ik};
    // the degree-2 factor commutes with 1-forms, so it may sit in front.
    Form apply(const Form& f) const {
        require_same_frame(frame_, f.frame());
        Form out(frame_, f.degree() + 1);
        for (const auto& [m, c] : f.terms()) {
            int pos = 0;
            for (int slot : mask_indices(m)) {
                const Form& dgen = rows_[static_cast<std::size_t>(slot)];
                if (!dgen.is_zero()) {
                    Form rest = Form::term(frame_, m & ~(Mask(1) << slot),
                                           (pos % 2 == 0) ? c : -c);
                    out = out + dgen.wedge(rest);
                }
                ++pos;
            }
        }
        return out;
    }

    // d(d(gen)) per generator; all zero iff the Jacobi identity holds for the
    // dual bracket. On complex frames only holomorphic rows are reported.
    std::vector<std::pair<int, Form>> d_squared_residuals() const {
        std::vector<std::pair<int, Form>> out;
        int count = frame_.is_complex() ? frame_.rank() : frame_.generators();
        for (int g = 0; g < count; ++g)
            out.emplace_back(g, apply(of_gen(g)));
        return out;
    }

    bool is_constant() const {
        for (const auto& r : rows_)
            if (r.uses_params()) return false;
        return true;
    }

    Differential substitute(const std::optional<Rat>& a, const std::optional<Rat>& b) const {
        Differential d(frame_);
        int count = frame_.is_complex() ? frame_.rank() : frame_.generators();
        for (int g = 0; g < count; ++g) d.set(g, of_gen(g).substitute(a, b));
        return d;
    }

    friend bool operator==(const Differential& x, const Differential& y) {
        return x.frame_ == y.frame_ && x.rows_ == y.rows_;
    }

private:
    Frame frame_;
    std::vector<Form> rows_;
};

// The (p+1,q) and (p,q+1) components of d restricted to complex frames.
// Splits the argument by bidegree first, so mixed-bidegree forms of pure
// degree are handled componentwise.
inline Form del(const Differential& d, const Form& f) {
    f.frame().require_complex();
    Form out(f.frame(), f.degree() + 1);
    for (int p = 0; p <= f.degree(); ++p) {
        Form comp = f.bidegree_project(p, f.degree() - p);
        if (comp.is_zero()) continue;
        out = out + d.apply(comp).bidegree_project(p + 1, f.degree() - p);
    }
    return out;
}

inline Form delbar(const Differential& d, const Form& f) {
    f.frame().require_complex();
    Form out(f.frame(), f.degree() + 1);
    for (int p = 0; p <= f.degree(); ++p) {
        Form comp = f.bidegree_project(p, f.degree() - p);
        if (comp.is_zero()) continue;
        out = out + d.apply(comp).bidegree_project(p, f.degree() - p + 1);
    }
    return out;
}

} // namespace nilcx
