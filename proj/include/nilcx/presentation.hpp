#pragma once

#include <string>
#include <utility>

#include "nilcx/differential.hpp"
#include "nilcx/linalg.hpp"

namespace nilcx {

// Extends a generator-wise linear map to an algebra morphism of forms:
// each generator slot of f's frame is replaced by the given 1-form over the
// target frame and the term is re-expanded as a wedge product.
inline Form pullback(const Form& f, const Frame& target, const std::vector<Form>& gen_images) {
    Form out(target, f.degree());
    for (const auto& [m, c] : f.terms()) {
        Form acc = Form::term(target, 0, c);
        for (int slot : mask_indices(m)) {
            acc = acc.wedge(gen_images[static_cast<std::size_t>(slot)]);
            if (acc.is_zero()) break;
        }
        out = out + acc;
    }
    return out;
}

// A Lie algebra given by its structure equations on the dual. The checked
// constructor verifies d^2 = 0 (equivalently the Jacobi identity); raw skips
// the check so Jacobi failures can themselves be inspected.
class Presentation {
public:
    static Presentation checked(std::string name, Differential d) {
        for (const auto& [g, r] : d.d_squared_residuals())
            if (!r.is_zero())
                fail("JacobiFailure", "d^2 != 0 on generator " + d.frame().gen_name(g) +
                                          " of " + name + ": " + r.str());
        return Presentation(std::move(name), std::move(d));
    }
    static Presentation raw(std::string name, Differential d) {
        return Presentation(std::move(name), std::move(d));
    }

    const std::string& name() const { return name_; }
    const Frame& frame() const { return d_.frame(); }
    const Differential& differential() const { return d_; }

    bool is_constant() const { return d_.is_constant(); }
    void require_constant() const {
        if (!is_constant())
            fail("SymbolicParameters",
                 name_ + " has parameter-dependent structure constants; specialize first");
    }

    Presentation substitute(const std::optional<Rat>& a, const std::optional<Rat>& b) const {
        std::string n = name_;
        if (a) n += "[a=" + rat_str(*a) + "]";
        if (b) n += "[b=" + rat_str(*b) + "]";
        return Presentation(std::move(n), d_.substitute(a, b));
    }

    // Coordinates of [x_i, x_j] on the dual-basis vectors: with the
    // Maurer-Cartan convention d e^k = -sum_{i<j} gamma^k_{ij} e^{ij}, the
    // coefficient read off the structure equations is negated.
    Vec<Scalar> bracket(int i, int j) const {
        const int n = frame().generators();
        Vec<Scalar> out(static_cast<std::size_t>(n));
        if (i == j) return out;
        bool flip = i > j;
        if (flip) std::swap(i, j);
        Mask m = (Mask(1) << i) | (Mask(1) << j);
        for (int k = 0; k < n; ++k) {
            Scalar c = d_.of_gen(k).coeff(m);
            if (c.is_zero()) continue;
            out[static_cast<std::size_t>(k)] = flip ? c : -c;
        }
        return out;
    }

    friend bool operator==(const Presentation& x, const Presentation& y) {
        return x.d_ == y.d_;
    }

private:
    Presentation(std::string name, Differential d) : name_(std::move(name)), d_(std::move(d)) {}

    std::string name_;
    Differential d_;
};

} // namespace nilcx
