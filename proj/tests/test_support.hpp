#pragma once

#include <random>

#include "nilcx/form.hpp"
#include "nilcx/scalar.hpp"

// Deterministic generators for the randomized suites. Every test that uses
// these seeds its own engine, so failures reproduce exactly.
namespace testgen {

using nilcx::Form;
using nilcx::Frame;
using nilcx::Mask;
using nilcx::Rat;
using nilcx::Scalar;
using nilcx::Tower;

using Rng = std::mt19937_64;

inline Rat random_rat(Rng& rng, int num_range = 9, int den_range = 4) {
    std::uniform_int_distribution<int> num(-num_range, num_range);
    std::uniform_int_distribution<int> den(1, den_range);
    return nilcx::rat(num(rng), den(rng));
}

inline Tower random_tower(Rng& rng) {
    return Tower::of(random_rat(rng), random_rat(rng), random_rat(rng), random_rat(rng));
}

inline Scalar random_scalar(Rng& rng, unsigned max_deg = 2, int max_terms = 3) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<unsigned> deg(0, max_deg);
    Scalar s;
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        Scalar mono(random_tower(rng));
        unsigned da = deg(rng), db = deg(rng);
        for (unsigned k = 0; k < da; ++k) mono *= Scalar::param_a();
        for (unsigned k = 0; k < db; ++k) mono *= Scalar::param_b();
        s += mono;
    }
    return s;
}

inline Scalar random_constant_scalar(Rng& rng) { return Scalar(random_tower(rng)); }

inline Form random_form(Rng& rng, const Frame& f, int degree, int max_terms = 4,
                        bool constant_coeffs = false) {
    auto basis = nilcx::lex_masks(f.generators(), degree);
    std::uniform_int_distribution<std::size_t> pick(0, basis.empty() ? 0 : basis.size() - 1);
    std::uniform_int_distribution<int> nterms(0, max_terms);
    Form out(f, degree);
    if (basis.empty()) return out;
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        Scalar c = constant_coeffs ? random_constant_scalar(rng) : random_scalar(rng, 1, 2);
        out.add_term(basis[pick(rng)], c);
    }
    return out;
}

} // namespace testgen
