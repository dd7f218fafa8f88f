#pragma once

#include <optional>
#include <random>
#include <vector>

#include "nilcx/liealg.hpp"

namespace nilcx {

struct CohomologySpace {
    int degree = 0;
    int dim = 0;
    std::vector<Form> reps; // closed, coboundary-reduced, leading coefficient 1
};

// The exterior complex of a specialized presentation with cached exact
// linear algebra per degree. Column and pivot order everywhere follows the
// lexicographic multi-index order, so bases and representatives are
// reproducible.
class CochainComplex {
public:
    explicit CochainComplex(Presentation g) : g_(std::move(g)) {
        g_.require_constant();
        n_ = g_.frame().generators();
        basis_.resize(static_cast<std::size_t>(n_) + 2);
        images_.resize(static_cast<std::size_t>(n_) + 2);
        spaces_.resize(static_cast<std::size_t>(n_) + 1);
    }

    const Presentation& presentation() const { return g_; }
    int n() const { return n_; }

    const std::vector<Mask>& basis(int k) {
        auto& slot = basis_[static_cast<std::size_t>(k + 1)];
        if (!slot) slot = lex_masks(n_, k);
        return *slot;
    }

    int dim_forms(int k) { return static_cast<int>(basis(k).size()); }

    Vec<Tower> to_coords(const Form& f, int k) {
        const auto& bs = basis(k);
        Vec<Tower> v(bs.size());
        std::size_t written = 0;
        for (std::size_t j = 0; j < bs.size(); ++j) {
            Scalar c = f.coeff(bs[j]);
            if (!c.is_zero()) {
                v[j] = c.constant();
                ++written;
            }
        }
        if (written != f.terms().size())
            fail("BadDimension", "form does not live in the expected degree");
        return v;
    }

    Form from_coords(const Vec<Tower>& v, int k) {
        const auto& bs = basis(k);
        Form f(g_.frame(), k);
        for (std::size_t j = 0; j < bs.size(); ++j)
            if (!v[j].is_zero()) f.add_term(bs[j], Scalar(v[j]));
        return f;
    }

    bool is_closed(const Form& f) { return g_.differential().apply(f).is_zero(); }

    // Span of the exact k-forms, canonical RREF.
    const RowReducer& image_reducer(int k) {
        auto& slot = images_[static_cast<std::size_t>(k + 1)];
        if (slot) return *slot;
        slot.emplace(dim_forms(k));
        if (k >= 1) {
            for (Mask m : basis(k - 1)) {
                Form df = g_.differential().apply(Form::term(g_.frame(), m, Scalar(1)));
                if (!df.is_zero()) slot->insert(to_coords(df, k));
            }
        }
        return *slot;
    }

    // Canonical kernel basis of d: Lambda^k -> Lambda^{k+1}.
    std::vector<Vec<Tower>> kernel(int k) {
        const auto& domain = basis(k);
        Mat<Tower> m(basis(k + 1).size(), Vec<Tower>(domain.size()));
        for (std::size_t j = 0; j < domain.size(); ++j) {
            Form df = g_.differential().apply(Form::term(g_.frame(), domain[j], Scalar(1)));
            Vec<Tower> col = to_coords(df, k + 1);
            for (std::size_t r = 0; r < col.size(); ++r)
                if (!col[r].is_zero()) m[r][j] = col[r];
        }
        return kernel_basis(m, static_cast<int>(domain.size()));
    }

    const CohomologySpace& representatives(int k) {
        auto& slot = spaces_[static_cast<std::size_t>(k)];
        if (slot) return *slot;
        const RowReducer& img = image_reducer(k);
        RowReducer seen(dim_forms(k));
        for (const auto& row : img.basis()) seen.insert(row);
        CohomologySpace space;
        space.degree = k;
        for (const auto& z : kernel(k)) {
            if (!seen.insert(z)) continue;
            Vec<Tower> w = img.reduce(z);
            Tower lead;
            for (const auto& x : w)
                if (!x.is_zero()) {
                    lead = x;
                    break;
                }
            Tower inv = lead.inverse();
            for (auto& x : w) x *= inv;
            space.reps.push_back(from_coords(w, k));
        }
        space.dim = static_cast<int>(space.reps.size());
        slot = std::move(space);
        return *slot;
    }

    int betti(int k) {
        if (k < 0 || k > n_) return 0;
        return representatives(k).dim;
    }

    // Coordinates of a closed form's class on the canonical representatives.
    Vec<Tower> reduce_to_classes(const Form& f, int k) {
        if (!is_closed(f)) fail("NotClosed", "form is not closed: d != 0");
        const CohomologySpace& space = representatives(k);
        Vec<Tower> w = image_reducer(k).reduce(to_coords(f, k));
        Mat<Tower> a(w.size(), Vec<Tower>(space.reps.size()));
        for (std::size_t j = 0; j < space.reps.size(); ++j) {
            Vec<Tower> col = to_coords(space.reps[j], k);
            for (std::size_t r = 0; r < col.size(); ++r)
                if (!col[r].is_zero()) a[r][j] = col[r];
        }
        TowerSolve s = solve(a, w);
        if (!s.solution)
            fail("NotClosed", "closed form failed to reduce to representative classes");
        return *s.solution;
    }

private:
    Presentation g_;
    int n_ = 0;
    std::vector<std::optional<std::vector<Mask>>> basis_;   // index k+1
    std::vector<std::optional<RowReducer>> images_;         // index k+1
    std::vector<std::optional<CohomologySpace>> spaces_;    // index k
};

inline std::vector<int> betti_numbers(const Presentation& g, int k_max) {
    CochainComplex cc(g);
    std::vector<int> out;
    for (int k = 1; k <= k_max; ++k) out.push_back(cc.betti(k));
    return out;
}

struct CupResult {
    int degree = 0;
    Vec<Tower> coords;   // on the canonical representative basis
    Form representative; // sum coords * reps
    bool is_zero() const {
        for (const auto& c : coords)
            if (!c.is_zero()) return false;
        return true;
    }
};

// Wedge of closed forms descended to cohomology; independent of the choice
// of representatives inside each class.
inline CupResult cup(CochainComplex& cc, const std::vector<Form>& classes) {
    if (classes.empty()) fail("UsageError", "cup product needs at least one class");
    Form prod = classes.front();
    if (!cc.is_closed(prod)) fail("NotClosed", "cup input is not closed");
    for (std::size_t i = 1; i < classes.size(); ++i) {
        if (!cc.is_closed(classes[i])) fail("NotClosed", "cup input is not closed");
        prod = prod.wedge(classes[i]);
    }
    CupResult out;
    out.degree = prod.degree();
    out.coords = cc.reduce_to_classes(prod, out.degree);
    const auto& reps = cc.representatives(out.degree).reps;
    Form rep(cc.presentation().frame(), out.degree);
    for (std::size_t j = 0; j < reps.size(); ++j)
        if (!out.coords[j].is_zero()) rep = rep + Scalar(out.coords[j]) * reps[j];
    out.representative = rep;
    return out;
}

inline CupResult cup(const Presentation& g, const std::vector<Form>& classes) {
    CochainComplex cc(g);
    return cup(cc, classes);
}

// Expansion of (sum_i lambda_i [r_i])^power as a polynomial in the lambda
// indeterminates with coefficients in H^{2 power}: one entry per exponent
// vector with a nonzero class, scaled by the multinomial coefficient.
struct GenericPowerPoly {
    int power = 0;
    int monomials_considered = 0;
    std::map<std::vector<unsigned>, Vec<Tower>> nonzero; // exponents -> class coords
    bool identically_zero() const { return nonzero.empty(); }
};

inline GenericPowerPoly generic_cup_power(CochainComplex& cc, int power) {
    const auto& reps = cc.representatives(2).reps;
    const int b2 = static_cast<int>(reps.size());
    GenericPowerPoly out;
    out.power = power;
    if (b2 == 0) return out;

    std::vector<int> pick(static_cast<std::size_t>(power), 0); // nondecreasing indices
    while (true) {
        ++out.monomials_considered;
        Form prod = reps[static_cast<std::size_t>(pick[0])];
        for (int t = 1; t < power; ++t)
            prod = prod.wedge(reps[static_cast<std::size_t>(pick[static_cast<std::size_t>(t)])]);
        if (!prod.is_zero()) {
            Vec<Tower> cls = cc.reduce_to_classes(prod, 2 * power);
            bool nz = false;
            for (const auto& c : cls) nz = nz || !c.is_zero();
            if (nz) {
                std::vector<unsigned> exps(static_cast<std::size_t>(b2), 0);
                for (int t = 0; t < power; ++t) ++exps[static_cast<std::size_t>(pick[static_cast<std::size_t>(t)])];
                // multinomial power! / prod(mult!)
                Rat mult = 1;
                for (int k = 2; k <= power; ++k) mult *= k;
                for (unsigned e : exps)
                    for (unsigned k = 2; k <= e; ++k) mult /= static_cast<long>(k);
                Tower factor{mult};
                for (auto& c : cls) c *= factor;
                out.nonzero[exps] = std::move(cls);
            }
        }
        // next nondecreasing multiset
        int t = power - 1;
        while (t >= 0 && pick[static_cast<std::size_t>(t)] == b2 - 1) --t;
        if (t < 0) break;
        int v = pick[static_cast<std::size_t>(t)] + 1;
        for (int s = t; s < power; ++s) pick[static_cast<std::size_t>(s)] = v;
    }
    return out;
}

struct SymplecticReport {
    int power = 0;
    int monomials_considered = 0;
    bool no_symplectic = false;
    std::optional<Vec<Rat>> witness_lambda; // set when inconclusive
    Form witness_class;                     // nonzero top class for the witness
    explicit SymplecticReport(const Frame& f) : witness_class(f, 0) {}
};

// Top cup power of the generic degree-2 class. Identically zero proves that
// every invariant class is degenerate, hence no symplectic structure exists;
// otherwise a specific lambda assignment with nonzero top power is exhibited.
inline SymplecticReport symplectic_obstruction(const Presentation& g) {
    const int n = g.frame().generators();
    if (n % 2 != 0) fail("BadDimension", "symplectic obstruction needs even dimension");
    const int m = n / 2;
    CochainComplex cc(g);
    GenericPowerPoly poly = generic_cup_power(cc, m);
    SymplecticReport out(g.frame());
    out.power = m;
    out.monomials_considered = poly.monomials_considered;
    out.no_symplectic = poly.identically_zero();
    if (out.no_symplectic) return out;

    const auto& reps = cc.representatives(2).reps;
    std::mt19937_64 rng(0x6e696c63ULL);
    for (int attempt = 0; attempt < 512; ++attempt) {
        Vec<Rat> lambda(reps.size());
        if (attempt == 0) {
            for (auto& x : lambda) x = 1;
        } else {
            std::uniform_int_distribution<long> d(1, 8 + 8 * attempt);
            for (auto& x : lambda) x = d(rng);
        }
        Form z(g.frame(), 2);
        for (std::size_t j = 0; j < reps.size(); ++j) z = z + Scalar(lambda[j]) * reps[j];
        Form top = z;
        for (int t = 1; t < m; ++t) top = top.wedge(z);
        if (top.is_zero()) continue;
        Vec<Tower> cls = cc.reduce_to_classes(top, 2 * m);
        bool nz = false;
        for (const auto& c : cls) nz = nz || !c.is_zero();
        if (!nz) continue;
        out.witness_lambda = std::move(lambda);
        out.witness_class = cc.from_coords(cls, 2 * m);
        return out;
    }
    fail("Internal", "failed to find a nondegenerate witness for a nonzero power polynomial");
}

struct Fingerprint {
    std::vector<int> ascending;
    std::vector<int> descending;
    std::vector<int> betti; // b_0 .. b_n
    int chi = 0;

    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

inline Fingerprint fingerprint(const Presentation& g) {
    Fingerprint fp;
    fp.ascending = ascending_series(g).dims;
    fp.descending = descending_series(g).dims;
    CochainComplex cc(g);
    for (int k = 0; k <= g.frame().generators(); ++k) {
        fp.betti.push_back(cc.betti(k));
        fp.chi += (k % 2 == 0 ? 1 : -1) * fp.betti.back();
    }
    return fp;
}

} // namespace nilcx
