#include <catch2/catch_amalgamated.hpp>

#include "nilcx/catalog.hpp"
#include "nilcx/differential.hpp"
#include "test_support.hpp"

using namespace nilcx;
using testgen::Rng;

namespace {

Mask M(std::initializer_list<int> idx1based) {
    Mask m = 0;
    for (int i : idx1based) m |= Mask(1) << (i - 1);
    return m;
}

// w^i slots are 1..4, cw^j slots are 4+j, 1-based.
Mask MW(std::initializer_list<int> holo, std::initializer_list<int> bar) {
    Mask m = 0;
    for (int i : holo) m |= Mask(1) << (i - 1);
    for (int j : bar) m |= Mask(1) << (4 + j - 1);
    return m;
}

// Sort-counting oracle for the wedge sign of two disjoint index tuples.
int slow_concat_sign(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> seq = a;
    seq.insert(seq.end(), b.begin(), b.end());
    int inversions = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j)
            if (seq[i] > seq[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

} // namespace

TEST_CASE("wedge: repeated index, odd and even shuffles", "[exterior]") {
    Frame f = Frame::real(8);
    Form e1 = Form::generator(f, 0);
    CHECK(e1.wedge(e1).is_zero());

    Form e14 = Form::term(f, M({1, 4}), Scalar(1));
    Form e25 = Form::term(f, M({2, 5}), Scalar(1));
    Form e34 = Form::term(f, M({3, 4}), Scalar(1));
    CHECK(e14.wedge(e25) == Form::term(f, M({1, 2, 4, 5}), Scalar(-1)));
    CHECK(e25.wedge(e34) == Form::term(f, M({2, 3, 4, 5}), Scalar(1)));
}

TEST_CASE("merge parity agrees with the sort-counting oracle", "[exterior][properties]") {
    Rng rng(20240810);
    std::uniform_int_distribution<int> nbits(0, 5);
    std::uniform_int_distribution<int> slot(0, 11);
    int done = 0;
    while (done < 150) {
        Mask a = 0, b = 0;
        for (int t = nbits(rng); t > 0; --t) a |= Mask(1) << slot(rng);
        for (int t = nbits(rng); t > 0; --t) b |= Mask(1) << slot(rng);
        if (a & b) continue;
        int sign = merge_parity(a, b) ? -1 : 1;
        CHECK(sign == slow_concat_sign(mask_indices(a), mask_indices(b)));
        ++done;
    }
}

TEST_CASE("differentiate follows the structure equations", "[exterior]") {
    Presentation g = catalog::g_ab_real();
    const Frame& f = g.frame();
    const Differential& d = g.differential();

    CHECK(d.apply(Form::generator(f, 3)) == Form::term(f, M({1, 3}), Scalar(1)));

    // d(e45) = de4 ^ e5 - e4 ^ de5 = e135 - e234
    Form e45 = Form::term(f, M({4, 5}), Scalar(1));
    Form expected = Form::term(f, M({1, 3, 5}), Scalar(1)) +
                    Form::term(f, M({2, 3, 4}), Scalar(-1));
    CHECK(d.apply(e45) == expected);
}

TEST_CASE("d^2 residuals detect Jacobi failures", "[exterior]") {
    // de4 = e12, de5 = e34 in dimension 5 violates Jacobi on e5.
    Frame f = Frame::real(5);
    Differential d(f);
    d.set(3, Form::term(f, M({1, 2}), Scalar(1)));
    d.set(4, Form::term(f, M({3, 4}), Scalar(1)));
    auto res = d.d_squared_residuals();
    CHECK(res[4].second == Form::term(f, M({1, 2, 3}), Scalar(-1)));
    CHECK(res[3].second.is_zero());

    Differential abelian(Frame::real(8));
    for (const auto& [g, r] : abelian.d_squared_residuals()) CHECK(r.is_zero());

    // The family satisfies Jacobi symbolically in a, b.
    for (const auto& [g, r] : catalog::g_ab_real().differential().d_squared_residuals())
        CHECK(r.is_zero());
}

TEST_CASE("bidegree splitting and del/delbar", "[exterior]") {
    Presentation gc = catalog::g_ab_complex();
    const Frame& f = gc.frame();
    const Differential& d = gc.differential();

    Form w2 = Form::generator(f, 1);
    CHECK(d.apply(w2) == Form::term(f, MW({1, 4}, {}), Scalar(-1)) +
                             Form::term(f, MW({1}, {4}), Scalar(1)));
    CHECK(del(d, w2) == Form::term(f, MW({1, 4}, {}), Scalar(-1)));
    CHECK(delbar(d, w2) == Form::term(f, MW({1}, {4}), Scalar(1)));

    Form w121 = Form::term(f, MW({1, 2}, {1}), Scalar(1));
    CHECK(w121.bidegree_of(MW({1, 2}, {1})) == std::pair<int, int>{2, 1});

    // conj(-w14 + w1.4~) = -cw1^cw4 - w4^cw1
    Form dw2 = d.apply(w2);
    CHECK(dw2.conj() == Form::term(f, MW({}, {1, 4}), Scalar(-1)) +
                            Form::term(f, MW({4}, {1}), Scalar(-1)));
}

TEST_CASE("wedge is graded-commutative and associative", "[exterior][properties]") {
    Rng rng(20240811);
    Frame f = Frame::real(6);
    std::uniform_int_distribution<int> deg(0, 3);
    for (int trial = 0; trial < 120; ++trial) {
        int da = deg(rng), db = deg(rng), dc = deg(rng);
        Form x = testgen::random_form(rng, f, da);
        Form y = testgen::random_form(rng, f, db);
        Form z = testgen::random_form(rng, f, dc);
        Form xy = x.wedge(y), yx = y.wedge(x);
        if ((da * db) % 2 != 0) yx = -yx;
        CHECK(xy == yx);
        CHECK(x.wedge(y.wedge(z)) == (x.wedge(y)).wedge(z));
    }
}

TEST_CASE("graded Leibniz identity for arbitrary structure equations", "[exterior][properties]") {
    Rng rng(20240812);
    Frame f = Frame::real(6);
    std::uniform_int_distribution<int> deg(0, 3);
    for (int trial = 0; trial < 110; ++trial) {
        Differential d(f);
        for (int g = 0; g < 6; ++g) d.set(g, testgen::random_form(rng, f, 2, 2));
        Form x = testgen::random_form(rng, f, deg(rng));
        Form y = testgen::random_form(rng, f, deg(rng));
        Form lhs = d.apply(x.wedge(y));
        Form sign_dy = (x.degree() % 2 == 0) ? d.apply(y) : -d.apply(y);
        Form rhs = d.apply(x).wedge(y) + x.wedge(sign_dy);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("complex frames: conj commutes with d, d splits when integrable",
          "[exterior][properties]") {
    Presentation gc = catalog::g_ab_complex();
    const Frame& f = gc.frame();
    const Differential& d = gc.differential();
    Rng rng(20240813);
    std::uniform_int_distribution<int> deg(0, 4);

    // No generator differential has a (0,2)-component here.
    for (int g = 0; g < 4; ++g)
        CHECK(d.of_gen(g).bidegree_project(0, 2).is_zero());

    for (int trial = 0; trial < 100; ++trial) {
        Form x = testgen::random_form(rng, f, deg(rng));
        CHECK(d.apply(x.conj()) == d.apply(x).conj());
        CHECK(d.apply(x) == del(d, x) + delbar(d, x));
        CHECK(del(d, del(d, x)).is_zero());
        CHECK(delbar(d, delbar(d, x)).is_zero());
        CHECK(del(d, delbar(d, x)) == -delbar(d, del(d, x)));
    }
}
