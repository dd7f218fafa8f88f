#include <catch2/catch_amalgamated.hpp>

#include "nilcx/scalar.hpp"
#include "test_support.hpp"

using namespace nilcx;
using testgen::Rng;

namespace {

Scalar sc(long n, long d = 1) { return Scalar(rat(n, d)); }

} // namespace

TEST_CASE("tower arithmetic respects i^2 = -1 and s3^2 = 3", "[scalars]") {
    Tower i = Tower::i(), s = Tower::sqrt3();
    CHECK(i * i == Tower(-1));
    CHECK(s * s == Tower(3));
    CHECK((i * s) * (i * s) == Tower(-3));
    CHECK(i * s == s * i);
}

TEST_CASE("conjugation fixes real data and flips i", "[scalars]") {
    CHECK(Scalar::i().conj() == -Scalar::i());

    Scalar x = sc(2) * Scalar::param_a() + sc(3) * Scalar::i();
    CHECK(x.conj() == sc(2) * Scalar::param_a() - sc(3) * Scalar::i());

    // (1+i)*s3 -> (1-i)*s3, and x * conj(x) is i-free.
    Scalar y = (sc(1) + Scalar::i()) * Scalar::sqrt3();
    CHECK(y.conj() == (sc(1) - Scalar::i()) * Scalar::sqrt3());
    Tower prod = (y * y.conj()).constant();
    CHECK(prod.coord(1) == 0);
    CHECK(prod.coord(3) == 0);
    CHECK(prod == Tower(6));
}

TEST_CASE("exact inverses of constants", "[scalars]") {
    Scalar z = sc(2) + Scalar::i();
    CHECK(z.inverse() == (sc(2) - Scalar::i()) * sc(1, 5));
    CHECK(z * z.inverse() == sc(1));

    Scalar s = Scalar::sqrt3();
    CHECK(s.inverse() == s * sc(1, 3));
    CHECK(sc(1).inverse() == sc(1));

    CHECK_THROWS_AS(Scalar().inverse(), Error);
    CHECK_THROWS_AS(Scalar::param_a().inverse(), Error);
    try {
        Scalar::param_a().inverse();
    } catch (const Error& e) {
        CHECK(e.code() == "NonConstant");
    }
    try {
        Scalar().inverse();
    } catch (const Error& e) {
        CHECK(e.code() == "ZeroInverse");
    }
}

TEST_CASE("evaluate specializes parameters exactly", "[scalars]") {
    // 4a/s3 at a=3 equals 4*s3 after rationalizing.
    Scalar x = sc(4) * Scalar::param_a() * Scalar::sqrt3().inverse();
    CHECK(x.evaluate(rat(3), std::nullopt) == Tower::of(0, 0, 4, 0));

    Scalar beta = sc(2, 3) * Scalar::param_b();
    CHECK(beta.evaluate(std::nullopt, rat(1)) == Tower(rat(2, 3)));

    CHECK(Scalar().evaluate(std::nullopt, std::nullopt) == Tower());

    CHECK_THROWS_AS(x.evaluate(std::nullopt, rat(1)), Error);
    try {
        x.evaluate(std::nullopt, rat(1));
    } catch (const Error& e) {
        CHECK(e.code() == "UnboundParameter");
    }
}

TEST_CASE("ring axioms on randomized scalars", "[scalars][properties]") {
    Rng rng(20240801);
    for (int trial = 0; trial < 120; ++trial) {
        Scalar x = testgen::random_scalar(rng);
        Scalar y = testgen::random_scalar(rng);
        Scalar z = testgen::random_scalar(rng);
        CHECK(x + y == y + x);
        CHECK(x * y == y * x);
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x - x == Scalar());
    }
}

TEST_CASE("conjugation is an involutive ring automorphism", "[scalars][properties]") {
    Rng rng(20240802);
    for (int trial = 0; trial < 120; ++trial) {
        Scalar x = testgen::random_scalar(rng);
        Scalar y = testgen::random_scalar(rng);
        CHECK(x.conj().conj() == x);
        CHECK((x * y).conj() == x.conj() * y.conj());
        CHECK((x + y).conj() == x.conj() + y.conj());
    }
}

TEST_CASE("x * invert(x) == 1 for random constants", "[scalars][properties]") {
    Rng rng(20240803);
    int done = 0;
    while (done < 100) {
        Scalar x = testgen::random_constant_scalar(rng);
        if (x.is_zero()) continue;
        CHECK(x * x.inverse() == sc(1));
        ++done;
    }
}

TEST_CASE("evaluate is a ring homomorphism", "[scalars][properties]") {
    Rng rng(20240804);
    for (int trial = 0; trial < 100; ++trial) {
        Scalar x = testgen::random_scalar(rng);
        Scalar y = testgen::random_scalar(rng);
        Rat a = testgen::random_rat(rng), b = testgen::random_rat(rng);
        CHECK((x + y).evaluate(a, b) == x.evaluate(a, b) + y.evaluate(a, b));
        CHECK((x * y).evaluate(a, b) == x.evaluate(a, b) * y.evaluate(a, b));
    }
}

TEST_CASE("exact polynomial division round-trips", "[scalars][properties]") {
    Rng rng(20240805);
    int done = 0;
    while (done < 100) {
        Scalar x = testgen::random_scalar(rng);
        Scalar y = testgen::random_scalar(rng);
        if (y.is_zero()) continue;
        CHECK((x * y).divexact(y) == x);
        ++done;
    }
}

TEST_CASE("scalar strings are exact", "[scalars]") {
    CHECK(sc(101, 4).str() == "101/4");
    CHECK((sc(1, 2) * Scalar::i()).str() == "(1/2)*i");
    CHECK(Scalar().str() == "0");
    CHECK((-sc(2) * Scalar::param_b()).str() == "-2*b");
    CHECK((Scalar::param_a() * Scalar::param_a() + sc(1)).str() == "1 + a*a");
}
