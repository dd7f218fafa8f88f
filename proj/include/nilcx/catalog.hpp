#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilcx/cxstruct.hpp"
#include "nilcx/hermitian.hpp"

namespace nilcx {
namespace catalog {

// Parameter point of the two-parameter family. A missing coordinate keeps
// the corresponding polynomial generator symbolic.
struct FamilyPoint {
    std::optional<Rat> a, b;

    Scalar scalar_a() const { return a ? Scalar(*a) : Scalar::param_a(); }
    Scalar scalar_b() const { return b ? Scalar(*b) : Scalar::param_b(); }
    std::string label() const {
        auto one = [](const std::optional<Rat>& v, const char* sym) {
            return v ? rat_str(*v) : std::string(sym);
        };
        return "{" + one(a, "a") + "," + one(b, "b") + "}";
    }
};

namespace detail {

inline Form term2(const Frame& f, int s1, int s2, const Scalar& c) {
    Mask a = Mask(1) << s1, b = Mask(1) << s2;
    return Form::term(f, a | b, merge_parity(a, b) ? -c : c);
}

// e^{ij} over the real frame, 1-based indices.
inline Form e2(const Frame& f, int i, int j, const Scalar& c = Scalar(1)) {
    return term2(f, i - 1, j - 1, c);
}
// w^i ^ w^j, w^i ^ cw^j over a complex frame, 1-based indices.
inline Form ww(const Frame& f, int i, int j, const Scalar& c = Scalar(1)) {
    return term2(f, i - 1, j - 1, c);
}
inline Form wcw(const Frame& f, int i, int j, const Scalar& c = Scalar(1)) {
    return term2(f, i - 1, f.rank() + j - 1, c);
}

} // namespace detail

// The eight-dimensional real family: structure equations
//   de4 = e13, de5 = e23, de6 = 3 e14 + e25 - 2 e35,
//   de7 = 2a e12 + e15 + e24 + 2 e34,
//   de8 = -2b e14 + e16 - 2b e25 + e27 - 2 e45.
inline Presentation g_ab_real(const FamilyPoint& p = {}) {
    using namespace detail;
    Frame f = Frame::real(8);
    Scalar a = p.scalar_a(), b = p.scalar_b();
    Differential d(f);
    d.set(3, e2(f, 1, 3));
    d.set(4, e2(f, 2, 3));
    d.set(5, e2(f, 1, 4, Scalar(3)) + e2(f, 2, 5) + e2(f, 3, 5, Scalar(-2)));
    d.set(6, e2(f, 1, 2, 2 * a) + e2(f, 1, 5) + e2(f, 2, 4) + e2(f, 3, 4, Scalar(2)));
    d.set(7, e2(f, 1, 4, -2 * b) + e2(f, 1, 6) + e2(f, 2, 5, -2 * b) + e2(f, 2, 7) +
                 e2(f, 4, 5, Scalar(-2)));
    return Presentation::checked("g_" + p.label(), std::move(d));
}

// The complex-frame source of the same family:
//   dw1 = 0, dw2 = -w14 + w1.4~,
//   dw3 = a w1.1~ - i(w12 - w1.2~ - w2.1~) + i(w24 - w2.4~),
//   dw4 = i b (w1.2~ + w2.1~) + w1.3~ + i w2.2~ - w3.1~.
inline Presentation g_ab_complex(const FamilyPoint& p = {}) {
    using namespace detail;
    Frame f = Frame::complex(4);
    Scalar a = p.scalar_a(), b = p.scalar_b();
    Scalar i = Scalar::i();
    Differential d(f);
    d.set(0, Form(f, 2));
    d.set(1, ww(f, 1, 4, Scalar(-1)) + wcw(f, 1, 4));
    d.set(2, wcw(f, 1, 1, a) + ww(f, 1, 2, -i) + wcw(f, 1, 2, i) + wcw(f, 2, 1, i) +
                 ww(f, 2, 4, i) + wcw(f, 2, 4, -i));
    d.set(3, wcw(f, 1, 2, i * b) + wcw(f, 2, 1, i * b) + wcw(f, 1, 3) + wcw(f, 2, 2, i) +
                 wcw(f, 3, 1, Scalar(-1)));
    return Presentation::checked("gC_" + p.label(), std::move(d));
}

// The complex nilmanifold family fixes b = 1.
inline Presentation x_a(const std::optional<Rat>& a = std::nullopt) {
    return g_ab_complex(FamilyPoint{a, rat(1)});
}

// Normalized real family in the v-basis, parametrized directly by
// alpha, beta:
//   dv4 = v13, dv5 = v23, dv6 = v14 + v25 - v35,
//   dv7 = alpha v12 + v15 + v24 + v34,
//   dv8 = v16 - 2 beta v25 + v27 - beta v35 - v45.
inline Presentation m_alphabeta(const Scalar& alpha, const Scalar& beta,
                                const std::string& label = "m") {
    using namespace detail;
    Frame f = Frame::real(8);
    Differential d(f);
    d.set(3, e2(f, 1, 3));
    d.set(4, e2(f, 2, 3));
    d.set(5, e2(f, 1, 4) + e2(f, 2, 5) + e2(f, 3, 5, Scalar(-1)));
    d.set(6, e2(f, 1, 2, alpha) + e2(f, 1, 5) + e2(f, 2, 4) + e2(f, 3, 4));
    d.set(7, e2(f, 1, 6) + e2(f, 2, 5, Scalar(-2) * beta) + e2(f, 2, 7) +
                 e2(f, 3, 5, -beta) + e2(f, 4, 5, Scalar(-1)));
    return Presentation::checked(label, std::move(d));
}

inline Scalar alpha_of_a(const Scalar& a) {
    // 4a / sqrt3 = (4/3) sqrt3 a
    return Scalar(rat(4, 3)) * Scalar::sqrt3() * a;
}
inline Scalar beta_of_b(const Scalar& b) { return Scalar(rat(2, 3)) * b; }

inline Presentation m_alphabeta_from_ab(const FamilyPoint& p = {}) {
    return m_alphabeta(alpha_of_a(p.scalar_a()), beta_of_b(p.scalar_b()), "m_" + p.label());
}

// The integrable almost complex structure of the family, acting on the
// coframe: J e1 = e2, J e3 = (1/2) e8, J e4 = e5, J e6 = e7, completed by
// J^2 = -Id.
inline AlmostComplexStructure j_ab() {
    Frame f = Frame::real(8);
    Mat<Scalar> rows(8, Vec<Scalar>(8));
    auto set = [&](int i, int j, const Scalar& c) { rows[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = c; };
    set(1, 2, Scalar(1));
    set(2, 1, Scalar(-1));
    set(3, 8, Scalar(rat(1, 2)));
    set(8, 3, Scalar(-2));
    set(4, 5, Scalar(1));
    set(5, 4, Scalar(-1));
    set(6, 7, Scalar(1));
    set(7, 6, Scalar(-1));
    return AlmostComplexStructure(f, std::move(rows));
}

// Real coframe in terms of the complex one: e1 = -(w1 + cw1),
// e2 = -i(w1 - cw1), e3 = -(w4 + cw4), e4 = w2 + cw2, e5 = i(w2 - cw2),
// e6 = -2(w3 + cw3), e7 = -2i(w3 - cw3), e8 = -2i(w4 - cw4).
inline Mat<Scalar> real_in_complex() {
    Mat<Scalar> m(8, Vec<Scalar>(8));
    Scalar i = Scalar::i();
    auto set = [&](int row, int w, const Scalar& cw_coeff, const Scalar& w_coeff) {
        m[static_cast<std::size_t>(row - 1)][static_cast<std::size_t>(w - 1)] = w_coeff;
        m[static_cast<std::size_t>(row - 1)][static_cast<std::size_t>(4 + w - 1)] = cw_coeff;
    };
    set(1, 1, Scalar(-1), Scalar(-1));
    set(2, 1, i, -i);
    set(3, 4, Scalar(-1), Scalar(-1));
    set(4, 2, Scalar(1), Scalar(1));
    set(5, 2, -i, i);
    set(6, 3, Scalar(-2), Scalar(-2));
    set(7, 3, 2 * i, -2 * i);
    set(8, 4, 2 * i, -2 * i);
    return m;
}

// Holomorphic coframe in terms of the real one: w1 = (-e1 + i e2)/2,
// w2 = (e4 - i e5)/2, w3 = (-e6 + i e7)/4, w4 = (-2 e3 + i e8)/4.
inline Mat<Scalar> holo_in_real() {
    Mat<Scalar> m(4, Vec<Scalar>(8));
    Scalar i = Scalar::i();
    auto set = [&](int row, int e, const Scalar& c) { m[static_cast<std::size_t>(row - 1)][static_cast<std::size_t>(e - 1)] = c; };
    set(1, 1, Scalar(rat(-1, 2)));
    set(1, 2, Scalar(rat(1, 2)) * i);
    set(2, 4, Scalar(rat(1, 2)));
    set(2, 5, Scalar(rat(-1, 2)) * i);
    set(3, 6, Scalar(rat(-1, 4)));
    set(3, 7, Scalar(rat(1, 4)) * i);
    set(4, 3, Scalar(rat(-1, 2)));
    set(4, 8, Scalar(rat(1, 4)) * i);
    return m;
}

// v-basis in terms of the e-basis; the last row mixes in b:
// v8 = 2/(3 sqrt3) e8 + 4b/(9 sqrt3) e6.
inline Mat<Scalar> e_to_v_change(const FamilyPoint& p = {}) {
    Mat<Scalar> m(8, Vec<Scalar>(8));
    Scalar s3 = Scalar::sqrt3();
    auto set = [&](int row, int e, const Scalar& c) { m[static_cast<std::size_t>(row - 1)][static_cast<std::size_t>(e - 1)] = c; };
    set(1, 1, Scalar(1));
    set(2, 2, Scalar(rat(1, 3)) * s3);
    set(3, 3, Scalar(rat(2, 3)) * s3);
    set(4, 4, Scalar(rat(2, 3)) * s3);
    set(5, 5, Scalar(rat(2, 3)));
    set(6, 6, Scalar(rat(2, 9)) * s3);
    set(7, 7, Scalar(rat(2, 3)));
    set(8, 8, Scalar(rat(2, 9)) * s3);
    set(8, 6, Scalar(rat(4, 27)) * s3 * p.scalar_b());
    return m;
}

// The invariant Hermitian metric carrying the generalized Gauduchon
// property: F = (101/4) i w1.1~ + i w2.2~ + i w3.3~ + (1/2) i w4.4~
//              - 5 w1.3~ + 5 w3.1~.
inline HermitianForm metric_gauduchon_f() {
    Frame f = Frame::complex(4);
    Mat<Scalar> h(4, Vec<Scalar>(4));
    Scalar i = Scalar::i();
    h[0][0] = Scalar(rat(101, 4));
    h[1][1] = Scalar(1);
    h[2][2] = Scalar(1);
    h[3][3] = Scalar(rat(1, 2));
    h[0][2] = 5 * i;   // -5 w1.3~ = i * (5i) w1.3~
    h[2][0] = -5 * i;  // +5 w3.1~
    return HermitianForm(f, std::move(h));
}

// Balanced metric at a = 0, entered as the displayed matrix of 2F0 with the
// global factor 1/2: 2F0 = i(2 w1.1~ + w2.2~ + 4 w3.3~ + w4.4~)
//                         + 2 w1.3~ - 2 w3.1~.
inline HermitianForm metric_balanced_f0() {
    Frame f = Frame::complex(4);
    Mat<Scalar> h(4, Vec<Scalar>(4));
    Scalar i = Scalar::i();
    h[0][0] = Scalar(2);
    h[1][1] = Scalar(1);
    h[2][2] = Scalar(4);
    h[3][3] = Scalar(1);
    h[0][2] = -2 * i; // +2 w1.3~
    h[2][0] = 2 * i;  // -2 w3.1~
    return HermitianForm::scaled(f, h, Scalar(rat(1, 2)));
}

// Balanced metric for a > 0, displayed matrix of 2F_a with factor 1/2:
// 2F_a = i(a(a+1) w1.1~ + w2.2~ + w3.3~ + 2 w4.4~)
//        + a w1.3~ - a w3.1~ + w2.4~ - w4.2~.
inline HermitianForm metric_balanced_fa(const std::optional<Rat>& a = std::nullopt) {
    if (a && *a <= 0) fail("BadPoint", "metric_Fa needs a > 0");
    Frame f = Frame::complex(4);
    Scalar av = a ? Scalar(*a) : Scalar::param_a();
    Mat<Scalar> h(4, Vec<Scalar>(4));
    Scalar i = Scalar::i();
    h[0][0] = av * (av + Scalar(1));
    h[1][1] = Scalar(1);
    h[2][2] = Scalar(1);
    h[3][3] = Scalar(2);
    h[0][2] = -i * av; // +a w1.3~
    h[2][0] = i * av;  // -a w3.1~
    h[1][3] = -i;      // +w2.4~
    h[3][1] = i;       // -w4.2~
    return HermitianForm::scaled(f, h, Scalar(rat(1, 2)));
}

// The coefficient assignment specializing the generic strongly
// non-nilpotent equations to this family.
inline SnnCoefficients snn_family_coefficients(const FamilyPoint& p = {}) {
    SnnCoefficients c;
    Scalar i = Scalar::i();
    c.B = Scalar(1);
    c.N = Scalar(1);
    c.s = Scalar(1);
    c.C = Scalar(rat(1, 2)) * i;
    c.D = Scalar(rat(3, 2)) * i;
    c.F = p.scalar_a();
    c.G = Scalar(rat(-1, 2)) * i;
    c.H = -i;
    c.M = i * p.scalar_b();
    return c;
}

// diag(s^-1, s^-1, s^-1, s^-2, s^-2, s^-3, s^-3, s^-4): the dual matrix of
// the isomorphism rescaling the family parameters by s.
inline Mat<Scalar> scaling_witness(const Rat& s) {
    if (s == 0) fail("BadPoint", "scaling witness needs s != 0");
    Mat<Scalar> m = identity_matrix(8);
    Rat inv = Rat(1) / s;
    Rat d[8] = {inv, inv, inv, inv * inv, inv * inv, inv * inv * inv,
                inv * inv * inv, inv * inv * inv * inv};
    for (int i = 0; i < 8; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Scalar(d[i]);
    return m;
}

// diag(1,-1,-1,-1,1,-1,1,-1): flips the sign of the first parameter.
inline Mat<Scalar> signflip_witness() {
    Mat<Scalar> m = identity_matrix(8);
    long d[8] = {1, -1, -1, -1, 1, -1, 1, -1};
    for (int i = 0; i < 8; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Scalar(d[i]);
    return m;
}

struct IsoCertificate {
    Mat<Scalar> matrix; // dual matrix of an isomorphism src -> dst
    FamilyPoint src, dst;
    Rat rho = 1; // leading scale, dst params = (+-rho a, rho b)
};

// Remark-style trichotomy: every real point reduces to exactly one of the
// representatives {0,0}, {1,0}, {a,1} with a >= 0; the certificate matrix is
// the explicit (composite) witness and is verified by is_isomorphism.
inline std::pair<std::string, IsoCertificate> canonicalize(const Rat& a, const Rat& b) {
    IsoCertificate cert;
    cert.src = FamilyPoint{a, b};
    if (b != 0) {
        Rat q = a / b;
        cert.matrix = scaling_witness(b);
        cert.rho = Rat(1) / b;
        Rat rep = q >= 0 ? q : -q;
        if (q < 0) cert.matrix = mat_mul(signflip_witness(), cert.matrix);
        cert.dst = FamilyPoint{rep, rat(1)};
    } else if (a != 0) {
        cert.matrix = scaling_witness(a);
        cert.rho = Rat(1) / a;
        cert.dst = FamilyPoint{rat(1), rat(0)};
    } else {
        cert.matrix = identity_matrix(8);
        cert.rho = 1;
        cert.dst = FamilyPoint{rat(0), rat(0)};
    }
    Presentation src = g_ab_real(cert.src);
    Presentation dst = g_ab_real(cert.dst);
    if (!is_isomorphism(cert.matrix, src, dst))
        fail("Internal", "canonicalize produced an unverified witness");
    return {"g_" + cert.dst.label(), cert};
}

struct IsoVerdict {
    bool isomorphic = false;
    std::string justification;
    std::optional<Mat<Scalar>> witness;
};

// Decides isomorphism inside the family via the trichotomy plus the scale
// relation dst = (+-rho a, rho b); not a general isomorphism decider.
inline IsoVerdict family_iso_verdict(const Rat& a, const Rat& b, const Rat& a2, const Rat& b2) {
    auto [rep1, cert1] = canonicalize(a, b);
    auto [rep2, cert2] = canonicalize(a2, b2);
    IsoVerdict out;
    if (rep1 == rep2) {
        out.isomorphic = true;
        auto inv2 = inverse_constant_pivots(cert2.matrix);
        if (!inv2) fail("Internal", "certificate matrix not invertible");
        Mat<Scalar> w = mat_mul(*inv2, cert1.matrix);
        if (!is_isomorphism(w, g_ab_real(cert1.src), g_ab_real(cert2.src)))
            fail("Internal", "composite witness failed verification");
        out.witness = std::move(w);
        out.justification = "both points reduce to the representative " + rep1 +
                            "; the composite witness is verified exactly";
        return out;
    }
    out.isomorphic = false;
    if (b != 0 && b2 != 0) {
        Rat rho = b2 / b;
        out.justification = "scale relation forces rho = " + rat_str(rho) +
                            " from the b-parameters, but then +-rho*" + rat_str(a) +
                            " != " + rat_str(a2);
    } else if ((b == 0) != (b2 == 0)) {
        out.justification = "no nonzero rho maps b = " + rat_str(b) + " to b' = " + rat_str(b2);
    } else {
        out.justification = "with b = b' = 0, +-rho*" + rat_str(a) + " = " + rat_str(a2) +
                            " has no nonzero real solution";
    }
    out.justification += "; representatives " + rep1 + " vs " + rep2 + " differ";
    return out;
}

struct RelationReport {
    bool lower_triangular = false;
    bool diag_products = false;  // l44 = l11 l33, l55 = l22 l33, l66 = l22 l33^2, l77 = l11 l33^2
    bool diag_signs = false;     // l33 = l22 = +-l11 and the power relations incl. l88
    int sign_branch = 1;
    Scalar rho;
    bool alpha_relation = false; // alpha' = sign * rho * alpha
    bool beta_relation = false;  // beta' = rho * beta
    bool all_ok() const {
        return lower_triangular && diag_products && diag_signs && alpha_relation && beta_relation;
    }
};

// Checks the triangularity and scale conclusions on a concrete verified
// isomorphism between two normalized-family presentations.
inline RelationReport iso_scale_relations(const Mat<Scalar>& L, const Scalar& alpha,
                                          const Scalar& beta, const Scalar& alpha2,
                                          const Scalar& beta2) {
    Presentation src = m_alphabeta(alpha, beta, "m");
    Presentation dst = m_alphabeta(alpha2, beta2, "m'");
    if (!is_isomorphism(L, src, dst))
        fail("NotIsomorphism", "matrix is not an isomorphism between the given presentations");

    RelationReport r;
    r.lower_triangular = true;
    for (std::size_t i = 0; i < L.size(); ++i)
        for (std::size_t j = i + 1; j < L[i].size(); ++j)
            if (!L[i][j].is_zero()) r.lower_triangular = false;

    auto d = [&](int k) { return L[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(k - 1)]; };
    r.rho = d(1);
    r.diag_products = d(4) == d(1) * d(3) && d(5) == d(2) * d(3) &&
                      d(6) == d(2) * d(3) * d(3) && d(7) == d(1) * d(3) * d(3);

    Scalar l1 = d(1);
    bool plus = d(2) == l1, minus = d(2) == -l1;
    r.sign_branch = plus ? 1 : -1;
    Scalar sgn = plus ? Scalar(1) : Scalar(-1);
    r.diag_signs = (plus || minus) && d(3) == d(2) && d(4) == sgn * l1 * l1 &&
                   d(5) == l1 * l1 && d(6) == sgn * l1 * l1 * l1 && d(7) == l1 * l1 * l1 &&
                   d(8) == sgn * l1 * l1 * l1 * l1;

    r.alpha_relation = alpha2 == sgn * r.rho * alpha;
    r.beta_relation = beta2 == r.rho * beta;
    return r;
}

struct BasisChangeReport {
    bool equal = false;
    std::vector<std::pair<int, Form>> mismatches;
};

// Pushes the e-basis equations through the v-basis change and compares with
// the normalized equations at alpha = 4a/sqrt3, beta = 2b/3, symbolically.
inline BasisChangeReport basis_change_check(const FamilyPoint& p = {}) {
    Presentation g = g_ab_real(p);
    Presentation moved = transport(g, e_to_v_change(p), Frame::real(8), "g_in_v");
    Presentation target = m_alphabeta(alpha_of_a(p.scalar_a()), beta_of_b(p.scalar_b()), "m");
    BasisChangeReport out;
    out.equal = true;
    for (int i = 0; i < 8; ++i) {
        Form diff = moved.differential().of_gen(i) - target.differential().of_gen(i);
        if (!diff.is_zero()) {
            out.equal = false;
            out.mismatches.emplace_back(i, diff);
        }
    }
    return out;
}

// Load-time consistency of every catalog object, all exact: Jacobi for the
// presentations (the checked constructors throw otherwise), J integrability,
// the mutual inverse realization pair, and the +i-eigenvector property of
// the holomorphic rows.
inline void selfcheck() {
    FamilyPoint sym;
    Presentation g = g_ab_real(sym);
    Presentation gc = g_ab_complex(sym);
    Presentation m = m_alphabeta_from_ab(sym);
    AlmostComplexStructure J = j_ab();
    if (!nijenhuis_vanishes(g, J)) fail("Internal", "catalog J is not integrable");

    metric_gauduchon_f();
    metric_balanced_f0();
    metric_balanced_fa();

    // [S; conj S] * R = Id over the complex generators.
    Mat<Scalar> S = holo_in_real();
    Mat<Scalar> full = S;
    for (const auto& row : S) {
        Vec<Scalar> conj_row;
        for (const auto& c : row) conj_row.push_back(c.conj());
        full.push_back(std::move(conj_row));
    }
    Mat<Scalar> prod = mat_mul(full, real_in_complex());
    if (prod != identity_matrix(8)) fail("Internal", "realization matrices are not inverse");

    // S J = i S: the holomorphic rows are +i eigenvectors of the coframe J.
    Mat<Scalar> sj = mat_mul(S, J.matrix());
    Mat<Scalar> is = S;
    for (auto& row : is)
        for (auto& c : row) c = Scalar::i() * c;
    if (sj != is) fail("Internal", "holomorphic rows are not J-eigenvectors");
}

} // namespace catalog
} // namespace nilcx
