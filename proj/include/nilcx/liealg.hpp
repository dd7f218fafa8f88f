#pragma once

#include <vector>

#include "nilcx/presentation.hpp"

namespace nilcx {

struct SeriesProfile {
    std::vector<int> dims;
    bool nilpotent = false;
    int step = 0; // nilpotency step when nilpotent, else 0

    friend bool operator==(const SeriesProfile&, const SeriesProfile&) = default;
};

namespace liealg_detail {

// Tower-valued bracket tables: ad[j][k][i] = coefficient of x_k in [x_i, x_j].
inline std::vector<Mat<Tower>> ad_tables(const Presentation& g) {
    const int n = g.frame().generators();
    std::vector<Mat<Tower>> ad(static_cast<std::size_t>(n),
                               Mat<Tower>(static_cast<std::size_t>(n),
                                          Vec<Tower>(static_cast<std::size_t>(n))));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            Vec<Scalar> br = g.bracket(i, j);
            for (int k = 0; k < n; ++k)
                ad[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]
                  [static_cast<std::size_t>(i)] = br[static_cast<std::size_t>(k)].constant();
        }
    return ad;
}

// Rows expressing the condition "[x, g] lies in the span held by prev".
// An extra coordinate map (e.g. x -> Jx) can be composed in via `compose`.
inline void append_bracket_conditions(const std::vector<Mat<Tower>>& ad,
                                      const RowReducer& prev, const Mat<Tower>* compose,
                                      Mat<Tower>& out) {
    const int n = static_cast<int>(ad.size());
    for (int j = 0; j < n; ++j) {
        Mat<Tower> block = ad[static_cast<std::size_t>(j)];
        if (compose) block = mat_mul(block, *compose);
        // Reduce each column modulo the previous term, then emit coordinate rows.
        Mat<Tower> reduced_cols(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            Vec<Tower> col(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k) col[static_cast<std::size_t>(k)] = block[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
            reduced_cols[static_cast<std::size_t>(i)] = prev.reduce(std::move(col));
        }
        for (int k = 0; k < n; ++k) {
            Vec<Tower> row(static_cast<std::size_t>(n));
            bool nonzero = false;
            for (int i = 0; i < n; ++i) {
                row[static_cast<std::size_t>(i)] = reduced_cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
                nonzero = nonzero || !row[static_cast<std::size_t>(i)].is_zero();
            }
            if (nonzero) out.push_back(std::move(row));
        }
    }
}

} // namespace liealg_detail

// Dimensions of the ascending central series g_1 = center, g_k = {x :
// [x, g] in g_{k-1}}, until stabilization. Requires specialized scalars.
inline SeriesProfile ascending_series(const Presentation& g) {
    g.require_constant();
    const int n = g.frame().generators();
    auto ad = liealg_detail::ad_tables(g);
    SeriesProfile out;
    RowReducer span(n);
    int prev_dim = 0;
    while (true) {
        Mat<Tower> conditions;
        liealg_detail::append_bracket_conditions(ad, span, nullptr, conditions);
        auto basis = kernel_basis(conditions, n);
        int dim = static_cast<int>(basis.size());
        if (dim == prev_dim) break;
        out.dims.push_back(dim);
        RowReducer next(n);
        for (auto& v : basis) next.insert(v);
        span = std::move(next);
        prev_dim = dim;
        if (dim == n) break;
    }
    out.nilpotent = prev_dim == n;
    out.step = out.nilpotent ? static_cast<int>(out.dims.size()) : 0;
    return out;
}

// Dimensions of g = g^0, g^1 = [g, g], g^{k+1} = [g, g^k], listed while
// nonzero. Nilpotent iff the series reaches zero.
inline SeriesProfile descending_series(const Presentation& g) {
    g.require_constant();
    const int n = g.frame().generators();
    auto ad = liealg_detail::ad_tables(g);
    SeriesProfile out;
    out.dims.push_back(n);
    // Current term basis, starting from the full space.
    std::vector<Vec<Tower>> basis(static_cast<std::size_t>(n), Vec<Tower>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Tower(1);
    int dim = n;
    while (dim > 0) {
        RowReducer next(n);
        for (const auto& w : basis) {
            for (int j = 0; j < n; ++j) {
                // [w, x_j] = sum_i w_i [x_i, x_j]
                Vec<Tower> v(static_cast<std::size_t>(n));
                for (int k = 0; k < n; ++k) {
                    Tower s;
                    for (int i = 0; i < n; ++i) {
                        const Tower& c = ad[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
                        if (!c.is_zero() && !w[static_cast<std::size_t>(i)].is_zero()) s += c * w[static_cast<std::size_t>(i)];
                    }
                    v[static_cast<std::size_t>(k)] = s;
                }
                next.insert(v);
            }
        }
        int ndim = next.rank();
        if (ndim == dim) { // stabilized above zero: not nilpotent
            out.nilpotent = false;
            out.step = 0;
            return out;
        }
        if (ndim > 0) out.dims.push_back(ndim);
        basis = next.basis();
        dim = ndim;
    }
    out.nilpotent = true;
    out.step = static_cast<int>(out.dims.size());
    return out;
}

// Dual-picture morphism residuals for a candidate matrix L with rows
// F(y^i) = sum_j L[i][j] x^j: residual_i = F(d_dst y^i) - d_src F(y^i).
// All residuals vanish iff L is (the dual of) a Lie algebra homomorphism
// src -> dst.
inline std::vector<std::pair<int, Form>> morphism_residual(const Mat<Scalar>& L,
                                                           const Presentation& src,
                                                           const Presentation& dst) {
    if (src.frame().is_complex() || dst.frame().is_complex())
        fail("DimensionMismatch", "morphism check requires real frames");
    const int n = src.frame().generators();
    if (dst.frame().generators() != n || static_cast<int>(L.size()) != n)
        fail("DimensionMismatch", "morphism matrix size does not match the frames");
    for (const auto& row : L)
        if (static_cast<int>(row.size()) != n)
            fail("DimensionMismatch", "morphism matrix is not square");

    std::vector<Form> images;
    images.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Form im(src.frame(), 1);
        for (int j = 0; j < n; ++j)
            im.add_term(Mask(1) << j, L[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        images.push_back(std::move(im));
    }

    std::vector<std::pair<int, Form>> out;
    for (int i = 0; i < n; ++i) {
        Form lhs = pullback(dst.differential().of_gen(i), src.frame(), images);
        Form rhs = src.differential().apply(images[static_cast<std::size_t>(i)]);
        out.emplace_back(i, lhs - rhs);
    }
    return out;
}

inline bool is_isomorphism(const Mat<Scalar>& L, const Presentation& src,
                           const Presentation& dst) {
    for (const auto& [g, r] : morphism_residual(L, src, dst))
        if (!r.is_zero()) return false;
    return !det(L).is_zero();
}

} // namespace nilcx
