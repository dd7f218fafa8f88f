#pragma once

#include <map>
#include <optional>
#include <vector>

#include "nilcx/scalar.hpp"

namespace nilcx {

template <class T>
using Mat = std::vector<std::vector<T>>;

template <class T>
using Vec = std::vector<T>;

namespace linalg_detail {

inline Tower entry_divexact(const Tower& x, const Tower& y) { return x.div(y); }
inline Scalar entry_divexact(const Scalar& x, const Scalar& y) { return x.divexact(y); }
inline bool entry_constant(const Tower&) { return true; }
inline bool entry_constant(const Scalar& s) { return s.is_constant(); }
inline Tower entry_inverse(const Tower& x) { return x.inverse(); }
inline Scalar entry_inverse(const Scalar& s) { return s.inverse(); }

// Scales a Tower row to integer coordinates (shared denominator cleared),
// which keeps the Bareiss recurrence inside Z[i, sqrt 3]. Row scaling leaves
// rank, pivot structure and kernels unchanged.
inline void clear_denominators(Vec<Tower>& row) {
    mpz_class lcm = 1;
    for (const Tower& t : row)
        for (int k = 0; k < 4; ++k) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), t.coord(k).get_den_mpz_t());
    if (lcm == 1) return;
    Tower f{Rat(lcm)};
    for (Tower& t : row) t *= f;
}
inline void clear_denominators(Vec<Scalar>&) {}

} // namespace linalg_detail

template <class T>
struct Echelon {
    Mat<T> rows;             // forward-eliminated, fraction-free
    std::vector<int> pivots; // pivot column of each nonzero row
    int rank = 0;
    bool odd_swaps = false;
};

// Fraction-free (Bareiss) forward elimination. Deterministic: pivots are the
// first nonzero entry scanning columns left to right, rows top to bottom.
// Divisions are exact in the entry domain by the Sylvester minor identity.
template <class T>
Echelon<T> bareiss_echelon(Mat<T> m, bool scale_rows = true) {
    Echelon<T> e;
    if (m.empty()) return e;
    if (scale_rows)
        for (auto& row : m) linalg_detail::clear_denominators(row);
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    T prev(1);
    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        int sel = -1;
        for (int i = r; i < rows; ++i)
            if (!m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)].is_zero()) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != r) {
            std::swap(m[static_cast<std::size_t>(sel)], m[static_cast<std::size_t>(r)]);
            e.odd_swaps = !e.odd_swaps;
        }
        const auto& pivot_row = m[static_cast<std::size_t>(r)];
        const T& pivot = pivot_row[static_cast<std::size_t>(col)];
        for (int i = r + 1; i < rows; ++i) {
            auto& row = m[static_cast<std::size_t>(i)];
            T head = row[static_cast<std::size_t>(col)];
            if (head.is_zero()) {
                // Still rescale so the minor identity stays valid later.
                for (int j = col + 1; j < cols; ++j) {
                    auto& x = row[static_cast<std::size_t>(j)];
                    if (!x.is_zero())
                        x = linalg_detail::entry_divexact(x * pivot, prev);
                }
                continue;
            }
            for (int j = col + 1; j < cols; ++j) {
                auto& x = row[static_cast<std::size_t>(j)];
                x = linalg_detail::entry_divexact(
                    x * pivot - head * pivot_row[static_cast<std::size_t>(j)], prev);
            }
            row[static_cast<std::size_t>(col)] = T(0);
        }
        prev = pivot;
        e.pivots.push_back(col);
        ++r;
    }
    m.resize(static_cast<std::size_t>(r), Vec<T>());
    e.rows = std::move(m);
    e.rank = r;
    return e;
}

template <class T>
int rank(const Mat<T>& m) {
    return bareiss_echelon(m).rank;
}

// Exact determinant of a square matrix via Bareiss (no row scaling).
template <class T>
T det(const Mat<T>& m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) fail("DimensionMismatch", "determinant of non-square matrix");
    if (n == 0) return T(1);
    Echelon<T> e = bareiss_echelon(m, false);
    if (e.rank < static_cast<int>(n)) return T(0);
    T d = e.rows[n - 1][n - 1];
    return e.odd_swaps ? T(0) - d : d;
}

// Canonical basis of {x : m x = 0} over the tower field: one vector per free
// column (ascending), with that free coordinate set to 1.
inline std::vector<Vec<Tower>> kernel_basis(const Mat<Tower>& m, int cols) {
    Echelon<Tower> e = bareiss_echelon(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
    for (int p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<Vec<Tower>> out;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        Vec<Tower> x(static_cast<std::size_t>(cols));
        x[static_cast<std::size_t>(f)] = Tower(1);
        for (int r = e.rank - 1; r >= 0; --r) {
            int p = e.pivots[static_cast<std::size_t>(r)];
            Tower s;
            for (int j = p + 1; j < cols; ++j) {
                const Tower& c = e.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
                if (!c.is_zero() && !x[static_cast<std::size_t>(j)].is_zero())
                    s += c * x[static_cast<std::size_t>(j)];
            }
            x[static_cast<std::size_t>(p)] =
                (Tower() - s).div(e.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(p)]);
        }
        out.push_back(std::move(x));
    }
    return out;
}

// Incremental reduced row echelon over the tower field. Rows are normalized
// (pivot 1) and fully back-reduced, so the stored basis of the span is
// canonical regardless of insertion order of equivalent sets.
class RowReducer {
public:
    explicit RowReducer(int cols) : cols_(cols) {}

    int cols() const { return cols_; }
    int rank() const { return static_cast<int>(rows_.size()); }

    Vec<Tower> reduce(Vec<Tower> v) const {
        for (const auto& [p, row] : rows_) {
            Tower c = v[static_cast<std::size_t>(p)];
            if (c.is_zero()) continue;
            for (int j = 0; j < cols_; ++j)
                if (!row[static_cast<std::size_t>(j)].is_zero())
                    v[static_cast<std::size_t>(j)] -= c * row[static_cast<std::size_t>(j)];
        }
        return v;
    }

    // Returns true when v enlarged the span.
    bool insert(const Vec<Tower>& v) {
        Vec<Tower> r = reduce(v);
        int p = -1;
        for (int j = 0; j < cols_; ++j)
            if (!r[static_cast<std::size_t>(j)].is_zero()) {
                p = j;
                break;
            }
        if (p < 0) return false;
        Tower inv = r[static_cast<std::size_t>(p)].inverse();
        for (auto& x : r) x *= inv;
        for (auto& [q, row] : rows_) {
            Tower c = row[static_cast<std::size_t>(p)];
            if (c.is_zero()) continue;
            for (int j = 0; j < cols_; ++j)
                if (!r[static_cast<std::size_t>(j)].is_zero())
                    row[static_cast<std::size_t>(j)] -= c * r[static_cast<std::size_t>(j)];
        }
        rows_[p] = std::move(r);
        return true;
    }

    bool contains(const Vec<Tower>& v) const {
        Vec<Tower> r = reduce(v);
        for (const Tower& x : r)
            if (!x.is_zero()) return false;
        return true;
    }

    // Canonical spanning rows ordered by pivot column.
    std::vector<Vec<Tower>> basis() const {
        std::vector<Vec<Tower>> out;
        for (const auto& [p, row] : rows_) out.push_back(row);
        return out;
    }
    std::vector<int> pivot_columns() const {
        std::vector<int> out;
        for (const auto& [p, row] : rows_) out.push_back(p);
        return out;
    }

private:
    int cols_;
    std::map<int, Vec<Tower>> rows_;
};

// Solves A x = b over the tower field. Returns the solution or, when the
// system is inconsistent, the two ranks as an unsolvability certificate.
struct TowerSolve {
    std::optional<Vec<Tower>> solution;
    int rank_a = 0, rank_augmented = 0;
};

inline TowerSolve solve(const Mat<Tower>& a, const Vec<Tower>& b) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    Mat<Tower> aug = a;
    for (int i = 0; i < rows; ++i) aug[static_cast<std::size_t>(i)].push_back(b[static_cast<std::size_t>(i)]);
    Echelon<Tower> ea = bareiss_echelon(a);
    Echelon<Tower> eaug = bareiss_echelon(aug);
    TowerSolve out;
    out.rank_a = ea.rank;
    out.rank_augmented = eaug.rank;
    if (eaug.rank > ea.rank) return out;
    // Back substitution on the augmented echelon; free variables set to 0.
    Vec<Tower> x(static_cast<std::size_t>(cols));
    for (int r = eaug.rank - 1; r >= 0; --r) {
        int p = eaug.pivots[static_cast<std::size_t>(r)];
        const auto& row = eaug.rows[static_cast<std::size_t>(r)];
        Tower s = row[static_cast<std::size_t>(cols)];
        for (int j = p + 1; j < cols; ++j)
            if (!row[static_cast<std::size_t>(j)].is_zero()) s -= row[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(p)] = s.div(row[static_cast<std::size_t>(p)]);
    }
    out.solution = std::move(x);
    return out;
}

// Gauss-Jordan inverse over the polynomial ring. Pivots must be nonzero
// constants; division by a parameter-dependent entry is never performed.
// Returns nothing when no constant pivot is available (singular matrix, or
// invertible only over the fraction field).
inline std::optional<Mat<Scalar>> inverse_constant_pivots(Mat<Scalar> m) {
    const int n = static_cast<int>(m.size());
    for (auto& row : m) {
        if (static_cast<int>(row.size()) != n) return std::nullopt;
        row.resize(static_cast<std::size_t>(2 * n), Scalar());
    }
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + i)] = Scalar(1);
    for (int col = 0; col < n; ++col) {
        int sel = -1;
        for (int i = col; i < n; ++i) {
            const Scalar& c = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
            if (!c.is_zero() && c.is_constant()) {
                sel = i;
                break;
            }
        }
        if (sel < 0) return std::nullopt;
        std::swap(m[static_cast<std::size_t>(sel)], m[static_cast<std::size_t>(col)]);
        Scalar inv = m[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)].inverse();
        for (auto& x : m[static_cast<std::size_t>(col)]) x *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == col) continue;
            Scalar c = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
            if (c.is_zero()) continue;
            for (int j = 0; j < 2 * n; ++j)
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                    c * m[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
        }
    }
    Mat<Scalar> inv(static_cast<std::size_t>(n), Vec<Scalar>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + j)];
    return inv;
}

template <class T>
Mat<T> mat_mul(const Mat<T>& x, const Mat<T>& y) {
    const std::size_t r = x.size(), k = y.size(), c = y.empty() ? 0 : y[0].size();
    Mat<T> out(r, Vec<T>(c, T(0)));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (x[i][t].is_zero()) continue;
            for (std::size_t j = 0; j < c; ++j)
                if (!y[t][j].is_zero()) out[i][j] += x[i][t] * y[t][j];
        }
    return out;
}

inline Mat<Scalar> identity_matrix(int n) {
    Mat<Scalar> m(static_cast<std::size_t>(n), Vec<Scalar>(static_cast<std::size_t>(n), Scalar()));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Scalar(1);
    return m;
}

} // namespace nilcx
