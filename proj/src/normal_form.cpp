#include "rcg/normal_form.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace rcg {

namespace {

using i128 = __int128;

i128 add128(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit addition overflow");
    return r;
}

i128 mul128(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit multiplication overflow");
    return r;
}

std::int64_t narrow(i128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw OverflowError("normal form entry does not fit in 64 bits");
    return static_cast<std::int64_t>(v);
}

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 floor_div128(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// g = gcd(a, b) with x*a + y*b == g.
i128 xgcd(i128 a, i128 b, i128& x, i128& y) {
    i128 old_r = a, r = b;
    i128 old_x = 1, xx = 0;
    i128 old_y = 0, yy = 1;
    while (r != 0) {
        i128 q = old_r / r;
        i128 t;
        t = old_r - q * r; old_r = r; r = t;
        t = old_x - q * xx; old_x = xx; xx = t;
        t = old_y - q * yy; old_y = yy; yy = t;
    }
    if (old_r < 0) { old_r = -old_r; old_x = -old_x; old_y = -old_y; }
    x = old_x;
    y = old_y;
    return old_r;
}

struct Mat128 {
    int rows = 0, cols = 0;
    std::vector<i128> a;

    Mat128(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
    explicit Mat128(const IntMatrix& m) : rows(m.rows), cols(m.cols), a(m.a.begin(), m.a.end()) {}

    static Mat128 identity(int n) {
        Mat128 m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    i128& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    i128 at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    IntMatrix narrowed() const {
        IntMatrix m(rows, cols);
        for (std::size_t k = 0; k < a.size(); ++k) m.a[k] = narrow(a[k]);
        return m;
    }
};

// col_j += q * col_i, with overflow checks.
void add_col_multiple(Mat128& m, int j, int i, i128 q) {
    if (q == 0) return;
    for (int r = 0; r < m.rows; ++r)
        m.at(r, j) = add128(m.at(r, j), mul128(q, m.at(r, i)));
}

void swap_cols(Mat128& m, int i, int j) {
    if (i == j) return;
    for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
}

void negate_col(Mat128& m, int j) {
    for (int r = 0; r < m.rows; ++r) m.at(r, j) = -m.at(r, j);
}

// Replace (col_p, col_j) by the unimodular combination that leaves
// gcd(b[row][p], b[row][j]) at (row, p) and zero at (row, j).
void gcd_columns(Mat128& b, Mat128* u, int row, int p, int j) {
    const i128 ap = b.at(row, p);
    const i128 aj = b.at(row, j);
    if (aj == 0) return;
    if (ap == 0) {
        swap_cols(b, p, j);
        if (u) swap_cols(*u, p, j);
        return;
    }
    i128 x, y;
    const i128 g = xgcd(ap, aj, x, y);
    const i128 sp = ap / g, sj = aj / g;
    // (p', j') = (x*p + y*j, sp*j - sj*p); the 2x2 transform has determinant 1.
    for (Mat128* m : {&b, u}) {
        if (!m) continue;
        for (int r = 0; r < m->rows; ++r) {
            const i128 vp = m->at(r, p);
            const i128 vj = m->at(r, j);
            m->at(r, p) = add128(mul128(x, vp), mul128(y, vj));
            m->at(r, j) = add128(mul128(sp, vj), mul128(-sj, vp));
        }
    }
}

// Column echelon pass shared by hnf() and integer_kernel(). Processes rows
// top to bottom; returns the number of pivot columns.
int column_echelon(Mat128& b, Mat128* u) {
    int pivot = 0;
    for (int i = 0; i < b.rows && pivot < b.cols; ++i) {
        for (int j = pivot + 1; j < b.cols; ++j) gcd_columns(b, u, i, pivot, j);
        if (b.at(i, pivot) != 0) {
            if (b.at(i, pivot) < 0) {
                negate_col(b, pivot);
                if (u) negate_col(*u, pivot);
            }
            ++pivot;
        }
    }
    return pivot;
}

}  // namespace

std::int64_t HnfBasis::diag_product() const {
    std::int64_t p = 1;
    for (int i = 0; i < h.rows; ++i) p = checked_mul(p, h.at(i, i));
    return p;
}

HnfBasis hnf(const IntMatrix& a, bool want_transform) {
    if (a.rows != a.cols) throw BadDimensions("hnf: square input required");
    const int n = a.rows;
    Mat128 b(a);
    Mat128 u = Mat128::identity(n);
    Mat128* up = want_transform ? &u : nullptr;

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) gcd_columns(b, up, i, i, j);
        if (b.at(i, i) == 0) throw RankDeficient("hnf: input is rank deficient");
        if (b.at(i, i) < 0) {
            negate_col(b, i);
            if (up) negate_col(*up, i);
        }
        // Reduce the entries left of the diagonal into [0, pivot).
        for (int j = 0; j < i; ++j) {
            const i128 q = floor_div128(b.at(i, j), b.at(i, i));
            add_col_multiple(b, j, i, -q);
            if (up) add_col_multiple(*up, j, i, -q);
        }
    }

    HnfBasis out;
    out.h = b.narrowed();
    if (want_transform) out.transform = u.narrowed();
    return out;
}

SnfDecomposition snf(const IntMatrix& a) {
    const int rows = a.rows, cols = a.cols;
    Mat128 b(a);
    Mat128 left = Mat128::identity(rows);
    Mat128 right = Mat128::identity(cols);
    const int steps = std::min(rows, cols);

    auto add_row_multiple = [&](Mat128& m, int dst, int src, i128 q) {
        if (q == 0) return;
        for (int c = 0; c < m.cols; ++c)
            m.at(dst, c) = add128(m.at(dst, c), mul128(q, m.at(src, c)));
    };
    auto swap_rows = [&](Mat128& m, int i, int j) {
        if (i == j) return;
        for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
    };

    for (int t = 0; t < steps; ++t) {
        for (;;) {
            // Smallest nonzero |entry| in the trailing block as pivot keeps
            // the coefficients from blowing up.
            int pr = -1, pc = -1;
            i128 best = 0;
            for (int i = t; i < rows; ++i)
                for (int j = t; j < cols; ++j) {
                    const i128 v = abs128(b.at(i, j));
                    if (v != 0 && (pr < 0 || v < best)) {
                        best = v;
                        pr = i;
                        pc = j;
                    }
                }
            if (pr < 0) goto done;  // trailing block is zero
            swap_rows(b, t, pr);
            swap_rows(left, t, pr);
            swap_cols(b, t, pc);
            swap_cols(right, t, pc);

            bool clean = true;
            for (int i = t + 1; i < rows; ++i) {
                const i128 q = floor_div128(b.at(i, t), b.at(t, t));
                add_row_multiple(b, i, t, -q);
                add_row_multiple(left, i, t, -q);
                if (b.at(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < cols; ++j) {
                const i128 q = floor_div128(b.at(t, j), b.at(t, t));
                add_col_multiple(b, j, t, -q);
                add_col_multiple(right, j, t, -q);
                if (b.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Divisibility sweep: fold a bad entry into the pivot row.
            bool divides = true;
            for (int i = t + 1; i < rows && divides; ++i)
                for (int j = t + 1; j < cols && divides; ++j)
                    if (b.at(i, j) % b.at(t, t) != 0) {
                        add_row_multiple(b, t, i, 1);
                        add_row_multiple(left, t, i, 1);
                        divides = false;
                    }
            if (divides) break;
        }
        if (b.at(t, t) < 0) {
            negate_col(b, t);
            negate_col(right, t);
        }
    }
done:

    SnfDecomposition out;
    out.d.resize(steps);
    for (int t = 0; t < steps; ++t) out.d[t] = narrow(b.at(t, t));
    out.left = left.narrowed();
    out.right = right.narrowed();
    return out;
}

IntMatrix integer_kernel(const IntMatrix& a) {
    Mat128 b(a);
    Mat128 u = Mat128::identity(a.cols);
    const int pivots = column_echelon(b, &u);
    IntMatrix kernel(a.cols, a.cols - pivots);
    for (int i = 0; i < a.cols; ++i)
        for (int j = pivots; j < a.cols; ++j)
            kernel.at(i, j - pivots) = narrow(u.at(i, j));
    return kernel;
}

std::vector<std::int64_t> canonical_residue(const std::vector<std::int64_t>& v,
                                            const HnfBasis& basis) {
    const IntMatrix& h = basis.h;
    if (static_cast<int>(v.size()) != h.rows)
        throw BadDimensions("canonical_residue: vector length mismatch");
    std::vector<i128> r(v.begin(), v.end());
    for (int i = 0; i < h.rows; ++i) {
        const i128 q = floor_div128(r[i], h.at(i, i));
        if (q == 0) continue;
        for (int k = i; k < h.rows; ++k)
            r[k] = add128(r[k], mul128(-q, h.at(k, i)));
    }
    std::vector<std::int64_t> out(h.rows);
    for (int i = 0; i < h.rows; ++i) out[i] = narrow(r[i]);
    return out;
}

}  // namespace rcg
