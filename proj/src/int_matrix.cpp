#include "rcg/int_matrix.hpp"

#include <cstdlib>

namespace rcg {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 addition overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 multiplication overflow");
    return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
    return a - floor_div(a, b) * b;
}

std::int64_t gcd_i64(std::int64_t a, std::int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

IntMatrix::IntMatrix(int r, int c, std::initializer_list<std::int64_t> entries)
    : rows(r), cols(c), a(entries) {
    if (a.size() != static_cast<std::size_t>(r) * c)
        throw BadDimensions("IntMatrix: initializer size mismatch");
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

std::vector<std::int64_t> IntMatrix::column(int j) const {
    std::vector<std::int64_t> v(rows);
    for (int i = 0; i < rows; ++i) v[i] = at(i, j);
    return v;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix mul(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols != y.rows) throw BadDimensions("mul: inner dimensions differ");
    IntMatrix r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int j = 0; j < y.cols; ++j) {
            std::int64_t acc = 0;
            for (int k = 0; k < x.cols; ++k)
                acc = checked_add(acc, checked_mul(x.at(i, k), y.at(k, j)));
            r.at(i, j) = acc;
        }
    }
    return r;
}

IntMatrix hstack(const IntMatrix& x, const IntMatrix& y) {
    if (x.rows != y.rows) throw BadDimensions("hstack: row counts differ");
    IntMatrix r(x.rows, x.cols + y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int j = 0; j < x.cols; ++j) r.at(i, j) = x.at(i, j);
        for (int j = 0; j < y.cols; ++j) r.at(i, x.cols + j) = y.at(i, j);
    }
    return r;
}

}  // namespace rcg
