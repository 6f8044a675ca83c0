#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "rcg/errors.hpp"

namespace rcg {

/// Checked signed 64-bit arithmetic. Throws OverflowError instead of wrapping.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/// Floor division/remainder (C++ '/' truncates toward zero).
std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t floor_mod(std::int64_t a, std::int64_t b);

std::int64_t gcd_i64(std::int64_t a, std::int64_t b);

/// Dense integer matrix, row-major, exact 64-bit entries. Arithmetic either
/// widens internally or fails loudly; it never wraps.
struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::int64_t> a;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
    IntMatrix(int r, int c, std::initializer_list<std::int64_t> entries);

    static IntMatrix identity(int n);

    std::int64_t& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    std::int64_t at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    std::vector<std::int64_t> column(int j) const;
    IntMatrix transposed() const;

    bool operator==(const IntMatrix& o) const = default;
};

/// Checked matrix product.
IntMatrix mul(const IntMatrix& x, const IntMatrix& y);

/// [x | y] side by side; rows must match.
IntMatrix hstack(const IntMatrix& x, const IntMatrix& y);

}  // namespace rcg
