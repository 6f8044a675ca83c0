#pragma once

#include <optional>
#include <vector>

#include "rcg/int_matrix.hpp"

namespace rcg {

/// Column-style Hermite normal form of a nonsingular square integer matrix:
/// h is lower triangular with positive diagonal and, in each row i, the
/// entries left of the diagonal reduced into [0, h[i][i]). Two matrices span
/// the same column lattice iff their forms are entrywise equal.
struct HnfBasis {
    IntMatrix h;
    std::optional<IntMatrix> transform;  // unimodular U with input * U == h

    int dim() const { return h.rows; }
    /// Product of the diagonal, i.e. |det| of the input.
    std::int64_t diag_product() const;
};

/// Smith normal form: left * input * right == diag(d) (rectangular diagonal),
/// with d[i] dividing d[i+1]. Zero entries, if any, sit at the end.
struct SnfDecomposition {
    std::vector<std::int64_t> d;
    IntMatrix left;
    IntMatrix right;
};

HnfBasis hnf(const IntMatrix& a, bool want_transform = false);

SnfDecomposition snf(const IntMatrix& a);

/// Z-basis of {x : a*x == 0}, one column per basis vector. May have zero
/// columns' worth of output when the kernel is trivial.
IntMatrix integer_kernel(const IntMatrix& a);

/// Canonical representative of v modulo the column lattice of basis: the
/// unique r == v (mod lattice) with 0 <= r[i] < h[i][i] after top-down
/// reduction. Idempotent.
std::vector<std::int64_t> canonical_residue(const std::vector<std::int64_t>& v,
                                            const HnfBasis& basis);

}  // namespace rcg
