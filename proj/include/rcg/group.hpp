#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rcg/normal_form.hpp"
#include "rcg/rng.hpp"

namespace rcg {

/// The finite abelian group Z^n / Sigma, with Sigma given by a nonsingular
/// basis matrix and stored in canonical Hermite form.
struct AbelianQuotient {
    int n = 0;
    HnfBasis sigma;                      // M with M * Z^n == Sigma, canonical
    std::int64_t order = 0;              // |det M|
    std::vector<std::int64_t> divisors;  // elementary divisors of Sigma in Z^n
    std::int64_t gcd_sigma = 0;          // largest l with Sigma/l still integral
};

AbelianQuotient quotient_from_basis(const IntMatrix& m);

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational&) const = default;
};

/// The quantity whose divergence drives all limit statements: |Sigma| when
/// m > n, and |Sigma| / gcd(Sigma)^n when m == n.
Rational divergence_parameter(const AbelianQuotient& q, int m);

/// True iff the columns of u together with Sigma generate Z^n.
bool is_generating(const IntMatrix& u, const AbelianQuotient& q);

/// A size-m generating set of the quotient, columns stored as canonical
/// residues and sorted, so equal sets compare equal entrywise.
struct GeneratingSet {
    int m = 0;
    IntMatrix u;  // n x m
    AbelianQuotient quotient;
};

/// Canonicalizes (reduces and sorts columns) and validates distinctness and
/// generation. Throws BadDimensions on violated preconditions.
GeneratingSet make_generating_set(const IntMatrix& u, const AbelianQuotient& q);

/// Uniform sample from the size-m generating subsets, by rejection. Each
/// budget unit is one m-tuple proposal.
GeneratingSet sample_generating_set(const AbelianQuotient& q, int m, Philox& rng,
                                    std::int64_t budget = 1'000'000);

/// Predicate on the m sampled points of the torus T^n (each point is the
/// column divided by k, coordinates in [0,1)). The library always passes the
/// points sorted lexicographically, so any predicate is effectively
/// permutation invariant. The caller promises Jordan measurability.
using WindowPredicate = std::function<bool(const std::vector<std::vector<double>>&)>;

/// The m columns of s as points of T^n, sorted. Requires Sigma == k Z^n.
std::vector<std::vector<double>> torus_points(const GeneratingSet& s);

/// Uniform sample conditioned on the window, for Sigma == k Z^n and m > n.
GeneratingSet sample_restricted(const AbelianQuotient& q, int m, const WindowPredicate& window,
                                Philox& rng, std::int64_t budget = 1'000'000);

/// A finite-index sublattice of Z^m in canonical Hermite basis form.
struct IntegerLattice {
    int m = 0;
    HnfBasis basis;
    std::int64_t index = 0;
    std::vector<std::int64_t> divisors;
};

IntegerLattice lattice_from_basis(const IntMatrix& b);

/// The kernel lattice of the map Z^m -> Z^n/Sigma sending the standard basis
/// to the columns of s: {k : u*k in Sigma}. Has index |Sigma| in Z^m.
IntegerLattice kernel_of_generating_map(const GeneratingSet& s);

}  // namespace rcg
