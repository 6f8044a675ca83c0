#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rcg/lattice_geometry.hpp"
#include "rcg/rng.hpp"

namespace rcg {

/// Exact draw from the invariant probability measure on unimodular lattices
/// in R^2: hyperbolic density (3/pi) y^-2 on the modular fundamental domain
/// for the shape, times an independent uniform rotation of the plane.
/// `attempts`, when given, receives the number of proposals of the rejection
/// step (for rate diagnostics).
RealLattice sample_x2_exact(Philox& rng, int* attempts = nullptr);

bool is_prime(std::uint64_t n);

/// Uniform index-p sublattice of Z^m (a random hyperplane kernel mod p),
/// elementary divisors (1, ..., 1, p). Throws NotPrime.
IntegerLattice sample_hecke_sublattice(int m, std::int64_t p, Philox& rng);

/// The normalization of sample_hecke_sublattice to covolume 1. As p grows
/// these points equidistribute toward the invariant measure.
RealLattice sample_hecke(int m, std::int64_t p, Philox& rng);

enum class Functional { covering_radius, moment, shortest_positive };

std::string functional_name(Functional f);

/// Reference sampling method: exact for m == 2, Hecke points otherwise (or
/// on request).
struct ReferenceMethod {
    bool exact_m2 = true;
    std::int64_t hecke_p = 10007;

    std::string name() const;
};

struct ReferenceParams {
    int grid_per_axis = 64;       // covering radius sweep
    std::int64_t mc_samples = 10000;  // torus moment integration
};

struct ReferenceSampleSet {
    int m = 0;
    std::string method;
    Functional functional = Functional::covering_radius;
    double alpha = 1.0;
    NormBall ball;
    std::vector<double> samples;
    std::vector<double> widths;  // certified interval widths (covering radius only)
};

/// n_samples independent draws of zeta(L), L from the reference sampler.
/// Sample i uses streams.stream(i); the result does not depend on scheduling.
ReferenceSampleSet reference_distribution(int m, Functional functional, double alpha,
                                          NormBall ball, std::int64_t n_samples,
                                          const ReferenceMethod& method,
                                          const StreamFamily& streams,
                                          const ReferenceParams& params = {},
                                          int threads = 1);

}  // namespace rcg
