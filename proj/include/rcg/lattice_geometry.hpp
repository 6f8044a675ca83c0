#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "rcg/group.hpp"
#include "rcg/rng.hpp"

namespace rcg {

/// Full-rank lattice in R^m, columns of `basis` are the basis vectors.
struct RealLattice {
    int m = 0;
    Eigen::MatrixXd basis;
    double covolume = 0.0;  // |det basis|
};

RealLattice make_real_lattice(const Eigen::MatrixXd& basis);
RealLattice real_from_integer(const IntegerLattice& lambda);

/// Gauge body for the two metric regimes: the open l1 cross-polytope
/// (undirected) or the open positive simplex (directed, non-symmetric).
struct NormBall {
    bool directed = false;
};

/// Scale to covolume 1.
RealLattice normalize(const RealLattice& l);

inline constexpr std::int64_t kDefaultEnumerationBudget = 50'000'000;

/// min of sum(v_i) over nonzero lattice vectors with all coordinates >= 0;
/// the shortest-vector length for the simplex gauge. Exact enumeration.
double shortest_positive(const RealLattice& l,
                         std::int64_t budget = kDefaultEnumerationBudget);

/// Distance from the lattice to x on the torus R^m/Lambda: the minimum over
/// v in Lambda of sum|x_i + v_i| (undirected), or of sum(x_i + v_i) over the
/// v with x + v >= 0 (directed). The minimum is attained; enumeration is
/// exact up to floating point.
double torus_distance(const RealLattice& l, const Eigen::VectorXd& x, NormBall ball,
                      std::int64_t budget = kDefaultEnumerationBudget);

/// Certified enclosure of the covering radius sup_x torus_distance(x).
struct CoverInterval {
    double lower = 0.0;
    double upper = 0.0;

    double midpoint() const { return 0.5 * (lower + upper); }
    double width() const { return upper - lower; }
    bool contains(double t, double tol = 1e-9) const {
        return lower - tol <= t && t <= upper + tol;
    }
};

/// Grid sweep over a fundamental region. The lower bound is the max of the
/// sampled distances; the upper bound adds the per-cell certified increment
/// (half the l1 cell diameter in the undirected case, the sum of the cell
/// edge lengths in the directed one-sided case).
CoverInterval covering_radius(const RealLattice& l, NormBall ball, int grid_per_axis,
                              std::int64_t budget = kDefaultEnumerationBudget);

struct MomentEstimate {
    double value = 0.0;
    double stderr_value = 0.0;
};

/// Monte Carlo estimate of ( integral over the torus of d(0,x)^alpha )^(1/alpha),
/// points uniform in the fundamental parallelepiped. The standard error is
/// the error of the alpha-power mean propagated through the 1/alpha root.
MomentEstimate torus_moment(const RealLattice& l, double alpha, NormBall ball,
                            std::int64_t samples, Philox& rng,
                            std::int64_t budget = kDefaultEnumerationBudget);

/// Pairwise integer size-reduction of the basis columns (same lattice,
/// shorter vectors). Exposed for tests; every functional applies it on entry.
Eigen::MatrixXd reduce_basis(Eigen::MatrixXd b);

}  // namespace rcg
