#include "rcg/lattice_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace rcg {

namespace {

double abs_det(const Eigen::MatrixXd& b) { return std::abs(b.determinant()); }

// Visits every integer coefficient vector c in the per-axis ranges [lo, hi],
// maintaining v = basis * c incrementally. f(c, v) must not keep references.
template <typename F>
void enumerate_coefficient_box(const Eigen::MatrixXd& basis, const std::vector<std::int64_t>& lo,
                               const std::vector<std::int64_t>& hi, std::int64_t budget, F&& f) {
    const int m = static_cast<int>(lo.size());
    double count = 1.0;
    for (int i = 0; i < m; ++i) {
        if (hi[i] < lo[i]) return;
        count *= static_cast<double>(hi[i] - lo[i] + 1);
    }
    if (count > static_cast<double>(budget))
        throw EnumerationBudgetExceeded("lattice enumeration box of ~" +
                                        std::to_string(static_cast<double>(count)) +
                                        " points exceeds budget");

    std::vector<std::int64_t> c(lo);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
    for (int i = 0; i < m; ++i) v += static_cast<double>(c[i]) * basis.col(i);
    for (;;) {
        f(c, v);
        int i = 0;
        while (i < m) {
            if (c[i] < hi[i]) {
                ++c[i];
                v += basis.col(i);
                break;
            }
            v -= static_cast<double>(c[i] - lo[i]) * basis.col(i);
            c[i] = lo[i];
            ++i;
        }
        if (i == m) return;
    }
}

// Coefficient ranges covering {c : basis*c in box(center, half-extent)}.
void coefficient_ranges(const Eigen::MatrixXd& inv, const Eigen::VectorXd& center,
                        const Eigen::VectorXd& half, std::vector<std::int64_t>& lo,
                        std::vector<std::int64_t>& hi) {
    const int m = static_cast<int>(center.size());
    lo.resize(m);
    hi.resize(m);
    for (int i = 0; i < m; ++i) {
        const double mid = inv.row(i).dot(center);
        const double spread = inv.row(i).cwiseAbs().dot(half);
        lo[i] = static_cast<std::int64_t>(std::ceil(mid - spread - 1e-9));
        hi[i] = static_cast<std::int64_t>(std::floor(mid + spread + 1e-9));
    }
}

bool is_zero_coeff(const std::vector<std::int64_t>& c) {
    return std::all_of(c.begin(), c.end(), [](std::int64_t x) { return x == 0; });
}

struct TorusMetric {
    int m;
    Eigen::MatrixXd basis;  // reduced
    Eigen::MatrixXd inv;
    bool directed;
    double tol;
    std::int64_t budget;

    TorusMetric(const RealLattice& l, NormBall ball, std::int64_t enum_budget)
        : m(l.m),
          basis(reduce_basis(l.basis)),
          inv(basis.inverse()),
          directed(ball.directed),
          tol(1e-9 * std::max(1.0, basis.cwiseAbs().maxCoeff())),
          budget(enum_budget) {}

    double distance(const Eigen::VectorXd& x) const {
        return directed ? directed_distance(x) : undirected_distance(x);
    }

  private:
    double undirected_distance(const Eigen::VectorXd& x) const {
        // Feasible start: the lattice point nearest to -x in coordinates.
        Eigen::VectorXd c0 = (inv * (-x)).array().round();
        double best = (x + basis * c0).cwiseAbs().sum();
        if (best <= tol) return 0.0;

        std::vector<std::int64_t> lo, hi;
        coefficient_ranges(inv, -x, Eigen::VectorXd::Constant(m, best), lo, hi);
        enumerate_coefficient_box(basis, lo, hi, budget,
                                  [&](const std::vector<std::int64_t>&, const Eigen::VectorXd& v) {
                                      const double s = (x + v).cwiseAbs().sum();
                                      if (s < best) best = s;
                                  });
        return best;
    }

    double directed_distance(const Eigen::VectorXd& x) const {
        // Rounding in coordinates lands within r_inf of any target point.
        double r_inf = 0.0;
        for (int i = 0; i < m; ++i) r_inf = std::max(r_inf, basis.row(i).cwiseAbs().sum());
        double best = -1.0;
        for (double t = 0.0;; t = (t == 0.0 ? 1.0 : 2.0 * t)) {
            const Eigen::VectorXd target = Eigen::VectorXd::Constant(m, t) - x;
            const Eigen::VectorXd c0 = (inv * target).array().round();
            const Eigen::VectorXd y = x + basis * c0;
            if (y.minCoeff() >= -tol) {
                best = y.cwiseMax(0.0).sum();
                break;
            }
            if (t > r_inf + 1.0)
                throw EnumerationBudgetExceeded("directed torus distance: no feasible start");
        }

        std::vector<std::int64_t> lo, hi;
        coefficient_ranges(inv, Eigen::VectorXd::Constant(m, best / 2) - x,
                           Eigen::VectorXd::Constant(m, best / 2 + tol), lo, hi);
        enumerate_coefficient_box(basis, lo, hi, budget,
                                  [&](const std::vector<std::int64_t>&, const Eigen::VectorXd& v) {
                                      const Eigen::VectorXd y = x + v;
                                      if (y.minCoeff() < -tol) return;
                                      const double s = y.cwiseMax(0.0).sum();
                                      if (s < best) best = s;
                                  });
        return best;
    }
};

}  // namespace

RealLattice make_real_lattice(const Eigen::MatrixXd& basis) {
    if (basis.rows() != basis.cols() || basis.rows() == 0)
        throw BadDimensions("make_real_lattice: square nonempty basis required");
    RealLattice l;
    l.m = static_cast<int>(basis.rows());
    l.basis = basis;
    l.covolume = abs_det(basis);
    if (!(l.covolume > 0.0) || !std::isfinite(l.covolume))
        throw RankDeficient("make_real_lattice: singular basis");
    return l;
}

RealLattice real_from_integer(const IntegerLattice& lambda) {
    Eigen::MatrixXd b(lambda.m, lambda.m);
    for (int i = 0; i < lambda.m; ++i)
        for (int j = 0; j < lambda.m; ++j)
            b(i, j) = static_cast<double>(lambda.basis.h.at(i, j));
    return make_real_lattice(b);
}

RealLattice normalize(const RealLattice& l) {
    const double scale = std::pow(l.covolume, -1.0 / l.m);
    return make_real_lattice(l.basis * scale);
}

Eigen::MatrixXd reduce_basis(Eigen::MatrixXd b) {
    const int m = static_cast<int>(b.cols());
    for (int sweep = 0; sweep < 512; ++sweep) {
        bool changed = false;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                if (i == j) continue;
                const double mu = std::round(b.col(i).dot(b.col(j)) / b.col(j).squaredNorm());
                if (mu == 0.0) continue;
                const Eigen::VectorXd cand = b.col(i) - mu * b.col(j);
                if (cand.squaredNorm() < b.col(i).squaredNorm() * (1.0 - 1e-12)) {
                    b.col(i) = cand;
                    changed = true;
                }
            }
        }
        if (!changed) break;
    }
    // Deterministic column order: by norm, ties by entries.
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int p, int q) {
        const double np = b.col(p).squaredNorm(), nq = b.col(q).squaredNorm();
        if (np != nq) return np < nq;
        for (int r = 0; r < b.rows(); ++r)
            if (b(r, p) != b(r, q)) return b(r, p) < b(r, q);
        return false;
    });
    Eigen::MatrixXd out(b.rows(), m);
    for (int j = 0; j < m; ++j) out.col(j) = b.col(order[j]);
    return out;
}

double shortest_positive(const RealLattice& l, std::int64_t budget) {
    const Eigen::MatrixXd basis = reduce_basis(l.basis);
    const Eigen::MatrixXd inv = basis.inverse();
    const int m = l.m;
    const double tol = 1e-9 * std::max(1.0, basis.cwiseAbs().maxCoeff());

    // Initial upper bound: grow a cube in coefficient space until it contains
    // a nonzero lattice vector with nonnegative coordinates.
    double upper = -1.0;
    for (std::int64_t radius = 1;; radius *= 2) {
        std::vector<std::int64_t> lo(m, -radius), hi(m, radius);
        enumerate_coefficient_box(
            basis, lo, hi, budget,
            [&](const std::vector<std::int64_t>& c, const Eigen::VectorXd& v) {
                if (is_zero_coeff(c) || v.minCoeff() < -tol) return;
                const double s = v.cwiseMax(0.0).sum();
                if (upper < 0.0 || s < upper) upper = s;
            });
        if (upper >= 0.0) break;
    }

    // Exact minimum over the simplex {v >= 0, sum v <= upper}.
    double best = upper;
    std::vector<std::int64_t> lo, hi;
    coefficient_ranges(inv, Eigen::VectorXd::Constant(m, best / 2),
                       Eigen::VectorXd::Constant(m, best / 2 + tol), lo, hi);
    enumerate_coefficient_box(basis, lo, hi, budget,
                              [&](const std::vector<std::int64_t>& c, const Eigen::VectorXd& v) {
                                  if (is_zero_coeff(c) || v.minCoeff() < -tol) return;
                                  const double s = v.cwiseMax(0.0).sum();
                                  if (s < best) best = s;
                              });
    return best;
}

double torus_distance(const RealLattice& l, const Eigen::VectorXd& x, NormBall ball,
                      std::int64_t budget) {
    if (x.size() != l.m) throw BadDimensions("torus_distance: point dimension mismatch");
    return TorusMetric(l, ball, budget).distance(x);
}

CoverInterval covering_radius(const RealLattice& l, NormBall ball, int grid_per_axis,
                              std::int64_t budget) {
    if (grid_per_axis < 2) throw BadDimensions("covering_radius: grid_per_axis >= 2 required");
    const TorusMetric metric(l, ball, budget);
    const Eigen::MatrixXd& basis = metric.basis;
    const int m = l.m;
    const std::int64_t g = grid_per_axis;

    double lower = 0.0;
    double eps = 0.0;
    Eigen::VectorXd x(m);

    if (!ball.directed) {
        // Cell centers of the fundamental parallelepiped; the distance is
        // 1-Lipschitz for l1, so half the cell l1 diameter certifies the sup.
        for (int j = 0; j < m; ++j) eps += basis.col(j).cwiseAbs().sum();
        eps *= 0.5 / static_cast<double>(g);

        std::int64_t cells = 1;
        for (int i = 0; i < m; ++i) cells = checked_mul(cells, g);
        Eigen::VectorXd frac(m);
        for (std::int64_t idx = 0; idx < cells; ++idx) {
            std::int64_t rem = idx;
            for (int i = 0; i < m; ++i) {
                frac(i) = (static_cast<double>(rem % g) + 0.5) / static_cast<double>(g);
                rem /= g;
            }
            x.noalias() = basis * frac;
            lower = std::max(lower, metric.distance(x));
        }
    } else {
        // One-sided certificate: d(y) <= d(anchor) + sum(y - anchor) needs an
        // anchor below y in every coordinate, so sweep an axis-aligned grid
        // over the bounding box of the parallelepiped, one extra layer low.
        Eigen::VectorXd lo = Eigen::VectorXd::Zero(m), hi = Eigen::VectorXd::Zero(m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                lo(i) += std::min(0.0, basis(i, j));
                hi(i) += std::max(0.0, basis(i, j));
            }
        Eigen::VectorXd h = (hi - lo) / static_cast<double>(g);
        eps = h.sum();

        std::int64_t points = 1;
        for (int i = 0; i < m; ++i) points = checked_mul(points, g + 1);
        for (std::int64_t idx = 0; idx < points; ++idx) {
            std::int64_t rem = idx;
            for (int i = 0; i < m; ++i) {
                const std::int64_t ji = rem % (g + 1) - 1;  // -1 .. g-1
                rem /= (g + 1);
                x(i) = lo(i) + (static_cast<double>(ji) + 0.5) * h(i);
            }
            lower = std::max(lower, metric.distance(x));
        }
    }
    return CoverInterval{lower, lower + eps};
}

MomentEstimate torus_moment(const RealLattice& l, double alpha, NormBall ball,
                            std::int64_t samples, Philox& rng, std::int64_t budget) {
    if (!(alpha > 0)) throw BadDimensions("torus_moment: alpha must be positive");
    if (samples < 100) throw BadDimensions("torus_moment: at least 100 samples required");
    const TorusMetric metric(l, ball, budget);
    const int m = l.m;

    double sum = 0.0, sumsq = 0.0;
    Eigen::VectorXd frac(m), x(m);
    for (std::int64_t i = 0; i < samples; ++i) {
        for (int j = 0; j < m; ++j) frac(j) = rng.uniform01();
        x.noalias() = metric.basis * frac;
        const double d = metric.distance(x);
        const double p = (alpha == 1.0) ? d : std::pow(d, alpha);
        sum += p;
        sumsq += p * p;
    }
    const double n = static_cast<double>(samples);
    const double mean = sum / n;
    const double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
    const double se_mean = std::sqrt(var / n);

    MomentEstimate est;
    est.value = std::pow(mean, 1.0 / alpha);
    est.stderr_value = (mean > 0.0)
                           ? std::pow(mean, 1.0 / alpha - 1.0) * se_mean / alpha
                           : se_mean;
    return est;
}

}  // namespace rcg
