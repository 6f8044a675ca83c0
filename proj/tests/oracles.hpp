// Independent brute-force oracles used by the tests. Everything here works by
// exhaustive enumeration over small boxes or explicit graphs and stays
// independent of the library's own algorithms.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <vector>

#include "rcg/int_matrix.hpp"
#include "rcg/rng.hpp"

namespace oracle {

using rcg::IntMatrix;

inline IntMatrix random_matrix(rcg::Philox& rng, int rows, int cols, std::int64_t lo,
                               std::int64_t hi) {
    IntMatrix m(rows, cols);
    for (auto& e : m.a) e = rng.uniform_int(lo, hi);
    return m;
}

inline IntMatrix random_unimodular(rcg::Philox& rng, int n, int ops = 12) {
    IntMatrix u = IntMatrix::identity(n);
    for (int t = 0; t < ops; ++t) {
        const int kind = static_cast<int>(rng.uniform_below(3));
        const int i = static_cast<int>(rng.uniform_below(n));
        int j = static_cast<int>(rng.uniform_below(n));
        if (kind == 0 && n > 1) {
            while (j == i) j = static_cast<int>(rng.uniform_below(n));
            const std::int64_t q = rng.uniform_int(-3, 3);
            for (int r = 0; r < n; ++r) u.at(r, j) += q * u.at(r, i);
        } else if (kind == 1 && n > 1) {
            while (j == i) j = static_cast<int>(rng.uniform_below(n));
            for (int r = 0; r < n; ++r) std::swap(u.at(r, i), u.at(r, j));
        } else {
            for (int r = 0; r < n; ++r) u.at(r, i) = -u.at(r, i);
        }
    }
    return u;
}

// Unique rational solution of B*c = x (B full column rank), rounded and then
// verified exactly in integer arithmetic. Sound for membership either way.
inline bool in_column_lattice(const IntMatrix& b, const std::vector<std::int64_t>& x) {
    Eigen::MatrixXd bd(b.rows, b.cols);
    Eigen::VectorXd xd(b.rows);
    for (int i = 0; i < b.rows; ++i) {
        xd(i) = static_cast<double>(x[i]);
        for (int j = 0; j < b.cols; ++j) bd(i, j) = static_cast<double>(b.at(i, j));
    }
    const Eigen::VectorXd c = (bd.transpose() * bd).ldlt().solve(bd.transpose() * xd);
    std::vector<std::int64_t> ci(b.cols);
    for (int j = 0; j < b.cols; ++j) ci[j] = std::llround(c(j));
    for (int i = 0; i < b.rows; ++i) {
        std::int64_t s = 0;
        for (int j = 0; j < b.cols; ++j) s += b.at(i, j) * ci[j];
        if (s != x[i]) return false;
    }
    return true;
}

// All integer combinations of the columns of basis whose entries fall inside
// [-box, box]^rows, collected as sorted vectors. coeff_box bounds the
// coefficient search; it must be large enough that every lattice point of the
// target box is reachable (callers pick generous values for tiny cases).
inline std::set<std::vector<std::int64_t>> lattice_points_in_box(const IntMatrix& basis,
                                                                 std::int64_t box,
                                                                 std::int64_t coeff_box) {
    std::set<std::vector<std::int64_t>> points;
    const int m = basis.cols;
    std::vector<std::int64_t> c(m, -coeff_box);
    for (;;) {
        std::vector<std::int64_t> v(basis.rows, 0);
        for (int i = 0; i < basis.rows; ++i)
            for (int j = 0; j < m; ++j) v[i] += basis.at(i, j) * c[j];
        bool inside = true;
        for (const auto x : v)
            if (x < -box || x > box) inside = false;
        if (inside) points.insert(v);
        int i = 0;
        while (i < m && c[i] == coeff_box) c[i++] = -coeff_box;
        if (i == m) break;
        ++c[i];
    }
    return points;
}

// Brute-force kernel vectors of a (a.rows x a.cols) with entries in
// [-box, box]^cols.
inline std::set<std::vector<std::int64_t>> kernel_vectors_in_box(const IntMatrix& a,
                                                                 std::int64_t box) {
    std::set<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> x(a.cols, -box);
    for (;;) {
        bool zero = true;
        for (int i = 0; i < a.rows && zero; ++i) {
            std::int64_t s = 0;
            for (int j = 0; j < a.cols; ++j) s += a.at(i, j) * x[j];
            zero = s == 0;
        }
        if (zero) out.insert(x);
        int i = 0;
        while (i < a.cols && x[i] == box) x[i++] = -box;
        if (i == a.cols) break;
        ++x[i];
    }
    return out;
}

// BFS distances on the Cayley graph of the abelian group presented by
// residues modulo `mod` per coordinate (mod[i] == the cyclic order of
// coordinate i), from the identity, with the given generator list. Element
// keys are residue vectors. Undirected uses +-g.
inline std::map<std::vector<std::int64_t>, std::int64_t> cayley_bfs(
    const std::vector<std::int64_t>& mod, std::vector<std::vector<std::int64_t>> gens,
    bool directed) {
    const int n = static_cast<int>(mod.size());
    auto reduce = [&](std::vector<std::int64_t> v) {
        for (int i = 0; i < n; ++i) v[i] = ((v[i] % mod[i]) + mod[i]) % mod[i];
        return v;
    };
    if (!directed) {
        const std::size_t fwd = gens.size();
        for (std::size_t j = 0; j < fwd; ++j) {
            std::vector<std::int64_t> neg(n);
            for (int i = 0; i < n; ++i) neg[i] = -gens[j][i];
            gens.push_back(neg);
        }
    }
    std::map<std::vector<std::int64_t>, std::int64_t> dist;
    std::deque<std::vector<std::int64_t>> queue;
    const std::vector<std::int64_t> id(n, 0);
    dist[id] = 0;
    queue.push_back(id);
    while (!queue.empty()) {
        const auto v = queue.front();
        queue.pop_front();
        for (const auto& g : gens) {
            std::vector<std::int64_t> w(n);
            for (int i = 0; i < n; ++i) w[i] = v[i] + g[i];
            w = reduce(w);
            if (dist.find(w) == dist.end()) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

// Chi-square statistic for observed counts against a uniform expectation.
inline double chi_square_uniform(const std::vector<std::int64_t>& counts) {
    std::int64_t total = 0;
    for (const auto c : counts) total += c;
    const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    double stat = 0.0;
    for (const auto c : counts) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    return stat;
}

}  // namespace oracle
