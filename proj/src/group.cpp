#include "rcg/group.hpp"

#include <algorithm>
#include <string>

namespace rcg {

namespace {

bool all_divisors_one(const std::vector<std::int64_t>& d) {
    return std::all_of(d.begin(), d.end(), [](std::int64_t x) { return x == 1; });
}

std::vector<std::vector<std::int64_t>> sorted_columns(const IntMatrix& u) {
    std::vector<std::vector<std::int64_t>> cols(u.cols);
    for (int j = 0; j < u.cols; ++j) cols[j] = u.column(j);
    std::sort(cols.begin(), cols.end());
    return cols;
}

IntMatrix from_columns(int rows, const std::vector<std::vector<std::int64_t>>& cols) {
    IntMatrix m(rows, static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols; ++j)
        for (int i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
    return m;
}

}  // namespace

AbelianQuotient quotient_from_basis(const IntMatrix& m) {
    if (m.rows != m.cols) throw BadDimensions("quotient_from_basis: square basis required");
    AbelianQuotient q;
    q.n = m.rows;
    try {
        q.sigma = hnf(m);
    } catch (const RankDeficient&) {
        throw SingularSigma("quotient_from_basis: det M == 0");
    }
    q.order = q.sigma.diag_product();
    q.divisors = snf(m).d;
    q.gcd_sigma = q.divisors.front();
    return q;
}

Rational divergence_parameter(const AbelianQuotient& q, int m) {
    if (m < q.n || m < 2) throw BadDimensions("divergence_parameter: need m >= n and m >= 2");
    if (m > q.n) return Rational{q.order, 1};
    std::int64_t den = 1;
    for (int i = 0; i < q.n; ++i) den = checked_mul(den, q.gcd_sigma);
    const std::int64_t g = gcd_i64(q.order, den);
    return Rational{q.order / g, den / g};
}

bool is_generating(const IntMatrix& u, const AbelianQuotient& q) {
    if (u.rows != q.n) throw BadDimensions("is_generating: row count differs from quotient");
    return all_divisors_one(snf(hstack(u, q.sigma.h)).d);
}

GeneratingSet make_generating_set(const IntMatrix& u, const AbelianQuotient& q) {
    if (u.rows != q.n) throw BadDimensions("make_generating_set: row count differs from quotient");
    if (u.cols < 2 || u.cols < q.n)
        throw BadDimensions("make_generating_set: need m >= n and m >= 2");
    IntMatrix reduced(u.rows, u.cols);
    for (int j = 0; j < u.cols; ++j) {
        const auto r = canonical_residue(u.column(j), q.sigma);
        for (int i = 0; i < u.rows; ++i) reduced.at(i, j) = r[i];
    }
    auto cols = sorted_columns(reduced);
    if (std::adjacent_find(cols.begin(), cols.end()) != cols.end())
        throw BadDimensions("make_generating_set: columns coincide as residues");
    GeneratingSet s;
    s.m = u.cols;
    s.u = from_columns(q.n, cols);
    s.quotient = q;
    if (!is_generating(s.u, q))
        throw BadDimensions("make_generating_set: columns do not generate the quotient");
    return s;
}

GeneratingSet sample_generating_set(const AbelianQuotient& q, int m, Philox& rng,
                                    std::int64_t budget) {
    if (m < q.n || m < 2) throw BadDimensions("sample_generating_set: need m >= n and m >= 2");
    if (q.order < m)
        throw BadDimensions("sample_generating_set: fewer than m residues in the quotient");

    for (std::int64_t attempt = 0; attempt < budget; ++attempt) {
        // The canonical residues are exactly the box prod [0, h[i][i]), so a
        // uniform residue is uniform per coordinate.
        std::vector<std::vector<std::int64_t>> cols(m, std::vector<std::int64_t>(q.n));
        for (auto& col : cols)
            for (int i = 0; i < q.n; ++i)
                col[i] = static_cast<std::int64_t>(
                    rng.uniform_below(static_cast<std::uint64_t>(q.sigma.h.at(i, i))));
        std::sort(cols.begin(), cols.end());
        if (std::adjacent_find(cols.begin(), cols.end()) != cols.end()) continue;
        const IntMatrix u = from_columns(q.n, cols);
        if (!is_generating(u, q)) continue;
        GeneratingSet s;
        s.m = m;
        s.u = u;
        s.quotient = q;
        return s;
    }
    throw RejectionBudgetExceeded("sample_generating_set: no generating set within budget (" +
                                  std::to_string(budget) + " proposals)");
}

std::vector<std::vector<double>> torus_points(const GeneratingSet& s) {
    const auto& q = s.quotient;
    const double k = static_cast<double>(q.divisors.front());
    if (!std::all_of(q.divisors.begin(), q.divisors.end(),
                     [&](std::int64_t d) { return d == q.divisors.front(); }))
        throw BadDimensions("torus_points: Sigma must be k Z^n");
    std::vector<std::vector<double>> pts(s.m, std::vector<double>(q.n));
    for (int j = 0; j < s.m; ++j)
        for (int i = 0; i < q.n; ++i) pts[j][i] = static_cast<double>(s.u.at(i, j)) / k;
    std::sort(pts.begin(), pts.end());
    return pts;
}

GeneratingSet sample_restricted(const AbelianQuotient& q, int m, const WindowPredicate& window,
                                Philox& rng, std::int64_t budget) {
    if (m <= q.n) throw BadDimensions("sample_restricted: requires m > n");
    if (!std::all_of(q.divisors.begin(), q.divisors.end(),
                     [&](std::int64_t d) { return d == q.divisors.front(); }))
        throw BadDimensions("sample_restricted: requires Sigma == k Z^n");
    for (std::int64_t attempt = 0; attempt < budget; ++attempt) {
        GeneratingSet s = sample_generating_set(q, m, rng, budget);
        if (window(torus_points(s))) return s;
    }
    throw EmptyWindow("sample_restricted: window not hit within budget");
}

IntegerLattice lattice_from_basis(const IntMatrix& b) {
    IntegerLattice lat;
    lat.m = b.rows;
    lat.basis = hnf(b);
    lat.index = lat.basis.diag_product();
    lat.divisors = snf(b).d;
    return lat;
}

IntegerLattice kernel_of_generating_map(const GeneratingSet& s) {
    const auto& q = s.quotient;
    // {k : u*k in Sigma} is the projection of ker(u | M) onto the first m
    // coordinates; the projection is one-to-one because M is nonsingular.
    const IntMatrix kernel = integer_kernel(hstack(s.u, q.sigma.h));
    IntMatrix projected(s.m, kernel.cols);
    for (int i = 0; i < s.m; ++i)
        for (int j = 0; j < kernel.cols; ++j) projected.at(i, j) = kernel.at(i, j);
    return lattice_from_basis(projected);
}

}  // namespace rcg
