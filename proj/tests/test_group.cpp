#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "rcg/group.hpp"

using namespace rcg;

namespace {

AbelianQuotient cyclic(std::int64_t k) { return quotient_from_basis(IntMatrix(1, 1, {k})); }

// All generating pairs {a, b} (a < b) of Z/k: gcd(a, b, k) == 1.
std::set<std::pair<std::int64_t, std::int64_t>> generating_pairs(std::int64_t k) {
    std::set<std::pair<std::int64_t, std::int64_t>> out;
    for (std::int64_t a = 0; a < k; ++a)
        for (std::int64_t b = a + 1; b < k; ++b)
            if (gcd_i64(gcd_i64(a, b), k) == 1) out.insert({a, b});
    return out;
}

std::pair<std::int64_t, std::int64_t> as_pair(const GeneratingSet& s) {
    return {s.u.at(0, 0), s.u.at(0, 1)};
}

}  // namespace

TEST_CASE("quotient construction: orders, divisors, gcd") {
    const AbelianQuotient five = quotient_from_basis(IntMatrix(2, 2, {5, 0, 0, 5}));
    CHECK(five.order == 25);
    CHECK(five.divisors == std::vector<std::int64_t>{5, 5});
    CHECK(five.gcd_sigma == 5);

    const AbelianQuotient d26 = quotient_from_basis(IntMatrix(2, 2, {2, 0, 0, 6}));
    CHECK(d26.order == 12);
    CHECK(d26.divisors == std::vector<std::int64_t>{2, 6});
    CHECK(d26.gcd_sigma == 2);

    const AbelianQuotient skew = quotient_from_basis(IntMatrix(2, 2, {2, 1, 0, 3}));
    CHECK(skew.order == 6);
    CHECK(skew.divisors == std::vector<std::int64_t>{1, 6});
    CHECK(skew.gcd_sigma == 1);

    CHECK_THROWS_AS(quotient_from_basis(IntMatrix(2, 2, {1, 2, 2, 4})), SingularSigma);
}

TEST_CASE("gcd_sigma is the largest integer dividing the whole basis") {
    Philox rng(11, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform_below(3));
        AbelianQuotient q;
        try {
            q = quotient_from_basis(oracle::random_matrix(rng, n, n, -9, 9));
        } catch (const SingularSigma&) {
            continue;
        }
        std::int64_t g = 0;
        for (const auto e : q.sigma.h.a) g = gcd_i64(g, e);
        CHECK(q.gcd_sigma == g);
        CHECK(q.divisors.front() == g);
    }
}

TEST_CASE("divergence parameter") {
    CHECK(divergence_parameter(cyclic(7), 2) == Rational{7, 1});
    const AbelianQuotient five = quotient_from_basis(IntMatrix(2, 2, {5, 0, 0, 5}));
    CHECK(divergence_parameter(five, 2) == Rational{1, 1});
    // diag(2,6): |Sigma| = 12, gcd Sigma = 2, so for m == n the value is
    // 12 / 2^2 = 3.
    const AbelianQuotient d26 = quotient_from_basis(IntMatrix(2, 2, {2, 0, 0, 6}));
    CHECK(divergence_parameter(d26, 2) == Rational{3, 1});
    CHECK(divergence_parameter(d26, 3) == Rational{12, 1});

    CHECK_THROWS_AS(divergence_parameter(d26, 1), BadDimensions);
    CHECK_THROWS_AS(divergence_parameter(cyclic(7), 1), BadDimensions);
}

TEST_CASE("is_generating") {
    const AbelianQuotient four = cyclic(4);
    CHECK_FALSE(is_generating(IntMatrix(1, 2, {2, 2}), four));
    CHECK(is_generating(IntMatrix(1, 2, {2, 3}), four));
    const AbelianQuotient five2 = quotient_from_basis(IntMatrix(2, 2, {5, 0, 0, 5}));
    CHECK(is_generating(IntMatrix::identity(2), five2));
    CHECK_FALSE(is_generating(IntMatrix(2, 2, {1, 2, 0, 0}), five2));
}

TEST_CASE("make_generating_set canonicalizes and validates") {
    const AbelianQuotient five = cyclic(5);
    const GeneratingSet s = make_generating_set(IntMatrix(1, 2, {7, -4}), five);
    CHECK(s.u == IntMatrix(1, 2, {1, 2}));  // reduced mod 5 and sorted
    CHECK_THROWS_AS(make_generating_set(IntMatrix(1, 2, {1, 6}), five), BadDimensions);
    CHECK_THROWS_AS(make_generating_set(IntMatrix(1, 2, {0, 2}), cyclic(4)), BadDimensions);
}

TEST_CASE("sampling Z/2 always yields {0,1}") {
    const AbelianQuotient two = cyclic(2);
    Philox rng(5, 0);
    for (int i = 0; i < 50; ++i) {
        const GeneratingSet s = sample_generating_set(two, 2, rng);
        CHECK(as_pair(s) == std::pair<std::int64_t, std::int64_t>{0, 1});
    }
}

TEST_CASE("sampling Z/4 never yields the non-generating pair {0,2}") {
    const AbelianQuotient four = cyclic(4);
    Philox rng(6, 0);
    for (int i = 0; i < 2000; ++i) {
        const GeneratingSet s = sample_generating_set(four, 2, rng);
        CHECK(as_pair(s) != std::pair<std::int64_t, std::int64_t>{0, 2});
        CHECK(is_generating(s.u, four));
    }
}

TEST_CASE("sampler uniformity on Z/5 (chi-square over all 10 subsets)") {
    const auto pairs = generating_pairs(5);
    CHECK(pairs.size() == 10);  // every 2-subset of Z/5 generates

    const AbelianQuotient five = cyclic(5);
    Philox rng(7, 0);
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> counts;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) ++counts[as_pair(sample_generating_set(five, 2, rng))];

    CHECK(counts.size() == 10);
    std::vector<std::int64_t> observed;
    for (const auto& [pair, count] : counts) {
        CHECK(pairs.count(pair) == 1);
        observed.push_back(count);
    }
    // df = 9, critical value 21.67 at the 0.01 level.
    CHECK(oracle::chi_square_uniform(observed) < 21.67);
}

TEST_CASE("sampling errors on degenerate requests") {
    CHECK_THROWS_AS(
        [] {
            const AbelianQuotient two = cyclic(2);
            Philox rng(8, 0);
            sample_generating_set(two, 3, rng);
        }(),
        BadDimensions);
    CHECK_THROWS_AS(
        [] {
            const AbelianQuotient q = quotient_from_basis(IntMatrix(2, 2, {2, 0, 0, 2}));
            Philox rng(9, 0);
            sample_generating_set(q, 1, rng);
        }(),
        BadDimensions);
}

TEST_CASE("trivial window reproduces the unrestricted sampler draw by draw") {
    const AbelianQuotient ten = cyclic(10);
    const WindowPredicate everything = [](const std::vector<std::vector<double>>&) {
        return true;
    };
    Philox a(21, 0), b(21, 0);
    for (int i = 0; i < 200; ++i) {
        const GeneratingSet s1 = sample_restricted(ten, 2, everything, a);
        const GeneratingSet s2 = sample_generating_set(ten, 2, b);
        CHECK(s1.u == s2.u);
    }
}

TEST_CASE("window on the smaller coordinate keeps representatives below k/2") {
    const AbelianQuotient ten = cyclic(10);
    const WindowPredicate low_min = [](const std::vector<std::vector<double>>& pts) {
        return pts.front()[0] < 0.5;  // points arrive sorted
    };
    Philox rng(22, 0);
    for (int i = 0; i < 500; ++i) {
        const GeneratingSet s = sample_restricted(ten, 2, low_min, rng);
        CHECK(s.u.at(0, 0) <= 4);
    }
}

TEST_CASE("restricted sampling matches the exact conditioned law at k = 100") {
    const std::int64_t k = 100;
    const auto pairs = generating_pairs(k);
    std::int64_t in_window = 0;
    for (const auto& [a, b] : pairs)
        if (std::min(a, b) < 50) ++in_window;
    const double exact_fraction =
        static_cast<double>(in_window) / static_cast<double>(pairs.size());
    CHECK(exact_fraction > 0.70);  // sanity: the window keeps about 3/4
    CHECK(exact_fraction < 0.80);

    const AbelianQuotient q = cyclic(k);
    Philox rng(23, 0);
    std::int64_t hits = 0;
    const int draws = 10000;
    const WindowPredicate window = [](const std::vector<std::vector<double>>& pts) {
        return pts.front()[0] < 0.5;
    };
    for (int i = 0; i < draws; ++i)
        if (window(torus_points(sample_generating_set(q, 2, rng)))) ++hits;
    const double empirical = static_cast<double>(hits) / draws;
    CHECK(empirical == doctest::Approx(exact_fraction).epsilon(0.07));
}

TEST_CASE("restricted law equals the conditioned law (exhaustive, k = 10)") {
    const std::int64_t k = 10;
    std::set<std::pair<std::int64_t, std::int64_t>> window_pairs;
    for (const auto& p : generating_pairs(k))
        if (p.first < 5) window_pairs.insert(p);  // sorted pair, smaller coordinate in [0, k/2)

    const AbelianQuotient q = cyclic(k);
    const WindowPredicate window = [](const std::vector<std::vector<double>>& pts) {
        return pts.front()[0] < 0.5;
    };
    Philox rng(24, 0);
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> counts;
    const int draws = 30000;
    for (int i = 0; i < draws; ++i) ++counts[as_pair(sample_restricted(q, 2, window, rng))];

    CHECK(counts.size() == window_pairs.size());
    std::vector<std::int64_t> observed;
    for (const auto& [pair, count] : counts) {
        CHECK(window_pairs.count(pair) == 1);
        observed.push_back(count);
    }
    // Uniform over the conditioned support; 0.01-level chi-square bound for
    // the observed cell count.
    const double df = static_cast<double>(observed.size() - 1);
    CHECK(oracle::chi_square_uniform(observed) < df + 3.0 * std::sqrt(2.0 * df) + 8.0);
}

TEST_CASE("sample_restricted preconditions") {
    Philox rng(25, 0);
    const WindowPredicate everything = [](const std::vector<std::vector<double>>&) {
        return true;
    };
    CHECK_THROWS_AS(sample_restricted(cyclic(10), 1, everything, rng), BadDimensions);
    const AbelianQuotient skew = quotient_from_basis(IntMatrix(2, 2, {2, 1, 0, 3}));
    CHECK_THROWS_AS(sample_restricted(skew, 3, everything, rng), BadDimensions);
    const WindowPredicate nothing = [](const std::vector<std::vector<double>>&) { return false; };
    CHECK_THROWS_AS(sample_restricted(cyclic(10), 2, nothing, rng, 200), EmptyWindow);
}

TEST_CASE("kernel lattice of Z/5 with s = {1,2}") {
    const AbelianQuotient five = cyclic(5);
    const GeneratingSet s = make_generating_set(IntMatrix(1, 2, {1, 2}), five);
    const IntegerLattice lambda = kernel_of_generating_map(s);
    CHECK(lambda.m == 2);
    CHECK(lambda.index == 5);
    CHECK(oracle::in_column_lattice(lambda.basis.h, {1, 2}));
    CHECK(oracle::in_column_lattice(lambda.basis.h, {5, 0}));

    // Brute-force lattice equality on the box [-5, 5]^2.
    std::set<std::vector<std::int64_t>> brute;
    for (std::int64_t k1 = -5; k1 <= 5; ++k1)
        for (std::int64_t k2 = -5; k2 <= 5; ++k2)
            if ((((k1 + 2 * k2) % 5) + 5) % 5 == 0) brute.insert({k1, k2});
    CHECK(brute == oracle::lattice_points_in_box(lambda.basis.h, 5, 15));
}

TEST_CASE("kernel lattice for the identity generating set is Sigma itself") {
    const AbelianQuotient five2 = quotient_from_basis(IntMatrix(2, 2, {5, 0, 0, 5}));
    const GeneratingSet s = make_generating_set(IntMatrix::identity(2), five2);
    const IntegerLattice lambda = kernel_of_generating_map(s);
    CHECK(lambda.basis.h == IntMatrix(2, 2, {5, 0, 0, 5}));
    CHECK(lambda.index == 25);
    CHECK(lambda.divisors == std::vector<std::int64_t>{5, 5});
}

TEST_CASE("kernel lattice of Z/4 with s = {1,3}") {
    const GeneratingSet s = make_generating_set(IntMatrix(1, 2, {1, 3}), cyclic(4));
    const IntegerLattice lambda = kernel_of_generating_map(s);
    CHECK(lambda.index == 4);
    CHECK(oracle::in_column_lattice(lambda.basis.h, {1, 1}));
    std::set<std::vector<std::int64_t>> brute;
    for (std::int64_t k1 = -4; k1 <= 4; ++k1)
        for (std::int64_t k2 = -4; k2 <= 4; ++k2)
            if ((((k1 + 3 * k2) % 4) + 4) % 4 == 0) brute.insert({k1, k2});
    CHECK(brute == oracle::lattice_points_in_box(lambda.basis.h, 4, 12));
}

TEST_CASE("index and divisor padding across random samples") {
    Philox rng(31, 0);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform_below(2));
        const int m = n + static_cast<int>(rng.uniform_below(2)) + (n == 1 ? 1 : 0);
        AbelianQuotient q;
        try {
            q = quotient_from_basis(oracle::random_matrix(rng, n, n, -8, 8));
        } catch (const SingularSigma&) {
            continue;
        }
        if (q.order < std::max(m, 2)) continue;
        const GeneratingSet s = sample_generating_set(q, std::max(m, 2), rng);
        const IntegerLattice lambda = kernel_of_generating_map(s);

        CHECK(lambda.index == q.order);
        std::vector<std::int64_t> expected(lambda.m - q.n, 1);
        expected.insert(expected.end(), q.divisors.begin(), q.divisors.end());
        CHECK(lambda.divisors == expected);
        if (lambda.m > q.n)
            CHECK(lambda.divisors.front() == 1);
        else
            CHECK(lambda.divisors.front() == q.gcd_sigma);
    }
}
