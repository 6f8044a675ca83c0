#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "rcg/random_lattice.hpp"
#include "rcg/stats.hpp"

using namespace rcg;

namespace {

// Simpson quadrature of f over [a, b].
template <typename F>
double simpson(F&& f, double a, double b, int intervals) {
    double acc = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) {
        const double x = a + (b - a) * i / intervals;
        acc += f(x) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return acc * (b - a) / (3.0 * intervals);
}

std::vector<double> shortest_positive_samples(std::uint64_t seed, int n, bool hecke,
                                              std::int64_t p = 0) {
    std::vector<double> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        Philox rng(seed, static_cast<std::uint64_t>(i));
        const RealLattice lat = hecke ? sample_hecke(2, p, rng) : sample_x2_exact(rng);
        out.push_back(shortest_positive(lat));
    }
    return out;
}

}  // namespace

TEST_CASE("primality helper") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(10007));
    CHECK(is_prime(99991));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(10));
    CHECK_FALSE(is_prime(10007ull * 10009ull));
}

TEST_CASE("exact m=2 draws are unimodular") {
    Philox rng(71, 0);
    for (int i = 0; i < 200; ++i) {
        const RealLattice l = sample_x2_exact(rng);
        CHECK(l.m == 2);
        CHECK(l.covolume == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("exact m=2 rejection rate matches the quadrature oracle") {
    // Proposal mass 2/sqrt(3); rejected sliver mass is the integral of
    // 2/sqrt(3) - 1/sqrt(1-x^2) over |x| <= 1/2.
    const double proposal_mass = 2.0 / std::sqrt(3.0);
    const double rejected =
        simpson([](double x) { return 2.0 / std::sqrt(3.0) - 1.0 / std::sqrt(1.0 - x * x); },
                -0.5, 0.5, 4000);
    const double expected_rate = 1.0 - rejected / proposal_mass;
    CHECK(expected_rate == doctest::Approx(0.90690).epsilon(1e-4));

    Philox rng(72, 0);
    std::int64_t accepted = 0, proposals = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        int attempts = 0;
        sample_x2_exact(rng, &attempts);
        proposals += attempts;
        accepted += 1;
    }
    const double rate = static_cast<double>(accepted) / static_cast<double>(proposals);
    CHECK(rate == doctest::Approx(expected_rate).epsilon(0.011));
}

TEST_CASE("exact sampler law is stable across seeds (shortest positive vector)") {
    const auto a = shortest_positive_samples(100, 10000, false);
    const auto b = shortest_positive_samples(200, 10000, false);
    const double ks = ks_two_sample(EmpiricalDistribution(a), EmpiricalDistribution(b));
    CHECK(ks < 0.03);
    for (const double v : a) CHECK(v > 0.0);
}

TEST_CASE("hecke sublattices: index, divisors, normalization") {
    Philox rng(73, 0);
    for (const auto [m, p] : {std::pair<int, std::int64_t>{2, 3}, {3, 5}, {4, 7}}) {
        for (int i = 0; i < 50; ++i) {
            const IntegerLattice lam = sample_hecke_sublattice(m, p, rng);
            CHECK(lam.index == p);
            std::vector<std::int64_t> expected(m - 1, 1);
            expected.push_back(p);
            CHECK(lam.divisors == expected);
        }
        Philox rng2(74, 0);
        const RealLattice l = sample_hecke(m, p, rng2);
        CHECK(l.covolume == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK_THROWS_AS(sample_hecke_sublattice(2, 10, rng), NotPrime);
    CHECK_THROWS_AS(sample_hecke_sublattice(2, 1, rng), NotPrime);
    CHECK_THROWS_AS(sample_hecke_sublattice(1, 3, rng), BadDimensions);
}

TEST_CASE("hecke orbit at m=2, p=2 is uniform over its 3 sublattices") {
    Philox rng(75, 0);
    std::map<std::vector<std::int64_t>, std::int64_t> counts;
    const int draws = 30000;
    for (int i = 0; i < draws; ++i) ++counts[sample_hecke_sublattice(2, 2, rng).basis.h.a];
    CHECK(counts.size() == 3);  // orbit size (2^2 - 1)/(2 - 1)
    std::vector<std::int64_t> observed;
    for (const auto& [basis, c] : counts) observed.push_back(c);
    // df = 2, critical value 9.21 at the 0.01 level.
    CHECK(oracle::chi_square_uniform(observed) < 9.21);
}

TEST_CASE("hecke orbit at m=3, p=5 has 31 elements") {
    Philox rng(76, 0);
    std::set<std::vector<std::int64_t>> lattices;
    for (int i = 0; i < 8000; ++i) lattices.insert(sample_hecke_sublattice(3, 5, rng).basis.h.a);
    CHECK(lattices.size() == 31);  // (5^3 - 1)/(5 - 1)
}

TEST_CASE("hecke reference converges to the exact law (m=2, shortest positive)") {
    const auto exact = shortest_positive_samples(300, 2000, false);
    const auto hecke = shortest_positive_samples(400, 2000, true, 10007);
    const double ks = ks_two_sample(EmpiricalDistribution(exact), EmpiricalDistribution(hecke));
    CHECK(ks < 0.05);
}

TEST_CASE("reference_distribution wiring") {
    const StreamFamily streams{81, 0};
    ReferenceParams params;
    params.grid_per_axis = 24;
    params.mc_samples = 500;

    SUBCASE("shortest positive requires the directed gauge") {
        CHECK_THROWS_AS(reference_distribution(2, Functional::shortest_positive, 1.0,
                                               NormBall{false}, 10, ReferenceMethod{}, streams,
                                               params),
                        BadDimensions);
    }

    SUBCASE("single positive sample") {
        const auto set = reference_distribution(2, Functional::shortest_positive, 1.0,
                                                NormBall{true}, 1, ReferenceMethod{}, streams,
                                                params);
        CHECK(set.samples.size() == 1);
        CHECK(set.samples[0] > 0.0);
    }

    SUBCASE("covering radius records certified widths and is deterministic") {
        const auto a = reference_distribution(2, Functional::covering_radius, 1.0,
                                              NormBall{false}, 16, ReferenceMethod{}, streams,
                                              params, 1);
        const auto b = reference_distribution(2, Functional::covering_radius, 1.0,
                                              NormBall{false}, 16, ReferenceMethod{}, streams,
                                              params, 2);
        CHECK(a.samples == b.samples);  // thread count must not matter
        CHECK(a.widths.size() == a.samples.size());
        for (const double w : a.widths) {
            CHECK(w > 0.0);
            CHECK(w < 0.5);
        }
    }

    SUBCASE("exact method rejects m != 2") {
        CHECK_THROWS_AS(reference_distribution(3, Functional::covering_radius, 1.0,
                                               NormBall{false}, 4, ReferenceMethod{}, streams,
                                               params),
                        BadDimensions);
    }
}

TEST_CASE("directed moment reference is reproducible across seeds") {
    // The directed moment of a Haar lattice has a heavy cusp tail (a lattice
    // with a short vector of length eps contributes about 1/eps), so the
    // sample mean is not a stable statistic. Distribution and median are.
    ReferenceParams params;
    params.mc_samples = 2000;
    const int n = 2000;
    std::vector<std::vector<double>> runs;
    for (const std::uint64_t seed : {std::uint64_t{501}, std::uint64_t{502}}) {
        runs.push_back(reference_distribution(2, Functional::moment, 1.0, NormBall{true}, n,
                                              ReferenceMethod{}, StreamFamily{seed, 0}, params, 2)
                           .samples);
    }
    const EmpiricalDistribution a(runs[0]), b(runs[1]);
    CHECK(ks_two_sample(a, b) < 0.05);
    CHECK(std::abs(quantile(a, 0.5) - quantile(b, 0.5)) < 0.02);
}
