#include "rcg/random_lattice.hpp"

#include <cmath>

#include "rcg/parallel.hpp"

namespace rcg {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % mod);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t r = 1 % mod;
    base %= mod;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, mod);
        base = mulmod_u64(base, base, mod);
        exp >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                            31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    // Deterministic Miller-Rabin for 64-bit with the standard base set.
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                            31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

RealLattice sample_x2_exact(Philox& rng, int* attempts) {
    int tries = 0;
    double x = 0.0, y = 0.0;
    for (;;) {
        ++tries;
        x = rng.uniform01() - 0.5;
        // Density proportional to y^-2 on [sqrt(3)/2, infinity).
        y = (std::sqrt(3.0) / 2.0) / (1.0 - rng.uniform01());
        if (x * x + y * y >= 1.0) break;
    }
    if (attempts) *attempts = tries;

    const double theta = 2.0 * kPi * rng.uniform01();
    Eigen::Matrix2d shape;
    const double s = 1.0 / std::sqrt(y);
    shape << s, x * s, 0.0, y * s;
    Eigen::Matrix2d rot;
    rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    return make_real_lattice(rot * shape);
}

IntegerLattice sample_hecke_sublattice(int m, std::int64_t p, Philox& rng) {
    if (m < 2) throw BadDimensions("sample_hecke_sublattice: m >= 2 required");
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
        throw NotPrime("sample_hecke_sublattice: p = " + std::to_string(p) + " is not prime");

    // Uniform nonzero w mod p; the class [w] is a uniform projective point
    // and determines the sublattice {x : w . x == 0 mod p}.
    std::vector<std::int64_t> w(m);
    for (;;) {
        bool nonzero = false;
        for (auto& wi : w) {
            wi = static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(p)));
            nonzero = nonzero || wi != 0;
        }
        if (nonzero) break;
    }

    IntMatrix row(1, m + 1);
    for (int j = 0; j < m; ++j) row.at(0, j) = w[j];
    row.at(0, m) = p;
    const IntMatrix kernel = integer_kernel(row);
    IntMatrix projected(m, kernel.cols);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < kernel.cols; ++j) projected.at(i, j) = kernel.at(i, j);
    return lattice_from_basis(projected);
}

RealLattice sample_hecke(int m, std::int64_t p, Philox& rng) {
    return normalize(real_from_integer(sample_hecke_sublattice(m, p, rng)));
}

std::string functional_name(Functional f) {
    switch (f) {
        case Functional::covering_radius: return "covering_radius";
        case Functional::moment: return "moment";
        case Functional::shortest_positive: return "shortest_positive";
    }
    return "?";
}

std::string ReferenceMethod::name() const {
    return exact_m2 ? "exact_m2" : ("hecke_prime(" + std::to_string(hecke_p) + ")");
}

ReferenceSampleSet reference_distribution(int m, Functional functional, double alpha,
                                          NormBall ball, std::int64_t n_samples,
                                          const ReferenceMethod& method,
                                          const StreamFamily& streams,
                                          const ReferenceParams& params, int threads) {
    if (functional == Functional::shortest_positive && !ball.directed)
        throw BadDimensions("shortest_positive is defined only for the directed gauge");
    if (method.exact_m2 && m != 2)
        throw BadDimensions("exact reference sampling is available only for m == 2");

    ReferenceSampleSet set;
    set.m = m;
    set.method = method.name();
    set.functional = functional;
    set.alpha = alpha;
    set.ball = ball;
    set.samples.assign(static_cast<std::size_t>(n_samples), 0.0);
    const bool covering = functional == Functional::covering_radius;
    if (covering) set.widths.assign(static_cast<std::size_t>(n_samples), 0.0);

    auto run_one = [&](std::int64_t i) {
        Philox rng = streams.stream(static_cast<std::uint64_t>(i));
        const RealLattice lat = method.exact_m2 ? sample_x2_exact(rng)
                                                : sample_hecke(m, method.hecke_p, rng);
        switch (functional) {
            case Functional::covering_radius: {
                const CoverInterval iv = covering_radius(lat, ball, params.grid_per_axis);
                set.samples[i] = iv.midpoint();
                set.widths[i] = iv.width();
                break;
            }
            case Functional::moment:
                set.samples[i] = torus_moment(lat, alpha, ball, params.mc_samples, rng).value;
                break;
            case Functional::shortest_positive:
                set.samples[i] = shortest_positive(lat);
                break;
        }
    };

    parallel_for(n_samples, threads, run_one);
    return set;
}

}  // namespace rcg
