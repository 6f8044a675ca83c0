#include "rcg/graph_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace rcg {

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

struct MixedRadix {
    std::vector<std::int64_t> shape;
    std::vector<std::int64_t> stride;
    std::int64_t total = 1;

    explicit MixedRadix(const std::vector<std::int64_t>& sh) : shape(sh), stride(sh.size()) {
        for (std::size_t i = 0; i < shape.size(); ++i) {
            stride[i] = total;
            total = checked_mul(total, shape[i]);
        }
    }

    void decode(std::int64_t idx, std::vector<std::int64_t>& c) const {
        for (std::size_t i = 0; i < shape.size(); ++i) {
            c[i] = idx % shape[i];
            idx /= shape[i];
        }
    }

    std::int64_t encode(const std::vector<std::int64_t>& c) const {
        std::int64_t idx = 0;
        for (std::size_t i = 0; i < shape.size(); ++i) idx += c[i] * stride[i];
        return idx;
    }
};

// Generator images in SNF coordinates. columns: for each generator j, the
// vector L * col_j reduced mod shape, where L is the left SNF transform.
std::vector<std::vector<std::int64_t>> generator_images(const SnfDecomposition& dec,
                                                        const IntMatrix& columns) {
    const IntMatrix img = mul(dec.left, columns);
    std::vector<std::vector<std::int64_t>> gens(columns.cols,
                                                std::vector<std::int64_t>(img.rows));
    for (int j = 0; j < columns.cols; ++j)
        for (int i = 0; i < img.rows; ++i) gens[j][i] = floor_mod(img.at(i, j), dec.d[i]);
    return gens;
}

DistanceProfile bfs_profile(const std::vector<std::int64_t>& shape,
                            std::vector<std::vector<std::int64_t>> gens, bool directed,
                            std::int64_t memory_budget) {
    const MixedRadix radix(shape);
    if (radix.total > memory_budget)
        throw MemoryBudgetExceeded("bfs_profile: " + std::to_string(radix.total) +
                                   " vertices exceed budget of " +
                                   std::to_string(memory_budget));

    if (!directed) {
        const std::size_t forward = gens.size();
        for (std::size_t j = 0; j < forward; ++j) {
            std::vector<std::int64_t> neg(shape.size());
            for (std::size_t i = 0; i < shape.size(); ++i)
                neg[i] = floor_mod(-gens[j][i], shape[i]);
            gens.push_back(std::move(neg));
        }
    }

    DistanceProfile p;
    p.shape = shape;
    p.directed = directed;
    p.distances.assign(static_cast<std::size_t>(radix.total), kUnreached);
    p.distances[0] = 0;

    std::vector<std::int64_t> current{0}, next;
    std::vector<std::int64_t> c(shape.size()), nc(shape.size());
    std::uint32_t depth = 0;
    while (!current.empty()) {
        ++depth;
        next.clear();
        for (const std::int64_t v : current) {
            radix.decode(v, c);
            for (const auto& g : gens) {
                for (std::size_t i = 0; i < shape.size(); ++i) {
                    nc[i] = c[i] + g[i];
                    if (nc[i] >= shape[i]) nc[i] -= shape[i];
                }
                const std::int64_t w = radix.encode(nc);
                if (p.distances[w] == kUnreached) {
                    p.distances[w] = depth;
                    next.push_back(w);
                }
            }
        }
        current.swap(next);
    }
    return p;
}

}  // namespace

DistanceProfile distance_profile(const IntegerLattice& lambda, bool directed,
                                 std::int64_t memory_budget) {
    const SnfDecomposition dec = snf(lambda.basis.h);
    return bfs_profile(dec.d, generator_images(dec, IntMatrix::identity(lambda.m)), directed,
                       memory_budget);
}

DistanceProfile direct_cayley_profile(const GeneratingSet& s, bool directed,
                                      std::int64_t memory_budget) {
    const SnfDecomposition dec = snf(s.quotient.sigma.h);
    return bfs_profile(dec.d, generator_images(dec, s.u), directed, memory_budget);
}

std::uint32_t diameter(const DistanceProfile& p) {
    return *std::max_element(p.distances.begin(), p.distances.end());
}

std::int64_t girth_directed(const IntegerLattice& lambda, std::int64_t memory_budget) {
    const SnfDecomposition dec = snf(lambda.basis.h);
    const auto gens = generator_images(dec, IntMatrix::identity(lambda.m));
    const DistanceProfile p = bfs_profile(dec.d, gens, /*directed=*/true, memory_budget);
    // Shortest cycle through the identity: one step from an in-neighbour of 0.
    const MixedRadix radix(dec.d);
    std::vector<std::int64_t> pre(dec.d.size());
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const auto& g : gens) {
        for (std::size_t i = 0; i < pre.size(); ++i) pre[i] = floor_mod(-g[i], dec.d[i]);
        best = std::min(best, static_cast<std::int64_t>(p.distances[radix.encode(pre)]) + 1);
    }
    return best;
}

double moment(const DistanceProfile& p, double alpha) {
    if (!(alpha > 0)) throw BadDimensions("moment: alpha must be positive");
    double acc = 0.0;
    if (alpha == 1.0) {
        for (const std::uint32_t d : p.distances) acc += d;
    } else if (alpha == 2.0) {
        for (const std::uint32_t d : p.distances)
            acc += static_cast<double>(d) * static_cast<double>(d);
    } else {
        for (const std::uint32_t d : p.distances) acc += std::pow(static_cast<double>(d), alpha);
    }
    const double mean = acc / static_cast<double>(p.distances.size());
    return std::pow(mean, 1.0 / alpha);
}

std::vector<std::uint32_t> sorted_distances(const DistanceProfile& p) {
    std::vector<std::uint32_t> d(p.distances);
    std::sort(d.begin(), d.end());
    return d;
}

void write_raw_distances(const DistanceProfile& p, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("write_raw_distances: cannot open " + path);
    for (const std::uint32_t d : p.distances) {
        const unsigned char bytes[4] = {
            static_cast<unsigned char>(d),
            static_cast<unsigned char>(d >> 8),
            static_cast<unsigned char>(d >> 16),
            static_cast<unsigned char>(d >> 24),
        };
        std::fwrite(bytes, 1, 4, f);
    }
    std::fclose(f);
}

}  // namespace rcg
