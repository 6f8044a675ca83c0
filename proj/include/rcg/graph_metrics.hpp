#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rcg/group.hpp"

namespace rcg {

/// Exact single-source distances over a finite abelian Cayley graph, indexed
/// in mixed radix over the cyclic factors (l_1, ..., l_m). Every entry is
/// finite: the generators generate, so the graph is (strongly) connected.
struct DistanceProfile {
    std::vector<std::int64_t> shape;   // cyclic factor sizes, product = |V|
    bool directed = false;
    std::vector<std::uint32_t> distances;  // distance from the identity

    std::int64_t size() const { return static_cast<std::int64_t>(distances.size()); }
};

inline constexpr std::int64_t kDefaultMemoryBudget = 100'000'000;

/// BFS profile of the Cayley graph of Z^m/Lambda with the standard basis as
/// generators (steps +-e_i, or +e_i in the directed case).
DistanceProfile distance_profile(const IntegerLattice& lambda, bool directed,
                                 std::int64_t memory_budget = kDefaultMemoryBudget);

/// BFS profile of the Cayley graph of Z^n/Sigma with generators +-s (or +s).
DistanceProfile direct_cayley_profile(const GeneratingSet& s, bool directed,
                                      std::int64_t memory_budget = kDefaultMemoryBudget);

/// Max distance from the identity; equals the diameter by vertex transitivity.
std::uint32_t diameter(const DistanceProfile& p);

/// Length of the shortest directed cycle: the minimum of sum(k_i) over
/// nonzero k >= 0 with k in Lambda.
std::int64_t girth_directed(const IntegerLattice& lambda,
                            std::int64_t memory_budget = kDefaultMemoryBudget);

/// ( |V|^-1 * sum_x d(0,x)^alpha )^(1/alpha); the double average over pairs
/// collapses to this by vertex transitivity.
double moment(const DistanceProfile& p, double alpha);

/// Sorted copy of the distance multiset (for exact cross-graph comparison).
std::vector<std::uint32_t> sorted_distances(const DistanceProfile& p);

/// Dump the raw distance array, little-endian 32-bit per vertex.
void write_raw_distances(const DistanceProfile& p, const std::string& path);

}  // namespace rcg
