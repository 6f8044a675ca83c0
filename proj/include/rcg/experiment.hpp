#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "rcg/graph_metrics.hpp"
#include "rcg/random_lattice.hpp"
#include "rcg/stats.hpp"

namespace rcg {

enum class Xi { diameter, moment, girth };

std::string xi_name(Xi xi);
Xi xi_from_name(const std::string& name);

/// The matching lattice functional: diameter <-> covering radius,
/// moment <-> torus moment, girth <-> shortest positive vector.
Functional functional_for(Xi xi);

/// Interval constraints on the flattened coordinates of the sorted point
/// tuple in T^n (point-major order). Trailing coordinates unconstrained.
struct WindowSpec {
    std::vector<std::pair<double, double>> bounds;  // half-open [lo, hi)

    WindowPredicate predicate() const;
};

struct ExperimentConfig {
    int n = 1;
    int m = 2;
    std::int64_t k = 0;                      // Sigma = k Z^n when no explicit basis
    std::optional<IntMatrix> sigma_basis;    // overrides k when present
    Xi xi = Xi::diameter;
    double alpha = 1.0;
    bool directed = false;
    std::int64_t ensemble_size = 100;
    ReferenceMethod reference;
    std::int64_t reference_samples = 1000;
    std::optional<WindowSpec> window;
    std::uint64_t seed = 1;
    int grid_per_axis = 64;
    std::int64_t mc_samples = 10000;
    int threads = 1;
    double ks_threshold = 0.10;
    std::string dump_dir;  // when set: per-sample JSON records + raw distance arrays
    std::int64_t rejection_budget = 1'000'000;

    /// Throws BadDimensions on combinations the theory excludes; returns
    /// human-readable warnings for legal-but-degenerate setups.
    std::vector<std::string> validate() const;

    AbelianQuotient quotient() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

struct GraphEnsemble {
    std::vector<double> raw;     // xi values (NaN for failed samples)
    std::vector<double> scaled;  // |Sigma|^(-1/m) * xi
    std::vector<std::pair<std::int64_t, std::string>> failures;  // index, reason

    std::vector<double> valid_scaled() const;
};

/// Samples ensemble_size generating sets and evaluates the configured graph
/// parameter. Sample i draws from stream (seed, i); output is byte-identical
/// for any thread count. Budget-type errors (rejection, window, memory,
/// enumeration) are recorded per sample so partial results survive; anything
/// else propagates.
GraphEnsemble run_graph_ensemble(const ExperimentConfig& cfg);

/// Reference samples of the matching lattice functional (streams 2^48 + i).
ReferenceSampleSet run_reference(const ExperimentConfig& cfg);

struct CompareReport {
    double ks = 0.0;
    Summary graph_summary;
    Summary reference_summary;
    double threshold = 0.0;
    bool pass = false;
};

CompareReport compare(const EmpiricalDistribution& graph, const EmpiricalDistribution& reference,
                      double threshold);

struct CrossCheckReport {
    std::int64_t total = 0;
    std::int64_t multiset_matches = 0;  // sorted distance multisets, both orientations
    std::int64_t metric_matches = 0;    // diameter, girth, moment agree exactly
    bool all_match() const { return multiset_matches == total && metric_matches == total; }
};

/// Per-sample comparison of the Cayley graph on Z^n/Sigma with the kernel
/// torus graph on Z^m/Lambda_s.
CrossCheckReport cross_check(const ExperimentConfig& cfg);

struct SweepPoint {
    std::int64_t k = 0;
    double ks = 0.0;
};

/// KS(k) against one shared reference, for a geometric ladder of moduli.
std::vector<SweepPoint> run_sweep(const ExperimentConfig& cfg,
                                  const std::vector<std::int64_t>& ks_ladder);

// ---- file formats ----

/// samples.csv: header "index,raw_xi,scaled_xi".
void write_ensemble_csv(const std::string& path, const GraphEnsemble& e);
/// reference.csv: header "index,zeta".
void write_reference_csv(const std::string& path, const ReferenceSampleSet& set);
/// Reads a named numeric column ("scaled_xi", "zeta", or the only column).
std::vector<double> read_csv_column(const std::string& path, const std::string& column);

nlohmann::json report_to_json(const CompareReport& report, const ExperimentConfig& cfg);

// ---- serialization of the core records ----

nlohmann::json int_matrix_to_json(const IntMatrix& m);
IntMatrix int_matrix_from_json(const nlohmann::json& j);

/// {n, m, sigma_basis, u, lambda_basis, index} for one sampled pair.
nlohmann::json sample_record(const GeneratingSet& s, const IntegerLattice& lambda);

/// {shape, directed, diameter, girth?, moments}.
nlohmann::json profile_summary(const DistanceProfile& p, const std::vector<double>& alphas,
                               std::optional<std::int64_t> girth = std::nullopt);

nlohmann::json summary_to_json(const Summary& s);
nlohmann::json reference_set_to_json(const ReferenceSampleSet& set);

}  // namespace rcg
