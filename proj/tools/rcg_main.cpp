// Command-line front end: sample graph-parameter ensembles, sample the
// reference lattice functionals, and compare the two distributions.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "rcg/experiment.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir = ".";
    rcg::ExperimentConfig overrides;
    bool has_n = false, has_m = false, has_k = false, has_xi = false, has_alpha = false;
    bool has_directed = false, has_ensemble = false, has_seed = false, has_threads = false;
    bool has_ref_samples = false, has_hecke_p = false, has_grid = false, has_mc = false;
    bool has_threshold = false, has_budget = false;
    std::string xi_string;
    std::string window_json;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file (flags override it)");
    cmd->add_option("--out", f.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--n", f.overrides.n)->check(CLI::PositiveNumber)
        ->each([&](const std::string&) { f.has_n = true; });
    cmd->add_option("--m", f.overrides.m)->check(CLI::PositiveNumber)
        ->each([&](const std::string&) { f.has_m = true; });
    cmd->add_option("--k", f.overrides.k, "Sigma = k Z^n")
        ->each([&](const std::string&) { f.has_k = true; });
    cmd->add_option("--xi", f.xi_string, "diameter | moment | girth")
        ->each([&](const std::string&) { f.has_xi = true; });
    cmd->add_option("--alpha", f.overrides.alpha)
        ->each([&](const std::string&) { f.has_alpha = true; });
    cmd->add_flag("--directed,!--undirected", f.overrides.directed)
        ->each([&](const std::string&) { f.has_directed = true; });
    cmd->add_option("--ensemble", f.overrides.ensemble_size)
        ->each([&](const std::string&) { f.has_ensemble = true; });
    cmd->add_option("--seed", f.overrides.seed)
        ->each([&](const std::string&) { f.has_seed = true; });
    cmd->add_option("--threads", f.overrides.threads)
        ->each([&](const std::string&) { f.has_threads = true; });
    cmd->add_option("--reference-samples", f.overrides.reference_samples)
        ->each([&](const std::string&) { f.has_ref_samples = true; });
    cmd->add_option("--hecke-p", f.overrides.reference.hecke_p,
                    "use Hecke reference sampling with this prime")
        ->each([&](const std::string&) { f.has_hecke_p = true; });
    cmd->add_option("--grid", f.overrides.grid_per_axis, "covering-radius grid per axis")
        ->each([&](const std::string&) { f.has_grid = true; });
    cmd->add_option("--mc-samples", f.overrides.mc_samples, "torus-moment MC points")
        ->each([&](const std::string&) { f.has_mc = true; });
    cmd->add_option("--ks-threshold", f.overrides.ks_threshold)
        ->each([&](const std::string&) { f.has_threshold = true; });
    cmd->add_option("--window", f.window_json,
                    "window JSON, e.g. {\"bounds\":[[0.0,0.5]]} (sorted-point coordinates)");
    cmd->add_option("--dump", f.overrides.dump_dir,
                    "also write per-sample JSON records and raw distance arrays here");
    cmd->add_option("--rejection-budget", f.overrides.rejection_budget,
                    "max proposals per sampler call")
        ->each([&](const std::string&) { f.has_budget = true; });
}

rcg::ExperimentConfig resolve_config(const CommonFlags& f) {
    rcg::ExperimentConfig cfg;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw std::runtime_error("cannot open config " + f.config_path);
        json j;
        in >> j;
        cfg = rcg::config_from_json(j);
    }
    if (f.has_n) cfg.n = f.overrides.n;
    if (f.has_m) cfg.m = f.overrides.m;
    if (f.has_k) {
        cfg.k = f.overrides.k;
        cfg.sigma_basis.reset();
    }
    if (f.has_xi) cfg.xi = rcg::xi_from_name(f.xi_string);
    if (f.has_alpha) cfg.alpha = f.overrides.alpha;
    if (f.has_directed) cfg.directed = f.overrides.directed;
    if (f.has_ensemble) cfg.ensemble_size = f.overrides.ensemble_size;
    if (f.has_seed) cfg.seed = f.overrides.seed;
    if (f.has_threads) cfg.threads = f.overrides.threads;
    if (f.has_ref_samples) cfg.reference_samples = f.overrides.reference_samples;
    if (f.has_hecke_p) {
        cfg.reference.exact_m2 = false;
        cfg.reference.hecke_p = f.overrides.reference.hecke_p;
    }
    if (f.has_grid) cfg.grid_per_axis = f.overrides.grid_per_axis;
    if (f.has_mc) cfg.mc_samples = f.overrides.mc_samples;
    if (f.has_threshold) cfg.ks_threshold = f.overrides.ks_threshold;
    if (!f.overrides.dump_dir.empty()) cfg.dump_dir = f.overrides.dump_dir;
    if (f.has_budget) cfg.rejection_budget = f.overrides.rejection_budget;
    if (!f.window_json.empty()) {
        rcg::WindowSpec w;
        for (const auto& b : json::parse(f.window_json).at("bounds"))
            w.bounds.emplace_back(b.at(0).get<double>(), b.at(1).get<double>());
        cfg.window = w;
    }
    if (cfg.m != 2 && cfg.reference.exact_m2) cfg.reference.exact_m2 = false;
    return cfg;
}

void print_warnings(const rcg::ExperimentConfig& cfg) {
    for (const auto& w : cfg.validate()) std::cerr << "warning: " << w << "\n";
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"metric parameters of random abelian Cayley graphs vs. random lattices"};
    app.require_subcommand(1);

    CommonFlags sample_flags, ref_flags, cross_flags, sweep_flags;

    auto* sample_cmd =
        app.add_subcommand("sample-graphs", "sample scaled graph parameters into samples.csv");
    add_common_flags(sample_cmd, sample_flags);

    auto* ref_cmd =
        app.add_subcommand("reference", "sample the limit functional into reference.csv");
    add_common_flags(ref_cmd, ref_flags);

    auto* compare_cmd = app.add_subcommand(
        "compare", "two-sample KS between a samples.csv and a reference.csv, into report.json");
    CommonFlags compare_flags;
    std::string samples_path, reference_path;
    add_common_flags(compare_cmd, compare_flags);
    compare_cmd->add_option("--samples", samples_path, "samples.csv path")->required();
    compare_cmd->add_option("--reference", reference_path, "reference.csv path")->required();

    auto* cross_cmd = app.add_subcommand(
        "cross-check", "verify the graph isomorphism identities on a sampled ensemble");
    add_common_flags(cross_cmd, cross_flags);

    auto* sweep_cmd =
        app.add_subcommand("sweep", "KS against the reference for a geometric ladder of k");
    add_common_flags(sweep_cmd, sweep_flags);
    std::int64_t k_min = 100, k_max = 100000;
    int k_steps = 4;
    sweep_cmd->add_option("--k-min", k_min)->capture_default_str();
    sweep_cmd->add_option("--k-max", k_max)->capture_default_str();
    sweep_cmd->add_option("--k-steps", k_steps)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sample_cmd->parsed()) {
            const auto cfg = resolve_config(sample_flags);
            print_warnings(cfg);
            fs::create_directories(sample_flags.out_dir);
            const auto ensemble = rcg::run_graph_ensemble(cfg);
            rcg::write_ensemble_csv((fs::path(sample_flags.out_dir) / "samples.csv").string(),
                                    ensemble);
            write_json(fs::path(sample_flags.out_dir) / "samples_manifest.json",
                       rcg::config_to_json(cfg));
            if (!ensemble.failures.empty()) {
                json failed = json::array();
                for (const auto& [idx, why] : ensemble.failures)
                    failed.push_back({{"index", idx}, {"error", why}});
                write_json(fs::path(sample_flags.out_dir) / "failure_manifest.json",
                           json{{"failed", failed},
                                {"succeeded",
                                 ensemble.raw.size() - ensemble.failures.size()}});
                std::cerr << ensemble.failures.size()
                          << " sample(s) hit a budget error; partial results flushed\n";
                return 3;
            }
            std::cout << "wrote " << ensemble.raw.size() << " samples to "
                      << sample_flags.out_dir << "/samples.csv\n";
        } else if (ref_cmd->parsed()) {
            const auto cfg = resolve_config(ref_flags);
            print_warnings(cfg);
            fs::create_directories(ref_flags.out_dir);
            const auto set = rcg::run_reference(cfg);
            rcg::write_reference_csv((fs::path(ref_flags.out_dir) / "reference.csv").string(),
                                     set);
            write_json(fs::path(ref_flags.out_dir) / "reference_manifest.json",
                       rcg::reference_set_to_json(set));
            std::cout << "wrote " << set.samples.size() << " reference samples to "
                      << ref_flags.out_dir << "/reference.csv\n";
        } else if (compare_cmd->parsed()) {
            const auto cfg = resolve_config(compare_flags);
            const rcg::EmpiricalDistribution graph(
                rcg::read_csv_column(samples_path, "scaled_xi"));
            const rcg::EmpiricalDistribution reference(
                rcg::read_csv_column(reference_path, "zeta"));
            const auto report = rcg::compare(graph, reference, cfg.ks_threshold);
            fs::create_directories(compare_flags.out_dir);
            write_json(fs::path(compare_flags.out_dir) / "report.json",
                       rcg::report_to_json(report, cfg));
            std::cout << "ks = " << report.ks << " threshold = " << report.threshold << " -> "
                      << (report.pass ? "pass" : "fail") << "\n";
            return report.pass ? 0 : 2;
        } else if (cross_cmd->parsed()) {
            const auto cfg = resolve_config(cross_flags);
            print_warnings(cfg);
            const auto report = rcg::cross_check(cfg);
            std::cout << "multiset matches: " << report.multiset_matches << "/" << report.total
                      << "\nmetric matches:   " << report.metric_matches << "/" << report.total
                      << "\n";
            return report.all_match() ? 0 : 2;
        } else if (sweep_cmd->parsed()) {
            auto cfg = resolve_config(sweep_flags);
            print_warnings(cfg);
            std::vector<std::int64_t> ladder;
            for (int i = 0; i < k_steps; ++i) {
                const double t = k_steps == 1 ? 0.0
                                              : static_cast<double>(i) / (k_steps - 1);
                ladder.push_back(static_cast<std::int64_t>(std::llround(
                    std::exp(std::log(static_cast<double>(k_min)) * (1.0 - t) +
                             std::log(static_cast<double>(k_max)) * t))));
            }
            const auto points = rcg::run_sweep(cfg, ladder);
            std::cout << "k,ks\n";
            for (const auto& p : points) std::cout << p.k << "," << p.ks << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
