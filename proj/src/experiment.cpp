#include "rcg/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <limits>
#include <fstream>
#include <sstream>

#include "rcg/parallel.hpp"

namespace rcg {

namespace {

constexpr std::uint64_t kReferenceStreamBase = std::uint64_t{1} << 48;

double scale_factor(const AbelianQuotient& q, int m) {
    return std::pow(static_cast<double>(q.order), -1.0 / static_cast<double>(m));
}

GeneratingSet draw_set(const ExperimentConfig& cfg, const AbelianQuotient& q, Philox& rng) {
    if (cfg.window)
        return sample_restricted(q, cfg.m, cfg.window->predicate(), rng, cfg.rejection_budget);
    return sample_generating_set(q, cfg.m, rng, cfg.rejection_budget);
}

}  // namespace

std::string xi_name(Xi xi) {
    switch (xi) {
        case Xi::diameter: return "diameter";
        case Xi::moment: return "moment";
        case Xi::girth: return "girth";
    }
    return "?";
}

Xi xi_from_name(const std::string& name) {
    if (name == "diameter") return Xi::diameter;
    if (name == "moment") return Xi::moment;
    if (name == "girth") return Xi::girth;
    throw BadDimensions("unknown xi: " + name);
}

Functional functional_for(Xi xi) {
    switch (xi) {
        case Xi::diameter: return Functional::covering_radius;
        case Xi::moment: return Functional::moment;
        case Xi::girth: return Functional::shortest_positive;
    }
    return Functional::covering_radius;
}

WindowPredicate WindowSpec::predicate() const {
    auto bounds_copy = bounds;
    return [bounds_copy](const std::vector<std::vector<double>>& pts) {
        std::size_t idx = 0;
        for (const auto& p : pts)
            for (const double c : p) {
                if (idx < bounds_copy.size() &&
                    (c < bounds_copy[idx].first || c >= bounds_copy[idx].second))
                    return false;
                ++idx;
            }
        return true;
    };
}

std::vector<std::string> ExperimentConfig::validate() const {
    if (m < 2 || m < n) throw BadDimensions("config: need m >= 2 and m >= n");
    if (n < 1) throw BadDimensions("config: need n >= 1");
    if (xi == Xi::girth && !directed)
        throw BadDimensions("config: girth is defined only in the directed case");
    if (xi == Xi::moment && !(alpha > 0)) throw BadDimensions("config: alpha must be positive");
    if (window) {
        if (m <= n) throw BadDimensions("config: a window requires m > n");
        if (sigma_basis) throw BadDimensions("config: a window requires Sigma = k Z^n");
    }
    if (!sigma_basis && k < 2) throw BadDimensions("config: need k >= 2 or an explicit basis");
    if (ensemble_size < 1 || reference_samples < 1)
        throw BadDimensions("config: ensemble sizes must be positive");

    std::vector<std::string> warnings;
    const AbelianQuotient q = quotient();
    if (m == n) {
        const Rational dv = divergence_parameter(q, m);
        if (dv.num == dv.den)
            warnings.push_back(
                "divergence parameter |Sigma|/gcd(Sigma)^n equals 1: the family Sigma = k Z^n "
                "with m == n is excluded from the limit statement");
    }
    if (reference.exact_m2 && m != 2)
        throw BadDimensions("config: exact reference sampling requires m == 2");
    return warnings;
}

AbelianQuotient ExperimentConfig::quotient() const {
    if (sigma_basis) return quotient_from_basis(*sigma_basis);
    IntMatrix basis(n, n);
    for (int i = 0; i < n; ++i) basis.at(i, i) = k;
    return quotient_from_basis(basis);
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;
    cfg.n = j.value("n", cfg.n);
    cfg.m = j.value("m", cfg.m);
    cfg.k = j.value("k", cfg.k);
    if (j.contains("sigma_basis")) cfg.sigma_basis = int_matrix_from_json(j.at("sigma_basis"));
    if (j.contains("xi")) cfg.xi = xi_from_name(j.at("xi").get<std::string>());
    cfg.alpha = j.value("alpha", cfg.alpha);
    cfg.directed = j.value("directed", cfg.directed);
    cfg.ensemble_size = j.value("ensemble_size", cfg.ensemble_size);
    if (j.contains("reference")) {
        const auto& r = j.at("reference");
        const std::string method = r.value("method", std::string("exact_m2"));
        if (method == "exact_m2") {
            cfg.reference.exact_m2 = true;
        } else if (method == "hecke") {
            cfg.reference.exact_m2 = false;
            cfg.reference.hecke_p = r.value("p", cfg.reference.hecke_p);
        } else {
            throw BadDimensions("config: unknown reference method " + method);
        }
        cfg.reference_samples = r.value("samples", cfg.reference_samples);
    } else if (cfg.m != 2) {
        cfg.reference.exact_m2 = false;
    }
    if (j.contains("window")) {
        WindowSpec w;
        for (const auto& b : j.at("window").at("bounds"))
            w.bounds.emplace_back(b.at(0).get<double>(), b.at(1).get<double>());
        cfg.window = w;
    }
    cfg.seed = j.value("seed", cfg.seed);
    cfg.grid_per_axis = j.value("grid_per_axis", cfg.grid_per_axis);
    cfg.mc_samples = j.value("mc_samples", cfg.mc_samples);
    cfg.threads = j.value("threads", cfg.threads);
    cfg.ks_threshold = j.value("ks_threshold", cfg.ks_threshold);
    cfg.dump_dir = j.value("dump_dir", cfg.dump_dir);
    cfg.rejection_budget = j.value("rejection_budget", cfg.rejection_budget);
    return cfg;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["n"] = cfg.n;
    j["m"] = cfg.m;
    if (cfg.sigma_basis)
        j["sigma_basis"] = int_matrix_to_json(*cfg.sigma_basis);
    else
        j["k"] = cfg.k;
    j["xi"] = xi_name(cfg.xi);
    j["alpha"] = cfg.alpha;
    j["directed"] = cfg.directed;
    j["ensemble_size"] = cfg.ensemble_size;
    j["reference"] = {
        {"method", cfg.reference.exact_m2 ? "exact_m2" : "hecke"},
        {"p", cfg.reference.hecke_p},
        {"samples", cfg.reference_samples},
    };
    if (cfg.window) {
        nlohmann::json bounds = nlohmann::json::array();
        for (const auto& [lo, hi] : cfg.window->bounds) bounds.push_back({lo, hi});
        j["window"] = {{"bounds", bounds}};
    }
    j["seed"] = cfg.seed;
    j["grid_per_axis"] = cfg.grid_per_axis;
    j["mc_samples"] = cfg.mc_samples;
    j["threads"] = cfg.threads;
    j["ks_threshold"] = cfg.ks_threshold;
    if (!cfg.dump_dir.empty()) j["dump_dir"] = cfg.dump_dir;
    j["rejection_budget"] = cfg.rejection_budget;
    return j;
}

std::vector<double> GraphEnsemble::valid_scaled() const {
    std::vector<double> out;
    out.reserve(scaled.size());
    for (const double v : scaled)
        if (!std::isnan(v)) out.push_back(v);
    return out;
}

GraphEnsemble run_graph_ensemble(const ExperimentConfig& cfg) {
    cfg.validate();
    const AbelianQuotient q = cfg.quotient();
    const double scale = scale_factor(q, cfg.m);
    const StreamFamily streams{cfg.seed, 0};
    const double nan = std::numeric_limits<double>::quiet_NaN();

    GraphEnsemble out;
    out.raw.assign(cfg.ensemble_size, nan);
    out.scaled.assign(cfg.ensemble_size, nan);
    std::vector<std::string> errors(cfg.ensemble_size);
    if (!cfg.dump_dir.empty()) std::filesystem::create_directories(cfg.dump_dir);

    parallel_for(cfg.ensemble_size, cfg.threads, [&](std::int64_t i) {
      try {
        Philox rng = streams.stream(static_cast<std::uint64_t>(i));
        const GeneratingSet s = draw_set(cfg, q, rng);
        const IntegerLattice lambda = kernel_of_generating_map(s);
        std::optional<DistanceProfile> profile;
        if (cfg.xi != Xi::girth || !cfg.dump_dir.empty())
            profile = distance_profile(lambda, cfg.directed || cfg.xi == Xi::girth);
        double value = 0.0;
        switch (cfg.xi) {
            case Xi::diameter:
                value = diameter(*profile);
                break;
            case Xi::moment:
                value = moment(*profile, cfg.alpha);
                break;
            case Xi::girth:
                value = static_cast<double>(girth_directed(lambda));
                break;
        }
        out.raw[i] = value;
        out.scaled[i] = value * scale;
        if (!cfg.dump_dir.empty()) {
            const std::string stem = cfg.dump_dir + "/sample_" + std::to_string(i);
            nlohmann::json j = sample_record(s, lambda);
            j["profile"] = profile_summary(
                *profile, {cfg.alpha},
                cfg.xi == Xi::girth ? std::optional<std::int64_t>(std::llround(value))
                                    : std::nullopt);
            std::ofstream rec(stem + ".json");
            rec << j.dump(2) << "\n";
            write_raw_distances(*profile, stem + ".bin");
        }
      } catch (const RejectionBudgetExceeded& e) {
        errors[i] = e.what();
      } catch (const EmptyWindow& e) {
        errors[i] = e.what();
      } catch (const MemoryBudgetExceeded& e) {
        errors[i] = e.what();
      } catch (const EnumerationBudgetExceeded& e) {
        errors[i] = e.what();
      }
    });
    for (std::int64_t i = 0; i < cfg.ensemble_size; ++i)
        if (!errors[i].empty()) out.failures.emplace_back(i, errors[i]);
    return out;
}

ReferenceSampleSet run_reference(const ExperimentConfig& cfg) {
    cfg.validate();
    ReferenceParams params;
    params.grid_per_axis = cfg.grid_per_axis;
    params.mc_samples = cfg.mc_samples;
    const StreamFamily streams{cfg.seed, kReferenceStreamBase};
    return reference_distribution(cfg.m, functional_for(cfg.xi), cfg.alpha,
                                  NormBall{cfg.directed || cfg.xi == Xi::girth},
                                  cfg.reference_samples, cfg.reference, streams, params,
                                  cfg.threads);
}

CompareReport compare(const EmpiricalDistribution& graph, const EmpiricalDistribution& reference,
                      double threshold) {
    CompareReport r;
    r.ks = ks_two_sample(graph, reference);
    r.graph_summary = summarize(graph);
    r.reference_summary = summarize(reference);
    r.threshold = threshold;
    r.pass = r.ks < threshold;
    return r;
}

CrossCheckReport cross_check(const ExperimentConfig& cfg) {
    cfg.validate();
    const AbelianQuotient q = cfg.quotient();
    const StreamFamily streams{cfg.seed, 0};

    CrossCheckReport report;
    report.total = cfg.ensemble_size;
    std::vector<char> multiset_ok(cfg.ensemble_size, 0), metric_ok(cfg.ensemble_size, 0);

    parallel_for(cfg.ensemble_size, cfg.threads, [&](std::int64_t i) {
        Philox rng = streams.stream(static_cast<std::uint64_t>(i));
        const GeneratingSet s = draw_set(cfg, q, rng);
        const IntegerLattice lambda = kernel_of_generating_map(s);

        bool multisets = true, metrics = true;
        for (const bool directed : {false, true}) {
            const DistanceProfile direct = direct_cayley_profile(s, directed);
            const DistanceProfile torus = distance_profile(lambda, directed);
            if (sorted_distances(direct) != sorted_distances(torus)) multisets = false;
            if (diameter(direct) != diameter(torus)) metrics = false;
            if (std::abs(moment(direct, cfg.alpha) - moment(torus, cfg.alpha)) > 1e-12)
                metrics = false;
        }
        // Directed girth must equal the shortest positive vector of Lambda_s.
        if (girth_directed(lambda) !=
            static_cast<std::int64_t>(std::llround(shortest_positive(real_from_integer(lambda)))))
            metrics = false;
        multiset_ok[i] = multisets;
        metric_ok[i] = metrics;
    });

    for (std::int64_t i = 0; i < cfg.ensemble_size; ++i) {
        report.multiset_matches += multiset_ok[i];
        report.metric_matches += metric_ok[i];
    }
    return report;
}

std::vector<SweepPoint> run_sweep(const ExperimentConfig& cfg,
                                  const std::vector<std::int64_t>& ks_ladder) {
    const ReferenceSampleSet ref = run_reference(cfg);
    const EmpiricalDistribution ref_dist(ref.samples);
    std::vector<SweepPoint> points;
    for (const std::int64_t kk : ks_ladder) {
        ExperimentConfig step = cfg;
        step.k = kk;
        step.sigma_basis.reset();
        const GraphEnsemble e = run_graph_ensemble(step);
        points.push_back({kk, ks_two_sample(EmpiricalDistribution(e.valid_scaled()), ref_dist)});
    }
    return points;
}

void write_ensemble_csv(const std::string& path, const GraphEnsemble& e) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_ensemble_csv: cannot open " + path);
    f.precision(17);
    f << "index,raw_xi,scaled_xi\n";
    for (std::size_t i = 0; i < e.raw.size(); ++i)
        if (!std::isnan(e.raw[i])) f << i << "," << e.raw[i] << "," << e.scaled[i] << "\n";
}

void write_reference_csv(const std::string& path, const ReferenceSampleSet& set) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_reference_csv: cannot open " + path);
    f.precision(17);
    f << "index,zeta\n";
    for (std::size_t i = 0; i < set.samples.size(); ++i) f << i << "," << set.samples[i] << "\n";
}

std::vector<double> read_csv_column(const std::string& path, const std::string& column) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("read_csv_column: cannot open " + path);
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error("read_csv_column: empty file " + path);

    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) header.push_back(field);
    }
    int col = -1;
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == column) col = static_cast<int>(i);
    if (col < 0) {
        if (header.size() == 1)
            col = 0;
        else
            throw std::runtime_error("read_csv_column: no column '" + column + "' in " + path);
    }

    std::vector<double> values;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        for (int i = 0; std::getline(ss, field, ','); ++i)
            if (i == col) values.push_back(std::stod(field));
    }
    return values;
}

nlohmann::json report_to_json(const CompareReport& report, const ExperimentConfig& cfg) {
    return nlohmann::json{
        {"ks", report.ks},
        {"threshold", report.threshold},
        {"pass", report.pass},
        {"graph_summary", summary_to_json(report.graph_summary)},
        {"reference_summary", summary_to_json(report.reference_summary)},
        {"config", config_to_json(cfg)},
        {"manifest",
         {{"rng", "philox4x32-10"},
          {"stream_layout",
           "graph sample i uses stream (seed, i); reference sample i uses stream "
           "(seed, 2^48 + i); outputs are independent of the thread count"},
          {"scaling", "scaled_xi = |Sigma|^(-1/m) * xi"}}},
    };
}

nlohmann::json int_matrix_to_json(const IntMatrix& m) {
    return nlohmann::json{{"rows", m.rows}, {"cols", m.cols}, {"data", m.a}};
}

IntMatrix int_matrix_from_json(const nlohmann::json& j) {
    IntMatrix m(j.at("rows").get<int>(), j.at("cols").get<int>());
    const auto data = j.at("data").get<std::vector<std::int64_t>>();
    if (data.size() != m.a.size()) throw BadDimensions("int matrix json: data size mismatch");
    m.a = data;
    return m;
}

nlohmann::json sample_record(const GeneratingSet& s, const IntegerLattice& lambda) {
    return nlohmann::json{
        {"n", s.quotient.n},
        {"m", s.m},
        {"sigma_basis", s.quotient.sigma.h.a},
        {"u", s.u.a},
        {"lambda_basis", lambda.basis.h.a},
        {"index", lambda.index},
    };
}

nlohmann::json profile_summary(const DistanceProfile& p, const std::vector<double>& alphas,
                               std::optional<std::int64_t> girth) {
    nlohmann::json moments = nlohmann::json::object();
    for (const double a : alphas) {
        std::ostringstream key;
        key << a;
        moments[key.str()] = moment(p, a);
    }
    nlohmann::json j{
        {"shape", p.shape},
        {"directed", p.directed},
        {"diameter", diameter(p)},
        {"moments", moments},
    };
    if (girth) j["girth"] = *girth;
    return j;
}

nlohmann::json summary_to_json(const Summary& s) {
    return nlohmann::json{{"mean", s.mean}, {"min", s.min}, {"max", s.max}, {"q05", s.q05},
                          {"q25", s.q25},   {"q50", s.q50}, {"q75", s.q75}, {"q95", s.q95}};
}

nlohmann::json reference_set_to_json(const ReferenceSampleSet& set) {
    nlohmann::json j{
        {"m", set.m},
        {"method", set.method},
        {"functional", functional_name(set.functional)},
        {"ball", set.ball.directed ? "directed" : "undirected"},
        {"samples", set.samples},
    };
    if (set.functional == Functional::moment) j["alpha"] = set.alpha;
    if (!set.widths.empty()) {
        double max_width = 0.0;
        for (const double w : set.widths) max_width = std::max(max_width, w);
        j["max_certified_width"] = max_width;
    }
    return j;
}

}  // namespace rcg
