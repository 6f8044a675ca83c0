#pragma once

#include <string>
#include <vector>

namespace rcg {

/// Sorted sample set with a right-continuous step CDF.
class EmpiricalDistribution {
  public:
    explicit EmpiricalDistribution(std::vector<double> samples);

    std::size_t size() const { return samples_.size(); }
    const std::vector<double>& samples() const { return samples_; }

    /// #{s <= t} / n.
    double ecdf(double t) const;

  private:
    std::vector<double> samples_;
};

/// Exact sup distance between the two empirical CDFs (merge sweep).
double ks_two_sample(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

struct Summary {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    double q05 = 0.0;
    double q25 = 0.0;
    double q50 = 0.0;
    double q75 = 0.0;
    double q95 = 0.0;
};

Summary summarize(const EmpiricalDistribution& d);

/// Linearly interpolated order statistic at level p in [0, 1].
double quantile(const EmpiricalDistribution& d, double p);

/// One sample per line, with a single-column header.
void write_samples_csv(const std::string& path, const std::string& header,
                       const std::vector<double>& samples);

}  // namespace rcg
