#include "rcg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace rcg {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples)
    : samples_(std::move(samples)) {
    if (samples_.empty())
        throw std::invalid_argument("EmpiricalDistribution: at least one sample required");
    for (const double s : samples_)
        if (std::isnan(s)) throw std::invalid_argument("EmpiricalDistribution: NaN sample");
    std::sort(samples_.begin(), samples_.end());
}

double EmpiricalDistribution::ecdf(double t) const {
    const auto it = std::upper_bound(samples_.begin(), samples_.end(), t);
    return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

double ks_two_sample(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
    const auto& x = a.samples();
    const auto& y = b.samples();
    const double nx = static_cast<double>(x.size());
    const double ny = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() || j < y.size()) {
        double t;
        if (j >= y.size() || (i < x.size() && x[i] <= y[j]))
            t = x[i];
        else
            t = y[j];
        while (i < x.size() && x[i] <= t) ++i;
        while (j < y.size() && y[j] <= t) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
    }
    return d;
}

double quantile(const EmpiricalDistribution& d, double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("quantile: p outside [0,1]");
    const auto& s = d.samples();
    if (s.size() == 1) return s[0];
    const double pos = p * static_cast<double>(s.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, s.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return s[lo] * (1.0 - frac) + s[hi] * frac;
}

Summary summarize(const EmpiricalDistribution& d) {
    const auto& s = d.samples();
    Summary out;
    out.mean = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
    out.min = s.front();
    out.max = s.back();
    out.q05 = quantile(d, 0.05);
    out.q25 = quantile(d, 0.25);
    out.q50 = quantile(d, 0.50);
    out.q75 = quantile(d, 0.75);
    out.q95 = quantile(d, 0.95);
    return out;
}

void write_samples_csv(const std::string& path, const std::string& header,
                       const std::vector<double>& samples) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_samples_csv: cannot open " + path);
    f.precision(17);
    f << header << "\n";
    for (const double s : samples) f << s << "\n";
}

}  // namespace rcg
