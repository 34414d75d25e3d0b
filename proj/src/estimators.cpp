#include "xeb/estimators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace xeb {

double lxeb_statistic(const OutputDistribution& dist, std::span<const std::uint64_t> samples) {
    if (samples.empty()) throw std::invalid_argument("lxeb_statistic needs samples");
    NeumaierSum sum;
    for (std::uint64_t x : samples) {
        if (x >= dist.dim()) throw std::invalid_argument("sample index out of range");
        sum.add(dist.probs[x]);
    }
    return sum.value() / static_cast<double>(samples.size());
}

LxebResult lxeb_test(const OutputDistribution& dist, std::span<const std::uint64_t> samples,
                     double b) {
    if (!(b > 1.0 && b < 2.0)) throw std::invalid_argument("b must be in (1, 2)");
    LxebResult res;
    res.b = b;
    res.k = samples.size();
    res.statistic = lxeb_statistic(dist, samples);
    res.threshold = b / static_cast<double>(dist.dim());
    res.passed = res.statistic >= res.threshold;
    return res;
}

double collision_probability_exact(const OutputDistribution& dist) {
    NeumaierSum sum;
    for (double p : dist.probs) sum.add(p * p);
    return sum.value();
}

double max_output_probability(const OutputDistribution& dist) {
    double worst = 0.0;
    for (double p : dist.probs) worst = std::max(worst, p);
    return worst;
}

double maxp_threshold(int n) { return 4.0 * n / std::ldexp(1.0, n); }

double sample_variance_over_outputs(const OutputDistribution& dist) {
    NeumaierSum cubes, squares;
    for (double p : dist.probs) {
        squares.add(p * p);
        cubes.add(p * p * p);
    }
    const double s2 = squares.value();
    return cubes.value() - s2 * s2;
}

ProbeMoment empirical_probe_moment(std::span<const OutputDistribution> dists, int t,
                                   std::uint64_t x) {
    if (dists.empty()) throw std::invalid_argument("empirical_probe_moment needs distributions");
    if (t < 1) throw std::invalid_argument("moment order t must be >= 1");
    NeumaierSum sum;
    for (const OutputDistribution& d : dists) {
        if (x >= d.dim()) throw std::invalid_argument("bit-string index out of range");
        sum.add(std::pow(d.probs[x], t));
    }
    ProbeMoment out;
    const double n = static_cast<double>(dists.size());
    out.mean = sum.value() / n;
    if (dists.size() < 2) {
        out.standard_error = std::numeric_limits<double>::quiet_NaN();
        out.se_defined = false;
        return out;
    }
    NeumaierSum sq;
    for (const OutputDistribution& d : dists) {
        const double dev = std::pow(d.probs[x], t) - out.mean;
        sq.add(dev * dev);
    }
    out.standard_error = std::sqrt(sq.value() / (n - 1.0) / n);
    out.se_defined = true;
    return out;
}

bool is_uniform_distribution(const OutputDistribution& dist, double tol) {
    const double target = 1.0 / static_cast<double>(dist.dim());
    for (double p : dist.probs)
        if (std::abs(p - target) > tol) return false;
    return true;
}

RescaledHistogram porter_thomas_histogram(std::span<const OutputDistribution> dists, int bins,
                                          double upper) {
    if (dists.empty()) throw std::invalid_argument("porter_thomas_histogram needs distributions");
    if (bins < 1) throw std::invalid_argument("bins must be >= 1");
    if (!(upper > 0.0)) throw std::invalid_argument("upper must be > 0");
    RescaledHistogram h;
    h.upper = upper;
    h.counts.assign(static_cast<std::size_t>(bins), 0);
    for (const OutputDistribution& dist : dists) {
        const double d = static_cast<double>(dist.dim());
        for (double p : dist.probs) {
            const double v = d * p;
            ++h.total;
            if (v >= upper) {
                ++h.overflow;
                continue;
            }
            std::size_t bin = static_cast<std::size_t>(v / upper * bins);
            if (bin >= h.counts.size()) bin = h.counts.size() - 1;
            ++h.counts[bin];
        }
    }
    return h;
}

}  // namespace xeb
