#ifndef XEB_ESTIMATORS_HPP
#define XEB_ESTIMATORS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "xeb/distribution.hpp"

namespace xeb {

// Neumaier compensated accumulator; sums over 2^n terms at n=20+ need better
// than naive float accumulation.
class NeumaierSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// (1/k) sum_i p(x_i). samples nonempty, indices < 2^n.
double lxeb_statistic(const OutputDistribution& dist, std::span<const std::uint64_t> samples);

struct LxebResult {
    double statistic = 0.0;
    double threshold = 0.0;  // b / 2^n
    bool passed = false;     // statistic >= threshold
    std::size_t k = 0;
    double b = 0.0;
};

inline constexpr double kDefaultLxebB = 1.97;

// Accepts iff (1/k) sum_i p(x_i) >= b/2^n (inclusive). b in (1, 2).
LxebResult lxeb_test(const OutputDistribution& dist, std::span<const std::uint64_t> samples,
                     double b = kDefaultLxebB);

// sum_x p(x)^2 = E_{x~p}[p(x)]
double collision_probability_exact(const OutputDistribution& dist);

double max_output_probability(const OutputDistribution& dist);

// Threshold the max-probability theorem compares against: 4n/2^n.
double maxp_threshold(int n);

// Var_{x~p}(p(x)) = sum_x p(x)^3 - (sum_x p(x)^2)^2
double sample_variance_over_outputs(const OutputDistribution& dist);

// Mean and standard error of p(x)^t across circuits; the SE of a single
// distribution is undefined and reported as NaN with the flag cleared.
struct ProbeMoment {
    double mean = 0.0;
    double standard_error = 0.0;
    bool se_defined = false;
};
ProbeMoment empirical_probe_moment(std::span<const OutputDistribution> dists, int t,
                                   std::uint64_t x);

// True iff every entry is within tol of 1/2^n. Clifford output distributions
// are exactly uniform-on-support, so the default tolerance makes this sharp.
bool is_uniform_distribution(const OutputDistribution& dist, double tol = 1e-9);

// Binned density of rescaled probabilities d*p over [0, upper) plus an
// overflow count; report companion only, no acceptance weight.
struct RescaledHistogram {
    double upper = 0.0;
    std::vector<std::uint64_t> counts;
    std::uint64_t overflow = 0;
    std::uint64_t total = 0;
};
RescaledHistogram porter_thomas_histogram(std::span<const OutputDistribution> dists, int bins,
                                          double upper = 10.0);

}  // namespace xeb

#endif
