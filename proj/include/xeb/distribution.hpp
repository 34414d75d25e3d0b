#ifndef XEB_DISTRIBUTION_HPP
#define XEB_DISTRIBUTION_HPP

#include <cstdint>
#include <vector>

#include "xeb/rng.hpp"
#include "xeb/statevector.hpp"

namespace xeb {

// probs[x] = p(x) over the 2^n computational basis states.
struct OutputDistribution {
    int n = 0;
    std::vector<double> probs;

    std::size_t dim() const { return probs.size(); }
};

// probs[x] = |amplitude(x)|^2.
OutputDistribution full_distribution(const Statevector& state);

// Walker/Vose alias table: O(N) build, O(1) per draw.
class AliasTable {
public:
    explicit AliasTable(const std::vector<double>& probs);
    std::size_t size() const { return threshold_.size(); }
    std::size_t sample(RandomStream& stream) const {
        const std::size_t slot = stream.uniform_below(threshold_.size());
        return stream.uniform() < threshold_[slot] ? slot : alias_[slot];
    }

private:
    std::vector<double> threshold_;
    std::vector<std::uint32_t> alias_;
};

// k independent draws from dist, reproducible given the stream. k >= 1.
std::vector<std::uint64_t> sample_outcomes(const OutputDistribution& dist, std::size_t k,
                                           RandomStream& stream);

}  // namespace xeb

#endif
