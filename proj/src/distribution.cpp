#include "xeb/distribution.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace xeb {

OutputDistribution full_distribution(const Statevector& state) {
    OutputDistribution dist;
    dist.n = state.n;
    dist.probs.resize(state.dim());
    for (std::size_t i = 0; i < state.dim(); ++i) dist.probs[i] = std::norm(state.amp[i]);
    return dist;
}

AliasTable::AliasTable(const std::vector<double>& probs) {
    const std::size_t n = probs.size();
    if (n == 0) throw std::invalid_argument("alias table needs a nonempty distribution");
    if (n > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("alias table limited to 2^32 outcomes");

    threshold_.assign(n, 1.0);
    alias_.resize(n);
    std::vector<double> scaled(n);
    double total = 0.0;
    for (double p : probs) {
        if (p < 0.0) throw std::invalid_argument("negative probability");
        total += p;
    }
    if (total <= 0.0) throw std::invalid_argument("distribution sums to zero");
    for (std::size_t i = 0; i < n; ++i) scaled[i] = probs[i] * double(n) / total;

    // Index-ordered small/large stacks keep the build deterministic.
    std::vector<std::uint32_t> small, large;
    small.reserve(n);
    large.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));

    while (!small.empty() && !large.empty()) {
        const std::uint32_t s = small.back();
        const std::uint32_t l = large.back();
        small.pop_back();
        threshold_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] -= 1.0 - scaled[s];
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    for (std::uint32_t i : large) {
        threshold_[i] = 1.0;
        alias_[i] = i;
    }
    for (std::uint32_t i : small) {  // float residue; probability-1 column
        threshold_[i] = 1.0;
        alias_[i] = i;
    }
}

std::vector<std::uint64_t> sample_outcomes(const OutputDistribution& dist, std::size_t k,
                                           RandomStream& stream) {
    if (k == 0) throw std::invalid_argument("sample count k must be >= 1");
    AliasTable table(dist.probs);
    std::vector<std::uint64_t> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back(table.sample(stream));
    return out;
}

}  // namespace xeb
