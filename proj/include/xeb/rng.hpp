#ifndef XEB_RNG_HPP
#define XEB_RNG_HPP

#include <cstdint>

namespace xeb {

// SplitMix64 finalizer (Steele/Lea/Flood). This mixing function is the
// reproducibility contract for every seeded result the workbench emits;
// it must never change.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-based random stream: the state walks the SplitMix64 sequence, so a
// stream is a pure function of its 64-bit seed. Gaussians come from Box-Muller
// with a cached spare, keeping the output sequence platform-independent.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53-bit resolution.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Unbiased integer in [0, bound), bound >= 1. Rejection on the single
    // biased residue range, so expected cost is O(1).
    std::uint64_t uniform_below(std::uint64_t bound) {
        const std::uint64_t lim = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            std::uint64_t u = next_u64();
            if (u >= lim) return u % bound;
        }
    }

    double gaussian();

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Trial seed i is the i-th output of a SplitMix64 generator seeded with the
// master seed. Injective in the trial index, so distinct trials can never
// collide, and derivation order is irrelevant.
inline std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    return mix64(master_seed + trial_index * 0x9E3779B97F4A7C15ULL);
}

// Purpose-tagged substream derivation: gate k of a trial uses tag k, outcome
// sampling and other consumers use tags in a disjoint high range (below).
inline RandomStream derive_stream(std::uint64_t trial_seed, std::uint64_t tag) {
    return RandomStream(mix64(trial_seed ^ mix64(tag + 0xD1B54A32D192ED03ULL)));
}

inline constexpr std::uint64_t kTagOutcomeSampling = 0x8000000000000000ULL;
inline constexpr std::uint64_t kTagProbe = 0x8000000000000001ULL;

// Per-trial randomness plan: (master_seed, trial_index) fixes every stream the
// trial will ever draw from, independent of generation order or thread count.
struct SeedPlan {
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;

    std::uint64_t trial_seed() const { return derive_trial_seed(master_seed, trial_index); }
    RandomStream gate_stream(std::uint64_t gate_counter) const {
        return derive_stream(trial_seed(), gate_counter);
    }
    RandomStream stream(std::uint64_t tag) const { return derive_stream(trial_seed(), tag); }
};

}  // namespace xeb

#endif
