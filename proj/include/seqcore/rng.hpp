#pragma once

#include <cstdint>

namespace seqcore {

/// Counter-based generator: value i of stream `seed` is a pure function of (seed, i),
/// so fixtures are reproducible across platforms and standard libraries.
class CounterRng {
public:
    explicit constexpr CounterRng(std::uint64_t seed, std::uint64_t counter = 0) noexcept
        : seed_(seed), counter_(counter) {}

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static constexpr std::uint64_t at(std::uint64_t seed, std::uint64_t i) noexcept {
        return mix(mix(seed) ^ (i * 0xD1B54A32D192ED03ULL));
    }

    constexpr std::uint64_t next_u64() noexcept { return at(seed_, counter_++); }

    /// Uniform on [0, 1).
    constexpr double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    constexpr double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    constexpr double sign() noexcept { return (next_u64() >> 63) != 0U ? -1.0 : 1.0; }

    /// Uniform integer in [0, n).
    constexpr std::uint64_t below(std::uint64_t n) noexcept { return n == 0 ? 0 : next_u64() % n; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

}  // namespace seqcore
