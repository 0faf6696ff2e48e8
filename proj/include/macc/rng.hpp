#pragma once

#include <cstdint>
#include <span>

namespace macc {

// SplitMix64 with derived per-purpose streams.  Every random draw in the
// toolkit comes from a stream keyed by (seed, domain, index), so parallel
// and sequential execution consume identical randomness.  All operations
// are plain uint64/double arithmetic and reproduce bit-for-bit across
// platforms and languages.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Index drawn from a pmf by inverse-CDF scan; final bucket absorbs rounding.
    int categorical(std::span<const double> pmf) {
        const double u = next_unit();
        double c = 0.0;
        for (std::size_t k = 0; k < pmf.size(); ++k) {
            c += pmf[k];
            if (u < c) return static_cast<int>(k);
        }
        return static_cast<int>(pmf.size()) - 1;
    }

    /// Uniform index in {0, ..., m-1}.
    std::uint64_t uniform_index(std::uint64_t m) {
        const auto v = static_cast<std::uint64_t>(next_unit() * static_cast<double>(m));
        return v < m - 1 ? v : m - 1;
    }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

namespace rng_domain {
inline constexpr std::uint64_t kCodebookU = 1;
inline constexpr std::uint64_t kCodebookX1 = 2;
inline constexpr std::uint64_t kCodebookV = 3;
inline constexpr std::uint64_t kTrial = 4;
inline constexpr std::uint64_t kAuxSearch = 5;
}  // namespace rng_domain

/// Seed of the (domain, index) stream derived from a master seed.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t domain, std::uint64_t index) {
    constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
    constexpr std::uint64_t leap = 0xD1B54A32D192ED03ULL;
    return SplitMix64::mix(SplitMix64::mix(seed ^ (domain * golden)) ^ (index * leap));
}

}  // namespace macc
