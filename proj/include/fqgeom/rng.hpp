#pragma once

#include <cstdint>

namespace fqgeom {

/// The repository's pinned PRNG: SplitMix64 (Steele, Lea, Flood 2014).
///
/// All experiment randomness flows through this generator so that results
/// are reproducible bit-for-bit across platforms. The update is
///
///     state += 0x9E3779B97F4A7C15
///     z = state
///     z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///     z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///     output = z ^ (z >> 31)
///
/// Doubles are formed from the top 53 bits, bounded integers with the
/// multiply-shift reduction; both are exact integer operations.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n), n >= 1.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

private:
    std::uint64_t state_;
};

/// Sub-seed derivation: sm(x) is one SplitMix64 output step from state x.
/// derive_seed folds each tag with one step, so streams for different tags
/// are independent and adding trials never perturbs earlier ones.
inline std::uint64_t splitmix_step(std::uint64_t x) {
    return SplitMix64(x).next();
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
    return splitmix_step(splitmix_step(base) ^ tag);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag1,
                                 std::uint64_t tag2) {
    return splitmix_step(derive_seed(base, tag1) ^ tag2);
}

}  // namespace fqgeom
