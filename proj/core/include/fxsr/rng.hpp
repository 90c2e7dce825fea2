#pragma once

#include <cstdint>
#include <random>

namespace fxsr {

/// Seeded uniform source for stochastic rounding and data generation.
///
/// Backed by std::mt19937_64, whose output sequence is fixed by the C++
/// standard, so a seed reproduces the same stream on every platform. Uniforms
/// are built from the top 53 bits of each 64-bit output (never through
/// std::uniform_real_distribution, whose algorithm is implementation-defined).
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    /// Independent stream for a (seed, stream id) pair.
    static RngStream derive(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64() {
        ++draws_;
        return engine_();
    }

    /// Integer k in [0, 2^53); the uniform it stands for is k * 2^-53.
    std::uint64_t next_bits53() { return next_u64() >> 11; }

    /// u in [0, 1).
    double next_uniform() { return static_cast<double>(next_bits53()) * 0x1.0p-53; }

    /// u in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_uniform(); }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t draws() const noexcept { return draws_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
    std::uint64_t draws_ = 0;
};

/// SplitMix64 finalizer; used to spread (seed, stream) pairs apart.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline RngStream RngStream::derive(std::uint64_t seed, std::uint64_t stream) {
    return RngStream(mix64(mix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL)));
}

}  // namespace fxsr
