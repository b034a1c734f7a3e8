#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace genmetrics {

// SplitMix64 finalizer; used to expand seeds.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

// xoshiro256** 1.0 (Blackman & Vigna), state filled from SplitMix64(seed).
// Portable: the sequence depends only on the seed.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
    result_type operator()() noexcept;

    // Uniform integer in [0, n) by rejection (no modulo bias). n must be > 0.
    std::uint64_t bounded(std::uint64_t n) noexcept;

private:
    std::uint64_t s_[4];
};

// Draws `count` indices from [0, population). Without replacement: partial
// Fisher-Yates, result sorted ascending. With replacement: `count`
// independent bounded draws, in draw order.
std::vector<std::size_t> sample_indices(std::size_t population, std::size_t count, std::uint64_t seed,
                                        bool with_replacement = false);

// Seed of the stream used for one subsample of size `count` under `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t count) noexcept;

}  // namespace genmetrics
