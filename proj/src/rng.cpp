#include "genmetrics/rng.hpp"

#include <algorithm>
#include <numeric>

#include "genmetrics/error.hpp"

namespace genmetrics {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

}  // namespace

Xoshiro256::Xoshiro256(std::uint64_t seed) noexcept {
    std::uint64_t state = seed;
    for (auto& word : s_) word = splitmix64(state);
}

Xoshiro256::result_type Xoshiro256::operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

std::uint64_t Xoshiro256::bounded(std::uint64_t n) noexcept {
    // 2^64 mod n: values below it would bias the low residues.
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        const std::uint64_t r = (*this)();
        if (r >= threshold) return r % n;
    }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t count) noexcept {
    std::uint64_t state = seed ^ (count * 0xD1B54A32D192ED03ull);
    return splitmix64(state);
}

std::vector<std::size_t> sample_indices(std::size_t population, std::size_t count, std::uint64_t seed,
                                        bool with_replacement) {
    if (population == 0) throw Error(ErrorCode::PreconditionViolation, "cannot sample from an empty population");
    Xoshiro256 rng(seed);
    std::vector<std::size_t> out;
    if (with_replacement) {
        out.resize(count);
        for (auto& v : out) v = static_cast<std::size_t>(rng.bounded(population));
        return out;
    }
    if (count > population)
        throw Error(ErrorCode::PreconditionViolation, "sample larger than population without replacement");
    std::vector<std::size_t> pool(population);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.bounded(population - i));
        std::swap(pool[i], pool[j]);
    }
    out.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace genmetrics
