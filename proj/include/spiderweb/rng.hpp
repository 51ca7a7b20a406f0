#pragma once

// Counter-based random streams.
//
// Algorithm: SplitMix64. A stream is a 64-bit key; its i-th value is
//   mix(key + (i + 1) * 0x9E3779B97F4A7C15)
// where mix is the SplitMix64 finaliser. Purpose-specific keys are derived from a
// root seed as mix(root ^ fnv1a64(label)). Any draw can be reproduced from
// (root seed, label, index) alone, so chunked or parallel consumers stay
// deterministic.

#include <cmath>
#include <cstdint>
#include <string_view>

namespace spiderweb {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

constexpr std::uint64_t derive_seed(std::uint64_t root, std::string_view label) noexcept {
    return splitmix64_mix(root ^ fnv1a64(label));
}

constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) noexcept {
    return splitmix64_mix(root ^ splitmix64_mix(index + kGoldenGamma));
}

/// Random-access stream of 64-bit values.
class CounterStream {
public:
    constexpr explicit CounterStream(std::uint64_t key) noexcept : key_(key) {}

    constexpr std::uint64_t at(std::uint64_t index) const noexcept {
        return splitmix64_mix(key_ + (index + 1) * kGoldenGamma);
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    constexpr double unit(std::uint64_t index) const noexcept {
        return static_cast<double>(at(index) >> 11) * 0x1.0p-53;
    }

    constexpr std::uint64_t key() const noexcept { return key_; }

private:
    std::uint64_t key_;
};

/// Sequential reader over a CounterStream. Uniform integers use rejection of the
/// biased tail, consuming one or more consecutive stream values.
class Rng {
public:
    constexpr explicit Rng(std::uint64_t key) noexcept : stream_(key) {}

    constexpr std::uint64_t next() noexcept { return stream_.at(counter_++); }

    constexpr double unit() noexcept { return stream_.unit(counter_++); }

    /// Uniform in [0, bound). bound must be positive.
    constexpr std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
        std::uint64_t v = next();
        while (v > limit) v = next();
        return v % bound;
    }

    /// Uniform in [lo, hi].
    constexpr std::int64_t between(std::int64_t lo, std::int64_t hi) noexcept {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    constexpr bool bernoulli(double p) noexcept { return unit() < p; }

    constexpr std::uint64_t consumed() const noexcept { return counter_; }

private:
    CounterStream stream_;
    std::uint64_t counter_ = 0;
};

template <class Vec>
void seeded_shuffle(Vec& v, std::uint64_t key) {
    Rng rng(key);
    for (std::size_t i = v.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        using std::swap;
        swap(v[i - 1], v[j]);
    }
}

}  // namespace spiderweb
