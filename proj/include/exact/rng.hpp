#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace exact {

// SplitMix64 finalizer. Used for seed derivation only, never as a stream.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) noexcept {
    std::uint64_t s = a ^ std::rotl(b, 23) ^ 0x6a09e667f3bcc909ULL;
    splitmix64(s);
    return splitmix64(s) ^ b;
}

/// xoshiro256++ (Blackman & Vigna). Satisfies std::uniform_random_bit_generator
/// so it plugs into <random> distributions.
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(std::uint64_t seed = 0x853c49e6748fea9bULL) noexcept { reseed(seed); }

    void reseed(std::uint64_t seed) noexcept {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        const std::uint64_t result = std::rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = std::rotl(s_[3], 45);
        return result;
    }

    const std::array<std::uint64_t, 4>& state() const noexcept { return s_; }
    void set_state(const std::array<std::uint64_t, 4>& s) noexcept { s_ = s; }

    friend bool operator==(const Xoshiro256pp&, const Xoshiro256pp&) = default;

private:
    std::array<std::uint64_t, 4> s_{};
};

using Rng = Xoshiro256pp;

/// Uniform on the open interval (0,1) with 53 random bits.
template <class G>
inline double uniform01(G& g) noexcept {
    return (static_cast<double>(g() >> 11) + 0.5) * 0x1.0p-53;
}

template <class G>
inline bool bernoulli(G& g, double p) noexcept {
    return uniform01(g) < p;
}

/// Named substreams of a root seed. A key is a path of integers; the same
/// path always yields the same generator regardless of which thread asks.
enum class Stream : std::uint64_t {
    proposal = 1,
    vcoin = 2,
    g0 = 3,
    tau = 4,
    qn = 5,
    oracle = 6,
    bench = 7,
    misc = 8,
};

class StreamKey {
public:
    constexpr explicit StreamKey(std::uint64_t root) noexcept : key_(mix64(root, 0x243f6a8885a308d3ULL)) {}

    constexpr StreamKey child(std::uint64_t tag) const noexcept { return StreamKey(mix64(key_, tag), raw_tag{}); }
    constexpr StreamKey child(Stream s) const noexcept { return child(static_cast<std::uint64_t>(s)); }
    constexpr StreamKey child(std::initializer_list<std::uint64_t> path) const noexcept {
        StreamKey k = *this;
        for (auto t : path) k = k.child(t);
        return k;
    }

    constexpr std::uint64_t value() const noexcept { return key_; }
    Rng rng() const noexcept { return Rng(key_); }

    friend constexpr bool operator==(StreamKey, StreamKey) = default;

private:
    struct raw_tag {};
    constexpr StreamKey(std::uint64_t k, raw_tag) noexcept : key_(k) {}
    std::uint64_t key_;
};

} // namespace exact
