#pragma once
// Deterministic random streams.
//
// Every random draw in a run descends from one master seed through
// derive_seed(master, stream, k, i): a stateless mix of the master seed, a
// stream tag, the time step and the individual index. Any worker can therefore
// sample individual i at step k without consuming anyone else's stream, and
// results are bit-identical regardless of thread count or evaluation order.

#include <cstdint>

namespace betis {

// Tags keep otherwise-identical (k, i) pairs in unrelated streams.
enum class Stream : std::uint64_t {
    InitLocation = 1,
    InitState = 2,
    Movement = 3,
    Transition = 4,
    Report = 5,
    Sojourn = 6,
    TestBaseline = 7,
};

namespace detail {
// splitmix64 finalizer (Steele, Lea, Flood 2014); full-avalanche 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

constexpr std::uint64_t derive_seed(std::uint64_t master, Stream stream,
                                    std::uint64_t k, std::uint64_t i) {
    std::uint64_t h = detail::mix64(master ^ 0x6a09e667f3bcc908ULL);
    h = detail::mix64(h ^ static_cast<std::uint64_t>(stream));
    h = detail::mix64(h ^ k);
    h = detail::mix64(h ^ i);
    return h;
}

// Small counter-based generator: repeated splitmix64 over a derived state.
class Rng {
public:
    explicit constexpr Rng(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    constexpr bool bernoulli(double p) { return uniform01() < p; }

private:
    std::uint64_t state_;
};

inline Rng make_rng(std::uint64_t master, Stream stream, std::uint64_t k, std::uint64_t i) {
    return Rng(derive_seed(master, stream, k, i));
}

}  // namespace betis
