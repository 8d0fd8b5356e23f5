#pragma once

#include <cstdint>
#include <random>

namespace mxrob {

// SplitMix64 finalizer. This mixing function is part of the reproducibility
// contract: seeded runs must replay bit-identically, so it never changes.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 1));
}

// stream(i) depends only on (master_seed, i) — never on draw order, worker
// count, or schedule. Nested contracts chain derive_seed for sub-streams.
struct RngContract {
    std::uint64_t master_seed = 0;

    std::uint64_t stream_seed(std::uint64_t index) const {
        return derive_seed(master_seed, index);
    }
    std::mt19937_64 stream(std::uint64_t index) const {
        return std::mt19937_64(stream_seed(index));
    }
};

}  // namespace mxrob
