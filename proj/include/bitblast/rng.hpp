#pragma once

#include <cstdint>

namespace bitblast {

// splitmix64: tiny deterministic PRNG, identical across platforms. split()
// derives an independent stream, so concurrent trials stay reproducible.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n); n must be nonzero.
    uint64_t below(uint64_t n) { return next() % n; }

    int bit() { return static_cast<int>(next() >> 63); }

    Rng split() { return Rng(next() ^ 0xd1b54a32d192ed03ull); }
};

} // namespace bitblast
