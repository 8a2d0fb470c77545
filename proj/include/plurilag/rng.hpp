#pragma once

#include <cstdint>

namespace plurilag {

// Deterministic splitmix64 stream. std::uniform_real_distribution is
// implementation-defined, which would break byte-identical reports across
// toolchains, so draws are mapped to doubles by hand.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    // Independent stream for (seed, trial, lane); lets worker threads draw
    // per-trial values that do not depend on the thread schedule.
    static Rng substream(uint64_t seed, uint64_t a, uint64_t b = 0) {
        Rng r(seed);
        uint64_t s = r.next_u64() ^ (a * 0x9e3779b97f4a7c15ull);
        Rng r2(s);
        return Rng(r2.next_u64() ^ (b * 0xbf58476d1ce4e5b9ull));
    }

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [lo, hi] inclusive
    int uniform_int(int lo, int hi) {
        uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next_u64() % span);
    }

private:
    uint64_t state_;
};

} // namespace plurilag
