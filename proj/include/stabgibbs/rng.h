#ifndef STABGIBBS_RNG_H
#define STABGIBBS_RNG_H

#include <cstdint>

namespace stabgibbs {

inline uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Counter-based generator: word k of draw (seed, stream, draw) is a pure function of those four
/// values, so any sample can be regenerated independently of the others.
class CounterRng {
   public:
    CounterRng(uint64_t seed, uint64_t stream, uint64_t draw)
        : key_(mix64(mix64(mix64(seed) ^ stream) ^ draw)) {
    }

    uint64_t next() {
        return mix64(key_ ^ mix64(counter_++));
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    uint64_t counter() const {
        return counter_;
    }

   private:
    uint64_t key_;
    uint64_t counter_ = 0;
};

}  // namespace stabgibbs

#endif
