#pragma once

#include <cstdint>
#include <vector>

namespace irclab {

// SplitMix64 stream. Every randomized routine derives one stream per logical
// work item (sample index, window element) via substream(seed, index), so
// results do not depend on scheduling or worker count.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased uniform draw from [0, n), n >= 1 (rejection sampling).
    uint64_t below(uint64_t n) {
        if (n <= 1) return 0;
        const uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % n);
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            const size_t j = static_cast<size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    uint64_t state_;
};

inline uint64_t mix_seed(uint64_t seed, uint64_t index) {
    uint64_t z = seed ^ (0x9e3779b97f4a7c15ULL + index * 0xd1b54a32d192ed03ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline Rng substream(uint64_t seed, uint64_t index) { return Rng(mix_seed(seed, index)); }

}  // namespace irclab
