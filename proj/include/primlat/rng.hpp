#pragma once

#include <cstdint>
#include <random>

namespace primlat {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Unbiased draw from [0, n) by rejection against the generator's full
// 64-bit range; std::uniform_int_distribution is implementation-defined
// and would break cross-platform reproducibility.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t rem = (0 - n) % n;  // 2^64 mod n
    for (;;) {
        std::uint64_t x = gen();
        if (x >= rem) return (x - rem) % n;
    }
}

}  // namespace primlat
