#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "primlat/int_matrix.hpp"
#include "primlat/lattice.hpp"

namespace primlat {

// Sampling box: point k coordinate i is uniform on [lower(k,i), lower(k,i) + n).
struct BoxSpec {
    std::size_t d = 0;
    std::size_t m = 0;
    std::uint64_t n = 1;
    IntMatrix lower;  // m x d
};

enum class BoxKind { origin, centered, polynomial_offset, explicit_bounds, crt_blind };

struct BoxFamily {
    BoxKind kind = BoxKind::origin;
    unsigned degree = 0;           // polynomial_offset only
    IntMatrix explicit_lower;      // explicit_bounds only

    std::string label() const;
};

BoxFamily parse_box_family(const std::string& text);

struct SeededSampler {
    std::uint64_t seed = 0;

    // Identical (seed, trial) yields an identical generator regardless of
    // scheduling or worker count.
    std::mt19937_64 trial_rng(std::uint64_t trial) const;
};

BoxSpec make_box(const BoxFamily& family, std::size_t d, std::size_t m, std::uint64_t n);

// CRT-constructed box (m = 1) in which every point has all coordinates
// divisible by its cell's prime, so no point is primitive.
BoxSpec crt_blind_box(std::size_t d, std::uint64_t n);

PointSet sample_pointset(const BoxSpec& box, const SeededSampler& sampler,
                         std::uint64_t trial);

}  // namespace primlat
