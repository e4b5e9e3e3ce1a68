#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace primlat {

// Mobius function values mu(1..limit), from a linear sieve.
struct MobiusTable {
    std::uint64_t limit = 0;
    std::vector<std::int8_t> values;  // values[k] = mu(k), index 0 unused

    std::int8_t mu(std::uint64_t k) const { return values[k]; }
};

// Rational interval [lo, hi] guaranteed to contain the represented quantity.
struct CertifiedValue {
    mpq_class lo;
    mpq_class hi;

    mpq_class width() const { return hi - lo; }
    mpq_class midpoint() const { return (lo + hi) / 2; }
    bool contains(const mpq_class& x) const { return lo <= x && x <= hi; }
    bool contains(const CertifiedValue& inner) const {
        return lo <= inner.lo && inner.hi <= hi;
    }
};

MobiusTable mobius_sieve(std::uint64_t limit);

// Enclosure of zeta(a) from the length-N partial sum plus integral tail
// bounds: zeta(a) in [S_N + 1/((a-1)(N+1)^(a-1)), S_N + 1/((a-1)N^(a-1))].
CertifiedValue zeta_certified(unsigned a, std::uint64_t n_terms);

// Exact partial sum  sum_{D=1}^{N} mu(D) / D^a.
mpq_class mobius_sum_reciprocal_zeta(unsigned a, std::uint64_t n_terms);

// Enclosure of 1 / (zeta(d) zeta(d-1) ... zeta(d-m+1)); [0,0] when m = d,
// [1,1] when m = 0.
CertifiedValue target_probability(unsigned d, unsigned m, std::uint64_t n_terms);

}  // namespace primlat
