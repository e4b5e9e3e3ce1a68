#include "primlat/numbers.hpp"

#include <climits>
#include <cmath>
#include <cstdint>

#include "primlat/errors.hpp"

namespace primlat {

namespace {

// Memory budget for the Mobius sieve (entries, ~one byte each plus the
// auxiliary prime-factor array).
constexpr std::uint64_t kSieveLimitBudget = 1ull << 28;

constexpr unsigned kFixedPointBits = 128;

// true iff i^a fits in an unsigned 64-bit word; on success pow = i^a.
bool pow_fits_u64(std::uint64_t i, unsigned a, std::uint64_t& pow) {
    pow = 1;
    for (unsigned k = 0; k < a; ++k) {
        if (i != 0 && pow > UINT64_MAX / i) return false;
        pow *= i;
    }
    return true;
}

}  // namespace

MobiusTable mobius_sieve(std::uint64_t limit) {
    if (limit < 1) throw domain_error("mobius_sieve: limit must be >= 1");
    if (limit > kSieveLimitBudget)
        throw capacity_error("mobius_sieve: limit " + std::to_string(limit) +
                             " exceeds budget " + std::to_string(kSieveLimitBudget));
    MobiusTable t;
    t.limit = limit;
    t.values.assign(limit + 1, 0);
    t.values[1] = 1;

    // Linear sieve: each composite crossed exactly once.
    std::vector<std::uint32_t> primes;
    std::vector<std::uint8_t> is_comp(limit + 1, 0);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (!is_comp[i]) {
            primes.push_back(static_cast<std::uint32_t>(i));
            t.values[i] = -1;
        }
        for (std::uint32_t p : primes) {
            std::uint64_t ip = i * static_cast<std::uint64_t>(p);
            if (ip > limit) break;
            is_comp[ip] = 1;
            if (i % p == 0) {
                t.values[ip] = 0;
                break;
            }
            t.values[ip] = static_cast<std::int8_t>(-t.values[i]);
        }
    }
    return t;
}

CertifiedValue zeta_certified(unsigned a, std::uint64_t n_terms) {
    if (a < 2) throw domain_error("zeta_certified: need a >= 2, zeta(1) diverges");
    if (n_terms < 1) throw domain_error("zeta_certified: need N >= 1");

    // Partial sum in fixed point: each inexact term floor(2^B / i^a)
    // underestimates by less than one unit, so S_N lies in
    // [sum, sum + slack] / 2^B with slack counting the inexact terms.
    mpz_class scale = mpz_class(1) << kFixedPointBits;
    mpz_class sum = 0;
    mpz_class q, denom;
    std::uint64_t slack = 0;
    for (std::uint64_t i = 1; i <= n_terms; ++i) {
        unsigned long rem;
        std::uint64_t pu;
        if (pow_fits_u64(i, a, pu) && pu <= ULONG_MAX) {
            rem = mpz_tdiv_q_ui(q.get_mpz_t(), scale.get_mpz_t(),
                                static_cast<unsigned long>(pu));
            if (rem != 0) ++slack;
        } else {
            mpz_ui_pow_ui(denom.get_mpz_t(), static_cast<unsigned long>(i), a);
            mpz_tdiv_q(q.get_mpz_t(), scale.get_mpz_t(), denom.get_mpz_t());
            ++slack;
        }
        if (q == 0) {
            // every remaining term is a smaller positive amount below one unit
            slack += n_terms - i;
            break;
        }
        sum += q;
    }
    mpq_class s_lo(sum, scale);
    mpq_class s_hi(sum + slack, scale);
    s_lo.canonicalize();
    s_hi.canonicalize();

    // Integral-test tail: 1/((a-1)(N+1)^(a-1)) <= zeta(a) - S_N <= 1/((a-1)N^(a-1)).
    mpz_class np1_pow, n_pow;
    mpz_ui_pow_ui(np1_pow.get_mpz_t(), static_cast<unsigned long>(n_terms + 1), a - 1);
    mpz_ui_pow_ui(n_pow.get_mpz_t(), static_cast<unsigned long>(n_terms), a - 1);
    mpq_class tail_lo(1, mpz_class((a - 1) * np1_pow));
    mpq_class tail_hi(1, mpz_class((a - 1) * n_pow));
    tail_lo.canonicalize();
    tail_hi.canonicalize();

    return CertifiedValue{s_lo + tail_lo, s_hi + tail_hi};
}

namespace {

// Binary splitting for sum mu(D)/D^a over D in [lo, hi]; fractions kept
// uncanonicalized until the top.
struct Frac {
    mpz_class num;
    mpz_class den;
};

Frac mobius_sum_range(const MobiusTable& mob, unsigned a, std::uint64_t lo,
                      std::uint64_t hi) {
    if (lo == hi) {
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(lo), a);
        return Frac{mpz_class(mob.mu(lo)), den};
    }
    std::uint64_t mid = lo + (hi - lo) / 2;
    Frac l = mobius_sum_range(mob, a, lo, mid);
    Frac r = mobius_sum_range(mob, a, mid + 1, hi);
    return Frac{l.num * r.den + r.num * l.den, l.den * r.den};
}

}  // namespace

mpq_class mobius_sum_reciprocal_zeta(unsigned a, std::uint64_t n_terms) {
    if (a < 2) throw domain_error("mobius_sum_reciprocal_zeta: need a >= 2");
    if (n_terms < 1) throw domain_error("mobius_sum_reciprocal_zeta: need N >= 1");
    MobiusTable mob = mobius_sieve(n_terms);
    Frac f = mobius_sum_range(mob, a, 1, n_terms);
    mpq_class q(f.num, f.den);
    q.canonicalize();
    return q;
}

CertifiedValue target_probability(unsigned d, unsigned m, std::uint64_t n_terms) {
    if (m > d) throw domain_error("target_probability: m > d");
    if (m >= 1 && d < 2) throw domain_error("target_probability: need d >= 2");
    if (m == 0) return CertifiedValue{mpq_class(1), mpq_class(1)};
    if (m == d) return CertifiedValue{mpq_class(0), mpq_class(0)};

    mpq_class prod_lo(1), prod_hi(1);
    for (unsigned k = 0; k < m; ++k) {
        CertifiedValue z = zeta_certified(d - k, n_terms);
        prod_lo *= z.lo;  // all factors > 1, product interval is [prod lo, prod hi]
        prod_hi *= z.hi;
    }
    return CertifiedValue{1 / prod_hi, 1 / prod_lo};
}

}  // namespace primlat
