#include "primlat/experiments.hpp"

#include <cmath>
#include <thread>

#include "primlat/errors.hpp"
#include "primlat/rng.hpp"

namespace primlat {

namespace {

constexpr std::uint64_t kEnumGuard = 100'000'000;
constexpr std::uint64_t kSupportGuard = 1'000'000;
constexpr std::uint64_t kTargetTerms = 10'000;  // zeta precision for targets

// n^e, throwing the size guard when it would exceed the enumeration budget.
std::uint64_t guarded_pow(std::uint64_t n, std::uint64_t e) {
    std::uint64_t total = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (n != 0 && total > kEnumGuard / n)
            throw size_guard_error("enumeration size n^" + std::to_string(e) +
                                   " exceeds guard " + std::to_string(kEnumGuard),
                                   kEnumGuard);
        total *= n;
    }
    if (total > kEnumGuard)
        throw size_guard_error("enumeration size exceeds guard " +
                               std::to_string(kEnumGuard), kEnumGuard);
    return total;
}

// Visit every integer point of a single-point box (m = 1), in odometer order.
template <class F>
void for_each_box_point(const BoxSpec& box, F&& visit) {
    const std::size_t d = box.d;
    std::vector<std::uint64_t> digits(d, 0);
    std::vector<mpz_class> point(d);
    for (std::size_t i = 0; i < d; ++i) point[i] = box.lower(0, i);
    for (;;) {
        visit(point);
        std::size_t k = d;
        while (k > 0) {
            --k;
            if (++digits[k] < box.n) {
                point[k] = box.lower(0, k) + static_cast<unsigned long>(digits[k]);
                break;
            }
            digits[k] = 0;
            point[k] = box.lower(0, k);
            if (k == 0) return;
        }
    }
}

// gcd of x * U^(i) over the trailing columns i = m_prev .. d-1; 0 when all
// products vanish.
mpz_class trailing_product_gcd(const std::vector<mpz_class>& x, const IntMatrix& u,
                               std::size_t m_prev) {
    const std::size_t d = u.cols();
    mpz_class g = 0, dot;
    for (std::size_t i = m_prev; i < d; ++i) {
        dot = 0;
        for (std::size_t t = 0; t < d; ++t) dot += x[t] * u(t, i);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), dot.get_mpz_t());
    }
    return g;
}

mpz_class count_lambda_with_multiplier(const IntMatrix& u, std::size_t m_prev,
                                       const mpz_class& modulus, const BoxSpec& box) {
    guarded_pow(box.n, box.d);
    const std::size_t d = box.d;
    mpz_class count = 0, dot, rem;
    for_each_box_point(box, [&](const std::vector<mpz_class>& x) {
        for (std::size_t i = m_prev; i < d; ++i) {
            dot = 0;
            for (std::size_t t = 0; t < d; ++t) dot += x[t] * u(t, i);
            mpz_mod(rem.get_mpz_t(), dot.get_mpz_t(), modulus.get_mpz_t());
            if (rem != 0) return;
        }
        ++count;
    });
    return count;
}

}  // namespace

LambdaSpec make_lambda_spec(const PointSet& prefix, const mpz_class& d_modulus) {
    if (d_modulus < 1) throw domain_error("lambda spec: modulus must be >= 1");
    if (prefix.dim < 1) throw shape_error("lambda spec: prefix must carry a dimension");
    if (!is_primitive(prefix))
        throw contract_error("lambda spec: prefix is not primitive");
    LambdaSpec spec;
    spec.prefix = prefix;
    spec.multiplier = prefix.size() == 0 ? IntMatrix::identity(prefix.dim)
                                         : hnf(prefix.as_matrix()).u;
    spec.modulus = d_modulus;
    return spec;
}

EstimateResult estimate_primitive_probability(std::size_t d, std::size_t m,
                                              const BoxFamily& family, std::uint64_t n,
                                              std::uint64_t trials, std::uint64_t seed,
                                              unsigned workers) {
    if (m < 1 || m > d) throw domain_error("estimate: need 1 <= m <= d");
    if (trials < 1) throw domain_error("estimate: need trials >= 1");
    if (workers < 1) workers = 1;

    const BoxSpec box = make_box(family, d, m, n);
    const SeededSampler sampler{seed};

    std::vector<std::uint64_t> counts(workers, 0);
    std::vector<std::thread> threads;
    const std::uint64_t chunk = trials / workers, extra = trials % workers;
    std::uint64_t start = 0;
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t len = chunk + (w < extra ? 1 : 0);
        threads.emplace_back([&, w, start, len] {
            std::uint64_t c = 0;
            for (std::uint64_t t = start; t < start + len; ++t) {
                PointSet s = sample_pointset(box, sampler, t);
                if (is_primitive(s)) ++c;
            }
            counts[w] = c;
        });
        start += len;
    }
    for (auto& t : threads) t.join();

    EstimateResult r;
    r.d = d;
    r.m = m;
    r.n = n;
    r.box_kind = family.label();
    r.seed = seed;
    r.trials = trials;
    for (auto c : counts) r.successes += c;
    r.estimate = static_cast<double>(r.successes) / static_cast<double>(trials);
    r.std_error = std::sqrt(r.estimate * (1.0 - r.estimate) / static_cast<double>(trials));
    r.target = target_probability(static_cast<unsigned>(d), static_cast<unsigned>(m),
                                  kTargetTerms);
    r.gap = std::abs(r.estimate - r.target.midpoint().get_d());
    return r;
}

mpq_class exact_primitive_probability(std::size_t d, std::size_t m, const BoxSpec& box) {
    if (box.d != d || box.m != m)
        throw shape_error("exact: box shape does not match (d, m)");
    const std::uint64_t total = guarded_pow(box.n, d * m);

    PointSet s;
    s.dim = d;
    s.points.assign(m, std::vector<mpz_class>(d));
    std::vector<std::uint64_t> digits(m * d, 0);
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < d; ++i)
            s.points[k][i] = box.lower(k, i);

    mpz_class hits = 0;
    for (std::uint64_t it = 0;; ++it) {
        if (is_primitive(s)) ++hits;
        std::size_t pos = m * d;
        bool done = false;
        while (pos > 0) {
            --pos;
            std::size_t k = pos / d, i = pos % d;
            if (++digits[pos] < box.n) {
                s.points[k][i] = box.lower(k, i) + static_cast<unsigned long>(digits[pos]);
                break;
            }
            digits[pos] = 0;
            s.points[k][i] = box.lower(k, i);
            if (pos == 0) done = true;
        }
        if (done) break;
        (void)it;
    }
    mpq_class q(hits, mpz_class(static_cast<unsigned long>(total)));
    q.canonicalize();
    return q;
}

CountResult count_lambda_points(const LambdaSpec& spec, const BoxSpec& box) {
    if (box.m != 1) throw shape_error("lambda count: box must hold a single point");
    if (box.d != spec.multiplier.cols())
        throw shape_error("lambda count: box dimension mismatch");
    CountResult r;
    r.count = count_lambda_with_multiplier(spec.multiplier, spec.prefix.size(),
                                           spec.modulus, box);
    mpz_ui_pow_ui(r.volume.get_mpz_t(), static_cast<unsigned long>(box.n),
                  static_cast<unsigned long>(box.d));
    r.ratio = mpq_class(r.count, r.volume);
    r.ratio.canonicalize();
    return r;
}

bool check_covering_bounds(const LambdaSpec& spec, const BoxSpec& box) {
    if (spec.modulus < 1 || spec.modulus > static_cast<unsigned long>(box.n))
        throw domain_error("covering bounds: need 1 <= D <= n");
    const std::size_t d = box.d;
    const std::uint64_t n = box.n;
    const unsigned long dd = mpz_get_ui(spec.modulus.get_mpz_t());
    const std::size_t m = spec.prefix.size() + 1;

    const mpz_class count = count_lambda_points(spec, box).count;

    // D^(m-1) (n/D - 1)^d <= |S_nD| <= D^(m-1) (n/D + 1)^d, exact rationals
    mpz_class dpow;
    mpz_ui_pow_ui(dpow.get_mpz_t(), dd, static_cast<unsigned long>(m - 1));
    mpq_class ratio(static_cast<unsigned long>(n), dd);
    mpq_class lo_f = ratio - 1, hi_f = ratio + 1;
    mpq_class lo_bound(dpow), hi_bound(dpow);
    for (std::size_t i = 0; i < d; ++i) {
        lo_bound *= lo_f;
        hi_bound *= hi_f;
    }
    if (mpq_class(count) < lo_bound || mpq_class(count) > hi_bound) return false;

    // every aligned D-cube fully inside the box holds exactly D^(m-1)
    // lattice points
    const std::uint64_t cubes_per_dim = n / dd;
    std::vector<std::uint64_t> t(d, 0);
    if (cubes_per_dim > 0) {
        for (;;) {
            BoxSpec cube;
            cube.d = d;
            cube.m = 1;
            cube.n = dd;
            cube.lower = IntMatrix(1, d);
            for (std::size_t i = 0; i < d; ++i)
                cube.lower(0, i) = box.lower(0, i) +
                                   mpz_class(static_cast<unsigned long>(t[i] * dd));
            mpz_class in_cube = count_lambda_with_multiplier(
                spec.multiplier, spec.prefix.size(), spec.modulus, cube);
            if (in_cube != dpow) return false;
            std::size_t k = d;
            bool done = false;
            while (k > 0) {
                --k;
                if (++t[k] < cubes_per_dim) break;
                t[k] = 0;
                if (k == 0) done = true;
            }
            if (done) break;
        }
    }
    return true;
}

IdentityResult inclusion_exclusion_identity(const PointSet& prefix, const BoxSpec& box) {
    if (!is_primitive(prefix))
        throw contract_error("inclusion-exclusion: prefix is not primitive");
    if (box.m != 1) throw shape_error("inclusion-exclusion: box must hold a single point");
    guarded_pow(box.n, box.d);
    const std::size_t d = box.d;
    const std::size_t m_prev = prefix.size();
    const IntMatrix u = m_prev == 0 ? IntMatrix::identity(d) : hnf(prefix.as_matrix()).u;

    // One pass: the left side through the incremental gcd criterion, and the
    // per-point product gcds that bound the right side's support.
    mpz_class lhs_count = 0;
    std::vector<mpz_class> gcds;
    for_each_box_point(box, [&](const std::vector<mpz_class>& x) {
        if (incremental_gcd_check(prefix, x)) ++lhs_count;
        gcds.push_back(trailing_product_gcd(x, u, m_prev));
    });

    mpz_class support = 0;
    for (const auto& g : gcds)
        if (g > support) support = g;
    if (support > static_cast<unsigned long>(kSupportGuard))
        throw size_guard_error("inclusion-exclusion: support bound exceeds guard " +
                               std::to_string(kSupportGuard), kSupportGuard);
    const std::uint64_t m_star = support == 0 ? 1 : mpz_get_ui(support.get_mpz_t());

    // rhs = sum_{D=1}^{M*} mu(D) |{x : D | g_x, g_x >= 1}| / n^d.  Points whose
    // product vector is identically zero lie in every Lambda_D; they are never
    // coprime and carry no finite support, so they are excluded from the
    // divisor counts on this side.
    MobiusTable mob = mobius_sieve(m_star);
    mpz_class volume;
    mpz_ui_pow_ui(volume.get_mpz_t(), static_cast<unsigned long>(box.n),
                  static_cast<unsigned long>(d));
    mpz_class rhs_num = 0;
    for (std::uint64_t dv = 1; dv <= m_star; ++dv) {
        if (mob.mu(dv) == 0) continue;
        mpz_class c = 0;
        for (const auto& g : gcds)
            if (g >= 1 && mpz_divisible_ui_p(g.get_mpz_t(), dv)) ++c;
        rhs_num += mob.mu(dv) * c;
    }

    IdentityResult r;
    r.lhs = mpq_class(lhs_count, volume);
    r.lhs.canonicalize();
    r.rhs = mpq_class(rhs_num, volume);
    r.rhs.canonicalize();
    r.equal = (r.lhs == r.rhs);
    r.support_bound = support;
    return r;
}

bool u_independence_check(const PointSet& prefix, const mpz_class& d_modulus,
                          const BoxSpec& box) {
    LambdaSpec spec = make_lambda_spec(prefix, d_modulus);
    // Second multiplier from a different construction: the bounded HNF of the
    // prefix, or (for an empty prefix, where any unimodular matrix is valid)
    // a seeded random unimodular matrix.
    IntMatrix alt = prefix.size() == 0
                        ? random_unimodular(box.d, 32, 3, 0x9d5c1e8au)
                        : hnf_bounded(prefix.as_matrix()).hnf.u;
    mpz_class c1 = count_lambda_with_multiplier(spec.multiplier, prefix.size(),
                                                d_modulus, box);
    mpz_class c2 = count_lambda_with_multiplier(alt, prefix.size(), d_modulus, box);
    return c1 == c2;
}

std::vector<EstimateResult> convergence_table(std::size_t d, std::size_t m,
                                              const BoxFamily& family,
                                              const std::vector<std::uint64_t>& n_list,
                                              std::uint64_t trials, std::uint64_t seed,
                                              unsigned workers) {
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] < n_list[i - 1])
            throw domain_error("convergence_table: n_list must be nondecreasing");
    std::vector<EstimateResult> rows;
    rows.reserve(n_list.size());
    for (std::uint64_t n : n_list) {
        std::uint64_t row_seed = splitmix64(seed ^ splitmix64(n));
        rows.push_back(estimate_primitive_probability(d, m, family, n, trials,
                                                      row_seed, workers));
    }
    return rows;
}

}  // namespace primlat
