// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "primlat/experiments.hpp"
#include "primlat/report.hpp"
#include "primlat/rng.hpp"

using namespace primlat;

namespace {

constexpr std::uint64_t kSeed = 20240913;

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s  criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) { return format_decimal(x); }

BoxSpec explicit_box(std::uint64_t n, std::vector<long> lower) {
    BoxSpec b;
    b.d = lower.size();
    b.m = 1;
    b.n = n;
    b.lower = IntMatrix(1, lower.size());
    for (std::size_t j = 0; j < lower.size(); ++j) b.lower(0, j) = lower[j];
    return b;
}

void criterion_1_classic_density() {
    auto t0 = std::chrono::steady_clock::now();
    mpq_class p = exact_primitive_probability(2, 1, explicit_box(1000, {1, 1}));
    double target = target_probability(2, 1, 10000).midpoint().get_d();
    double gap = std::abs(p.get_d() - target);
    double secs = seconds_since(t0);
    report(1, "classic visible-point density, exact d=2 box [1,1000]^2",
           gap < 0.005 && secs < 5.0,
           "exact=" + fmt(p.get_d()) + " target=" + fmt(target) + " gap=" + fmt(gap) +
               " time=" + fmt(secs) + "s");
}

EstimateResult run_mc(std::size_t d, std::size_t m, const BoxFamily& fam,
                      unsigned workers) {
    return estimate_primitive_probability(d, m, fam, 1000000, 200000, kSeed, workers);
}

void criterion_2_single_point_density() {
    auto t0 = std::chrono::steady_clock::now();
    EstimateResult r = run_mc(3, 1, BoxFamily{BoxKind::centered}, 8);
    double secs = seconds_since(t0);
    report(2, "Monte Carlo d=3 m=1 vs 1/zeta(3)", r.gap < 0.01 && secs < 30.0,
           "estimate=" + fmt(r.estimate) + " gap=" + fmt(r.gap) + " time=" + fmt(secs) + "s");
}

void criterion_3_pairs() {
    for (std::size_t d : {3, 4}) {
        auto t0 = std::chrono::steady_clock::now();
        EstimateResult r = run_mc(d, 2, BoxFamily{BoxKind::centered}, 8);
        double secs = seconds_since(t0);
        report(3, "Monte Carlo d=" + std::to_string(d) + " m=2 vs zeta product",
               r.gap < 0.01 && secs < 120.0,
               "estimate=" + fmt(r.estimate) + " target=" + fmt(r.target.midpoint().get_d()) +
                   " gap=" + fmt(r.gap) + " time=" + fmt(secs) + "s");
    }
}

void criterion_4_box_generality() {
    EstimateResult r = run_mc(3, 1, BoxFamily{BoxKind::polynomial_offset, 2}, 8);
    report(4, "polynomial-offset boxes, d=3 m=1", r.gap < 0.01,
           "estimate=" + fmt(r.estimate) + " gap=" + fmt(r.gap));
}

void criterion_5_oracle_equivalence() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 gen(0xacce97u);
    std::uint64_t agree = 0, total = 0, incr_checked = 0;
    bool ok = true;
    while (total < 10000) {
        std::size_t d = 1 + uniform_below(gen, 6);
        std::size_t m = uniform_below(gen, d + 1);
        PointSet s;
        s.dim = d;
        for (std::size_t k = 0; k < m; ++k) {
            std::vector<mpz_class> p(d);
            for (auto& v : p) v = static_cast<long>(uniform_below(gen, 101)) - 50;
            s.points.push_back(std::move(p));
        }
        ++total;
        bool a = is_primitive(s);
        bool b = is_primitive_minors(s);
        if (a == b) ++agree;
        else ok = false;

        // incremental route over the longest primitive prefix
        PointSet prefix;
        prefix.dim = d;
        for (std::size_t k = 0; k < m; ++k) {
            PointSet next = prefix;
            next.points.push_back(s.points[k]);
            bool whole = is_primitive(next);
            if (is_primitive(prefix)) {
                ++incr_checked;
                if (incremental_gcd_check(prefix, s.points[k]) != whole) ok = false;
            }
            if (!whole) break;
            prefix = std::move(next);
        }
    }
    double secs = seconds_since(t0);
    report(5, "oracle equivalence over 10^4 random point sets",
           ok && agree == total && secs < 60.0,
           std::to_string(agree) + "/" + std::to_string(total) + " agree, " +
               std::to_string(incr_checked) + " incremental checks, time=" + fmt(secs) + "s");
}

void criterion_6_hnf_soundness() {
    std::mt19937_64 gen(0x50c4a7e5u);
    bool ok = true;
    std::uint64_t tested = 0;
    while (tested < 10000) {
        std::size_t q = 1 + uniform_below(gen, 6);
        std::size_t p = 1 + uniform_below(gen, q);
        IntMatrix a(p, q);
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < q; ++j)
                a(i, j) = static_cast<long>(uniform_below(gen, 101)) - 50;
        if (rank(a) < p) continue;
        ++tested;
        HnfResult r = hnf(a);
        if (!(a * r.u == r.h) || !is_unimodular(r.u)) ok = false;
        for (std::size_t i = 0; i < p && ok; ++i) {
            if (r.h(i, i) <= 0) ok = false;
            for (std::size_t j = i + 1; j < q; ++j)
                if (r.h(i, j) != 0) ok = false;
            for (std::size_t j = 0; j < i; ++j)
                if (r.h(i, j) < 0 || r.h(i, j) >= r.h(i, i)) ok = false;
        }
    }
    std::uint64_t bounded_tested = 0;
    while (bounded_tested < 1000) {
        std::size_t q = 2 + uniform_below(gen, 4);
        std::size_t p = 1 + uniform_below(gen, q);
        IntMatrix a(p, q);
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < q; ++j)
                a(i, j) = static_cast<long>(uniform_below(gen, 19)) - 9;
        if (rank(a) < p) continue;
        ++bounded_tested;
        BoundedHnfResult r = hnf_bounded(a);
        if (r.report.max_abs_u > r.report.bound) ok = false;
        if (!(a * r.hnf.u == r.hnf.h) || !is_unimodular(r.hnf.u)) ok = false;
    }
    report(6, "HNF soundness on 10^4 matrices, multiplier bound on 10^3", ok,
           std::to_string(tested) + " hnf + " + std::to_string(bounded_tested) + " bounded");
}

void criterion_7_identity() {
    std::mt19937_64 gen(0x1dc0f1u);
    int tested = 0;
    bool ok = true;
    while (tested < 50) {
        std::size_t d = 2 + uniform_below(gen, 3);
        std::size_t mprev = uniform_below(gen, 2);
        PointSet prefix;
        prefix.dim = d;
        if (mprev == 1) {
            std::vector<mpz_class> row(d);
            for (auto& v : row) v = static_cast<long>(uniform_below(gen, 9)) - 4;
            prefix.points.push_back(std::move(row));
            if (!is_primitive(prefix)) continue;
        }
        BoxSpec box;
        box.d = d;
        box.m = 1;
        box.n = 1 + uniform_below(gen, 8);
        box.lower = IntMatrix(1, d);
        for (std::size_t i = 0; i < d; ++i)
            box.lower(0, i) = static_cast<long>(uniform_below(gen, 11)) - 5;
        ++tested;
        if (!inclusion_exclusion_identity(prefix, box).equal) ok = false;
    }
    report(7, "exact inclusion-exclusion identity on 50 random configs", ok,
           std::to_string(tested) + " configs");
}

void criterion_8_covering_bounds() {
    std::mt19937_64 gen(0xc04e4u);
    int tested = 0;
    bool ok = true;
    while (tested < 100) {
        std::size_t d = 2 + uniform_below(gen, 3);
        std::size_t mprev = uniform_below(gen, 2);
        PointSet prefix;
        prefix.dim = d;
        if (mprev == 1) {
            std::vector<mpz_class> row(d);
            for (auto& v : row) v = static_cast<long>(uniform_below(gen, 9)) - 4;
            prefix.points.push_back(std::move(row));
            if (!is_primitive(prefix)) continue;
        }
        std::uint64_t n = 2 + uniform_below(gen, 7);
        mpz_class modulus(static_cast<unsigned long>(1 + uniform_below(gen, n)));
        BoxSpec box;
        box.d = d;
        box.m = 1;
        box.n = n;
        box.lower = IntMatrix(1, d);
        for (std::size_t i = 0; i < d; ++i)
            box.lower(0, i) = static_cast<long>(uniform_below(gen, 9)) - 4;
        ++tested;
        if (!check_covering_bounds(make_lambda_spec(prefix, modulus), box)) ok = false;
    }
    report(8, "finite covering bounds and fundamental-cube counts, 100 configs", ok,
           std::to_string(tested) + " configs");
}

void criterion_9_crt_box() {
    bool ok = true;
    for (std::uint64_t n : {2ull, 3ull}) {
        BoxSpec box = crt_blind_box(2, n);
        for (std::uint64_t i = 0; i < n; ++i)
            for (std::uint64_t j = 0; j < n; ++j) {
                PointSet s;
                s.dim = 2;
                s.points.push_back({box.lower(0, 0) + static_cast<unsigned long>(i),
                                    box.lower(0, 1) + static_cast<unsigned long>(j)});
                if (is_primitive(s)) ok = false;
            }
    }
    report(9, "CRT blind boxes contain no primitive point, d=2 n in {2,3}", ok,
           "exhaustive");
}

std::vector<EstimateResult> run_convergence(unsigned workers) {
    return convergence_table(2, 1, BoxFamily{BoxKind::centered},
                             {100, 1000, 10000, 100000, 1000000}, 100000, kSeed, workers);
}

void criterion_10_convergence(const std::vector<EstimateResult>& rows) {
    double first_gap = rows.front().gap, final_gap = rows.back().gap;
    report(10, "convergence ladder d=2 m=1, endpoint gaps",
           final_gap < first_gap && final_gap < 0.01,
           "first_gap=" + fmt(first_gap) + " final_gap=" + fmt(final_gap));
}

void criterion_11_determinism(const std::vector<EstimateResult>& conv1) {
    EstimateResult a = run_mc(3, 1, BoxFamily{BoxKind::centered}, 1);
    EstimateResult b = run_mc(3, 1, BoxFamily{BoxKind::centered}, 8);
    bool mc_same = estimate_to_json(a) == estimate_to_json(b);
    auto conv8 = run_convergence(8);
    bool conv_same = convergence_to_json(conv1) == convergence_to_json(conv8);
    report(11, "bit-identical JSON payloads for workers in {1,8}", mc_same && conv_same,
           std::string("estimate ") + (mc_same ? "same" : "DIFFERS") + ", table " +
               (conv_same ? "same" : "DIFFERS"));
}

}  // namespace

int main() {
    criterion_1_classic_density();
    criterion_2_single_point_density();
    criterion_3_pairs();
    criterion_4_box_generality();
    criterion_5_oracle_equivalence();
    criterion_6_hnf_soundness();
    criterion_7_identity();
    criterion_8_covering_bounds();
    criterion_9_crt_box();
    auto conv1 = run_convergence(1);
    criterion_10_convergence(conv1);
    criterion_11_determinism(conv1);
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    else std::printf("all acceptance criteria passed\n");
    return failures == 0 ? 0 : 1;
}
