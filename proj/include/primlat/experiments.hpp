#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "primlat/lattice.hpp"
#include "primlat/numbers.hpp"
#include "primlat/sampling.hpp"

namespace primlat {

struct EstimateResult {
    std::size_t d = 0;
    std::size_t m = 0;
    std::uint64_t n = 0;
    std::string box_kind;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double estimate = 0.0;
    double std_error = 0.0;
    CertifiedValue target;
    double gap = 0.0;
};

// Sublattice Lambda_D: x with D | x * U^(i) for the trailing columns of the
// prefix's HNF multiplier.
struct LambdaSpec {
    PointSet prefix;
    IntMatrix multiplier;  // d x d, A * multiplier in HNF (identity if prefix empty)
    mpz_class modulus;     // D
};

LambdaSpec make_lambda_spec(const PointSet& prefix, const mpz_class& d_modulus);

struct CountResult {
    mpz_class count;    // |B_n cap Lambda_D|
    mpz_class volume;   // n^d
    mpq_class ratio;    // p_nD
};

struct IdentityResult {
    mpq_class lhs;
    mpq_class rhs;
    bool equal = false;
    mpz_class support_bound;  // largest D with nonzero contribution
};

EstimateResult estimate_primitive_probability(std::size_t d, std::size_t m,
                                              const BoxFamily& family, std::uint64_t n,
                                              std::uint64_t trials, std::uint64_t seed,
                                              unsigned workers);

mpq_class exact_primitive_probability(std::size_t d, std::size_t m, const BoxSpec& box);

CountResult count_lambda_points(const LambdaSpec& spec, const BoxSpec& box);

bool check_covering_bounds(const LambdaSpec& spec, const BoxSpec& box);

IdentityResult inclusion_exclusion_identity(const PointSet& prefix, const BoxSpec& box);

bool u_independence_check(const PointSet& prefix, const mpz_class& d_modulus,
                          const BoxSpec& box);

std::vector<EstimateResult> convergence_table(std::size_t d, std::size_t m,
                                              const BoxFamily& family,
                                              const std::vector<std::uint64_t>& n_list,
                                              std::uint64_t trials, std::uint64_t seed,
                                              unsigned workers);

}  // namespace primlat
