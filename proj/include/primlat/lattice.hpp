#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "primlat/int_matrix.hpp"

namespace primlat {

// Ordered list of m points in Z^d.
struct PointSet {
    std::size_t dim = 0;
    std::vector<std::vector<mpz_class>> points;

    std::size_t size() const { return points.size(); }
    IntMatrix as_matrix() const;
    static PointSet from_matrix(const IntMatrix& m);
};

// (H, U) with A*U = H, U unimodular, H in Hermite normal form
// (lower triangular, positive diagonal, reduced off-diagonal).
struct HnfResult {
    IntMatrix h;
    IntMatrix u;
};

// Certificate from the bounded-multiplier construction:
// max |U_ij| <= p! * q * m0^p for any strict entry bound m0 on the input.
struct BoundReport {
    std::size_t p = 0;
    std::size_t q = 0;
    mpz_class m0;
    mpz_class bound;
    mpz_class max_abs_u;
};

struct BoundedHnfResult {
    HnfResult hnf;
    BoundReport report;
};

mpz_class determinant(const IntMatrix& a);
std::size_t rank(const IntMatrix& a);

HnfResult hnf(const IntMatrix& a);
bool is_unimodular(const IntMatrix& u);

bool is_primitive(const PointSet& s);
bool is_primitive_minors(const PointSet& s);

// Given a primitive prefix {s_1..s_{m-1}} with HNF multiplier U, the set
// stays primitive after appending s iff gcd(s * U^{(i)} : m <= i <= d) = 1.
bool incremental_gcd_check(const PointSet& prefix, const std::vector<mpz_class>& point);

mpz_class saturation_index(const PointSet& s);

// d x d matrix with determinant +-1 whose first m rows are the input points.
IntMatrix complete_to_basis(const PointSet& s);

BoundedHnfResult hnf_bounded(const IntMatrix& a);

IntMatrix random_unimodular(std::size_t dim, std::size_t steps, std::uint64_t entry_cap,
                            std::uint64_t seed);

}  // namespace primlat
