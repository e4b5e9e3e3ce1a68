#include "primlat/lattice.hpp"

#include <algorithm>
#include <random>

#include "primlat/errors.hpp"
#include "primlat/rng.hpp"

namespace primlat {

namespace {

void validate(const PointSet& s) {
    for (const auto& pt : s.points)
        if (pt.size() != s.dim)
            throw shape_error("point of length " + std::to_string(pt.size()) +
                              " in dimension-" + std::to_string(s.dim) + " set");
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

IntMatrix PointSet::as_matrix() const {
    IntMatrix m(points.size(), dim);
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j)
            m(i, j) = points[i][j];
    return m;
}

PointSet PointSet::from_matrix(const IntMatrix& m) {
    PointSet s;
    s.dim = m.cols();
    s.points.resize(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s.points[i].resize(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j)
            s.points[i][j] = m(i, j);
    }
    return s;
}

mpz_class determinant(const IntMatrix& a) {
    if (a.rows() != a.cols())
        throw shape_error("determinant of non-square " + std::to_string(a.rows()) +
                          "x" + std::to_string(a.cols()) + " matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix w = a;
    int sign = 1;
    mpz_class prev = 1;
    // Bareiss fraction-free elimination; all divisions are exact.
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && w(r, k) == 0) ++r;
            if (r == n) return 0;
            for (std::size_t j = k; j < n; ++j) std::swap(w(k, j), w(r, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class t = w(k, k) * w(i, j) - w(i, k) * w(k, j);
                mpz_divexact(w(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            w(i, k) = 0;
        }
        prev = w(k, k);
    }
    return sign * w(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& a) {
    const std::size_t p = a.rows(), q = a.cols();
    std::vector<std::vector<mpq_class>> w(p, std::vector<mpq_class>(q));
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < q; ++j)
            w[i][j] = mpq_class(a(i, j));
    std::size_t r = 0;
    for (std::size_t col = 0; col < q && r < p; ++col) {
        std::size_t pivot = r;
        while (pivot < p && w[pivot][col] == 0) ++pivot;
        if (pivot == p) continue;
        std::swap(w[r], w[pivot]);
        for (std::size_t i = r + 1; i < p; ++i) {
            if (w[i][col] == 0) continue;
            mpq_class f = w[i][col] / w[r][col];
            for (std::size_t j = col; j < q; ++j)
                w[i][j] -= f * w[r][j];
        }
        ++r;
    }
    return r;
}

HnfResult hnf(const IntMatrix& a) {
    const std::size_t p = a.rows(), q = a.cols();
    IntMatrix h = a;
    IntMatrix u = IntMatrix::identity(q);

    for (std::size_t i = 0; i < p; ++i) {
        // Clear row i to the right of the diagonal with Euclidean column steps.
        for (;;) {
            // leftmost column >= i with minimal nonzero |h(i,j)|
            std::size_t best = q;
            mpz_class best_abs;
            for (std::size_t j = i; j < q; ++j) {
                if (h(i, j) == 0) continue;
                mpz_class v = abs(h(i, j));
                if (best == q || v < best_abs) {
                    best = j;
                    best_abs = v;
                }
            }
            if (best == q)
                throw rank_error("rank-deficient input: rank " + std::to_string(i) +
                                 " < " + std::to_string(p) + " rows",
                                 static_cast<int>(i));
            if (best != i) {
                h.swap_cols(i, best);
                u.swap_cols(i, best);
            }
            bool cleared = true;
            for (std::size_t j = i + 1; j < q; ++j) {
                if (h(i, j) == 0) continue;
                mpz_class k = floor_div(h(i, j), h(i, i));
                h.addmul_col(j, -k, i);
                u.addmul_col(j, -k, i);
                if (h(i, j) != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (h(i, i) < 0) {
            h.negate_col(i);
            u.negate_col(i);
        }
        // Reduce the off-diagonal entries of row i: 0 <= h(i,j) < h(i,i).
        for (std::size_t j = 0; j < i; ++j) {
            mpz_class k = floor_div(h(i, j), h(i, i));
            if (k != 0) {
                h.addmul_col(j, -k, i);
                u.addmul_col(j, -k, i);
            }
        }
    }
    return HnfResult{std::move(h), std::move(u)};
}

bool is_unimodular(const IntMatrix& u) {
    if (u.rows() != u.cols())
        throw shape_error("is_unimodular: non-square matrix");
    mpz_class d = determinant(u);
    return d == 1 || d == -1;
}

bool is_primitive(const PointSet& s) {
    validate(s);
    const std::size_t m = s.size(), d = s.dim;
    if (m == 0) return true;
    if (m > d) return false;
    if (m == 1) {
        mpz_class g = 0;
        for (const auto& v : s.points[0]) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        return g == 1;
    }
    IntMatrix a = s.as_matrix();
    try {
        HnfResult r = hnf(a);
        for (std::size_t i = 0; i < m; ++i)
            if (r.h(i, i) != 1) return false;
        return true;
    } catch (const rank_error&) {
        return false;  // dependent rows cannot form a basis
    }
}

bool is_primitive_minors(const PointSet& s) {
    validate(s);
    const std::size_t m = s.size(), d = s.dim;
    if (m == 0) return true;
    IntMatrix a = s.as_matrix();
    mpz_class g = 0;
    // gcd over all m x m minors via column-subset enumeration
    std::vector<std::size_t> cols(m);
    for (std::size_t i = 0; i < m; ++i) cols[i] = i;
    if (m <= d) {
        for (;;) {
            IntMatrix sub(m, m);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    sub(i, j) = a(i, cols[j]);
            mpz_class det = determinant(sub);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
            if (g == 1) return true;
            // next combination
            std::size_t k = m;
            while (k > 0 && cols[k - 1] == d - m + (k - 1)) --k;
            if (k == 0) break;
            ++cols[k - 1];
            for (std::size_t t = k; t < m; ++t) cols[t] = cols[t - 1] + 1;
        }
    }
    return g == 1;
}

bool incremental_gcd_check(const PointSet& prefix, const std::vector<mpz_class>& point) {
    validate(prefix);
    const std::size_t d = prefix.dim;
    if (point.size() != d)
        throw shape_error("incremental_gcd_check: point has length " +
                          std::to_string(point.size()) + ", expected " + std::to_string(d));
    if (!is_primitive(prefix))
        throw contract_error("incremental_gcd_check: prefix is not primitive");
    IntMatrix u = prefix.size() == 0 ? IntMatrix::identity(d)
                                     : hnf(prefix.as_matrix()).u;
    mpz_class g = 0, dot;
    for (std::size_t i = prefix.size(); i < d; ++i) {
        dot = 0;
        for (std::size_t t = 0; t < d; ++t) dot += point[t] * u(t, i);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), dot.get_mpz_t());
    }
    return g == 1;
}

mpz_class saturation_index(const PointSet& s) {
    validate(s);
    if (s.size() == 0) return 1;
    HnfResult r = hnf(s.as_matrix());  // throws rank_error when dependent
    mpz_class idx = 1;
    for (std::size_t i = 0; i < s.size(); ++i) idx *= r.h(i, i);
    return idx;
}

namespace {

// Inverse of a unimodular matrix via the adjugate: U^{-1} = det(U) * adj(U)
// when det(U) = +-1.
IntMatrix unimodular_inverse(const IntMatrix& u) {
    const std::size_t n = u.rows();
    mpz_class det = determinant(u);
    IntMatrix inv(n, n);
    if (n == 1) {
        inv(0, 0) = det;  // +-1
        return inv;
    }
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            // cofactor C_{ji}: delete row j, column i of u
            std::size_t mi = 0;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == j) continue;
                std::size_t mj = 0;
                for (std::size_t c = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor(mi, mj) = u(r, c);
                    ++mj;
                }
                ++mi;
            }
            mpz_class cof = determinant(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            inv(i, j) = det * cof;
        }
    }
    return inv;
}

}  // namespace

IntMatrix complete_to_basis(const PointSet& s) {
    validate(s);
    if (!is_primitive(s))
        throw contract_error("complete_to_basis: input set is not primitive");
    const std::size_t d = s.dim;
    if (s.size() == 0) return IntMatrix::identity(d);
    HnfResult r = hnf(s.as_matrix());
    // A*U = [I | 0], so the rows of U^{-1} extend A to a basis of Z^d.
    return unimodular_inverse(r.u);
}

BoundedHnfResult hnf_bounded(const IntMatrix& a) {
    const std::size_t p = a.rows(), q = a.cols();
    std::size_t r0 = rank(a);
    if (r0 != p)
        throw rank_error("hnf_bounded: rank " + std::to_string(r0) + " < " +
                         std::to_string(p) + " rows", static_cast<int>(r0));

    // Append standard basis rows greedily, keeping the stack nonsingular.
    IntMatrix b(q, q);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < q; ++j)
            b(i, j) = a(i, j);
    std::size_t filled = p;
    for (std::size_t t = 0; t < q && filled < q; ++t) {
        IntMatrix trial(filled + 1, q);
        for (std::size_t i = 0; i < filled; ++i)
            for (std::size_t j = 0; j < q; ++j)
                trial(i, j) = b(i, j);
        trial(filled, t) = 1;
        if (rank(trial) == filled + 1) {
            b(filled, t) = 1;
            ++filled;
        }
    }
    HnfResult full = hnf(b);

    IntMatrix ha(p, q);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < q; ++j)
            ha(i, j) = full.h(i, j);

    BoundReport rep;
    rep.p = p;
    rep.q = q;
    rep.m0 = a.max_abs() + 1;
    mpz_class fact = 1;
    for (std::size_t i = 2; i <= p; ++i) fact *= i;
    mpz_class m0_pow;
    mpz_pow_ui(m0_pow.get_mpz_t(), rep.m0.get_mpz_t(), p);
    rep.bound = fact * static_cast<long>(q) * m0_pow;
    rep.max_abs_u = full.u.max_abs();
    return BoundedHnfResult{HnfResult{std::move(ha), std::move(full.u)}, std::move(rep)};
}

IntMatrix random_unimodular(std::size_t dim, std::size_t steps, std::uint64_t entry_cap,
                            std::uint64_t seed) {
    IntMatrix m = IntMatrix::identity(dim);
    std::mt19937_64 gen(splitmix64(seed));
    for (std::size_t s = 0; s < steps; ++s) {
        std::uint64_t op = uniform_below(gen, 3);
        if (dim == 1 || op == 1) {
            m.negate_col(uniform_below(gen, dim));
        } else if (op == 0) {
            std::size_t i = uniform_below(gen, dim);
            std::size_t j = uniform_below(gen, dim - 1);
            if (j >= i) ++j;
            m.swap_cols(i, j);
        } else {
            std::size_t i = uniform_below(gen, dim);
            std::size_t j = uniform_below(gen, dim - 1);
            if (j >= i) ++j;
            mpz_class k(static_cast<long>(uniform_below(gen, 2 * entry_cap + 1)) -
                        static_cast<long>(entry_cap));
            m.addmul_col(i, k, j);
        }
    }
    return m;
}

}  // namespace primlat
