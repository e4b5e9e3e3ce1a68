#include "primlat/sampling.hpp"

#include "primlat/errors.hpp"
#include "primlat/rng.hpp"

namespace primlat {

std::string BoxFamily::label() const {
    switch (kind) {
        case BoxKind::origin: return "origin";
        case BoxKind::centered: return "centered";
        case BoxKind::polynomial_offset: return "poly:" + std::to_string(degree);
        case BoxKind::explicit_bounds: return "explicit";
        case BoxKind::crt_blind: return "crt";
    }
    return "?";
}

BoxFamily parse_box_family(const std::string& text) {
    BoxFamily f;
    if (text == "origin") {
        f.kind = BoxKind::origin;
    } else if (text == "centered") {
        f.kind = BoxKind::centered;
    } else if (text.rfind("poly:", 0) == 0) {
        f.kind = BoxKind::polynomial_offset;
        try {
            f.degree = static_cast<unsigned>(std::stoul(text.substr(5)));
        } catch (const std::exception&) {
            throw parse_error("bad polynomial degree in box spec: " + text);
        }
    } else if (text.rfind("file=", 0) == 0) {
        f.kind = BoxKind::explicit_bounds;
        f.explicit_lower = load_matrix_file(text.substr(5));
    } else if (text == "crt") {
        f.kind = BoxKind::crt_blind;
    } else {
        throw parse_error("unknown box kind: " + text);
    }
    return f;
}

std::mt19937_64 SeededSampler::trial_rng(std::uint64_t trial) const {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ trial));
}

BoxSpec make_box(const BoxFamily& family, std::size_t d, std::size_t m, std::uint64_t n) {
    if (d < 1 || m < 1 || n < 1)
        throw domain_error("make_box: need d >= 1, m >= 1, n >= 1");
    BoxSpec box;
    box.d = d;
    box.m = m;
    box.n = n;
    box.lower = IntMatrix(m, d);
    switch (family.kind) {
        case BoxKind::origin:
            break;
        case BoxKind::centered: {
            mpz_class b = -mpz_class(n / 2);
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t i = 0; i < d; ++i)
                    box.lower(k, i) = b;
            break;
        }
        case BoxKind::polynomial_offset: {
            mpz_class np;
            mpz_ui_pow_ui(np.get_mpz_t(), static_cast<unsigned long>(n), family.degree);
            // b_{k,i} = (-1)^{k+i} n^j, indices 1-based
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t i = 0; i < d; ++i)
                    box.lower(k, i) = ((k + i) % 2 == 0) ? np : -np;
            break;
        }
        case BoxKind::explicit_bounds:
            if (family.explicit_lower.rows() != m || family.explicit_lower.cols() != d)
                throw shape_error("explicit box bounds are " +
                                  std::to_string(family.explicit_lower.rows()) + "x" +
                                  std::to_string(family.explicit_lower.cols()) +
                                  ", expected " + std::to_string(m) + "x" + std::to_string(d));
            box.lower = family.explicit_lower;
            break;
        case BoxKind::crt_blind:
            if (m != 1) throw domain_error("crt box requires m = 1");
            return crt_blind_box(d, n);
    }
    return box;
}

namespace {

std::vector<unsigned long> first_primes(std::size_t count) {
    std::vector<unsigned long> primes;
    unsigned long c = 2;
    while (primes.size() < count) {
        bool prime = true;
        for (unsigned long p : primes) {
            if (p * p > c) break;
            if (c % p == 0) { prime = false; break; }
        }
        if (prime) primes.push_back(c);
        ++c;
    }
    return primes;
}

}  // namespace

BoxSpec crt_blind_box(std::size_t d, std::uint64_t n) {
    if (d < 2) throw domain_error("crt_blind_box: need d >= 2");
    constexpr std::uint64_t kMaxCells = 64;
    // n^d cells, one prime each
    std::uint64_t cells = 1;
    for (std::size_t i = 0; i < d; ++i) {
        if (cells > kMaxCells / n) throw size_guard_error(
            "crt_blind_box: n^d exceeds " + std::to_string(kMaxCells) + " cells", kMaxCells);
        cells *= n;
    }
    if (cells > kMaxCells)
        throw size_guard_error("crt_blind_box: n^d exceeds " + std::to_string(kMaxCells) +
                               " cells", kMaxCells);

    std::vector<unsigned long> primes = first_primes(cells);

    BoxSpec box;
    box.d = d;
    box.m = 1;
    box.n = n;
    box.lower = IntMatrix(1, d);

    // Coordinate j must satisfy b_j = -c_j (mod p_c) for every cell c,
    // where cells are enumerated row-major.
    for (std::size_t j = 0; j < d; ++j) {
        mpz_class x = 0, modulus = 1;
        for (std::uint64_t c = 0; c < cells; ++c) {
            // digit j of cell c in base n, row-major (last coordinate fastest)
            std::uint64_t rest = c;
            std::uint64_t digit = 0;
            for (std::size_t t = d; t-- > 0;) {
                if (t == j) digit = rest % n;
                rest /= n;
            }
            mpz_class p(static_cast<unsigned long>(primes[c]));
            mpz_class target((p - mpz_class(static_cast<unsigned long>(digit % primes[c]))) % p);
            // solve x' = x (mod modulus), x' = target (mod p)
            mpz_class inv;
            mpz_class mm = modulus % p;
            if (mpz_invert(inv.get_mpz_t(), mm.get_mpz_t(), p.get_mpz_t()) == 0)
                throw domain_error("crt_blind_box: moduli not coprime");
            mpz_class t = ((target - x) * inv) % p;
            if (t < 0) t += p;
            x += modulus * t;
            modulus *= p;
        }
        box.lower(0, j) = x % modulus;  // least nonnegative residue
    }
    return box;
}

PointSet sample_pointset(const BoxSpec& box, const SeededSampler& sampler,
                         std::uint64_t trial) {
    std::mt19937_64 gen = sampler.trial_rng(trial);
    PointSet s;
    s.dim = box.d;
    s.points.resize(box.m);
    for (std::size_t k = 0; k < box.m; ++k) {
        s.points[k].resize(box.d);
        for (std::size_t i = 0; i < box.d; ++i)
            s.points[k][i] = box.lower(k, i) +
                             mpz_class(static_cast<unsigned long>(uniform_below(gen, box.n)));
    }
    return s;
}

}  // namespace primlat
