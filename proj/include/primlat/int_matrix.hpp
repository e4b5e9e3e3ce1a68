#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace primlat {

// Dense matrix of arbitrary-precision signed integers, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    mpz_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const mpz_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const IntMatrix& other) const = default;

    IntMatrix operator*(const IntMatrix& other) const;

    void swap_cols(std::size_t a, std::size_t b);
    void negate_col(std::size_t j);
    // col a += k * col b
    void addmul_col(std::size_t a, const mpz_class& k, std::size_t b);

    mpz_class max_abs() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<mpz_class> data_;
};

// Matrix text format: one row per line, decimal entries separated by
// spaces; blank lines and lines starting with '#' are ignored.
IntMatrix parse_matrix(std::istream& in);
IntMatrix parse_matrix(const std::string& text);
IntMatrix load_matrix_file(const std::string& path);
std::string format_matrix(const IntMatrix& m);

}  // namespace primlat
