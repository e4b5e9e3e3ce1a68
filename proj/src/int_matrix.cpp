#include "primlat/int_matrix.hpp"

#include <fstream>
#include <sstream>

#include "primlat/errors.hpp"

namespace primlat {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
    if (cols_ != other.rows())
        throw shape_error("matrix product shape mismatch: " + std::to_string(cols_) +
                          " vs " + std::to_string(other.rows()));
    IntMatrix out(rows_, other.cols());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const mpz_class& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < other.cols(); ++j)
                out(i, j) += a * other(k, j);
        }
    return out;
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i)
        std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i)
        (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::addmul_col(std::size_t a, const mpz_class& k, std::size_t b) {
    if (k == 0) return;
    for (std::size_t i = 0; i < rows_; ++i)
        (*this)(i, a) += k * (*this)(i, b);
}

mpz_class IntMatrix::max_abs() const {
    mpz_class best = 0;
    for (const auto& v : data_) {
        mpz_class a = abs(v);
        if (a > best) best = a;
    }
    return best;
}

IntMatrix parse_matrix(std::istream& in) {
    std::vector<std::vector<mpz_class>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream ls(line);
        std::vector<mpz_class> row;
        std::string tok;
        while (ls >> tok) {
            mpz_class v;
            if (mpz_set_str(v.get_mpz_t(), tok.c_str(), 10) != 0)
                throw parse_error("line " + std::to_string(lineno) +
                                  ": not an integer: '" + tok + "'");
            row.push_back(v);
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw parse_error("line " + std::to_string(lineno) + ": expected " +
                              std::to_string(rows.front().size()) + " entries, got " +
                              std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw parse_error("empty matrix");
    IntMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            m(i, j) = rows[i][j];
    return m;
}

IntMatrix parse_matrix(const std::string& text) {
    std::istringstream in(text);
    return parse_matrix(in);
}

IntMatrix load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file: " + path);
    return parse_matrix(in);
}

std::string format_matrix(const IntMatrix& m) {
    std::ostringstream out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << m(i, j).get_str();
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace primlat
