#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace mcx {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;
using ivec = std::vector<bigint>;

/// Dense integer matrix with arbitrary-precision entries, row-major.
class int_matrix {
public:
    int_matrix() = default;
    int_matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}

    static int_matrix identity(std::size_t n);
    static int_matrix from_rows(const std::vector<ivec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bigint& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const bigint& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    ivec row(std::size_t i) const;
    ivec col(std::size_t j) const;
    int_matrix transposed() const;

    /// A*x for x with cols() entries.
    ivec apply(const ivec& x) const;

    bigint max_abs_entry() const;

    bool operator==(const int_matrix& o) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<bigint> e_;
};

ivec vec_add(const ivec& a, const ivec& b);
ivec vec_sub(const ivec& a, const ivec& b);
ivec vec_neg(ivec a);
bool vec_is_zero(const ivec& a);
bigint vec_norm1(const ivec& a);
ivec vec_pos_part(const ivec& a);  // u+
ivec vec_neg_part(const ivec& a);  // u-, so that u = u+ - u-
bool lex_less(const ivec& a, const ivec& b);

/// Flip sign so the first nonzero entry is positive.
ivec sign_normalized(ivec a);

// Shared matrix text format: optional '#' comment lines, first data line
// "m n", then m rows of n signed decimal integers.
int_matrix parse_matrix(std::istream& in);
int_matrix parse_matrix(const std::string& text);
std::string format_matrix(const int_matrix& a);

/// FNV-1a 64-bit digest of the canonical text form, as 16 hex digits.
std::string matrix_digest(const int_matrix& a);

ivec parse_ivec_csv(const std::string& text);
std::string format_ivec_csv(const ivec& v);

} // namespace mcx
