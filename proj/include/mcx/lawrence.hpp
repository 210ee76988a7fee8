#pragma once

#include <string>
#include <vector>

#include "mcx/matrix.hpp"

namespace mcx::lawrence {

/// The (rm+n) x rn block matrix: r diagonal copies of A over a block row
/// of r copies of I_n. Requires r >= 2.
int_matrix lawrence_lift(const int_matrix& a, std::size_t r);

/// A kernel element of a lifted matrix viewed as an r x n integer matrix.
/// Its rows lie in Ker_Z(A) and sum to zero.
struct tableau {
    std::size_t r = 0, n = 0;
    std::vector<ivec> rows;

    bool operator==(const tableau& o) const = default;
};

/// Number of nonzero rows.
std::size_t tableau_type(const tableau& t);

tableau tableau_from_flat(const ivec& flat, std::size_t r, std::size_t n);
ivec flat_from_tableau(const tableau& t);

// literal grammar: rows separated by ';', entries by ','
tableau parse_tableau(const std::string& text);
std::string format_tableau(const tableau& t);

/// true iff every row of t is in Ker_Z(a) and the rows sum to zero,
/// i.e. the flattening lies in Ker_Z(lawrence_lift(a, t.r))
bool tableau_in_kernel(const int_matrix& a, const tableau& t);

/// [[0, 1, s-1, s], [1, 1, 1, 1]] for s >= 3.
int_matrix family_as(long long s);

/// [1, s, s^2-s, s^2-1] padded with k trailing ones (1 x (4+k)), s >= 3.
int_matrix family_kt(long long s, std::size_t k);

/// The s x 4 tableau with s-2 rows (1,-1,-1,1), then (0,-1,s-1,2-s),
/// then (2-s,s-1,-1,0). Each column sums to zero and every row lies in
/// Ker_Z(family_as(s)).
tableau witness_matrix(long long s);

/// One column block of a generalized Lawrence matrix: c' with all entries
/// nonzero, positive first entry and gcd 1, and lambda with
/// lambda . c' = 1.
struct bouquet_spec {
    ivec cprime;
    ivec lambda;
};

/// lambda for a given c' via iterated extended Euclid; requires gcd 1.
ivec solve_lambda(const ivec& cprime);

/// Generalized Lawrence matrix with one column block per spec: the top
/// rows carry base column i scaled by lambda_ij, and each block
/// contributes one relation row (-c'_ij at its first column, c'_i1 at
/// column j) per extra column. Validates rank d' + n - q and that the
/// bouquet decomposition recovers the blocks with cB = c' (zero padded).
int_matrix generalized_lawrence(const int_matrix& base,
                                const std::vector<bouquet_spec>& specs);

/// Bundled 15 x 15 0/1 matrix of rank 13 whose bouquet matrix has the
/// same kernel as family_as(5); a compact fixture of a 0/1 matrix with
/// Markov complexity at least 5.
int_matrix zero_one_fixture();

} // namespace mcx::lawrence
