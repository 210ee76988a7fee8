#pragma once

#include <vector>

#include "mcx/bases.hpp"
#include "mcx/lawrence.hpp"
#include "mcx/matrix.hpp"

namespace mcx::bouquet {

/// Partition of the columns of A into bouquets: maximal classes of columns
/// whose Gale transforms are nonzero and pairwise linearly dependent; all
/// columns with zero Gale transform form the single free bouquet.
struct bouquet_decomposition {
    int_matrix source;                          // A, m x n
    std::vector<std::vector<std::size_t>> bouquets;  // 0-based, sorted
    std::vector<bool> free_flags;
    std::vector<ivec> cb;                       // per bouquet, length n
    int_matrix ab;                              // bouquet matrix, m x q
    int_matrix c;                               // n x q, column i = cb[i]

    std::size_t q() const { return bouquets.size(); }
};

bouquet_decomposition bouquets(const int_matrix& a);

/// Kernel isomorphism Ker_Z(AB) -> Ker_Z(A): block for bouquet k is
/// u_k * cB_k on its support; equals C*u. Validates u in Ker_Z(AB).
ivec map_d(const bouquet_decomposition& dec, const ivec& u);

/// Inverse map Ker_Z(A) -> Ker_Z(AB): coordinate k is the first support
/// entry of v in bouquet k divided (exactly) by the leading entry of cB_k.
/// Validates v in Ker_Z(A).
ivec map_t(const bouquet_decomposition& dec, const ivec& v);

/// Row-wise D on a tableau over AB; preserves the type.
lawrence::tableau map_d_r(const bouquet_decomposition& dec, const lawrence::tableau& t);
/// Row-wise T on a tableau over A; preserves the type.
lawrence::tableau map_t_r(const bouquet_decomposition& dec, const lawrence::tableau& t);

/// Element-wise T image of a Markov basis of A: a (not necessarily
/// minimal) Markov basis of AB, sign-normalized and deduplicated.
bases::basis_set markov_image_under_t(const bouquet_decomposition& dec,
                                      const bases::basis_set& markov);

/// Checks Ker_Z((A^(r))_B) == Ker_Z(A_B^(r)) by canonical-basis equality.
/// Requires r >= 3 and A without a free bouquet.
bool lifted_bouquet_kernel_check(const int_matrix& a, std::size_t r);

} // namespace mcx::bouquet
