#pragma once

#include <optional>
#include <vector>

#include "mcx/matrix.hpp"

namespace mcx::intlin {

struct xgcd_result {
    bigint g, x, y;  // g = gcd(a,b) = x*a + y*b, g >= 0
};
xgcd_result xgcd(const bigint& a, const bigint& b);

/// floor(a/b) for b > 0
bigint floor_div(const bigint& a, const bigint& b);

struct hnf_result {
    int_matrix h;  // row Hermite normal form of m
    int_matrix u;  // unimodular, u * m == h
};

// Row HNF convention: pivot entries positive, entries above each pivot
// reduced into [0, pivot), zero rows last. H is unique for a given row
// lattice; U is not unique when m is rank-deficient.
hnf_result hnf(const int_matrix& m);

std::size_t rank(const int_matrix& m);

/// Integer basis of Ker_Z(A). canonical == the rows are their own row HNF.
struct lattice_basis {
    std::size_t ambient_dim = 0;
    std::vector<ivec> rows;
    bool canonical = false;

    std::size_t dim() const { return rows.size(); }
};

/// Canonical (HNF) basis of the saturated lattice {u : A*u = 0}.
lattice_basis kernel_basis(const int_matrix& a);

int_matrix basis_matrix(const lattice_basis& b);
bool lattice_equal(const lattice_basis& a, const lattice_basis& b);
bool lattice_contains(const lattice_basis& b, const ivec& v);

/// Gale transform of column i = i-th column of the canonical kernel basis
/// matrix. Column i is free iff its Gale transform is zero.
std::vector<ivec> gale_transforms(const int_matrix& a);

/// y with y . a_j > 0 for every column a_j, if such y exists. Exact
/// rational phase-I simplex on { y : y . a_j >= 1 }, Bland's rule.
std::optional<std::vector<bigrat>> positive_grading_witness(const int_matrix& a);

/// Same witness with denominators cleared, so y . a_j >= 1 with y integer.
std::optional<ivec> positive_grading_witness_int(const int_matrix& a);

} // namespace mcx::intlin
