#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mcx/matrix.hpp"

namespace mcx::bases {

struct limits {
    std::size_t fiber_cap = 10'000'000;   // max members per enumerated fiber
    std::size_t graver_cap = 1'000'000;   // max elements during completion
};

enum class basis_kind { graver, markov_minimal, markov, indispensable };

const char* basis_kind_name(basis_kind k);

/// Finite set of kernel vectors, sign-normalized (first nonzero entry
/// positive), sorted lexicographically, no duplicates.
struct basis_set {
    int_matrix matrix;
    basis_kind kind = basis_kind::markov;
    std::vector<ivec> elements;

    std::size_t size() const { return elements.size(); }
    bool contains(const ivec& v) const;
};

/// All t in N^n with A*t = degree; finite under positive grading.
struct fiber {
    int_matrix matrix;
    ivec degree;
    std::vector<ivec> members;  // lexicographically ascending
};

/// v+ <= u+ and v- <= u- coordinate-wise (v is a conformal part of u).
bool conformal_leq(const ivec& v, const ivec& u);

/// u == v + w with v_i > 0 => w_i >= 0 and w_i < 0 => v_i <= 0.
bool is_semiconformal_sum(const ivec& u, const ivec& v, const ivec& w);

/// Fiber of u (requires u in Ker_Z(A)): all t >= 0 with A*t = A*u+.
fiber fiber_of(const int_matrix& a, const ivec& u, const limits& lim = {});
fiber fiber_by_degree(const int_matrix& a, const ivec& degree, const limits& lim = {});

/// Graver basis: the conformally minimal nonzero kernel elements, computed
/// by completion from the kernel basis and its negations.
basis_set graver(const int_matrix& a, const limits& lim = {});

/// Independent oracle: enumerate all nonzero kernel vectors of 1-norm at
/// most norm_cap and keep those with no proper conformal decomposition.
/// Equals graver(a) whenever norm_cap covers the largest Graver element.
basis_set graver_bruteforce(const int_matrix& a, const bigint& norm_cap);

/// One minimal Markov basis, built from the Graver basis degree by degree
/// via fiber connectivity. Requires positive grading.
basis_set minimal_markov(const int_matrix& a, const limits& lim = {});

/// true iff the moves of s connect every fiber whose degree occurs in the
/// Graver basis. Requires positive grading and s inside Ker_Z(a).
bool is_markov_basis(const int_matrix& a, const basis_set& s, const limits& lim = {});
/// Variant reusing a precomputed graver(a).
bool is_markov_basis(const int_matrix& a, const basis_set& s,
                     const basis_set& graver_of_a, const limits& lim = {});

/// true iff the fiber of u is exactly {u+, u-}; enumeration stops at the
/// first foreign member.
bool is_indispensable(const int_matrix& a, const ivec& u, const limits& lim = {});

/// Elements lying in every minimal Markov basis: the Graver elements with
/// two-element fibers.
basis_set indispensable_set(const int_matrix& a, const limits& lim = {});

// basis file format: '#' header comments carrying kind and matrix digest,
// then one comma-separated vector per line
std::string format_basis(const basis_set& b);
basis_set parse_basis(std::istream& in, const int_matrix& a);

} // namespace mcx::bases
