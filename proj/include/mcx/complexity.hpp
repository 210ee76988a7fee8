#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mcx/bases.hpp"
#include "mcx/matrix.hpp"

namespace mcx::complexity {

struct simple_graph {
    std::size_t vertex_count = 0;
    std::set<std::pair<std::size_t, std::size_t>> edges;  // i < j, no loops
};

/// Graph on the columns of M: {j,k} is an edge iff some row is nonzero in
/// both positions.
simple_graph matrix_graph(const int_matrix& m);

enum class td_convention { forest, single_tree };

/// Exact tree-depth by recursive vertex elimination with memoization on
/// vertex subsets; refuses graphs above vertex_cap.
std::size_t tree_depth(const simple_graph& g, td_convention conv,
                       std::size_t vertex_cap = 25);

struct rooted_tree {
    std::size_t vertex_count = 0;
    std::size_t root = 0;
    std::vector<std::optional<std::size_t>> parent;  // root has none
};

/// The explicit valid tree for the graph of a lifted matrix transposed:
/// root c_1, path c_1..c_n, and a path b^i_1..b^i_m hanging off c_n per
/// copy. Vertices are ordered like the rows of lawrence_lift(A, r):
/// copies of A first, identity block last. Height is n + m.
rooted_tree lawrence_valid_tree(std::size_t m, std::size_t n, std::size_t r);

std::size_t tree_height(const rooted_tree& t);

/// true iff every edge of g joins a vertex to one of its tree ancestors
bool tree_valid_for(const rooted_tree& t, const simple_graph& g);

/// (2a+1)^(2^t - 1), exact; the Graver 1-norm bound in terms of the
/// tree-depth t of the transpose graph.
bigint graver_norm_bound(const bigint& a, std::size_t t);

/// (2a+1)^(4^n - 1) + 1, exact; bounds both complexities.
bigint complexity_bound(const bigint& a, std::size_t n);

/// Same, but returns the sharp value 2 when a == 0.
bigint complexity_bound_sharp(const bigint& a, std::size_t n);

/// Subset of the rows forming a row-space basis (kernel unchanged).
int_matrix remove_redundant_rows(const int_matrix& a);

struct complexity_report {
    std::string matrix_digest;
    std::vector<std::size_t> r_values;
    std::vector<std::size_t> markov_max_type;                 // empty if not computed
    std::optional<std::vector<std::size_t>> graver_max_type;
    std::size_t running_max = 0;       // certified lower bound only
    std::size_t td_forest = 0;         // tree-depth of the transpose graph
    std::size_t td_single_tree = 0;
    bigint bound_td;                   // complexity bound via the valid-tree height
    bigint bound_closed_form;          // (2a+1)^(4^n-1) + 1
};

/// Max tableau type of a minimal Markov basis of each lifting r = 2..r_max.
/// running_max is a lower bound on the Markov complexity; the bounds are
/// upper bounds. with_graver additionally records Graver max types.
complexity_report markov_complexity_upto(const int_matrix& a, std::size_t r_max,
                                         const bases::limits& lim = {},
                                         bool with_graver = false);

/// Per-r max tableau type over the Graver basis of each lifting.
std::vector<std::size_t> graver_complexity_upto(const int_matrix& a, std::size_t r_max,
                                                const bases::limits& lim = {});

/// The pinned machine-readable schema; big integers as decimal strings.
std::string report_to_json(const complexity_report& rep);

} // namespace mcx::complexity
