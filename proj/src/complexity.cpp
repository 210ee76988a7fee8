#include "mcx/complexity.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mcx/errors.hpp"
#include "mcx/intlin.hpp"
#include "mcx/lawrence.hpp"

namespace mcx::complexity {

simple_graph matrix_graph(const int_matrix& m) {
    simple_graph g;
    g.vertex_count = m.cols();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<std::size_t> support;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0)
                support.push_back(j);
        for (std::size_t x = 0; x < support.size(); ++x)
            for (std::size_t y = x + 1; y < support.size(); ++y)
                g.edges.emplace(support[x], support[y]);
    }
    return g;
}

namespace {

using mask_t = std::uint32_t;

class td_solver {
public:
    explicit td_solver(const simple_graph& g) : n_(g.vertex_count), adj_(g.vertex_count) {
        for (auto [i, j] : g.edges) {
            adj_[i] |= mask_t(1) << j;
            adj_[j] |= mask_t(1) << i;
        }
    }

    // forest convention on the induced subgraph
    std::size_t forest(mask_t sub) {
        if (sub == 0)
            return 0;
        auto it = memo_.find(sub);
        if (it != memo_.end())
            return it->second;
        std::size_t result;
        mask_t comp = component_of(sub, lowest(sub));
        if (comp != sub) {
            result = std::max(forest(comp), forest(sub & ~comp));
        } else {
            result = n_ + 1;
            for (mask_t rest = sub; rest;) {
                mask_t v = rest & (~rest + 1);
                rest &= ~v;
                result = std::min(result, 1 + forest(sub & ~v));
            }
        }
        memo_.emplace(sub, result);
        return result;
    }

    std::size_t single_tree(mask_t sub) {
        // one rooted tree must span everything, even across components
        std::size_t best = n_ + 1;
        for (mask_t rest = sub; rest;) {
            mask_t v = rest & (~rest + 1);
            rest &= ~v;
            best = std::min(best, 1 + forest(sub & ~v));
        }
        return best;
    }

    mask_t full() const { return n_ == 32 ? ~mask_t(0) : (mask_t(1) << n_) - 1; }

private:
    static std::size_t lowest(mask_t m) {
        std::size_t i = 0;
        while (!(m & (mask_t(1) << i)))
            ++i;
        return i;
    }

    mask_t component_of(mask_t sub, std::size_t start) {
        mask_t comp = mask_t(1) << start, frontier = comp;
        while (frontier) {
            mask_t next = 0;
            for (mask_t rest = frontier; rest;) {
                mask_t v = rest & (~rest + 1);
                rest &= ~v;
                std::size_t idx = lowest(v);
                next |= adj_[idx] & sub & ~comp;
            }
            comp |= next;
            frontier = next;
        }
        return comp;
    }

    std::size_t n_;
    std::vector<mask_t> adj_;
    std::map<mask_t, std::size_t> memo_;
};

} // namespace

std::size_t tree_depth(const simple_graph& g, td_convention conv, std::size_t vertex_cap) {
    if (g.vertex_count < 1)
        throw std::invalid_argument("tree_depth: need at least one vertex");
    if (g.vertex_count > std::min<std::size_t>(vertex_cap, 32))
        throw resource_limit_error("tree_depth: vertex cap exceeded");
    td_solver solver(g);
    if (conv == td_convention::forest)
        return solver.forest(solver.full());
    return solver.single_tree(solver.full());
}

rooted_tree lawrence_valid_tree(std::size_t m, std::size_t n, std::size_t r) {
    if (m < 1 || n < 1 || r < 2)
        throw std::invalid_argument("lawrence_valid_tree: need m,n >= 1 and r >= 2");
    rooted_tree t;
    t.vertex_count = r * m + n;
    t.parent.assign(t.vertex_count, std::nullopt);
    // vertex r*m + k is c_{k+1}; vertex i*m + j is b^{i+1}_{j+1}
    t.root = r * m;
    for (std::size_t k = 1; k < n; ++k)
        t.parent[r * m + k] = r * m + k - 1;
    for (std::size_t i = 0; i < r; ++i) {
        t.parent[i * m] = r * m + n - 1;  // {c_n, b^i_1}
        for (std::size_t j = 1; j < m; ++j)
            t.parent[i * m + j] = i * m + j - 1;
    }
    return t;
}

std::size_t tree_height(const rooted_tree& t) {
    std::size_t best = 0;
    for (std::size_t v = 0; v < t.vertex_count; ++v) {
        std::size_t depth = 1, cur = v;
        while (t.parent[cur]) {
            cur = *t.parent[cur];
            ++depth;
        }
        best = std::max(best, depth);
    }
    return best;
}

bool tree_valid_for(const rooted_tree& t, const simple_graph& g) {
    if (t.vertex_count != g.vertex_count)
        return false;
    auto is_ancestor = [&](std::size_t anc, std::size_t v) {
        while (true) {
            if (v == anc)
                return true;
            if (!t.parent[v])
                return false;
            v = *t.parent[v];
        }
    };
    for (auto [i, j] : g.edges)
        if (!is_ancestor(i, j) && !is_ancestor(j, i))
            return false;
    return true;
}

namespace {

// refuse bound values whose binary size would be absurd to materialize
const bigint max_bound_bits = bigint(1) << 24;

bigint pow_checked(const bigint& base, const bigint& exponent) {
    if (base == 0)
        return exponent == 0 ? 1 : 0;
    if (base == 1)
        return 1;
    bigint bits = exponent * (msb(base) + 1);
    if (bits > max_bound_bits)
        throw resource_limit_error("bound value too large to materialize");
    bigint result = 1, b = base, e = exponent;
    while (e > 0) {
        if ((e & 1) != 0)
            result *= b;
        e >>= 1;
        if (e > 0)
            b *= b;
    }
    return result;
}

} // namespace

bigint graver_norm_bound(const bigint& a, std::size_t t) {
    if (a < 0)
        throw std::invalid_argument("graver_norm_bound: a must be >= 0");
    if (t < 1)
        throw std::invalid_argument("graver_norm_bound: t must be >= 1");
    bigint exponent = (bigint(1) << t) - 1;
    return pow_checked(2 * a + 1, exponent);
}

bigint complexity_bound(const bigint& a, std::size_t n) {
    if (a < 0)
        throw std::invalid_argument("complexity_bound: a must be >= 0");
    if (n < 1)
        throw std::invalid_argument("complexity_bound: n must be >= 1");
    bigint exponent = pow_checked(4, bigint(n)) - 1;
    return pow_checked(2 * a + 1, exponent) + 1;
}

bigint complexity_bound_sharp(const bigint& a, std::size_t n) {
    if (a == 0) {
        if (n < 1)
            throw std::invalid_argument("complexity_bound_sharp: n must be >= 1");
        return 2;
    }
    return complexity_bound(a, n);
}

int_matrix remove_redundant_rows(const int_matrix& a) {
    std::vector<ivec> kept;
    std::size_t current_rank = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        kept.push_back(a.row(i));
        std::size_t r = intlin::rank(int_matrix::from_rows(kept));
        if (r == current_rank)
            kept.pop_back();
        else
            current_rank = r;
    }
    if (kept.empty())
        kept.push_back(ivec(a.cols()));  // keep one zero row for shape sanity
    return int_matrix::from_rows(kept);
}

namespace {

std::size_t max_type(const bases::basis_set& b, std::size_t r, std::size_t n) {
    std::size_t best = 0;
    for (const auto& u : b.elements)
        best = std::max(best, lawrence::tableau_type(lawrence::tableau_from_flat(u, r, n)));
    return best;
}

complexity_report build_report(const int_matrix& a, std::size_t r_max,
                               const bases::limits& lim, bool with_markov,
                               bool with_graver) {
    if (r_max < 2)
        throw std::invalid_argument("complexity report: r_max must be >= 2");
    complexity_report rep;
    rep.matrix_digest = matrix_digest(a);

    int_matrix pruned = remove_redundant_rows(a);
    const std::size_t n = pruned.cols(), mrows = pruned.rows();
    bigint amax = pruned.max_abs_entry();
    simple_graph gt = matrix_graph(pruned.transposed());
    rep.td_forest = tree_depth(gt, td_convention::forest);
    rep.td_single_tree = tree_depth(gt, td_convention::single_tree);
    // the explicit valid tree of every lifting has height n + m, so the
    // norm bound with that exponent caps the type for every r
    rep.bound_td = amax == 0 ? bigint(2) : graver_norm_bound(amax, n + mrows) + 1;
    rep.bound_closed_form = complexity_bound(amax, n);

    if (with_graver)
        rep.graver_max_type.emplace();
    for (std::size_t r = 2; r <= r_max; ++r) {
        rep.r_values.push_back(r);
        int_matrix lift = lawrence::lawrence_lift(pruned, r);
        if (with_markov) {
            auto mm = bases::minimal_markov(lift, lim);
            std::size_t ty = max_type(mm, r, n);
            rep.markov_max_type.push_back(ty);
            rep.running_max = std::max(rep.running_max, ty);
        }
        if (with_graver) {
            auto gv = bases::graver(lift, lim);
            std::size_t ty = max_type(gv, r, n);
            rep.graver_max_type->push_back(ty);
            rep.running_max = std::max(rep.running_max, ty);
        }
    }
    return rep;
}

} // namespace

complexity_report markov_complexity_upto(const int_matrix& a, std::size_t r_max,
                                         const bases::limits& lim, bool with_graver) {
    return build_report(a, r_max, lim, true, with_graver);
}

std::vector<std::size_t> graver_complexity_upto(const int_matrix& a, std::size_t r_max,
                                                const bases::limits& lim) {
    return *build_report(a, r_max, lim, false, true).graver_max_type;
}

std::string report_to_json(const complexity_report& rep) {
    std::ostringstream out;
    auto list = [&](const std::vector<std::size_t>& v) {
        out << '[';
        for (std::size_t i = 0; i < v.size(); ++i)
            out << (i ? "," : "") << v[i];
        out << ']';
    };
    out << "{\"matrix_digest\":\"" << rep.matrix_digest << "\",\"r\":";
    list(rep.r_values);
    out << ",\"markov_max_type\":";
    list(rep.markov_max_type);
    out << ",\"graver_max_type\":";
    if (rep.graver_max_type)
        list(*rep.graver_max_type);
    else
        out << "null";
    out << ",\"lower_bound\":" << rep.running_max;
    out << ",\"upper_bound_closed_form\":\"" << rep.bound_closed_form.str() << "\"";
    out << ",\"tree_depth\":{\"forest\":" << rep.td_forest
        << ",\"single_tree\":" << rep.td_single_tree << "}}";
    return out.str();
}

} // namespace mcx::complexity
