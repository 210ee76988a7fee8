#include "mcx/bases.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mcx/errors.hpp"
#include "mcx/intlin.hpp"

namespace mcx::bases {

const char* basis_kind_name(basis_kind k) {
    switch (k) {
        case basis_kind::graver: return "graver";
        case basis_kind::markov_minimal: return "markov-minimal";
        case basis_kind::markov: return "markov";
        case basis_kind::indispensable: return "indispensable";
    }
    return "?";
}

bool basis_set::contains(const ivec& v) const {
    return std::binary_search(elements.begin(), elements.end(), v, lex_less);
}

bool conformal_leq(const ivec& v, const ivec& u) {
    if (v.size() != u.size())
        throw std::invalid_argument("conformal_leq: length mismatch");
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] > 0 && u[i] < v[i])
            return false;
        if (v[i] < 0 && u[i] > v[i])
            return false;
    }
    return true;
}

bool is_semiconformal_sum(const ivec& u, const ivec& v, const ivec& w) {
    if (u.size() != v.size() || u.size() != w.size())
        throw std::invalid_argument("is_semiconformal_sum: length mismatch");
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] != v[i] + w[i])
            return false;
        if (v[i] > 0 && w[i] < 0)
            return false;
        if (w[i] < 0 && v[i] > 0)
            return false;
    }
    return true;
}

namespace {

struct lex_cmp {
    bool operator()(const ivec& a, const ivec& b) const { return lex_less(a, b); }
};

ivec require_int_witness(const int_matrix& a) {
    auto y = intlin::positive_grading_witness_int(a);
    if (!y)
        throw unsupported_input_error("matrix is not positively graded");
    return *y;
}

// Depth-first enumeration of { t >= 0 : A t = degree }, pruned by the
// integer positivity witness y (y . a_j >= 1): the remaining columns must
// consume exactly y . residual. Members are visited in lexicographic
// order; the visitor returns false to stop early.
class fiber_dfs {
public:
    fiber_dfs(const int_matrix& a, const ivec& degree, const ivec& y,
              std::size_t cap, std::function<bool(const ivec&)> visit)
        : a_(a), n_(a.cols()), m_(a.rows()), cap_(cap), visit_(std::move(visit)) {
        ya_.resize(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            bigint s = 0;
            for (std::size_t i = 0; i < m_; ++i)
                s += y[i] * a(i, j);
            if (s < 1)
                throw std::logic_error("fiber: witness not positive on a column");
            ya_[j] = std::move(s);
        }
        budget_ = 0;
        for (std::size_t i = 0; i < m_; ++i)
            budget_ += y[i] * degree[i];
        residual_ = degree;
        closing_.assign(n_, {});
        nonneg_ = true;
        for (std::size_t i = 0; i < m_; ++i) {
            std::size_t last = n_;
            for (std::size_t j = 0; j < n_; ++j) {
                if (a(i, j) != 0)
                    last = j;
                if (a(i, j) < 0)
                    nonneg_ = false;
            }
            if (last == n_)
                zero_rows_.push_back(i);  // residual must already be zero
            else
                closing_[last].push_back(i);
        }
        t_.assign(n_, bigint(0));
    }

    // true iff the enumeration ran to completion
    bool run() {
        if (budget_ < 0)
            return true;
        for (std::size_t i : zero_rows_)
            if (residual_[i] != 0)
                return true;
        rec(0);
        return !stopped_;
    }

private:
    void rec(std::size_t j) {
        if (stopped_)
            return;
        if (j == n_) {
            // all rows closed at earlier levels, so residual is zero
            if (++count_ > cap_)
                throw resource_limit_error("fiber member cap exceeded");
            if (!visit_(t_))
                stopped_ = true;
            return;
        }
        ivec saved_residual = residual_;
        bigint saved_budget = budget_;
        for (bigint val = 0; budget_ >= 0; ++val) {
            t_[j] = val;
            bool ok = true;
            if (nonneg_) {
                for (std::size_t i = 0; i < m_ && ok; ++i)
                    if (residual_[i] < 0)
                        ok = false;
                if (!ok)
                    break;  // nonnegative columns cannot recover
            }
            for (std::size_t i : closing_[j])
                if (residual_[i] != 0) {
                    ok = false;
                    break;
                }
            if (ok)
                rec(j + 1);
            if (stopped_)
                break;
            for (std::size_t i = 0; i < m_; ++i)
                residual_[i] -= a_(i, j);
            budget_ -= ya_[j];
        }
        t_[j] = 0;
        residual_ = std::move(saved_residual);
        budget_ = std::move(saved_budget);
    }

    const int_matrix& a_;
    std::size_t n_, m_, cap_;
    std::function<bool(const ivec&)> visit_;
    std::vector<bigint> ya_;
    ivec residual_, t_;
    bigint budget_;
    std::vector<std::vector<std::size_t>> closing_;
    std::vector<std::size_t> zero_rows_;
    bool nonneg_ = true, stopped_ = false;
    std::size_t count_ = 0;
};

fiber enumerate_fiber(const int_matrix& a, const ivec& degree, const ivec& y,
                      const limits& lim) {
    fiber f;
    f.matrix = a;
    f.degree = degree;
    fiber_dfs dfs(a, degree, y, lim.fiber_cap, [&](const ivec& t) {
        f.members.push_back(t);
        return true;
    });
    dfs.run();
    return f;
}

} // namespace

fiber fiber_of(const int_matrix& a, const ivec& u, const limits& lim) {
    if (u.size() != a.cols())
        throw std::invalid_argument("fiber_of: length mismatch");
    if (!vec_is_zero(a.apply(u)))
        throw std::domain_error("fiber_of: vector is not in Ker_Z(A)");
    return fiber_by_degree(a, a.apply(vec_pos_part(u)), lim);
}

fiber fiber_by_degree(const int_matrix& a, const ivec& degree, const limits& lim) {
    if (degree.size() != a.rows())
        throw std::invalid_argument("fiber_by_degree: degree length mismatch");
    return enumerate_fiber(a, degree, require_int_witness(a), lim);
}

namespace {

// completion pool entry with support-mask prefilters over the first 64
// coordinates
struct centry {
    ivec v;
    std::uint64_t pmask = 0, nmask = 0;
    bigint norm;
};

centry make_entry(ivec v) {
    centry e;
    e.pmask = e.nmask = 0;
    e.norm = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] > 0) {
            if (i < 64)
                e.pmask |= std::uint64_t(1) << i;
            e.norm += v[i];
        } else if (v[i] < 0) {
            if (i < 64)
                e.nmask |= std::uint64_t(1) << i;
            e.norm -= v[i];
        }
    }
    e.v = std::move(v);
    return e;
}

// g conformal-<= s, assuming equal lengths
bool reduces(const centry& g, const centry& s) {
    if ((g.pmask & ~s.pmask) != 0 || (g.nmask & ~s.nmask) != 0)
        return false;
    for (std::size_t i = 0; i < g.v.size(); ++i) {
        if (g.v[i] > 0 && s.v[i] < g.v[i])
            return false;
        if (g.v[i] < 0 && s.v[i] > g.v[i])
            return false;
    }
    return true;
}

class completion_pool {
public:
    explicit completion_pool(std::size_t cap) : cap_(cap) {}

    std::size_t size() const { return pool_.size(); }
    const centry& operator[](std::size_t i) const { return pool_[i]; }

    void insert(centry e) {
        if (pool_.size() >= cap_)
            throw resource_limit_error("graver element cap exceeded");
        auto it = std::lower_bound(by_norm_.begin(), by_norm_.end(), e.norm,
                                   [&](std::size_t idx, const bigint& nrm) {
                                       return pool_[idx].norm < nrm;
                                   });
        by_norm_.insert(it, pool_.size());
        pool_.push_back(std::move(e));
    }

    // subtract conformally smaller members until none applies; empty vector
    // result means s reduced to zero
    centry normal_form(centry s) const {
        for (;;) {
            if (s.norm == 0)
                return s;
            bool hit = false;
            for (std::size_t idx : by_norm_) {
                const centry& g = pool_[idx];
                if (g.norm > s.norm)
                    break;
                if (reduces(g, s)) {
                    for (std::size_t i = 0; i < s.v.size(); ++i)
                        s.v[i] -= g.v[i];
                    s = make_entry(std::move(s.v));
                    hit = true;
                    break;
                }
            }
            if (!hit)
                return s;
        }
    }

    // indices with strictly smaller norm that are conformally below u
    bool has_proper_part(const centry& u) const {
        for (std::size_t idx : by_norm_) {
            const centry& g = pool_[idx];
            if (g.norm >= u.norm)
                break;
            if (reduces(g, u))
                return true;
        }
        return false;
    }

private:
    std::size_t cap_;
    std::vector<centry> pool_;
    std::vector<std::size_t> by_norm_;
};

basis_set finalize_basis(const int_matrix& a, basis_kind kind, std::vector<ivec> elems) {
    for (auto& v : elems)
        v = sign_normalized(std::move(v));
    std::sort(elems.begin(), elems.end(), lex_less);
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return {a, kind, std::move(elems)};
}

} // namespace

basis_set graver(const int_matrix& a, const limits& lim) {
    auto kb = intlin::kernel_basis(a);
    if (kb.dim() == 0)
        return {a, basis_kind::graver, {}};

    completion_pool pool(lim.graver_cap);
    for (const auto& row : kb.rows) {
        pool.insert(make_entry(row));
        pool.insert(make_entry(vec_neg(row)));
    }

    // process elements in insertion order, pairing each against all
    // earlier ones; new irreducible remainders join the pool
    for (std::size_t i = 0; i < pool.size(); ++i) {
        for (std::size_t k = 0; k < i; ++k) {
            ivec s = vec_add(pool[i].v, pool[k].v);
            centry e = make_entry(std::move(s));
            if (e.norm == 0)
                continue;
            e = pool.normal_form(std::move(e));
            if (e.norm != 0)
                pool.insert(std::move(e));
        }
    }

    std::vector<ivec> minimal;
    for (std::size_t i = 0; i < pool.size(); ++i)
        if (!pool.has_proper_part(pool[i]))
            minimal.push_back(pool[i].v);
    return finalize_basis(a, basis_kind::graver, std::move(minimal));
}

basis_set graver_bruteforce(const int_matrix& a, const bigint& norm_cap) {
    const std::size_t n = a.cols();
    auto h = intlin::hnf(a).h;
    std::vector<std::size_t> pivot_col;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        std::size_t c = 0;
        while (c < n && h(i, c) == 0)
            ++c;
        if (c < n)
            pivot_col.push_back(c);
    }
    const std::size_t d = pivot_col.size();
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivot_col)
        is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c])
            free_cols.push_back(c);

    // enumerate free coordinates with bounded 1-norm; pivot coordinates
    // are determined over Q by back-substitution and kept when integral
    std::vector<ivec> points;
    ivec u(n);
    auto back_substitute = [&]() -> bool {
        for (std::size_t ii = d; ii-- > 0;) {
            std::size_t pc = pivot_col[ii];
            bigint s = 0;
            for (std::size_t c = pc + 1; c < n; ++c)
                s += h(ii, c) * u[c];
            if (s % h(ii, pc) != 0)
                return false;
            u[pc] = -s / h(ii, pc);
        }
        return true;
    };
    auto rec = [&](auto&& self, std::size_t fi, const bigint& left) -> void {
        if (fi == free_cols.size()) {
            if (back_substitute()) {
                ivec cand = u;
                if (!vec_is_zero(cand) && vec_norm1(cand) <= norm_cap)
                    points.push_back(std::move(cand));
            }
            return;
        }
        std::size_t c = free_cols[fi];
        for (bigint v = -left; v <= left; ++v) {
            u[c] = v;
            self(self, fi + 1, left - abs(v));
        }
        u[c] = 0;
    };
    rec(rec, 0, norm_cap);

    // keep points with no proper conformal part among the enumerated ones
    std::sort(points.begin(), points.end(), [](const ivec& x, const ivec& y) {
        bigint nx = vec_norm1(x), ny = vec_norm1(y);
        if (nx != ny)
            return nx < ny;
        return lex_less(x, y);
    });
    std::vector<ivec> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool minimal = true;
        bigint ni = vec_norm1(points[i]);
        for (std::size_t k = 0; k < i && minimal; ++k) {
            if (vec_norm1(points[k]) >= ni)
                break;
            if (conformal_leq(points[k], points[i]))
                minimal = false;
        }
        if (minimal)
            out.push_back(points[i]);
    }
    return finalize_basis(a, basis_kind::graver, std::move(out));
}

namespace {

struct dsu {
    std::vector<std::size_t> parent;
    explicit dsu(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t(0));
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    bool merge(std::size_t x, std::size_t y) {
        x = find(x); y = find(y);
        if (x == y)
            return false;
        parent[x] = y;
        return true;
    }
};

// t - s >= 0 componentwise
bool move_applies(const ivec& t, const ivec& s) {
    for (std::size_t i = 0; i < t.size(); ++i)
        if (s[i] > 0 && t[i] < s[i])
            return false;
    return true;
}

// connect fiber members by the given moves (used with both signs)
void apply_moves(dsu& comp, const std::vector<ivec>& members,
                 const std::map<ivec, std::size_t, lex_cmp>& index,
                 const std::vector<ivec>& moves) {
    for (const auto& s : moves) {
        for (std::size_t ti = 0; ti < members.size(); ++ti) {
            if (!move_applies(members[ti], s))
                continue;
            auto it = index.find(vec_sub(members[ti], s));
            if (it == index.end())
                throw std::logic_error("fiber graph: move target not in fiber");
            comp.merge(ti, it->second);
        }
    }
}

std::map<ivec, std::size_t, lex_cmp> index_members(const std::vector<ivec>& members) {
    std::map<ivec, std::size_t, lex_cmp> index;
    for (std::size_t i = 0; i < members.size(); ++i)
        index.emplace(members[i], i);
    return index;
}

bool all_connected(dsu& comp, std::size_t n) {
    if (n == 0)
        return true;
    std::size_t root = comp.find(0);
    for (std::size_t i = 1; i < n; ++i)
        if (comp.find(i) != root)
            return false;
    return true;
}

} // namespace

basis_set minimal_markov(const int_matrix& a, const limits& lim) {
    ivec y = require_int_witness(a);
    basis_set gb = graver(a, lim);
    if (gb.elements.empty())
        return {a, basis_kind::markov_minimal, {}};

    // group Graver elements by degree b = A u+, then process degrees by
    // increasing y-value; this refines the grading partial order
    std::map<ivec, std::vector<std::size_t>, lex_cmp> groups;
    for (std::size_t i = 0; i < gb.elements.size(); ++i)
        groups[a.apply(vec_pos_part(gb.elements[i]))].push_back(i);

    std::vector<std::pair<bigint, const ivec*>> order;
    for (const auto& [deg, idxs] : groups) {
        bigint yb = 0;
        for (std::size_t i = 0; i < y.size(); ++i)
            yb += y[i] * deg[i];
        order.emplace_back(std::move(yb), &deg);
    }
    std::sort(order.begin(), order.end(), [](const auto& x, const auto& yv) {
        if (x.first != yv.first)
            return x.first < yv.first;
        return lex_less(*x.second, *yv.second);
    });

    std::vector<ivec> selected;
    for (const auto& [yb, degp] : order) {
        const ivec& deg = *degp;
        fiber f = enumerate_fiber(a, deg, y, lim);
        auto index = index_members(f.members);
        dsu comp(f.members.size());
        // moves selected at earlier degrees act inside this fiber; a move
        // of this very degree only ever joins its own u+ and u-
        apply_moves(comp, f.members, index, selected);
        for (std::size_t gi : groups.at(deg)) {
            const ivec& u = gb.elements[gi];
            auto ip = index.find(vec_pos_part(u));
            auto in = index.find(vec_neg_part(u));
            if (ip == index.end() || in == index.end())
                throw std::logic_error("minimal_markov: u+ or u- missing from its fiber");
            if (comp.merge(ip->second, in->second))
                selected.push_back(u);
        }
        if (!all_connected(comp, f.members.size()))
            throw std::logic_error("minimal_markov: fiber not connected by Graver moves");
    }
    return finalize_basis(a, basis_kind::markov_minimal, std::move(selected));
}

bool is_markov_basis(const int_matrix& a, const basis_set& s, const limits& lim) {
    return is_markov_basis(a, s, graver(a, lim), lim);
}

bool is_markov_basis(const int_matrix& a, const basis_set& s,
                     const basis_set& graver_of_a, const limits& lim) {
    ivec y = require_int_witness(a);
    for (const auto& v : s.elements) {
        if (v.size() != a.cols() || vec_is_zero(v))
            throw std::domain_error("is_markov_basis: element is zero or has wrong length");
        if (!vec_is_zero(a.apply(v)))
            throw std::domain_error("is_markov_basis: element is not in Ker_Z(A)");
    }
    std::map<ivec, bool, lex_cmp> degrees;
    for (const auto& u : graver_of_a.elements)
        degrees.emplace(a.apply(vec_pos_part(u)), true);

    std::vector<ivec> moves;
    for (const auto& v : s.elements) {
        moves.push_back(v);
        moves.push_back(vec_neg(v));
    }
    for (const auto& [deg, unused] : degrees) {
        (void)unused;
        fiber f = enumerate_fiber(a, deg, y, lim);
        auto index = index_members(f.members);
        dsu comp(f.members.size());
        apply_moves(comp, f.members, index, moves);
        if (!all_connected(comp, f.members.size()))
            return false;
    }
    return true;
}

namespace {

bool indispensable_with_witness(const int_matrix& a, const ivec& y, const ivec& u,
                                const limits& lim) {
    ivec up = vec_pos_part(u), un = vec_neg_part(u);
    bool foreign = false;
    fiber_dfs dfs(a, a.apply(up), y, lim.fiber_cap, [&](const ivec& t) {
        if (t != up && t != un) {
            foreign = true;
            return false;
        }
        return true;
    });
    dfs.run();
    return !foreign;
}

} // namespace

bool is_indispensable(const int_matrix& a, const ivec& u, const limits& lim) {
    if (u.size() != a.cols())
        throw std::invalid_argument("is_indispensable: length mismatch");
    if (vec_is_zero(u))
        throw std::invalid_argument("is_indispensable: zero vector");
    if (!vec_is_zero(a.apply(u)))
        throw std::domain_error("is_indispensable: vector is not in Ker_Z(A)");
    return indispensable_with_witness(a, require_int_witness(a), u, lim);
}

basis_set indispensable_set(const int_matrix& a, const limits& lim) {
    ivec y = require_int_witness(a);
    basis_set gb = graver(a, lim);
    std::vector<ivec> keep;
    for (const auto& u : gb.elements)
        if (indispensable_with_witness(a, y, u, lim))
            keep.push_back(u);
    return finalize_basis(a, basis_kind::indispensable, std::move(keep));
}

std::string format_basis(const basis_set& b) {
    std::ostringstream out;
    out << "# kind: " << basis_kind_name(b.kind) << '\n';
    out << "# matrix: " << matrix_digest(b.matrix) << '\n';
    out << "# count: " << b.elements.size() << '\n';
    for (const auto& v : b.elements)
        out << format_ivec_csv(v) << '\n';
    return out.str();
}

basis_set parse_basis(std::istream& in, const int_matrix& a) {
    basis_set b;
    b.matrix = a;
    b.kind = basis_kind::markov;
    std::string line;
    std::vector<ivec> elems;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            std::string comment = line.substr(hash + 1);
            auto pos = comment.find("kind:");
            if (pos != std::string::npos) {
                std::istringstream ks(comment.substr(pos + 5));
                std::string kind;
                ks >> kind;
                for (basis_kind k : {basis_kind::graver, basis_kind::markov_minimal,
                                     basis_kind::markov, basis_kind::indispensable})
                    if (kind == basis_kind_name(k))
                        b.kind = k;
            }
            line.erase(hash);
        }
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        ivec v = parse_ivec_csv(line);
        if (v.size() != a.cols())
            throw std::invalid_argument("basis file: vector length != matrix columns");
        elems.push_back(std::move(v));
    }
    auto fin = finalize_basis(a, b.kind, std::move(elems));
    return fin;
}

} // namespace mcx::bases
