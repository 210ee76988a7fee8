#include "mcx/intlin.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace mcx::intlin {

xgcd_result xgcd(const bigint& a, const bigint& b) {
    // iterative extended Euclid
    bigint r0 = a, r1 = b;
    bigint x0 = 1, x1 = 0, y0 = 0, y1 = 1;
    while (r1 != 0) {
        bigint q = r0 / r1;  // truncated division is fine here
        bigint r2 = r0 - q * r1;
        bigint x2 = x0 - q * x1;
        bigint y2 = y0 - q * y1;
        r0 = std::move(r1); r1 = std::move(r2);
        x0 = std::move(x1); x1 = std::move(x2);
        y0 = std::move(y1); y1 = std::move(y2);
    }
    if (r0 < 0) {
        r0 = -r0; x0 = -x0; y0 = -y0;
    }
    return {std::move(r0), std::move(x0), std::move(y0)};
}

bigint floor_div(const bigint& a, const bigint& b) {
    bigint q = a / b;
    if (q * b != a && ((a < 0) != (b < 0)))
        --q;
    return q;
}

namespace {

void swap_rows(int_matrix& m, std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < m.cols(); ++c)
        std::swap(m(i, c), m(j, c));
}

void negate_row(int_matrix& m, std::size_t i) {
    for (std::size_t c = 0; c < m.cols(); ++c)
        m(i, c) = -m(i, c);
}

// row_i -= q * row_k
void sub_mult_row(int_matrix& m, std::size_t i, std::size_t k, const bigint& q) {
    for (std::size_t c = 0; c < m.cols(); ++c)
        m(i, c) -= q * m(k, c);
}

// (row_r, row_i) <- (x*row_r + y*row_i, ar*row_i - ai*row_r)
// where ar = h(r,c)/g, ai = h(i,c)/g for the pivots being combined
void gcd_combine_rows(int_matrix& m, std::size_t r, std::size_t i,
                      const bigint& x, const bigint& y,
                      const bigint& ar, const bigint& ai) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
        bigint mr = m(r, c), mi = m(i, c);
        m(r, c) = x * mr + y * mi;
        m(i, c) = ar * mi - ai * mr;
    }
}

} // namespace

hnf_result hnf(const int_matrix& m) {
    const std::size_t nrows = m.rows(), ncols = m.cols();
    int_matrix h = m;
    int_matrix u = int_matrix::identity(nrows);

    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
        std::size_t p = r;
        while (p < nrows && h(p, c) == 0)
            ++p;
        if (p == nrows)
            continue;
        if (p != r) {
            swap_rows(h, r, p);
            swap_rows(u, r, p);
        }
        for (std::size_t i = r + 1; i < nrows; ++i) {
            if (h(i, c) == 0)
                continue;
            auto [g, x, y] = xgcd(h(r, c), h(i, c));
            bigint ar = h(r, c) / g, ai = h(i, c) / g;
            gcd_combine_rows(h, r, i, x, y, ar, ai);
            gcd_combine_rows(u, r, i, x, y, ar, ai);
        }
        if (h(r, c) < 0) {
            negate_row(h, r);
            negate_row(u, r);
        }
        pivot_cols.push_back(c);
        ++r;
    }

    // reduce entries above each pivot into [0, pivot)
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) {
        std::size_t c = pivot_cols[k];
        for (std::size_t i = 0; i < k; ++i) {
            bigint q = floor_div(h(i, c), h(k, c));
            if (q != 0) {
                sub_mult_row(h, i, k, q);
                sub_mult_row(u, i, k, q);
            }
        }
    }
    return {std::move(h), std::move(u)};
}

std::size_t rank(const int_matrix& m) {
    int_matrix h = hnf(m).h;
    std::size_t r = 0;
    for (std::size_t i = 0; i < h.rows(); ++i)
        if (!vec_is_zero(h.row(i)))
            ++r;
    return r;
}

lattice_basis kernel_basis(const int_matrix& a) {
    const std::size_t n = a.cols();
    auto [h, u] = hnf(a.transposed());
    std::size_t d = 0;
    for (std::size_t i = 0; i < h.rows(); ++i)
        if (!vec_is_zero(h.row(i)))
            ++d;
    // rows of u matching zero rows of h span the saturated kernel lattice
    std::vector<ivec> rows;
    for (std::size_t i = d; i < n; ++i)
        rows.push_back(u.row(i));
    if (rows.empty())
        return {n, {}, true};
    int_matrix hb = hnf(int_matrix::from_rows(rows)).h;
    rows.clear();
    for (std::size_t i = 0; i < hb.rows(); ++i)
        rows.push_back(hb.row(i));
    return {n, std::move(rows), true};
}

int_matrix basis_matrix(const lattice_basis& b) {
    if (b.rows.empty())
        return int_matrix(0, 0);
    return int_matrix::from_rows(b.rows);
}

namespace {

int_matrix canonical_rows(const lattice_basis& b) {
    if (b.canonical || b.rows.empty())
        return basis_matrix(b);
    return hnf(basis_matrix(b)).h;
}

} // namespace

bool lattice_equal(const lattice_basis& a, const lattice_basis& b) {
    if (a.ambient_dim != b.ambient_dim || a.dim() != b.dim())
        return false;
    return canonical_rows(a) == canonical_rows(b);
}

bool lattice_contains(const lattice_basis& b, const ivec& v) {
    if (v.size() != b.ambient_dim)
        return false;
    if (vec_is_zero(v))
        return true;
    if (b.rows.empty())
        return false;
    // v is in the lattice iff appending it does not change the HNF
    std::vector<ivec> rows = b.rows;
    rows.push_back(v);
    int_matrix ext = hnf(int_matrix::from_rows(rows)).h;
    std::size_t nz = 0;
    for (std::size_t i = 0; i < ext.rows(); ++i)
        if (!vec_is_zero(ext.row(i)))
            ++nz;
    if (nz != b.dim())
        return false;
    int_matrix base = canonical_rows(b);
    for (std::size_t i = 0; i < b.dim(); ++i)
        if (ext.row(i) != base.row(i))
            return false;
    return true;
}

std::vector<ivec> gale_transforms(const int_matrix& a) {
    lattice_basis k = kernel_basis(a);
    std::vector<ivec> g(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        ivec col(k.dim());
        for (std::size_t i = 0; i < k.dim(); ++i)
            col[i] = k.rows[i][j];
        g[j] = std::move(col);
    }
    return g;
}

namespace {

// Phase-I simplex for { y : y . a_j >= 1 for all columns j }.
// Variables: y+ (m), y- (m), surplus w (n), slack s (n); minimize sum(s).
class feasibility_tableau {
public:
    explicit feasibility_tableau(const int_matrix& a)
        : m_(a.rows()), n_(a.cols()), nvars_(2 * m_ + 2 * n_) {
        t_.assign(n_, std::vector<bigrat>(nvars_ + 1));
        basis_.resize(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            for (std::size_t k = 0; k < m_; ++k) {
                t_[j][k] = bigrat(a(k, j));
                t_[j][m_ + k] = bigrat(-a(k, j));
            }
            t_[j][2 * m_ + j] = -1;      // surplus
            t_[j][2 * m_ + n_ + j] = 1;  // slack, initial basis
            t_[j][nvars_] = 1;           // rhs
            basis_[j] = 2 * m_ + n_ + j;
        }
    }

    bool slack(std::size_t var) const { return var >= 2 * m_ + n_; }

    // returns true iff min sum(s) == 0
    bool solve() {
        for (;;) {
            std::size_t enter = nvars_;
            for (std::size_t c = 0; c < nvars_; ++c) {
                if (reduced_cost(c) < 0) {
                    enter = c;  // Bland: smallest index
                    break;
                }
            }
            if (enter == nvars_)
                break;
            std::size_t leave = n_;
            bigrat best;
            for (std::size_t r = 0; r < n_; ++r) {
                if (t_[r][enter] <= 0)
                    continue;
                bigrat ratio = t_[r][nvars_] / t_[r][enter];
                if (leave == n_ || ratio < best ||
                    (ratio == best && basis_[r] < basis_[leave])) {
                    best = ratio;
                    leave = r;
                }
            }
            if (leave == n_)
                throw std::logic_error("phase-I simplex unbounded");
            pivot(leave, enter);
        }
        bigrat obj = 0;
        for (std::size_t r = 0; r < n_; ++r)
            if (slack(basis_[r]))
                obj += t_[r][nvars_];
        return obj == 0;
    }

    std::vector<bigrat> extract_y() const {
        std::vector<bigrat> val(nvars_);
        for (std::size_t r = 0; r < n_; ++r)
            val[basis_[r]] = t_[r][nvars_];
        std::vector<bigrat> y(m_);
        for (std::size_t k = 0; k < m_; ++k)
            y[k] = val[k] - val[m_ + k];
        return y;
    }

private:
    bigrat reduced_cost(std::size_t c) const {
        bigrat rc = slack(c) ? 1 : 0;
        for (std::size_t r = 0; r < n_; ++r)
            if (slack(basis_[r]))
                rc -= t_[r][c];
        return rc;
    }

    void pivot(std::size_t r, std::size_t c) {
        bigrat p = t_[r][c];
        for (auto& v : t_[r])
            v /= p;
        for (std::size_t i = 0; i < n_; ++i) {
            if (i == r || t_[i][c] == 0)
                continue;
            bigrat f = t_[i][c];
            for (std::size_t k = 0; k <= nvars_; ++k)
                t_[i][k] -= f * t_[r][k];
        }
        basis_[r] = c;
    }

    std::size_t m_, n_, nvars_;
    std::vector<std::vector<bigrat>> t_;
    std::vector<std::size_t> basis_;
};

} // namespace

std::optional<std::vector<bigrat>> positive_grading_witness(const int_matrix& a) {
    feasibility_tableau tab(a);
    if (!tab.solve())
        return std::nullopt;
    return tab.extract_y();
}

std::optional<ivec> positive_grading_witness_int(const int_matrix& a) {
    auto y = positive_grading_witness(a);
    if (!y)
        return std::nullopt;
    bigint lcm_den = 1;
    for (const auto& v : *y) {
        bigint den = denominator(v);
        lcm_den = lcm_den / gcd(lcm_den, den) * den;
    }
    ivec z(y->size());
    for (std::size_t i = 0; i < y->size(); ++i) {
        bigrat scaled = (*y)[i] * bigrat(lcm_den);
        z[i] = numerator(scaled);
    }
    return z;
}

} // namespace mcx::intlin
