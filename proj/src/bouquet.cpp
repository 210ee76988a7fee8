#include "mcx/bouquet.hpp"

#include <algorithm>
#include <stdexcept>

#include "mcx/errors.hpp"
#include "mcx/intlin.hpp"

namespace mcx::bouquet {

namespace {

bool parallel(const ivec& x, const ivec& y) {
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            if (x[i] * y[j] != x[j] * y[i])
                return false;
    return true;
}

} // namespace

bouquet_decomposition bouquets(const int_matrix& a) {
    const std::size_t n = a.cols();
    auto gale = intlin::gale_transforms(a);

    std::vector<std::vector<std::size_t>> groups;
    std::vector<std::size_t> free_cols;
    for (std::size_t i = 0; i < n; ++i) {
        if (vec_is_zero(gale[i])) {
            free_cols.push_back(i);
            continue;
        }
        bool placed = false;
        for (auto& g : groups) {
            if (parallel(gale[g.front()], gale[i])) {
                g.push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed)
            groups.push_back({i});
    }
    if (!free_cols.empty())
        groups.push_back(std::move(free_cols));
    std::sort(groups.begin(), groups.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });

    bouquet_decomposition dec;
    dec.source = a;
    dec.bouquets = std::move(groups);
    const std::size_t q = dec.bouquets.size();
    dec.free_flags.resize(q);
    dec.cb.resize(q);
    for (std::size_t k = 0; k < q; ++k) {
        const auto& cols = dec.bouquets[k];
        ivec cb(n);
        if (vec_is_zero(gale[cols.front()])) {
            dec.free_flags[k] = true;
            for (std::size_t i : cols)
                cb[i] = 1;
        } else {
            // smallest coordinate j nonzero in all Gale vectors of the
            // bouquet; pairwise dependence makes the supports coincide
            const std::size_t dim = gale[cols.front()].size();
            std::size_t j = dim;
            for (std::size_t cand = 0; cand < dim && j == dim; ++cand) {
                bool all = true;
                for (std::size_t i : cols)
                    if (gale[i][cand] == 0) {
                        all = false;
                        break;
                    }
                if (all)
                    j = cand;
            }
            if (j == dim)
                throw std::logic_error("bouquets: no common nonzero Gale coordinate");
            bigint g = 0;
            for (std::size_t i : cols)
                g = gcd(g, gale[i][j]);
            int eps = gale[cols.front()][j] > 0 ? 1 : -1;
            for (std::size_t i : cols)
                cb[i] = eps * gale[i][j] / g;
        }
        dec.cb[k] = std::move(cb);
    }

    dec.ab = int_matrix(a.rows(), q);
    dec.c = int_matrix(n, q);
    for (std::size_t k = 0; k < q; ++k) {
        for (std::size_t i : dec.bouquets[k]) {
            dec.c(i, k) = dec.cb[k][i];
            for (std::size_t row = 0; row < a.rows(); ++row)
                dec.ab(row, k) += dec.cb[k][i] * a(row, i);
        }
    }
    return dec;
}

ivec map_d(const bouquet_decomposition& dec, const ivec& u) {
    if (u.size() != dec.q())
        throw std::invalid_argument("map_d: length != number of bouquets");
    if (!vec_is_zero(dec.ab.apply(u)))
        throw std::domain_error("map_d: vector is not in Ker_Z(AB)");
    ivec v(dec.source.cols());
    for (std::size_t k = 0; k < dec.q(); ++k)
        for (std::size_t i : dec.bouquets[k])
            v[i] = dec.cb[k][i] * u[k];
    return v;
}

ivec map_t(const bouquet_decomposition& dec, const ivec& v) {
    if (v.size() != dec.source.cols())
        throw std::invalid_argument("map_t: length != number of columns");
    if (!vec_is_zero(dec.source.apply(v)))
        throw std::domain_error("map_t: vector is not in Ker_Z(A)");
    ivec u(dec.q());
    for (std::size_t k = 0; k < dec.q(); ++k) {
        std::size_t i0 = dec.bouquets[k].front();
        const bigint& lead = dec.cb[k][i0];
        if (v[i0] % lead != 0)
            throw std::domain_error("map_t: leading entry is not divisible");
        u[k] = v[i0] / lead;
    }
    return u;
}

namespace {

lawrence::tableau map_rows(const bouquet_decomposition& dec, const lawrence::tableau& t,
                           ivec (*f)(const bouquet_decomposition&, const ivec&),
                           std::size_t out_n) {
    ivec colsum(t.n);
    for (const auto& row : t.rows)
        colsum = vec_add(colsum, row);
    if (!vec_is_zero(colsum))
        throw std::domain_error("lifted bouquet map: tableau rows do not sum to zero");
    lawrence::tableau out{t.r, out_n, {}};
    for (const auto& row : t.rows)
        out.rows.push_back(f(dec, row));  // validates kernel membership per row
    return out;
}

} // namespace

lawrence::tableau map_d_r(const bouquet_decomposition& dec, const lawrence::tableau& t) {
    return map_rows(dec, t, map_d, dec.source.cols());
}

lawrence::tableau map_t_r(const bouquet_decomposition& dec, const lawrence::tableau& t) {
    return map_rows(dec, t, map_t, dec.q());
}

bases::basis_set markov_image_under_t(const bouquet_decomposition& dec,
                                      const bases::basis_set& markov) {
    std::vector<ivec> out;
    for (const auto& v : markov.elements)
        out.push_back(sign_normalized(map_t(dec, v)));
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return {dec.ab, bases::basis_kind::markov, std::move(out)};
}

bool lifted_bouquet_kernel_check(const int_matrix& a, std::size_t r) {
    if (r < 3)
        throw std::invalid_argument("lifted_bouquet_kernel_check: r must be >= 3");
    auto dec = bouquets(a);
    for (bool f : dec.free_flags)
        if (f)
            throw unsupported_input_error(
                "lifted_bouquet_kernel_check: matrix has a free bouquet");

    auto lift_dec = bouquets(lawrence::lawrence_lift(a, r));
    int_matrix lifted_ab = lawrence::lawrence_lift(dec.ab, r);
    if (lift_dec.ab.cols() != lifted_ab.cols())
        return false;
    return intlin::lattice_equal(intlin::kernel_basis(lift_dec.ab),
                                 intlin::kernel_basis(lifted_ab));
}

} // namespace mcx::bouquet
