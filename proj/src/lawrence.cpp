#include "mcx/lawrence.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mcx/bouquet.hpp"
#include "mcx/errors.hpp"
#include "mcx/intlin.hpp"

namespace mcx::lawrence {

int_matrix lawrence_lift(const int_matrix& a, std::size_t r) {
    if (r < 2)
        throw std::invalid_argument("lawrence_lift: r must be >= 2");
    const std::size_t m = a.rows(), n = a.cols();
    int_matrix l(r * m + n, r * n);
    for (std::size_t s = 0; s < r; ++s)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                l(s * m + i, s * n + j) = a(i, j);
    for (std::size_t s = 0; s < r; ++s)
        for (std::size_t k = 0; k < n; ++k)
            l(r * m + k, s * n + k) = 1;
    return l;
}

std::size_t tableau_type(const tableau& t) {
    std::size_t c = 0;
    for (const auto& row : t.rows)
        if (!vec_is_zero(row))
            ++c;
    return c;
}

tableau tableau_from_flat(const ivec& flat, std::size_t r, std::size_t n) {
    if (flat.size() != r * n)
        throw std::invalid_argument("tableau_from_flat: length mismatch");
    tableau t{r, n, {}};
    for (std::size_t i = 0; i < r; ++i)
        t.rows.emplace_back(flat.begin() + i * n, flat.begin() + (i + 1) * n);
    return t;
}

ivec flat_from_tableau(const tableau& t) {
    ivec flat;
    flat.reserve(t.r * t.n);
    for (const auto& row : t.rows)
        flat.insert(flat.end(), row.begin(), row.end());
    return flat;
}

tableau parse_tableau(const std::string& text) {
    tableau t;
    std::string chunk;
    std::istringstream in(text);
    while (std::getline(in, chunk, ';'))
        t.rows.push_back(parse_ivec_csv(chunk));
    if (t.rows.empty())
        throw std::invalid_argument("tableau literal: no rows");
    t.r = t.rows.size();
    t.n = t.rows.front().size();
    for (const auto& row : t.rows)
        if (row.size() != t.n)
            throw std::invalid_argument("tableau literal: ragged rows");
    return t;
}

std::string format_tableau(const tableau& t) {
    std::string s;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (i)
            s += ';';
        s += format_ivec_csv(t.rows[i]);
    }
    return s;
}

bool tableau_in_kernel(const int_matrix& a, const tableau& t) {
    if (t.n != a.cols())
        return false;
    ivec colsum(t.n);
    for (const auto& row : t.rows) {
        if (!vec_is_zero(a.apply(row)))
            return false;
        colsum = vec_add(colsum, row);
    }
    return vec_is_zero(colsum);
}

int_matrix family_as(long long s) {
    if (s < 3)
        throw std::invalid_argument("family_as: s must be >= 3");
    int_matrix a(2, 4);
    a(0, 0) = 0; a(0, 1) = 1; a(0, 2) = s - 1; a(0, 3) = s;
    a(1, 0) = 1; a(1, 1) = 1; a(1, 2) = 1;     a(1, 3) = 1;
    return a;
}

int_matrix family_kt(long long s, std::size_t k) {
    if (s < 3)
        throw std::invalid_argument("family_kt: s must be >= 3");
    int_matrix a(1, 4 + k);
    bigint bs = s;
    a(0, 0) = 1;
    a(0, 1) = bs;
    a(0, 2) = bs * bs - bs;
    a(0, 3) = bs * bs - 1;
    for (std::size_t j = 4; j < 4 + k; ++j)
        a(0, j) = 1;
    return a;
}

tableau witness_matrix(long long s) {
    if (s < 3)
        throw std::invalid_argument("witness_matrix: s must be >= 3");
    tableau t{static_cast<std::size_t>(s), 4, {}};
    for (long long i = 0; i < s - 2; ++i)
        t.rows.push_back({1, -1, -1, 1});
    t.rows.push_back({0, -1, bigint(s - 1), bigint(2 - s)});
    t.rows.push_back({bigint(2 - s), bigint(s - 1), -1, 0});
    return t;
}

ivec solve_lambda(const ivec& cprime) {
    if (cprime.empty())
        throw std::invalid_argument("solve_lambda: empty c'");
    ivec lambda(cprime.size());
    bigint g = cprime[0];
    lambda[0] = 1;
    for (std::size_t i = 1; i < cprime.size(); ++i) {
        auto r = intlin::xgcd(g, cprime[i]);
        for (std::size_t k = 0; k < i; ++k)
            lambda[k] *= r.x;
        lambda[i] = r.y;
        g = r.g;
    }
    if (g != 1 && g != -1)
        throw std::invalid_argument("solve_lambda: gcd of c' entries is not 1");
    if (g == -1)
        for (auto& v : lambda)
            v = -v;
    return lambda;
}

namespace {

void validate_spec(const bouquet_spec& spec, std::size_t idx) {
    auto fail = [idx](const std::string& what) {
        throw std::invalid_argument("bouquet " + std::to_string(idx + 1) + ": " + what);
    };
    if (spec.cprime.empty())
        fail("empty c'");
    if (spec.lambda.size() != spec.cprime.size())
        fail("lambda and c' have different lengths");
    if (spec.cprime.front() <= 0)
        fail("first entry of c' must be positive");
    bigint g = 0, dot = 0;
    for (std::size_t j = 0; j < spec.cprime.size(); ++j) {
        if (spec.cprime[j] == 0)
            fail("c' has a zero entry");
        g = gcd(g, spec.cprime[j]);
        dot += spec.lambda[j] * spec.cprime[j];
    }
    if (g != 1)
        fail("gcd of c' entries is not 1");
    if (dot != 1)
        fail("lambda . c' != 1");
}

} // namespace

int_matrix generalized_lawrence(const int_matrix& base,
                                const std::vector<bouquet_spec>& specs) {
    const std::size_t q = base.cols(), dprime = base.rows();
    if (specs.size() != q)
        throw std::invalid_argument("generalized_lawrence: need one spec per base column");
    std::size_t n = 0, relation_rows = 0;
    for (std::size_t i = 0; i < q; ++i) {
        validate_spec(specs[i], i);
        n += specs[i].cprime.size();
        relation_rows += specs[i].cprime.size() - 1;
    }

    // the block structure survives as the maximal bouquet partition only
    // when every base column is its own non-free bouquet
    auto base_dec = bouquet::bouquets(base);
    if (base_dec.q() != q || std::find(base_dec.free_flags.begin(),
                                       base_dec.free_flags.end(),
                                       true) != base_dec.free_flags.end())
        throw unsupported_input_error(
            "generalized_lawrence: every base column must form its own non-free bouquet");

    int_matrix l(dprime + relation_rows, n);
    std::size_t col0 = 0, rel = dprime;
    for (std::size_t i = 0; i < q; ++i) {
        const auto& sp = specs[i];
        const std::size_t mi = sp.cprime.size();
        for (std::size_t j = 0; j < mi; ++j)
            for (std::size_t k = 0; k < dprime; ++k)
                l(k, col0 + j) = base(k, i) * sp.lambda[j];
        for (std::size_t j = 1; j < mi; ++j) {
            l(rel, col0) = -sp.cprime[j];
            l(rel, col0 + j) = sp.cprime.front();
            ++rel;
        }
        col0 += mi;
    }

    if (intlin::rank(l) != dprime + n - q)
        throw std::logic_error("generalized_lawrence: rank != d' + n - q");

    // the bouquet decomposition must recover the blocks with cB = c'
    auto dec = bouquet::bouquets(l);
    if (dec.q() != q)
        throw std::logic_error("generalized_lawrence: expected " + std::to_string(q) +
                               " bouquets, got " + std::to_string(dec.q()));
    col0 = 0;
    for (std::size_t i = 0; i < q; ++i) {
        const std::size_t mi = specs[i].cprime.size();
        if (dec.free_flags[i])
            throw std::logic_error("generalized_lawrence: bouquet " +
                                   std::to_string(i + 1) + " came out free");
        if (dec.bouquets[i].size() != mi)
            throw std::logic_error("generalized_lawrence: bouquet " +
                                   std::to_string(i + 1) + " has wrong support");
        for (std::size_t j = 0; j < mi; ++j) {
            if (dec.bouquets[i][j] != col0 + j ||
                dec.cb[i][col0 + j] != specs[i].cprime[j])
                throw std::logic_error("generalized_lawrence: cB of bouquet " +
                                       std::to_string(i + 1) + " != c'");
        }
        col0 += mi;
    }
    return l;
}

int_matrix zero_one_fixture() {
    static const int rows[15][15] = {
        {0, 0, 0, 1, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1, 0},
        {0, 0, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1, 0},
        {0, 0, 1, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0},
        {0, 0, 1, 0, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 0},
        {0, 0, 1, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1, 0},
        {0, 0, 1, 0, 1, 1, 1, 0, 1, 1, 1, 1, 1, 1, 0},
        {0, 0, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1, 0},
        {0, 0, 1, 0, 1, 1, 1, 1, 0, 0, 1, 1, 1, 1, 1},
        {0, 0, 1, 0, 1, 1, 1, 1, 0, 1, 0, 1, 1, 1, 1},
        {0, 0, 1, 0, 1, 1, 1, 1, 0, 1, 1, 0, 1, 1, 1},
        {0, 0, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 0, 1, 1},
        {0, 0, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0, 1},
        {0, 0, 1, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1, 0},
        {1, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0},
        {0, 1, 1, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0},
    };
    int_matrix l(15, 15);
    for (std::size_t i = 0; i < 15; ++i)
        for (std::size_t j = 0; j < 15; ++j)
            l(i, j) = rows[i][j];
    return l;
}

} // namespace mcx::lawrence
