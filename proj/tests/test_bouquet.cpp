#include "doctest.h"

#include <random>

#include "mcx/bouquet.hpp"
#include "mcx/errors.hpp"
#include "mcx/intlin.hpp"
#include "mcx/lawrence.hpp"

using namespace mcx;
using namespace mcx::bouquet;

namespace {

int_matrix mat(const std::vector<std::vector<long long>>& rows) {
    std::vector<ivec> r;
    for (const auto& row : rows)
        r.emplace_back(row.begin(), row.end());
    return int_matrix::from_rows(r);
}

ivec vec(const std::vector<long long>& v) {
    return ivec(v.begin(), v.end());
}

int_matrix example_a() {
    return mat({{3, 3, 4, 5}, {2, 3, 0, 0}});
}

// random element of Ker_Z(A) as an integer combination of the basis rows
ivec random_kernel_element(std::mt19937_64& rng, const intlin::lattice_basis& kb) {
    std::uniform_int_distribution<int> coef(-4, 4);
    ivec v(kb.ambient_dim);
    for (const auto& b : kb.rows) {
        bigint q = coef(rng);
        for (std::size_t j = 0; j < v.size(); ++j)
            v[j] += q * b[j];
    }
    return v;
}

} // namespace

TEST_CASE("bouquets of the worked 2x4 example") {
    auto dec = bouquets(example_a());
    REQUIRE(dec.q() == 3);
    CHECK(dec.bouquets[0] == std::vector<std::size_t>{0, 1});
    CHECK(dec.bouquets[1] == std::vector<std::size_t>{2});
    CHECK(dec.bouquets[2] == std::vector<std::size_t>{3});
    CHECK(!dec.free_flags[0]);
    CHECK(!dec.free_flags[1]);
    CHECK(!dec.free_flags[2]);
    CHECK(dec.cb[0] == vec({3, -2, 0, 0}));
    CHECK(dec.cb[1] == vec({0, 0, 1, 0}));
    CHECK(dec.cb[2] == vec({0, 0, 0, 1}));
    CHECK(dec.ab == mat({{3, 4, 5}, {0, 0, 0}}));
    CHECK(dec.c == mat({{3, 0, 0}, {-2, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
}

TEST_CASE("identity has a single free bouquet") {
    auto dec = bouquets(int_matrix::identity(3));
    REQUIRE(dec.q() == 1);
    CHECK(dec.free_flags[0]);
    CHECK(dec.bouquets[0] == std::vector<std::size_t>{0, 1, 2});
    CHECK(dec.cb[0] == vec({1, 1, 1}));
    CHECK(dec.ab == mat({{1}, {1}, {1}}));
}

TEST_CASE("bouquet invariants: disjoint supports, positive leads, AB columns") {
    std::mt19937_64 rng(808);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int it = 0; it < 40; ++it) {
        std::size_t m = 1 + rng() % 3, n = 1 + rng() % 5;
        int_matrix a(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                a(i, j) = d(rng);
        auto dec = bouquets(a);
        std::vector<bool> seen(n, false);
        for (std::size_t k = 0; k < dec.q(); ++k) {
            bigint g = 0;
            bool first_seen = false;
            for (std::size_t i = 0; i < n; ++i) {
                bool in_support = dec.cb[k][i] != 0;
                bool in_cols = std::find(dec.bouquets[k].begin(), dec.bouquets[k].end(), i) !=
                               dec.bouquets[k].end();
                CHECK(in_support == in_cols);
                if (in_support) {
                    CHECK(!seen[i]);
                    seen[i] = true;
                    if (!first_seen) {
                        CHECK(dec.cb[k][i] > 0);
                        first_seen = true;
                    }
                    g = gcd(g, dec.cb[k][i]);
                }
            }
            CHECK(g == 1);
            // AB column = sum of cb-weighted columns
            for (std::size_t row = 0; row < m; ++row) {
                bigint s = 0;
                for (std::size_t i = 0; i < n; ++i)
                    s += dec.cb[k][i] * a(row, i);
                CHECK(dec.ab(row, k) == s);
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            CHECK(seen[i]);
    }
}

TEST_CASE("bouquet data depends only on the kernel") {
    auto a = example_a();
    // appending a redundant row leaves Ker and hence the partition intact
    auto a2 = mat({{3, 3, 4, 5}, {2, 3, 0, 0}, {5, 6, 4, 5}});
    auto d1 = bouquets(a), d2 = bouquets(a2);
    CHECK(d1.bouquets == d2.bouquets);
    CHECK(d1.cb == d2.cb);
    CHECK(d1.free_flags == d2.free_flags);
}

TEST_CASE("cB does not depend on the chosen Gale coordinate") {
    auto a = example_a();
    auto dec = bouquets(a);
    auto gale = intlin::gale_transforms(a);
    for (std::size_t k = 0; k < dec.q(); ++k) {
        const auto& cols = dec.bouquets[k];
        std::size_t dim = gale[cols.front()].size();
        for (std::size_t j = 0; j < dim; ++j) {
            bool valid = true;
            for (std::size_t i : cols)
                if (gale[i][j] == 0)
                    valid = false;
            if (!valid)
                continue;
            bigint g = 0;
            for (std::size_t i : cols)
                g = gcd(g, gale[i][j]);
            int eps = gale[cols.front()][j] > 0 ? 1 : -1;
            for (std::size_t i : cols)
                CHECK(dec.cb[k][i] == eps * gale[i][j] / g);
        }
    }
}

TEST_CASE("map D and T on the worked example") {
    auto dec = bouquets(example_a());
    CHECK(map_d(dec, vec({1, -2, 1})) == vec({3, -2, -2, 1}));
    CHECK(map_d(dec, vec({0, 5, -4})) == vec({0, 0, 5, -4}));
    CHECK(map_d(dec, vec({0, 0, 0})) == vec({0, 0, 0, 0}));
    CHECK(map_t(dec, vec({3, -2, -2, 1})) == vec({1, -2, 1}));
    CHECK(map_t(dec, vec({9, -6, -1, -1})) == vec({3, -1, -1}));
    CHECK_THROWS_AS(map_d(dec, vec({1, 0, 0})), std::domain_error);
    CHECK_THROWS_AS(map_t(dec, vec({1, 0, 0, 0})), std::domain_error);
}

TEST_CASE("D and T are mutually inverse lattice isomorphisms") {
    std::mt19937_64 rng(99);
    auto a = example_a();
    auto dec = bouquets(a);
    auto kab = intlin::kernel_basis(dec.ab);
    auto ka = intlin::kernel_basis(a);
    for (int it = 0; it < 40; ++it) {
        ivec u = random_kernel_element(rng, kab);
        ivec v = random_kernel_element(rng, kab);
        CHECK(map_t(dec, map_d(dec, u)) == u);
        CHECK(map_d(dec, vec_add(u, v)) == vec_add(map_d(dec, u), map_d(dec, v)));
        CHECK(vec_is_zero(a.apply(map_d(dec, u))));
        ivec w = random_kernel_element(rng, ka);
        CHECK(map_d(dec, map_t(dec, w)) == w);
    }
}

TEST_CASE("lifted maps preserve the type") {
    std::mt19937_64 rng(123);
    auto a = example_a();
    auto dec = bouquets(a);
    auto kab = intlin::kernel_basis(dec.ab);
    for (int it = 0; it < 30; ++it) {
        lawrence::tableau t{3, dec.q(), {}};
        ivec sum(dec.q());
        for (int i = 0; i < 2; ++i) {
            ivec row = random_kernel_element(rng, kab);
            sum = vec_add(sum, row);
            t.rows.push_back(std::move(row));
        }
        t.rows.push_back(vec_neg(sum));
        auto lifted = map_d_r(dec, t);
        CHECK(lawrence::tableau_type(lifted) == lawrence::tableau_type(t));
        CHECK(map_t_r(dec, lifted) == t);
        CHECK(lawrence::tableau_in_kernel(a, lifted));
    }
    lawrence::tableau z{3, 3, {ivec(3), ivec(3), ivec(3)}};
    auto dz = map_d_r(dec, z);
    CHECK(lawrence::tableau_type(dz) == 0);
}

TEST_CASE("T image of the worked Markov basis") {
    auto dec = bouquets(example_a());
    bases::basis_set markov;
    markov.matrix = example_a();
    markov.kind = bases::basis_kind::markov;
    markov.elements = {vec({0, 0, 5, -4}), vec({3, -2, -2, 1}), vec({3, -2, 3, -3}),
                       vec({6, -4, 1, -2}), vec({9, -6, -1, -1})};
    auto image = markov_image_under_t(dec, markov);
    std::vector<ivec> expected = {vec({0, 5, -4}), vec({1, -2, 1}), vec({1, 3, -3}),
                                  vec({2, 1, -2}), vec({3, -1, -1})};
    std::sort(expected.begin(), expected.end(), lex_less);
    CHECK(image.elements == expected);
}

TEST_CASE("T image under the trivial decomposition is the identity") {
    auto a = mat({{1, 2, 3}});
    auto dec = bouquets(a);
    REQUIRE(dec.q() == 3);
    bases::basis_set markov;
    markov.matrix = a;
    markov.elements = {vec({2, -1, 0}), vec({3, 0, -1})};
    auto image = markov_image_under_t(dec, markov);
    CHECK(image.elements == markov.elements);
}

TEST_CASE("indispensables of AB lift through D") {
    auto a = example_a();
    auto dec = bouquets(a);
    auto ind_ab = bases::indispensable_set(dec.ab);
    auto ind_a = bases::indispensable_set(a);
    CHECK(!ind_ab.elements.empty());
    for (const auto& u : ind_ab.elements) {
        ivec du = map_d(dec, u);
        CHECK(bases::is_indispensable(a, du));
        CHECK(ind_a.contains(sign_normalized(du)));
    }

    auto base = lawrence::family_as(3);
    std::vector<lawrence::bouquet_spec> specs = {{vec({1, -1}), vec({1, 0})},
                                                 {vec({1}), vec({1})},
                                                 {vec({1}), vec({1})},
                                                 {vec({1}), vec({1})}};
    auto l = lawrence::generalized_lawrence(base, specs);
    auto decl = bouquets(l);
    auto ind_lb = bases::indispensable_set(decl.ab);
    CHECK(!ind_lb.elements.empty());
    for (const auto& u : ind_lb.elements)
        CHECK(bases::is_indispensable(l, map_d(decl, u)));
}

TEST_CASE("lifted bouquet kernel equality") {
    CHECK(lifted_bouquet_kernel_check(example_a(), 3));
    auto a3 = mat({{0, 1, 2, 3}, {1, 1, 1, 1}});
    CHECK(lifted_bouquet_kernel_check(a3, 3));
    CHECK(lifted_bouquet_kernel_check(a3, 4));
    CHECK_THROWS_AS(lifted_bouquet_kernel_check(a3, 2), std::invalid_argument);
    CHECK_THROWS_AS(lifted_bouquet_kernel_check(int_matrix::identity(2), 3),
                    unsupported_input_error);
}
