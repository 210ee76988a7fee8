#include "doctest.h"

#include <random>

#include "mcx/errors.hpp"
#include "mcx/intlin.hpp"
#include "mcx/lawrence.hpp"

using namespace mcx;
using namespace mcx::lawrence;

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

// the reference 6x17 construction for the 1x12 base [1,s,s^2-s,s^2-1,1,...,1]
int_matrix expected_6x17(long long s) {
    bigint b = s;
    std::vector<ivec> rows(6, ivec(17));
    rows[0] = {1, 0, b, b * b - b, 0, b * b - 1, 1, 1, 0, 1, 1, -2, 1, 0, 1, 1, 1};
    rows[1][0] = 1; rows[1][1] = 1;
    rows[2][3] = 1; rows[2][4] = 1;
    rows[3][7] = -11; rows[3][8] = 1;
    rows[4][11] = -7; rows[4][12] = 3;
    rows[5][11] = -2021; rows[5][13] = 3;
    return int_matrix::from_rows(rows);
}

std::vector<bouquet_spec> specs_6x17() {
    std::vector<bouquet_spec> sp;
    sp.push_back({vec({1, -1}), vec({1, 0})});
    sp.push_back({vec({1}), vec({1})});
    sp.push_back({vec({1, -1}), vec({1, 0})});
    sp.push_back({vec({1}), vec({1})});
    sp.push_back({vec({1}), vec({1})});
    sp.push_back({vec({1, 11}), vec({1, 0})});
    sp.push_back({vec({1}), vec({1})});
    sp.push_back({vec({1}), vec({1})});
    sp.push_back({vec({3, 7, 2021}), vec({-2, 1, 0})});
    sp.push_back({vec({1}), vec({1})});
    sp.push_back({vec({1}), vec({1})});
    sp.push_back({vec({1}), vec({1})});
    return sp;
}

} // namespace

TEST_CASE("lawrence_lift shape and blocks") {
    auto a = mat({{0, 1, 2, 3}, {1, 1, 1, 1}});
    auto l = lawrence_lift(a, 3);
    CHECK(l.rows() == 10);
    CHECK(l.cols() == 12);
    // diagonal copies
    for (std::size_t s = 0; s < 3; ++s)
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                CHECK(l(s * 2 + i, s * 4 + j) == a(i, j));
    // bottom block row [I | I | I]
    for (std::size_t s = 0; s < 3; ++s)
        for (std::size_t k = 0; k < 4; ++k)
            for (std::size_t j = 0; j < 4; ++j)
                CHECK(l(6 + k, s * 4 + j) == (j == k ? 1 : 0));
    CHECK_THROWS_AS(lawrence_lift(a, 1), std::invalid_argument);
}

TEST_CASE("flattened tableaux are exactly the lifted kernel") {
    auto a = mat({{0, 1, 2, 3}, {1, 1, 1, 1}});
    auto l = lawrence_lift(a, 3);
    std::mt19937_64 rng(5150);
    auto kb = intlin::kernel_basis(a);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int it = 0; it < 40; ++it) {
        // random rows from Ker(A) with a closing row forcing zero column sums
        tableau t{3, 4, {}};
        ivec sum(4);
        for (int i = 0; i < 2; ++i) {
            ivec row(4);
            for (const auto& b : kb.rows) {
                bigint q = coef(rng);
                for (std::size_t j = 0; j < 4; ++j)
                    row[j] += q * b[j];
            }
            sum = vec_add(sum, row);
            t.rows.push_back(std::move(row));
        }
        t.rows.push_back(vec_neg(sum));
        CHECK(tableau_in_kernel(a, t));
        CHECK(vec_is_zero(l.apply(flat_from_tableau(t))));
        // round trip
        CHECK(tableau_from_flat(flat_from_tableau(t), 3, 4) == t);
    }
}

TEST_CASE("tableau type and literals") {
    tableau z{3, 4, {ivec(4), ivec(4), ivec(4)}};
    CHECK(tableau_type(z) == 0);
    auto t = parse_tableau("1,-1,-1,1;0,-1,2,-1;-1,2,-1,0");
    CHECK(t.r == 3);
    CHECK(t.n == 4);
    CHECK(tableau_type(t) == 3);
    CHECK(format_tableau(t) == "1,-1,-1,1;0,-1,2,-1;-1,2,-1,0");
    tableau pm{3, 2, {vec({1, -1}), vec({-1, 1}), ivec(2)}};
    CHECK(tableau_type(pm) == 2);
}

TEST_CASE("family matrices") {
    CHECK(family_as(3) == mat({{0, 1, 2, 3}, {1, 1, 1, 1}}));
    CHECK(family_as(5) == mat({{0, 1, 4, 5}, {1, 1, 1, 1}}));
    CHECK_THROWS_AS(family_as(2), std::invalid_argument);
    for (long long s = 3; s <= 7; ++s)
        CHECK(intlin::rank(family_as(s)) == 2);

    CHECK(family_kt(3, 2) == mat({{1, 3, 6, 8, 1, 1}}));
    CHECK(family_kt(5, 0) == mat({{1, 5, 20, 24}}));
}

TEST_CASE("witness tableau") {
    auto w3 = witness_matrix(3);
    CHECK(w3.rows == std::vector<ivec>{vec({1, -1, -1, 1}), vec({0, -1, 2, -1}),
                                       vec({-1, 2, -1, 0})});
    for (long long s = 3; s <= 8; ++s) {
        auto w = witness_matrix(s);
        CHECK(w.r == static_cast<std::size_t>(s));
        CHECK(tableau_type(w) == static_cast<std::size_t>(s));
        CHECK(tableau_in_kernel(family_as(s), w));
    }
    CHECK_THROWS_AS(witness_matrix(2), std::invalid_argument);
}

TEST_CASE("solve_lambda") {
    std::vector<ivec> cases = {vec({1, -1}), vec({1, 11}), vec({3, 7, 2021}),
                               vec({2, -3}), vec({5, 3, -7, 2})};
    for (const auto& c : cases) {
        ivec lam = solve_lambda(c);
        bigint dot = 0;
        for (std::size_t i = 0; i < c.size(); ++i)
            dot += lam[i] * c[i];
        CHECK(dot == 1);
    }
    CHECK_THROWS_AS(solve_lambda(vec({2, 4})), std::invalid_argument);
}

TEST_CASE("generalized_lawrence reproduces the reference 6x17 matrix") {
    for (long long s : {3LL, 5LL}) {
        int_matrix base = family_kt(s, 8);
        REQUIRE(base.cols() == 12);
        auto l = generalized_lawrence(base, specs_6x17());
        CHECK(l == expected_6x17(s));
        CHECK(intlin::rank(l) == 6);
    }
}

TEST_CASE("generalized_lawrence with singleton specs is the identity") {
    auto base = mat({{0, 1, 2, 3}, {1, 1, 1, 1}});
    std::vector<bouquet_spec> sp(4, {vec({1}), vec({1})});
    CHECK(generalized_lawrence(base, sp) == base);
}

TEST_CASE("generalized_lawrence rejects bases whose columns share a bouquet") {
    // [5 9] has a single bouquet containing both columns, so the block
    // structure cannot survive as the maximal bouquet partition
    auto base = mat({{5, 9}});
    std::vector<bouquet_spec> sp = {{vec({3, 7, 2021}), vec({-2, 1, 0})},
                                    {vec({1, -1}), vec({1, 0})}};
    CHECK_THROWS_AS(generalized_lawrence(base, sp), unsupported_input_error);
    // a free column (identity base) is rejected the same way
    std::vector<bouquet_spec> singleton(2, {vec({1}), vec({1})});
    CHECK_THROWS_AS(generalized_lawrence(int_matrix::identity(2), singleton),
                    unsupported_input_error);
}

TEST_CASE("generalized_lawrence rejects bad specs naming the bouquet") {
    auto base = mat({{1, 2}});
    std::vector<bouquet_spec> sp = {{vec({1}), vec({1})}, {vec({1, 0}), vec({1, 0})}};
    CHECK_THROWS_WITH_AS(generalized_lawrence(base, sp),
                         "bouquet 2: c' has a zero entry", std::invalid_argument);
    sp[1] = {vec({-1, 2}), vec({1, 1})};
    CHECK_THROWS_WITH_AS(generalized_lawrence(base, sp),
                         "bouquet 2: first entry of c' must be positive",
                         std::invalid_argument);
    sp[1] = {vec({2, 4}), vec({1, 0})};
    CHECK_THROWS_WITH_AS(generalized_lawrence(base, sp),
                         "bouquet 2: gcd of c' entries is not 1", std::invalid_argument);
    sp[1] = {vec({1, 2}), vec({1, 1})};
    CHECK_THROWS_WITH_AS(generalized_lawrence(base, sp), "bouquet 2: lambda . c' != 1",
                         std::invalid_argument);
}

TEST_CASE("0/1 fixture: shape, entries, rank") {
    auto l = zero_one_fixture();
    CHECK(l.rows() == 15);
    CHECK(l.cols() == 15);
    for (std::size_t i = 0; i < 15; ++i)
        for (std::size_t j = 0; j < 15; ++j)
            CHECK((l(i, j) == 0 || l(i, j) == 1));
    CHECK(intlin::rank(l) == 13);
}

TEST_CASE("liftings are always positively graded") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int it = 0; it < 15; ++it) {
        std::size_t m = 1 + rng() % 2, n = 1 + rng() % 3;
        int_matrix a(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                a(i, j) = d(rng);
        for (std::size_t r : {2, 3})
            CHECK(intlin::positive_grading_witness(lawrence_lift(a, r)).has_value());
    }
}
