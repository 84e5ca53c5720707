#include "doctest.h"

#include <random>

#include "linstrand/harness.hpp"
#include "linstrand/linalg.hpp"
#include "support.hpp"

using namespace linstrand;
using test_support::fp;

namespace {

Mat<Fp> random_matrix(int rows, int cols, int rank_bound, std::mt19937_64& rng) {
    // product of two random factors caps the rank
    const FieldDesc f = FieldDesc::prime(32003);
    Mat<Fp> a(rows, rank_bound), b(rank_bound, cols);
    for (Index i = 0; i < a.size(); ++i) a.data()[i] = random_scalar<Fp>(f, rng);
    for (Index i = 0; i < b.size(); ++i) b.data()[i] = random_scalar<Fp>(f, rng);
    return a * b;
}

test_support::IntMatrix as_ints(const Mat<Fp>& m) {
    test_support::IntMatrix out(static_cast<std::size_t>(m.rows()), std::vector<long long>(static_cast<std::size_t>(m.cols())));
    for (Index r = 0; r < m.rows(); ++r)
        for (Index c = 0; c < m.cols(); ++c) out[r][c] = m(r, c).value();
    return out;
}

}  // namespace

TEST_CASE("rank agrees with naive elimination and Bareiss") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 60; ++t) {
        const int rows = 1 + static_cast<int>(rng() % 8), cols = 1 + static_cast<int>(rng() % 8);
        const int bound = 1 + static_cast<int>(rng() % 6);
        const Mat<Fp> m = random_matrix(rows, cols, bound, rng);
        const Index r = rank(m);
        CHECK(r == test_support::rank_mod(as_ints(m), 32003));
        CHECK(r == oracle_rank(m));
    }
}

TEST_CASE("rref is reduced and spans the same rows") {
    std::mt19937_64 rng(12);
    const Mat<Fp> m = random_matrix(5, 7, 3, rng);
    const Echelon<Fp> e = rref(m);
    CHECK(e.rank() == 3);
    for (std::size_t k = 0; k < e.pivots.size(); ++k) {
        for (Index r = 0; r < e.reduced.rows(); ++r)
            CHECK(e.reduced(r, e.pivots[k]) == (r == static_cast<Index>(k) ? fp(1) : fp(0)));
    }
    CHECK(same_row_space(m, row_basis(m)));
}

TEST_CASE("nullspace is a kernel of full size") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 20; ++t) {
        const Mat<Fp> m = random_matrix(4, 9, 1 + static_cast<int>(rng() % 4), rng);
        const Mat<Fp> k = nullspace(m);
        CHECK(k.cols() == m.cols() - rank(m));
        CHECK(is_zero_matrix<Fp>(Mat<Fp>(m * k)));
        CHECK(rank(k) == k.cols());
    }
}

TEST_CASE("solve finds solutions and detects inconsistency") {
    Mat<Rational> m(2, 2);
    m << 1, 2, 2, 4;
    Vec<Rational> b(2);
    b << 3, 6;
    const auto x = solve(m, b);
    REQUIRE(x.has_value());
    CHECK(Vec<Rational>(m * *x) == b);
    b << 3, 7;
    CHECK_FALSE(solve(m, b).has_value());
}

TEST_CASE("rational rank of a Vandermonde block") {
    Mat<Rational> v(4, 4);
    for (int r = 0; r < 4; ++r) {
        Rational pw = 1;
        for (int c = 0; c < 4; ++c, pw *= r + 1) v(r, c) = pw;
    }
    CHECK(rank(v) == 4);
    v.row(3) = v.row(0) + v.row(1) / 3;
    CHECK(rank(v) == 3);
}

TEST_CASE("entries from two fields are rejected") {
    Mat<Fp> m(1, 2);
    m << Fp(1, 7), Fp(1, 11);
    CHECK_THROWS_AS(check_same_field(m), Error);
}
