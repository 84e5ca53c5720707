#include "doctest.h"

#include "linstrand/harness.hpp"
#include "linstrand/koszul.hpp"
#include "support.hpp"

using namespace linstrand;
using test_support::q_vec;

namespace {

const FieldDesc F = FieldDesc::prime(32003);

GenSpec spec(Family fam, int n, int s, std::uint64_t seed) {
    GenSpec g;
    g.family = fam;
    g.n = n;
    g.s = s;
    g.field = F;
    g.seed = seed;
    if (fam == Family::Union) {
        g.k = 1;
        g.r = n - 1;
        g.s_a = 3;
        g.s_b = s - 3;
    }
    if (fam == Family::SpecialRandom) g.i = std::min(1, n - 2);
    return g;
}

std::vector<int> as_ints(const LinearStrand& a) { return {a.values.begin(), a.values.end()}; }

}  // namespace

TEST_CASE("twisted cubic golden values from the cohomology oracle") {
    // computed on integer points before looking at the library
    test_support::IntMatrix pts;
    for (long long t = 0; t <= 7; ++t) pts.push_back({1, t, t * t, t * t * t});
    const std::vector<int> golden{3, 2, 0};
    CHECK(test_support::strand_by_cohomology(pts, 3, 32003) == golden);
    CHECK(test_support::strand_by_cohomology(pts, 3, 1000003) == golden);
    const auto cfg = test_support::moment_curve(3, 8);
    CHECK(as_ints(strand_betti(cfg)) == golden);
    CHECK(a_top_via_intersection(cfg).count == 2);
}

TEST_CASE("strand agrees with the cohomology oracle across families") {
    int checked = 0;
    for (int n = 2; n <= 4; ++n)
        for (Family fam : {Family::Rnc, Family::Union, Family::GeneralRandom, Family::SpecialRandom})
            for (std::uint64_t seed = 1; seed <= 3; ++seed) {
                const int s = fam == Family::GeneralRandom ? n + 2 + static_cast<int>(seed) : n + 3 + static_cast<int>(seed % 2);
                if (fam == Family::Union && n < 3) continue;
                const auto gen = generate<Fp>(spec(fam, n, s, seed));
                CAPTURE(n);
                CAPTURE(family_name(fam));
                CHECK(as_ints(strand_betti(gen.cfg)) == test_support::strand_by_cohomology(test_support::residues(gen.cfg), n, 32003));
                CHECK(a_top_via_intersection(gen.cfg).count == strand_betti(gen.cfg).a(n - 1));
                ++checked;
            }
    CHECK(checked > 30);
}

TEST_CASE("koszul differentials compose to zero") {
    for (int n = 2; n <= 4; ++n)
        for (int k = 2; k <= n; ++k) {
            const Mat<Rational> a = koszul_delta<Rational>(n, k, k + 1), b = koszul_delta<Rational>(n, k - 1, k + 1);
            CHECK(is_zero_matrix<Rational>(Mat<Rational>(b * a)));
        }
}

TEST_CASE("six general points in P^3 sit on a twisted cubic, seven do not") {
    // coordinate points, the unit point and general extras
    std::vector<Vec<Rational>> rows{q_vec({1, 0, 0, 0}), q_vec({0, 1, 0, 0}), q_vec({0, 0, 1, 0}), q_vec({0, 0, 0, 1}),
                                    q_vec({1, 1, 1, 1}), q_vec({1, 2, 5, 11})};
    const auto six = make_config<Rational>(3, FieldDesc::rational(), rows);
    CHECK(strand_betti(six).a(2) > 0);
    CHECK(strand_oracle(six) == strand_betti(six));
    rows.push_back(q_vec({1, -3, 7, 2}));
    const auto seven = make_config<Rational>(3, FieldDesc::rational(), rows);
    REQUIRE(is_general_position(seven));
    CHECK(strand_betti(seven).a(2) == 0);
    CHECK(strand_oracle(seven).a(2) == 0);
    const test_support::IntMatrix ints{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 1, 1}, {1, 2, 5, 11}, {1, -3, 7, 2}};
    CHECK(test_support::strand_by_cohomology(ints, 3, 32003)[1] == 0);
}

TEST_CASE("extraction needs the coordinate points on X") {
    const auto cfg = test_support::moment_curve(3, 8);
    const auto top = a_top_via_intersection(cfg);
    REQUIRE(top.count == 2);
    CHECK_THROWS_AS(extract_special_quadrics(cfg, Vec<Rational>(top.basis.row(0).transpose())), Error);
}

TEST_CASE("extracted quadrics are square-free, in I and satisfy both identity sets") {
    const auto cfg = coordinate_frame(test_support::moment_curve(3, 8)).second;
    const auto top = a_top_via_intersection(cfg);
    for (Index row = 0; row < top.count; ++row) {
        const auto ke = extract_special_quadrics(cfg, Vec<Rational>(top.basis.row(row).transpose()));
        CHECK_FALSE(ke.is_zero());
        CHECK(check_syzygy_relation(ke));
        CHECK(coefficient_identities(ke));
        for (int a = 0; a <= 3; ++a)
            for (int b = a + 1; b <= 3; ++b)
                for (int c = b + 1; c <= 3; ++c) {
                    const Quadric<Rational>& f = ke.F(a, b, c);
                    CHECK(vanishes_on_X(cfg, f));
                    // nothing outside x_a x_b, x_a x_c, x_b x_c
                    const Quadric<Rational> rest =
                        f - multiply(Vec<Rational>(variable<Rational>(3, a) * ke.lambda(a, b, c)), variable<Rational>(3, b)) -
                        multiply(Vec<Rational>(variable<Rational>(3, a) * ke.mu(a, b, c)), variable<Rational>(3, c)) -
                        multiply(Vec<Rational>(variable<Rational>(3, b) * ke.nu(a, b, c)), variable<Rational>(3, c));
                    CHECK(rest.is_zero());
                }
    }
}

TEST_CASE("single-coefficient mutations break both identity sets") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        auto g = spec(Family::Union, 4, 8, seed);
        g.s_a = 4;
        g.s_b = 4;
        const auto gen = generate<Fp>(g);
        const auto framed = coordinate_frame(gen.cfg).second;
        const auto top = a_top_via_intersection(framed);
        REQUIRE(top.count > 0);
        const auto ke = extract_special_quadrics(framed, Vec<Fp>(top.basis.row(0).transpose()));
        REQUIRE(check_syzygy_relation(ke));
        REQUIRE(coefficient_identities(ke));
        for (int a = 0; a + 2 <= 4; ++a) {
            KoszulElement<Fp> bad = ke;
            bad.F(a, a + 1, a + 2).coeffs(monomial_basis(4, 2).index_of_product({a, a + 2})) += Fp(3, 32003);
            CHECK_FALSE(check_syzygy_relation(bad));
            CHECK_FALSE(coefficient_identities(bad));
        }
    }
}

TEST_CASE("extraction refuses an alpha outside the intersection") {
    const auto cfg = coordinate_frame(test_support::moment_curve(3, 8)).second;
    const auto top = a_top_via_intersection(cfg);
    Vec<Rational> alpha = top.basis.row(0).transpose();
    alpha(0) += 1;
    CHECK_THROWS_AS(extract_special_quadrics(cfg, alpha), Error);
}
