#include "doctest.h"

#include <random>

#include "linstrand/harness.hpp"
#include "linstrand/projective.hpp"
#include "support.hpp"

using namespace linstrand;
using test_support::q_vec;

namespace {

const FieldDesc Q = FieldDesc::rational();

PointConfig<Rational> coordinate_points_plus(int n, std::vector<Vec<Rational>> extra) {
    std::vector<Vec<Rational>> rows;
    for (int l = 0; l <= n; ++l) {
        Vec<Rational> e = Vec<Rational>::Zero(n + 1);
        e(l) = 1;
        rows.push_back(e);
    }
    rows.insert(rows.end(), extra.begin(), extra.end());
    return make_config<Rational>(n, Q, rows);
}

}  // namespace

TEST_CASE("points are stored with leading coordinate 1") {
    const ProjPoint<Rational> p(q_vec({0, 2, 4}));
    CHECK(p[0] == 0);
    CHECK(p[1] == 1);
    CHECK(p[2] == 2);
    CHECK(ProjPoint<Rational>(q_vec({0, 3, 6})) == p);
}

TEST_CASE("configuration invariants") {
    // repeated point up to scaling
    CHECK_THROWS_AS(make_config<Rational>(2, Q, {q_vec({1, 0, 0}), q_vec({2, 0, 0}), q_vec({0, 1, 0}), q_vec({0, 0, 1})}), Error);
    // not spanning
    CHECK_THROWS_AS(make_config<Rational>(2, Q, {q_vec({1, 0, 0}), q_vec({0, 1, 0}), q_vec({1, 1, 0})}), Error);
    // zero vector
    CHECK_THROWS_AS(make_config<Rational>(2, Q, {q_vec({0, 0, 0}), q_vec({1, 0, 0}), q_vec({0, 1, 0}), q_vec({0, 0, 1})}), Error);
    // wrong length
    CHECK_THROWS_AS(make_config<Rational>(2, Q, {q_vec({1, 0}), q_vec({0, 1, 0}), q_vec({0, 0, 1})}), Error);
}

TEST_CASE("frame transform sends the frame to coordinate points and the unit point") {
    const auto cfg = make_config<Rational>(
        2, Q, {q_vec({1, 2, 3}), q_vec({0, 1, 5}), q_vec({2, 0, 1}), q_vec({1, 1, 1}), q_vec({3, 7, 11})});
    const auto [g, moved] = frame_transform(cfg, {0, 1, 2}, 4);
    for (int l = 0; l <= 2; ++l) {
        Vec<Rational> e = Vec<Rational>::Zero(3);
        e(l) = 1;
        CHECK(moved[static_cast<std::size_t>(l)].coords() == e);
    }
    CHECK(moved[4].coords() == q_vec({1, 1, 1}));
    // pulled-back forms vanish where the originals vanish
    const Vec<Rational> form = q_vec({0, 0, 1});  // x_2 = 0 contains e_0, e_1 after the move
    const Vec<Rational> back = g.pull_back_form(form);
    CHECK(back.dot(cfg[0].coords()) == 0);
    CHECK(back.dot(cfg[1].coords()) == 0);
    CHECK(back.dot(cfg[2].coords()) != 0);
}

TEST_CASE("a singular frame is refused") {
    const auto cfg = make_config<Rational>(2, Q, {q_vec({1, 0, 0}), q_vec({0, 1, 0}), q_vec({1, 1, 0}), q_vec({0, 0, 1})});
    CHECK_THROWS_AS(frame_transform(cfg, {0, 1, 2}), Error);
}

TEST_CASE("coordinate frame puts every e_l on X") {
    const auto cfg = test_support::moment_curve(3, 6);
    CHECK_FALSE(contains_coordinate_points(cfg));
    const auto [g, moved] = coordinate_frame(cfg);
    CHECK(contains_coordinate_points(moved));
    CHECK(first_basis_points(cfg) == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("general position") {
    CHECK(is_general_position(test_support::moment_curve(3, 7)));
    const auto flat = coordinate_points_plus(3, {q_vec({1, 1, 0, 0}), q_vec({1, 1, 1, 1})});
    CHECK_FALSE(is_general_position(flat));
    CHECK_THROWS_AS(is_general_position(test_support::moment_curve(3, 9), 3), Error);
}

TEST_CASE("special position index") {
    // general position reports GeneralPosition
    CHECK(std::holds_alternative<GeneralPosition>(special_position_index(test_support::moment_curve(3, 7))));
    // four points on the plane x_3 = 0, and no three collinear: i = 0
    const auto planar = coordinate_points_plus(3, {q_vec({1, 1, 1, 0}), q_vec({1, 2, 3, 1})});
    const auto p0 = special_position_index(planar);
    REQUIRE(std::holds_alternative<SpecialPosition>(p0));
    CHECK(std::get<SpecialPosition>(p0).i == 0);
    CHECK(std::get<SpecialPosition>(p0).witness.size() == 4);
    // three collinear points: i = 1
    const auto line = coordinate_points_plus(3, {q_vec({1, 1, 0, 0}), q_vec({1, 2, 3, 4}), q_vec({1, 3, 5, 7})});
    const auto p1 = special_position_index(line);
    REQUIRE(std::holds_alternative<SpecialPosition>(p1));
    CHECK(std::get<SpecialPosition>(p1).i == 1);
    CHECK(std::get<SpecialPosition>(p1).witness == std::vector<int>{0, 1, 4});
}

TEST_CASE("frame maps compose and invert") {
    std::mt19937_64 rng(3);
    const FieldDesc f = FieldDesc::prime(32003);
    const FrameMap<Fp> a(random_invertible<Fp>(4, f, rng)), b(random_invertible<Fp>(4, f, rng));
    const auto cfg = generate<Fp>(GenSpec{Family::Rnc, 3, 7, 0, 0, 0, 0, 0, f, 5}).cfg;
    CHECK(a.compose(b).apply(cfg).coordinate_matrix() == a.apply(b.apply(cfg)).coordinate_matrix());
    CHECK(a.inverse().apply(a.apply(cfg)).coordinate_matrix() == cfg.coordinate_matrix());
}
