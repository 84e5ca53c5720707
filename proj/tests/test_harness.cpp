#include "doctest.h"

#include "linstrand/harness.hpp"
#include "support.hpp"

using namespace linstrand;

namespace {

const FieldDesc F = FieldDesc::prime(32003);

}  // namespace

TEST_CASE("generators are deterministic in the seed") {
    GenSpec g;
    g.family = Family::Rnc;
    g.n = 4;
    g.s = 9;
    g.field = F;
    g.seed = 17;
    CHECK(generate<Fp>(g).cfg.coordinate_matrix() == generate<Fp>(g).cfg.coordinate_matrix());
    g.seed = 18;
    const auto other = generate<Fp>(g).cfg.coordinate_matrix();
    g.seed = 17;
    CHECK(other != generate<Fp>(g).cfg.coordinate_matrix());
}

TEST_CASE("rnc family lies on its curve") {
    GenSpec g;
    g.family = Family::Rnc;
    g.n = 3;
    g.s = 8;
    g.field = F;
    g.seed = 1;
    const auto gen = generate<Fp>(g);
    CHECK(gen.truth.params.size() == 8);
    // the frame image of (1, t, ..., t^n) is each point
    for (std::size_t p = 0; p < gen.cfg.size(); ++p) {
        Vec<Fp> v(4);
        Fp pw = Fp(1, 32003);
        for (int l = 0; l <= 3; ++l, pw *= gen.truth.params[p]) v(l) = pw;
        CHECK(ProjPoint<Fp>(Vec<Fp>(gen.truth.frame * v)) == gen.cfg[p]);
    }
}

TEST_CASE("union family puts each point on its subspace") {
    GenSpec g;
    g.family = Family::Union;
    g.n = 3;
    g.k = 1;
    g.r = 2;
    g.s_a = 4;
    g.s_b = 5;
    g.field = F;
    g.seed = 2;
    const auto gen = generate<Fp>(g);
    REQUIRE(gen.truth.planted_union.has_value());
    CHECK(check_union_witness(gen.cfg, *gen.truth.planted_union));
    CHECK(gen.cfg.size() == 9);
}

TEST_CASE("general family is in general position") {
    GenSpec g;
    g.family = Family::GeneralRandom;
    g.n = 4;
    g.s = 9;
    g.field = F;
    g.seed = 3;
    CHECK(is_general_position(generate<Fp>(g).cfg));
}

TEST_CASE("special family plants exactly index i") {
    for (int i = 0; i <= 2; ++i) {
        GenSpec g;
        g.family = Family::SpecialRandom;
        g.n = 4;
        g.i = i;
        g.s = 7;
        g.field = F;
        g.seed = 4;
        const auto gen = generate<Fp>(g);
        const auto pos = special_position_index(gen.cfg);
        REQUIRE(std::holds_alternative<SpecialPosition>(pos));
        CHECK(std::get<SpecialPosition>(pos).i == i);
        CHECK(gen.truth.planted_subset.size() == static_cast<std::size_t>(4 - i + 1));
        CHECK(subset_rank(gen.cfg, gen.truth.planted_subset) == 4 - i);
    }
}

TEST_CASE("inconsistent generator parameters") {
    GenSpec g;
    g.family = Family::Union;
    g.n = 3;
    g.k = 1;
    g.r = 1;
    g.s_a = 3;
    g.s_b = 3;
    g.field = F;
    CHECK_THROWS_AS(generate<Fp>(g), Error);
    GenSpec sp;
    sp.family = Family::SpecialRandom;
    sp.n = 4;
    sp.i = 0;
    sp.s = 8;  // three points on the line plus any other make a degenerate 4-set
    sp.field = F;
    bool invalid = false;
    try {
        generate<Fp>(sp);
    } catch (const Error& e) {
        invalid = e.code() == ErrorCode::InvalidConfig;
    }
    CHECK(invalid);
    GenSpec q;
    q.family = Family::Rnc;
    q.n = 3;
    q.s = 7;
    q.field = FieldDesc::rational();
    CHECK_THROWS_AS(generate<Fp>(q), Error);
}

TEST_CASE("strand oracle agrees with the library on all families") {
    for (Family fam : {Family::Rnc, Family::GeneralRandom, Family::SpecialRandom})
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            GenSpec g;
            g.family = fam;
            g.n = 3;
            g.s = 7;
            g.i = 1;
            g.field = F;
            g.seed = seed;
            const auto cfg = generate<Fp>(g).cfg;
            CHECK(strand_oracle(cfg) == strand_betti(cfg));
        }
}

TEST_CASE("bipartition oracle finds planted unions and rejects curves") {
    GenSpec g;
    g.family = Family::Union;
    g.n = 4;
    g.k = 2;
    g.r = 2;
    g.s_a = 4;
    g.s_b = 4;
    g.field = F;
    g.seed = 6;
    const auto gen = generate<Fp>(g);
    const auto w = bipartition_oracle(gen.cfg);
    REQUIRE(w.has_value());
    CHECK(check_union_witness(gen.cfg, *w));
    CHECK(w->k + w->r == 4);
    // 7 points on the twisted cubic: no 4 of them are coplanar
    CHECK_FALSE(bipartition_oracle(test_support::moment_curve(3, 7)).has_value());
}
