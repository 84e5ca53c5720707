#include "doctest.h"

#include "linstrand/classify.hpp"
#include "linstrand/harness.hpp"
#include "support.hpp"

using namespace linstrand;
using test_support::q_vec;

namespace {

const FieldDesc F = FieldDesc::prime(32003);

GenSpec union_spec(int k, int r, int s_a, int s_b, std::uint64_t seed) {
    GenSpec g;
    g.family = Family::Union;
    g.n = k + r;
    g.k = k;
    g.r = r;
    g.s_a = s_a;
    g.s_b = s_b;
    g.field = F;
    g.seed = seed;
    return g;
}

}  // namespace

TEST_CASE("verdict names round-trip") {
    for (VerdictTag t : {VerdictTag::NoLinearStrand, VerdictTag::OnRnc, VerdictTag::OnUnion, VerdictTag::UnsplitOverBaseField})
        CHECK(parse_verdict(verdict_name(t)) == t);
    CHECK(verdict_name(VerdictTag::OnRnc) == "OnRNC");
}

TEST_CASE("twisted cubic through eight points") {
    const auto cfg = test_support::moment_curve(3, 8);
    const auto v = classify(cfg);
    CHECK(v.tag == VerdictTag::OnRnc);
    REQUIRE(v.rnc.has_value());
    CHECK(check_rnc_witness(cfg, *v.rnc));
    CHECK(test_support::on_curve_by_substitution(cfg, *v.rnc));
    CHECK(v.provenance == std::vector<std::string>{"rnc"});
    CHECK_FALSE(v.used_fallback());
}

TEST_CASE("points sampled on the moment curve, seven of them") {
    const auto cfg = test_support::moment_curve(3, 7);
    const auto r = rnc_witness(cfg);
    REQUIRE(std::holds_alternative<RncWitness<Rational>>(r));
    CHECK(test_support::on_curve_by_substitution(cfg, std::get<RncWitness<Rational>>(r)));
}

TEST_CASE("n+3 general points always lie on a curve") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GenSpec g;
        g.family = Family::GeneralRandom;
        g.n = 2 + static_cast<int>(seed % 3);
        g.s = g.n + 3;
        g.field = F;
        g.seed = seed;
        const auto cfg = generate<Fp>(g).cfg;
        const auto r = rnc_witness(cfg);
        REQUIRE(std::holds_alternative<RncWitness<Fp>>(r));
        CHECK(test_support::on_curve_by_substitution(cfg, std::get<RncWitness<Fp>>(r)));
    }
}

TEST_CASE("a point off the curve is detected") {
    auto rows = std::vector<Vec<Rational>>{};
    const auto base = test_support::moment_curve(3, 7);
    for (const auto& p : base.points()) rows.push_back(p.coords());
    rows.push_back(q_vec({1, 2, 3, 5}));
    const auto cfg = make_config<Rational>(3, FieldDesc::rational(), rows);
    CHECK(std::holds_alternative<NotOnRnc>(rnc_witness(cfg)));
}

TEST_CASE("seven general points in P^3 have no strand") {
    const auto cfg = make_config<Rational>(3, FieldDesc::rational(),
                                           {q_vec({1, 0, 0, 0}), q_vec({0, 1, 0, 0}), q_vec({0, 0, 1, 0}), q_vec({0, 0, 0, 1}),
                                            q_vec({1, 1, 1, 1}), q_vec({1, 2, 5, 11}), q_vec({1, -3, 7, 2})});
    const auto v = classify(cfg);
    CHECK(v.tag == VerdictTag::NoLinearStrand);
    CHECK_FALSE(v.rnc.has_value());
    CHECK_FALSE(v.union_witness.has_value());
}

TEST_CASE("five and five points on two skew lines") {
    std::vector<Vec<Rational>> rows;
    for (int t = 0; t < 5; ++t) rows.push_back(q_vec({1, t, 0, 0}));
    for (int t = 0; t < 5; ++t) rows.push_back(q_vec({0, 0, 1, t}));
    const auto cfg = make_config<Rational>(3, FieldDesc::rational(), rows);
    CHECK(strand_betti(cfg).a(2) > 0);
    const auto v = classify(cfg);
    CHECK(v.tag == VerdictTag::OnUnion);
    REQUIRE(v.union_witness.has_value());
    CHECK(v.union_witness->k + v.union_witness->r == 3);
    CHECK(v.union_witness->k == 1);
    CHECK(check_union_witness(cfg, *v.union_witness));
    CHECK_FALSE(v.used_fallback());
}

TEST_CASE("coordinate points plus extras on a union") {
    // P^1 = {x2 = x3 = 0} and P^2 = {x0 = 0}
    const auto cfg = make_config<Rational>(3, FieldDesc::rational(),
                                           {q_vec({1, 0, 0, 0}), q_vec({0, 1, 0, 0}), q_vec({0, 0, 1, 0}), q_vec({0, 0, 0, 1}),
                                            q_vec({1, 1, 0, 0}), q_vec({1, 2, 0, 0}), q_vec({0, 1, 1, 1}), q_vec({0, 1, 2, 3})});
    const auto v = classify(cfg);
    CHECK(v.tag == VerdictTag::OnUnion);
    REQUIRE(v.union_witness.has_value());
    CHECK(check_union_witness(cfg, *v.union_witness));
    CHECK(bipartition_oracle(cfg).has_value());
}

TEST_CASE("normalization puts the degenerate subspace on the last coordinates") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        GenSpec g;
        g.family = Family::SpecialRandom;
        g.n = 4;
        g.i = static_cast<int>(seed % 3);
        g.s = std::max(6, 4 - g.i + 1 + std::min(2, max_special_off(4, g.i)));
        g.field = F;
        g.seed = seed;
        const auto cfg = generate<Fp>(g).cfg;
        const auto pos = special_position_index(cfg);
        REQUIRE(std::holds_alternative<SpecialPosition>(pos));
        const auto& sp = std::get<SpecialPosition>(pos);
        const auto nm = normalize_special(cfg, sp);
        CHECK(contains_coordinate_points(nm.cfg));
        const int i = sp.i;
        const auto& q = nm.cfg[static_cast<std::size_t>(nm.q_index)];
        for (int l = 0; l < 4 - i; ++l) CHECK_FALSE(is_zero(q[l]));
        for (int l = 4 - i; l <= 4; ++l) CHECK(is_zero(q[l]));
    }
}

TEST_CASE("union families classify with verified witnesses") {
    int n_union = 0;
    for (auto [k, r] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 2}, {2, 3}})
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto gen = generate<Fp>(union_spec(k, r, k + 2, r + 2, seed));
            const auto v = classify(gen.cfg);
            CHECK(v.tag == VerdictTag::OnUnion);
            REQUIRE(v.union_witness.has_value());
            CHECK(check_union_witness(gen.cfg, *v.union_witness));
            CHECK_FALSE(v.used_fallback());
            CHECK(bipartition_oracle(gen.cfg).has_value());
            ++n_union;
        }
    CHECK(n_union == 20);
}

TEST_CASE("every alpha row reaches a union witness without fallback") {
    // other rows exercise step 1 and its delegated split
    std::set<std::string> paths;
    for (auto [k, r] : std::vector<std::pair<int, int>>{{1, 3}, {2, 3}, {1, 4}})
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            // a frame on the P^r side: row 0 still takes step 2, later rows take step 1
            const auto gen = generate<Fp>(union_spec(k, r, k + 3, r + 1, seed));
            const Index top = strand_betti(gen.cfg).a(k + r - 1);
            for (Index row = 0; row < top; ++row) {
                ClassifyOptions<Fp> opts;
                opts.allow_fallback = false;
                opts.alpha_row = row;
                const auto v = classify(gen.cfg, opts);
                CHECK(v.tag == VerdictTag::OnUnion);
                REQUIRE(v.union_witness.has_value());
                CHECK(check_union_witness(gen.cfg, *v.union_witness));
                std::string path;
                for (const auto& p : v.provenance) path += p + " ";
                paths.insert(path);
            }
        }
    CHECK(paths.count("step1 split:basis+varout ") == 1);
    CHECK(paths.count("step2 bigdim ") == 1);
}

TEST_CASE("special configurations agree with the bipartition oracle") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        GenSpec g;
        g.family = Family::SpecialRandom;
        g.n = 3 + static_cast<int>(seed % 3);
        g.i = static_cast<int>(seed % static_cast<std::uint64_t>(g.n - 1));
        g.s = std::min(g.n + 4, g.n - g.i + 1 + max_special_off(g.n, g.i));
        g.field = F;
        g.seed = seed;
        const auto cfg = generate<Fp>(g).cfg;
        if (strand_betti(cfg).a(g.n - 1) == 0) continue;
        const auto v = classify(cfg);
        CHECK(v.tag == VerdictTag::OnUnion);
        CHECK(bipartition_oracle(cfg).has_value());
        CHECK_FALSE(v.used_fallback());
    }
}

TEST_CASE("alpha row out of range") {
    const auto gen = generate<Fp>(union_spec(1, 2, 3, 4, 1));
    ClassifyOptions<Fp> opts;
    opts.alpha_row = 99;
    CHECK_THROWS_AS(classify(gen.cfg, opts), Error);
}

TEST_CASE("W_j spaces hold the quotients F_{abj} / x_j") {
    const auto gen = generate<Fp>(union_spec(2, 3, 4, 5, 3));
    const auto pos = special_position_index(gen.cfg);
    REQUIRE(std::holds_alternative<SpecialPosition>(pos));
    const auto& sp = std::get<SpecialPosition>(pos);
    const auto nm = normalize_special(gen.cfg, sp);
    const auto top = a_top_via_intersection(nm.cfg);
    const auto ke = extract_special_quadrics(nm.cfg, Vec<Fp>(top.basis.row(0).transpose()));
    const int n = 5, i = sp.i;
    for (const auto& w : build_Wj(nm.cfg, i, ke)) {
        CHECK(w.j >= n - i);
        for (const auto& [key, l] : w.forms) {
            const auto [a, b] = key;
            const Quadric<Fp> prod = multiply(variable<Fp>(n, w.j), l);
            std::array<int, 3> t{a, b, w.j};
            std::sort(t.begin(), t.end());
            CHECK(prod == ke.F(t[0], t[1], t[2]));
        }
        CHECK(w.dim() <= n - i - 1);
    }
}
