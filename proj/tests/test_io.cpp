#include "doctest.h"

#include <cstdio>
#include <functional>
#include <fstream>

#include "linstrand/io.hpp"
#include "support.hpp"

using namespace linstrand;

namespace {

const FieldDesc F = FieldDesc::prime(32003);

std::string parse_error_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code() == ErrorCode::ParseError ? std::string(e.what()) : "other error";
    }
    return "no error";
}

Generated<Fp> union_gen() {
    GenSpec g;
    g.family = Family::Union;
    g.n = 5;
    g.k = 2;
    g.r = 3;
    g.s_a = 5;
    g.s_b = 4;
    g.field = F;
    g.seed = 9;
    return generate<Fp>(g);
}

}  // namespace

TEST_CASE("field descriptors") {
    CHECK(field_from_json(field_to_json(F)) == F);
    CHECK(field_from_json(field_to_json(FieldDesc::rational())) == FieldDesc::rational());
    CHECK(field_from_json(Json("Q")) == FieldDesc::rational());
    CHECK(field_from_json(Json("fp:7")) == FieldDesc::prime(7));
    CHECK(parse_error_of([] { field_from_json(Json::parse(R"({"kind":"fp"})")); }).find("field.p") != std::string::npos);
}

TEST_CASE("configurations round-trip over both fields") {
    const auto gen = union_gen();
    const Json j = config_to_json(gen.cfg);
    CHECK(config_field(j) == F);
    CHECK(config_from_json<Fp>(j, F).coordinate_matrix() == gen.cfg.coordinate_matrix());
    const auto q = test_support::moment_curve(3, 6);
    const Json jq = config_to_json(q);
    CHECK(config_from_json<Rational>(jq, FieldDesc::rational()).coordinate_matrix() == q.coordinate_matrix());
    CHECK(config_field(jq, F) == F);
}

TEST_CASE("config parse errors name the field") {
    CHECK(parse_error_of([] { config_from_json<Fp>(Json::parse(R"({"n":2})"), F); }).find("points") != std::string::npos);
    CHECK(parse_error_of([] {
              config_from_json<Fp>(Json::parse(R"({"n":2,"points":[["1","0","0"],["0","1"]]})"), F);
          }).find("points[1]") != std::string::npos);
    CHECK(parse_error_of([] {
              config_from_json<Fp>(Json::parse(R"({"n":1,"points":[["1","0"],["x","1"]]})"), F);
          }).find("points[1][0]") != std::string::npos);
    CHECK(parse_error_of([] { config_from_json<Fp>(Json::parse(R"({"n":"three","points":[]})"), F); }).find("n") !=
          std::string::npos);
}

TEST_CASE("strand and position") {
    LinearStrand a{{3, 2, 0}};
    CHECK(strand_from_json(strand_to_json(a)) == a);
    const Position g = GeneralPosition{};
    CHECK(std::holds_alternative<GeneralPosition>(position_from_json(position_to_json(g))));
    const Position sp = SpecialPosition{1, {0, 2, 3, 5}};
    const auto back = position_from_json(position_to_json(sp));
    REQUIRE(std::holds_alternative<SpecialPosition>(back));
    CHECK(std::get<SpecialPosition>(back).i == 1);
    CHECK(std::get<SpecialPosition>(back).witness == std::vector<int>{0, 2, 3, 5});
    CHECK(parse_error_of([] { strand_from_json(Json::parse(R"([1,"x"])")); }).find("strand") != std::string::npos);
}

TEST_CASE("verdicts round-trip with witnesses") {
    const auto gen = union_gen();
    const auto v = classify(gen.cfg);
    REQUIRE(v.union_witness.has_value());
    const Json j = verdict_to_json(v);
    CHECK(j["tag"] == "OnUnion");
    const auto back = verdict_from_json<Fp>(j, F);
    CHECK(back.tag == v.tag);
    CHECK(back.strand == v.strand);
    CHECK(back.provenance == v.provenance);
    REQUIRE(back.union_witness.has_value());
    CHECK(check_union_witness(gen.cfg, *back.union_witness));
    CHECK(verdict_to_json(back) == j);

    const auto q = test_support::moment_curve(3, 7);
    const auto vr = classify(q);
    const Json jr = verdict_to_json(vr);
    const auto rb = verdict_from_json<Rational>(jr, FieldDesc::rational());
    REQUIRE(rb.rnc.has_value());
    CHECK(check_rnc_witness(q, *rb.rnc));
    CHECK(verdict_to_json(rb) == jr);
}

TEST_CASE("koszul elements, split inputs and certificates round-trip") {
    const auto gen = union_gen();
    const auto framed = extraction_frame(gen.cfg);
    const auto top = a_top_via_intersection(framed);
    const auto ke = extract_special_quadrics(framed, Vec<Fp>(top.basis.row(0).transpose()));
    const auto kb = koszul_from_json<Fp>(koszul_to_json(ke), F);
    CHECK(kb.components == ke.components);

    const auto inputs = harvest_split_inputs(gen.cfg);
    REQUIRE_FALSE(inputs.empty());
    const Json ji = split_input_to_json(inputs[0]);
    const auto ib = split_input_from_json<Fp>(ji, F);
    CHECK(split_input_to_json(ib) == ji);

    const auto cert = derive_certificate(inputs[0], false);
    const Json jc = certificate_to_json(cert);
    const auto cb = certificate_from_json<Fp>(jc, F);
    CHECK(certificate_to_json(cb) == jc);
    CHECK(check_certificate(ib.cfg, cb, ib.span()));
}

TEST_CASE("generator specs") {
    GenSpec g;
    g.family = Family::SpecialRandom;
    g.n = 5;
    g.s = 9;
    g.i = 1;
    g.field = F;
    g.seed = 77;
    const auto back = genspec_from_json(genspec_to_json(g));
    CHECK(back.family == g.family);
    CHECK(back.n == 5);
    CHECK(back.s == 9);
    CHECK(back.i == 1);
    CHECK(back.seed == 77);
    CHECK(back.field == F);
    CHECK(parse_error_of([] { genspec_from_json(Json::parse(R"({"family":"spiral","n":3})")); }) != "no error");
}

TEST_CASE("reading files") {
    const std::string path = "linstrand_io_test.json";
    {
        std::ofstream out(path);
        out << "{\"n\": 2, \"points\": [";
    }
    const auto msg = parse_error_of([&] { read_json_file(path); });
    CHECK(msg.find("byte") != std::string::npos);
    std::remove(path.c_str());
    CHECK(parse_error_of([] { read_json_file("does/not/exist.json"); }) != "no error");
}
