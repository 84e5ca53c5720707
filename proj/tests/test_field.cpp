#include "doctest.h"

#include "linstrand/field.hpp"

using namespace linstrand;

TEST_CASE("prime field arithmetic") {
    const Fp a(5, 7), b(4, 7);
    CHECK((a + b).value() == 2);
    CHECK((a - b).value() == 1);
    CHECK((b - a).value() == 6);
    CHECK((a * b).value() == 6);
    CHECK((a / b * b) == a);
    CHECK((-a).value() == 2);
    CHECK(a.inverse() * a == Fp(1, 7));
    for (long long x = 1; x < 32003; x += 977) CHECK(Fp(x, 32003) * Fp(x, 32003).inverse() == Fp(1, 32003));
}

TEST_CASE("unbound literals adopt the other modulus") {
    const Fp x(3, 11);
    CHECK((x + Fp(1)).modulus() == 11);
    CHECK((Fp(-1) * x).value() == 8);
    CHECK(Fp(0) == Fp(0, 11));
    CHECK(Fp(12) == Fp(1, 11));
    CHECK(Fp(0).is_zero());
}

TEST_CASE("mixing moduli throws FieldMismatch") {
    bool thrown = false;
    try {
        (void)(Fp(1, 7) + Fp(1, 11));
    } catch (const Error& e) {
        thrown = e.code() == ErrorCode::FieldMismatch;
    }
    CHECK(thrown);
}

TEST_CASE("zero has no inverse") { CHECK_THROWS_AS(Fp(0, 7).inverse(), std::domain_error); }

TEST_CASE("field descriptors round-trip through text") {
    CHECK(FieldDesc::parse("rational").is_rational());
    CHECK(FieldDesc::parse("fp:32003") == FieldDesc::prime(32003));
    CHECK(FieldDesc::prime(101).to_string() == "fp:101");
    CHECK(FieldDesc::parse(FieldDesc::rational().to_string()) == FieldDesc::rational());
    CHECK_THROWS_AS(FieldDesc::parse("fp:32004"), Error);
    CHECK_THROWS_AS(FieldDesc::parse("complex"), Error);
}

TEST_CASE("scalar parsing") {
    const FieldDesc q = FieldDesc::rational(), p = FieldDesc::prime(7);
    CHECK(parse_scalar<Rational>("-3/6", q) == Rational(-1) / 2);
    CHECK(to_string(parse_scalar<Rational>("4/8", q)) == "1/2");
    // 1/2 = 4 mod 7
    CHECK(parse_scalar<Fp>("1/2", p).value() == 4);
    CHECK(parse_scalar<Fp>("-1", p).value() == 6);
    CHECK(to_string(parse_scalar<Fp>("10", p)) == "3");
    CHECK_THROWS_AS(parse_scalar<Rational>("1/0", q), Error);
    CHECK_THROWS_AS(parse_scalar<Fp>("1/7", p), Error);
    CHECK_THROWS_AS(parse_scalar<Rational>("abc", q), Error);
}

TEST_CASE("parity") {
    CHECK(parity<Rational>(0) == 1);
    CHECK(parity<Rational>(3) == -1);
    CHECK(parity<Rational>(-2) == 1);
    CHECK(parity<Rational>(-1) == -1);
}
