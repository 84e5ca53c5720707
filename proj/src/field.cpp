#include "linstrand/field.hpp"

#include <charconv>
#include <ostream>

namespace linstrand {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

// Splits "a/b" into its parts; b defaults to "1".
std::pair<std::string_view, std::string_view> split_fraction(std::string_view text) {
    text = trim(text);
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    num = trim(num);
    den = trim(den);
    if (!is_integer_literal(num) || !is_integer_literal(den))
        fail(ErrorCode::ParseError, "not a rational literal: '" + std::string(text) + "'");
    return {num, den};
}

// Residue of a decimal integer literal of any length.
std::uint32_t residue(std::string_view digits, std::uint32_t p) {
    bool negative = false;
    if (digits.front() == '-' || digits.front() == '+') {
        negative = digits.front() == '-';
        digits.remove_prefix(1);
    }
    std::uint64_t r = 0;
    for (char c : digits) r = (r * 10 + static_cast<std::uint64_t>(c - '0')) % p;
    if (negative && r != 0) r = p - r;
    return static_cast<std::uint32_t>(r);
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::string FieldDesc::to_string() const {
    return is_rational() ? std::string("rational") : "fp:" + std::to_string(p);
}

FieldDesc FieldDesc::parse(std::string_view text) {
    text = trim(text);
    if (text == "rational" || text == "Q") return rational();
    if (text.substr(0, 3) == "fp:") {
        std::uint32_t p = 0;
        const auto digits = text.substr(3);
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
        if (ec != std::errc() || ptr != digits.data() + digits.size() || !is_prime(p))
            fail(ErrorCode::ParseError, "bad prime in field descriptor '" + std::string(text) + "'");
        return prime(p);
    }
    fail(ErrorCode::ParseError, "unknown field descriptor '" + std::string(text) + "'");
}

Fp Fp::inverse() const {
    if (p_ == 0) {
        if (literal() == 1 || literal() == -1) return *this;
        fail(ErrorCode::FieldMismatch, "cannot invert an unbound residue");
    }
    if (v_ == 0) throw std::domain_error("division by zero in F_p");
    // extended Euclid on (v, p)
    long long a = v_, b = p_, x0 = 1, x1 = 0;
    while (b != 0) {
        const long long q = a / b;
        a -= q * b;
        std::swap(a, b);
        x0 -= q * x1;
        std::swap(x0, x1);
    }
    return Fp(x0, p_);
}

std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << to_string(x); }

std::string to_string(const Fp& x) {
    return x.bound() ? std::to_string(x.value()) : std::to_string(static_cast<std::int32_t>(x.value()));
}

std::string to_string(const Rational& x) { return x.str(); }

template <> Fp make_scalar<Fp>(long long value, const FieldDesc& field) {
    if (field.is_rational()) fail(ErrorCode::FieldMismatch, "prime-field scalar requested for a rational field");
    return Fp(value, field.p);
}

template <> Rational make_scalar<Rational>(long long value, const FieldDesc& field) {
    if (!field.is_rational()) fail(ErrorCode::FieldMismatch, "rational scalar requested for a prime field");
    return Rational(value);
}

template <> Fp parse_scalar<Fp>(std::string_view text, const FieldDesc& field) {
    if (field.is_rational()) fail(ErrorCode::FieldMismatch, "prime-field scalar requested for a rational field");
    const auto [num, den] = split_fraction(text);
    const Fp d(residue(den, field.p), field.p);
    if (d.is_zero()) fail(ErrorCode::ParseError, "denominator divisible by p in '" + std::string(text) + "'");
    return Fp(residue(num, field.p), field.p) / d;
}

template <> Rational parse_scalar<Rational>(std::string_view text, const FieldDesc& field) {
    if (!field.is_rational()) fail(ErrorCode::FieldMismatch, "rational scalar requested for a prime field");
    const auto [num, den] = split_fraction(text);
    if (den.find_first_not_of("+-0") == std::string_view::npos)
        fail(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    auto integer = [](std::string_view digits) {
        if (digits.front() == '+') digits.remove_prefix(1);
        return Rational(boost::multiprecision::mpz_int(std::string(digits)));
    };
    return integer(num) / integer(den);
}

}  // namespace linstrand
