#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <type_traits>

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include "linstrand/errors.hpp"

namespace linstrand {

// Exact rationals, always in lowest terms with a positive denominator (GMP
// canonicalizes every result).  Expression templates are disabled so that
// Eigen sees plain values.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

struct FieldDesc {
    enum class Kind { Rational, PrimeField };

    Kind kind = Kind::PrimeField;
    std::uint32_t p = 32003;

    static FieldDesc rational() { return {Kind::Rational, 0}; }
    static FieldDesc prime(std::uint32_t p) { return {Kind::PrimeField, p}; }

    bool is_rational() const { return kind == Kind::Rational; }
    bool operator==(const FieldDesc&) const = default;

    // "rational" or "fp:<p>"
    std::string to_string() const;
    static FieldDesc parse(std::string_view text);
};

bool is_prime(std::uint64_t n);

// Residue class modulo a runtime prime.  A value built from a plain int has
// no modulus yet ("unbound") and adopts the modulus of whatever bound value
// it meets; this is what lets Eigen write Scalar(0) and Scalar(1) without
// knowing the field.  Mixing two different bound moduli throws FieldMismatch.
class Fp {
public:
    Fp() = default;
    Fp(int literal) : v_(static_cast<std::uint32_t>(literal)), p_(0) {}  // NOLINT: Eigen needs implicit
    Fp(long long value, std::uint32_t p) : v_(reduce(value, p)), p_(p) {}

    std::uint32_t value() const { return v_; }
    std::uint32_t modulus() const { return p_; }
    bool bound() const { return p_ != 0; }
    bool is_zero() const { return p_ == 0 ? literal() == 0 : v_ == 0; }

    Fp inverse() const;

    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }

    friend Fp operator+(const Fp& a, const Fp& b) {
        const std::uint32_t p = common(a, b);
        if (p == 0) return Fp(static_cast<int>(a.literal() + b.literal()));
        std::uint64_t s = std::uint64_t(a.at(p)) + b.at(p);
        if (s >= p) s -= p;
        return raw(static_cast<std::uint32_t>(s), p);
    }
    friend Fp operator-(const Fp& a, const Fp& b) {
        const std::uint32_t p = common(a, b);
        if (p == 0) return Fp(static_cast<int>(a.literal() - b.literal()));
        const std::uint32_t x = a.at(p), y = b.at(p);
        return raw(x >= y ? x - y : x + (p - y), p);
    }
    friend Fp operator*(const Fp& a, const Fp& b) {
        const std::uint32_t p = common(a, b);
        if (p == 0) return Fp(static_cast<int>(a.literal() * b.literal()));
        return raw(static_cast<std::uint32_t>(std::uint64_t(a.at(p)) * b.at(p) % p), p);
    }
    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
    friend Fp operator-(const Fp& a) { return Fp(0) - a; }

    friend bool operator==(const Fp& a, const Fp& b) {
        const std::uint32_t p = common(a, b);
        if (p == 0) return a.literal() == b.literal();
        return a.at(p) == b.at(p);
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Fp& x);

private:
    static Fp raw(std::uint32_t v, std::uint32_t p) {
        Fp r;
        r.v_ = v;
        r.p_ = p;
        return r;
    }
    static std::uint32_t reduce(long long value, std::uint32_t p) {
        if (p == 0) fail(ErrorCode::FieldMismatch, "prime field element needs a modulus");
        long long r = value % static_cast<long long>(p);
        if (r < 0) r += p;
        return static_cast<std::uint32_t>(r);
    }
    static std::uint32_t common(const Fp& a, const Fp& b) {
        if (a.p_ == 0) return b.p_;
        if (b.p_ != 0 && b.p_ != a.p_) fail(ErrorCode::FieldMismatch, "residues modulo different primes");
        return a.p_;
    }
    long long literal() const { return static_cast<std::int32_t>(v_); }
    std::uint32_t at(std::uint32_t p) const { return p_ == 0 ? reduce(literal(), p) : v_; }

    std::uint32_t v_ = 0;
    std::uint32_t p_ = 0;
};

inline bool is_zero(const Fp& x) { return x.is_zero(); }
inline bool is_zero(const Rational& x) { return x.is_zero(); }

std::string to_string(const Fp& x);
std::string to_string(const Rational& x);

// Field-aware construction and parsing.  Strings are "a", "-a" or "a/b";
// over F_p a fraction is mapped through the inverse of b.
template <class S> S make_scalar(long long value, const FieldDesc& field);
template <class S> S parse_scalar(std::string_view text, const FieldDesc& field);

template <> Fp make_scalar<Fp>(long long value, const FieldDesc& field);
template <> Rational make_scalar<Rational>(long long value, const FieldDesc& field);
template <> Fp parse_scalar<Fp>(std::string_view text, const FieldDesc& field);
template <> Rational parse_scalar<Rational>(std::string_view text, const FieldDesc& field);

// The scalar type a FieldDesc kind is computed with.
template <class S> constexpr bool is_rational_scalar = std::is_same_v<S, Rational>;

/// (-1)^e as a field element; e may be negative.
template <class S> S parity(int e) { return (e % 2 == 0) ? S(1) : S(-1); }

}  // namespace linstrand

namespace Eigen {

template <> struct NumTraits<linstrand::Fp> : GenericNumTraits<linstrand::Fp> {
    using Real = linstrand::Fp;
    using NonInteger = linstrand::Fp;
    using Literal = linstrand::Fp;
    using Nested = linstrand::Fp;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 2,
        MulCost = 4,
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
    static inline Real highest() { return Real(0); }
    static inline Real lowest() { return Real(0); }
};

}  // namespace Eigen
