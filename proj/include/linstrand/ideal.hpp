#pragma once

#include <map>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "linstrand/projective.hpp"

namespace linstrand {

/// Degree-d monomials in x_0..x_n, graded lex with x_0 > ... > x_n.
class MonomialBasis {
public:
    MonomialBasis(int n, int d);

    int n() const { return n_; }
    int degree() const { return d_; }
    Index size() const { return static_cast<Index>(exps_.size()); }
    const std::vector<int>& exponents(Index i) const { return exps_[static_cast<std::size_t>(i)]; }
    Index index(const std::vector<int>& exps) const;
    /// Index of the product of the listed variables (repeats allowed).
    Index index_of_product(std::initializer_list<int> vars) const;
    Index index_of_product(const std::vector<int>& vars) const;

private:
    int n_, d_;
    std::vector<std::vector<int>> exps_;
    std::map<std::vector<int>, Index> lookup_;
};

/// Shared immutable basis for (n, d); thread-safe.
const MonomialBasis& monomial_basis(int n, int d);

/// Largest degree the ideal module works in.
inline constexpr int kMaxDegree = 4;

template <class S> using LinearForm = Vec<S>;

/// A homogeneous form stored by coefficients in MonomialBasis order.
template <class S> struct Form {
    int n = 0;
    int degree = 0;
    Vec<S> coeffs;

    bool is_zero() const { return is_zero_matrix<S>(coeffs); }
    friend bool operator==(const Form& a, const Form& b) {
        return a.n == b.n && a.degree == b.degree && a.coeffs == b.coeffs;
    }
};

template <class S> using Quadric = Form<S>;

template <class S> Form<S> zero_form(int n, int d);
template <class S> Form<S> from_linear(const LinearForm<S>& l);
template <class S> LinearForm<S> variable(int n, int i);
template <class S> Form<S> multiply(const Form<S>& a, const Form<S>& b);
template <class S> Form<S> multiply(const LinearForm<S>& a, const LinearForm<S>& b);
template <class S> Form<S> operator+(const Form<S>& a, const Form<S>& b);
template <class S> Form<S> operator-(const Form<S>& a, const Form<S>& b);
template <class S> Form<S> scale(const Form<S>& a, const S& c);

template <class S> S evaluate(const Form<S>& f, const Vec<S>& point);
template <class S> S evaluate(const LinearForm<S>& l, const Vec<S>& point) { return l.dot(point); }

/// Coefficient of the monomial given by the variable list.
template <class S> S coefficient(const Form<S>& f, std::initializer_list<int> vars);

/// Exact quotient f / l, or nullopt when l does not divide f.
template <class S> std::optional<Form<S>> divide(const Form<S>& f, const LinearForm<S>& l);

/// s x C(n+d, d); entry (i, m) is monomial m at point i.
template <class S> Mat<S> evaluation_matrix(const PointConfig<S>& cfg, int d);

/// Forms of degree d through X, one per row of `basis`.
template <class S> struct FormSpace {
    int n = 0;
    int degree = 0;
    Mat<S> basis;

    Index dim() const { return basis.rows(); }
    Form<S> form(Index k) const { return Form<S>{n, degree, basis.row(k).transpose()}; }
};

template <class S> FormSpace<S> ideal_degree_part(const PointConfig<S>& cfg, int d);
template <class S> Index hilbert_function(const PointConfig<S>& cfg, int d);
template <class S> bool contains(const FormSpace<S>& space, const Form<S>& f);

/// Index of the first point where f is nonzero.
template <class S> std::optional<std::size_t> first_nonvanishing_point(const PointConfig<S>& cfg, const Form<S>& f);
template <class S> bool vanishes_on_X(const PointConfig<S>& cfg, const Form<S>& f) {
    return !first_nonvanishing_point(cfg, f).has_value();
}
/// L*M vanishes on X, i.e. every point lies on {L=0} or {M=0}.
template <class S> bool product_in_ideal(const PointConfig<S>& cfg, const LinearForm<S>& l, const LinearForm<S>& m);

struct NotSplit {};
struct NotSplitOverField {};

template <class S> using SplitResult = std::variant<std::pair<LinearForm<S>, LinearForm<S>>, NotSplit, NotSplitOverField>;

/// Factor q as a product of two linear forms over the base field.
template <class S> SplitResult<S> split_quadric(const Quadric<S>& q, const FieldDesc& field);

/// Square root in the field, when one exists.
std::optional<Fp> sqrt_mod(const Fp& a);
std::optional<Rational> sqrt_rational(const Rational& a);

}  // namespace linstrand
