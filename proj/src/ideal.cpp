#include "linstrand/ideal.hpp"

#include <memory>
#include <mutex>
#include <string>

#include "linstrand/combinatorics.hpp"

namespace linstrand {

namespace {

void generate(int vars_left, int degree_left, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
    if (vars_left == 1) {
        prefix.push_back(degree_left);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int e = degree_left; e >= 0; --e) {
        prefix.push_back(e);
        generate(vars_left - 1, degree_left - e, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

const MonomialBasis& monomial_basis(int n, int d) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<MonomialBasis>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{n, d}];
    if (!slot) slot = std::make_unique<MonomialBasis>(n, d);
    return *slot;
}

namespace {

const MonomialBasis& cached_basis(int n, int d) { return monomial_basis(n, d); }

void check_degree(int d) {
    if (d < 0 || d > kMaxDegree) fail(ErrorCode::OutOfRange, "degree " + std::to_string(d) + " outside 0.." + std::to_string(kMaxDegree));
}

template <class S> void check_form(const Form<S>& f) {
    if (f.coeffs.size() != cached_basis(f.n, f.degree).size())
        fail(ErrorCode::DimensionMismatch, "form has the wrong number of coefficients");
}

}  // namespace

MonomialBasis::MonomialBasis(int n, int d) : n_(n), d_(d) {
    if (n < 0 || d < 0) fail(ErrorCode::OutOfRange, "negative monomial basis parameters");
    std::vector<int> prefix;
    generate(n + 1, d, prefix, exps_);
    for (std::size_t i = 0; i < exps_.size(); ++i) lookup_.emplace(exps_[i], static_cast<Index>(i));
}

Index MonomialBasis::index(const std::vector<int>& exps) const {
    auto it = lookup_.find(exps);
    if (it == lookup_.end()) fail(ErrorCode::IndexError, "monomial not in basis");
    return it->second;
}

Index MonomialBasis::index_of_product(const std::vector<int>& vars) const {
    std::vector<int> exps(static_cast<std::size_t>(n_ + 1), 0);
    for (int v : vars) {
        if (v < 0 || v > n_) fail(ErrorCode::IndexError, "variable index out of range");
        ++exps[static_cast<std::size_t>(v)];
    }
    return index(exps);
}

Index MonomialBasis::index_of_product(std::initializer_list<int> vars) const {
    return index_of_product(std::vector<int>(vars));
}

template <class S> Form<S> zero_form(int n, int d) {
    check_degree(d);
    return Form<S>{n, d, Vec<S>(zeros<S>(cached_basis(n, d).size(), 1))};
}

template <class S> Form<S> from_linear(const LinearForm<S>& l) {
    // degree-1 monomials are x_0..x_n in order
    return Form<S>{static_cast<int>(l.size()) - 1, 1, l};
}

template <class S> LinearForm<S> variable(int n, int i) {
    if (i < 0 || i > n) fail(ErrorCode::IndexError, "variable index out of range");
    LinearForm<S> l = zeros<S>(n + 1, 1);
    l(i) = S(1);
    return l;
}

template <class S> Form<S> multiply(const Form<S>& a, const Form<S>& b) {
    if (a.n != b.n) fail(ErrorCode::DimensionMismatch, "forms in different numbers of variables");
    check_form(a);
    check_form(b);
    const MonomialBasis& ba = cached_basis(a.n, a.degree);
    const MonomialBasis& bb = cached_basis(b.n, b.degree);
    const MonomialBasis& bp = cached_basis(a.n, a.degree + b.degree);
    Form<S> out = zero_form<S>(a.n, a.degree + b.degree);
    std::vector<int> e(static_cast<std::size_t>(a.n + 1));
    for (Index i = 0; i < ba.size(); ++i) {
        if (is_zero(a.coeffs(i))) continue;
        for (Index k = 0; k < bb.size(); ++k) {
            if (is_zero(b.coeffs(k))) continue;
            for (std::size_t v = 0; v < e.size(); ++v) e[v] = ba.exponents(i)[v] + bb.exponents(k)[v];
            out.coeffs(bp.index(e)) += a.coeffs(i) * b.coeffs(k);
        }
    }
    return out;
}

template <class S> Form<S> multiply(const LinearForm<S>& a, const LinearForm<S>& b) {
    return multiply(from_linear(a), from_linear(b));
}

template <class S> Form<S> operator+(const Form<S>& a, const Form<S>& b) {
    if (a.n != b.n || a.degree != b.degree) fail(ErrorCode::DimensionMismatch, "adding forms of different shapes");
    return Form<S>{a.n, a.degree, Vec<S>(a.coeffs + b.coeffs)};
}

template <class S> Form<S> operator-(const Form<S>& a, const Form<S>& b) {
    if (a.n != b.n || a.degree != b.degree) fail(ErrorCode::DimensionMismatch, "subtracting forms of different shapes");
    return Form<S>{a.n, a.degree, Vec<S>(a.coeffs - b.coeffs)};
}

template <class S> Form<S> scale(const Form<S>& a, const S& c) { return Form<S>{a.n, a.degree, Vec<S>(a.coeffs * c)}; }

template <class S> S evaluate(const Form<S>& f, const Vec<S>& point) {
    check_form(f);
    if (point.size() != f.n + 1) fail(ErrorCode::DimensionMismatch, "point and form disagree on n");
    const MonomialBasis& b = cached_basis(f.n, f.degree);
    S total(0);
    for (Index i = 0; i < b.size(); ++i) {
        if (is_zero(f.coeffs(i))) continue;
        S term = f.coeffs(i);
        const auto& e = b.exponents(i);
        for (std::size_t v = 0; v < e.size(); ++v)
            for (int k = 0; k < e[v]; ++k) term *= point(static_cast<Index>(v));
        total += term;
    }
    return total;
}

template <class S> S coefficient(const Form<S>& f, std::initializer_list<int> vars) {
    if (static_cast<int>(vars.size()) != f.degree) fail(ErrorCode::DimensionMismatch, "monomial degree differs from form degree");
    return f.coeffs(cached_basis(f.n, f.degree).index_of_product(vars));
}

template <class S> std::optional<Form<S>> divide(const Form<S>& f, const LinearForm<S>& l) {
    check_form(f);
    if (f.degree < 1) fail(ErrorCode::DimensionMismatch, "cannot divide a constant by a linear form");
    const int n = f.n;
    const MonomialBasis& lower = cached_basis(n, f.degree - 1);
    const MonomialBasis& upper = cached_basis(n, f.degree);
    // multiplication-by-l as a matrix R_{d-1} -> R_d
    Mat<S> mult = zeros<S>(upper.size(), lower.size());
    std::vector<int> e;
    for (Index c = 0; c < lower.size(); ++c)
        for (int v = 0; v <= n; ++v) {
            if (is_zero(l(v))) continue;
            e = lower.exponents(c);
            ++e[static_cast<std::size_t>(v)];
            mult(upper.index(e), c) += l(v);
        }
    auto q = solve(mult, f.coeffs);
    if (!q) return std::nullopt;
    return Form<S>{n, f.degree - 1, *q};
}

template <class S> Mat<S> evaluation_matrix(const PointConfig<S>& cfg, int d) {
    if (d < 1) fail(ErrorCode::OutOfRange, "evaluation degree must be positive");
    check_degree(d);
    const MonomialBasis& b = cached_basis(cfg.n(), d);
    Mat<S> m(static_cast<Index>(cfg.size()), b.size());
    for (std::size_t p = 0; p < cfg.size(); ++p) {
        const Vec<S>& x = cfg[p].coords();
        for (Index c = 0; c < b.size(); ++c) {
            S v(1);
            const auto& e = b.exponents(c);
            for (std::size_t k = 0; k < e.size(); ++k)
                for (int t = 0; t < e[k]; ++t) v *= x(static_cast<Index>(k));
            m(static_cast<Index>(p), c) = v;
        }
    }
    return m;
}

template <class S> FormSpace<S> ideal_degree_part(const PointConfig<S>& cfg, int d) {
    const Mat<S> ker = nullspace(evaluation_matrix(cfg, d));
    return FormSpace<S>{cfg.n(), d, Mat<S>(ker.transpose())};
}

template <class S> Index hilbert_function(const PointConfig<S>& cfg, int d) { return rank(evaluation_matrix(cfg, d)); }

template <class S> bool contains(const FormSpace<S>& space, const Form<S>& f) {
    if (f.n != space.n || f.degree != space.degree || f.coeffs.size() != space.basis.cols())
        fail(ErrorCode::DimensionMismatch, "form and space have different shapes");
    if (f.is_zero()) return true;
    if (space.dim() == 0) return false;
    return in_column_span<S>(Mat<S>(space.basis.transpose()), f.coeffs);
}

template <class S> std::optional<std::size_t> first_nonvanishing_point(const PointConfig<S>& cfg, const Form<S>& f) {
    if (f.n != cfg.n()) fail(ErrorCode::DimensionMismatch, "form and configuration disagree on n");
    for (std::size_t p = 0; p < cfg.size(); ++p)
        if (!is_zero(evaluate(f, cfg[p].coords()))) return p;
    return std::nullopt;
}

template <class S> bool product_in_ideal(const PointConfig<S>& cfg, const LinearForm<S>& l, const LinearForm<S>& m) {
    if (l.size() != cfg.n() + 1 || m.size() != cfg.n() + 1)
        fail(ErrorCode::DimensionMismatch, "linear form and configuration disagree on n");
    for (const auto& p : cfg.points())
        if (!is_zero(l.dot(p.coords())) && !is_zero(m.dot(p.coords()))) return false;
    return true;
}

std::optional<Fp> sqrt_mod(const Fp& a) {
    if (a.is_zero()) return a;
    const std::uint32_t p = a.modulus();
    if (p == 0) fail(ErrorCode::FieldMismatch, "square root of an unbound residue");
    auto power = [p](Fp base, std::uint64_t e) {
        Fp r(1, p);
        while (e) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    };
    if (p == 2) return a;
    if (power(a, (p - 1) / 2) != Fp(1, p)) return std::nullopt;
    // Tonelli-Shanks
    std::uint64_t q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    Fp z(2, p);
    while (power(z, (p - 1) / 2) == Fp(1, p)) z += Fp(1, p);
    Fp c = power(z, q), t = power(a, q), r = power(a, (q + 1) / 2);
    int m = s;
    while (t != Fp(1, p)) {
        int i = 0;
        Fp tt = t;
        while (tt != Fp(1, p)) {
            tt *= tt;
            ++i;
        }
        Fp b = c;
        for (int k = 0; k < m - i - 1; ++k) b *= b;
        r *= b;
        c = b * b;
        t *= c;
        m = i;
    }
    return r;
}

std::optional<Rational> sqrt_rational(const Rational& a) {
    using boost::multiprecision::mpz_int;
    if (a < 0) return std::nullopt;
    const mpz_int num = boost::multiprecision::numerator(a), den = boost::multiprecision::denominator(a);
    const mpz_int rn = boost::multiprecision::sqrt(num), rd = boost::multiprecision::sqrt(den);
    if (rn * rn != num || rd * rd != den) return std::nullopt;
    return Rational(rn, rd);
}

namespace {

template <class S> std::optional<S> field_sqrt(const S& a) {
    if constexpr (std::is_same_v<S, Fp>) return sqrt_mod(a);
    else return sqrt_rational(a);
}

}  // namespace

template <class S> SplitResult<S> split_quadric(const Quadric<S>& q, const FieldDesc& field) {
    if (q.degree != 2) fail(ErrorCode::DimensionMismatch, "split_quadric needs a quadric");
    check_form(q);
    if (q.is_zero()) fail(ErrorCode::ZeroQuadric, "cannot split the zero quadric");
    const int n = q.n;
    const S one = make_scalar<S>(1, field);
    const S half = one / make_scalar<S>(2, field);
    Mat<S> a = zeros<S>(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) {
        a(i, i) = coefficient(q, {i, i});
        for (int k = i + 1; k <= n; ++k) a(i, k) = a(k, i) = coefficient(q, {i, k}) * half;
    }
    const Index r = rank(a);
    std::pair<LinearForm<S>, LinearForm<S>> factors;
    if (r == 1) {
        int k = 0;
        while (is_zero(a(k, k))) ++k;
        LinearForm<S> l = a.row(k).transpose();
        factors = {l, LinearForm<S>(l / a(k, k))};
    } else if (r == 2) {
        const Mat<S> rows = row_basis(a);
        const LinearForm<S> u = rows.row(0).transpose(), w = rows.row(1).transpose();
        Mat<S> sys(q.coeffs.size(), 3);
        sys.col(0) = multiply(u, u).coeffs;
        sys.col(1) = multiply(u, w).coeffs;
        sys.col(2) = multiply(w, w).coeffs;
        const auto abc = solve(sys, q.coeffs);
        if (!abc) fail(ErrorCode::HypothesisError, "rank-2 quadric outside the span of its row space products");
        const S ca = (*abc)(0), cb = (*abc)(1), cc = (*abc)(2);
        if (is_zero(ca)) {
            factors = {w, LinearForm<S>(u * cb + w * cc)};
        } else {
            const auto root = field_sqrt<S>(cb * cb - make_scalar<S>(4, field) * ca * cc);
            if (!root) return NotSplitOverField{};
            const S two_a = make_scalar<S>(2, field) * ca;
            factors = {LinearForm<S>(u + w * ((cb + *root) / two_a)), LinearForm<S>((u + w * ((cb - *root) / two_a)) * ca)};
        }
    } else {
        return NotSplit{};
    }
    if (multiply(factors.first, factors.second).coeffs != q.coeffs)
        fail(ErrorCode::HypothesisError, "quadric factors do not multiply back");
    return factors;
}

#define LINSTRAND_INSTANTIATE(S)                                                                             \
    template Form<S> zero_form<S>(int, int);                                                                 \
    template Form<S> from_linear<S>(const LinearForm<S>&);                                                   \
    template LinearForm<S> variable<S>(int, int);                                                            \
    template Form<S> multiply<S>(const Form<S>&, const Form<S>&);                                            \
    template Form<S> multiply<S>(const LinearForm<S>&, const LinearForm<S>&);                                \
    template Form<S> operator+ <S>(const Form<S>&, const Form<S>&);                                          \
    template Form<S> operator- <S>(const Form<S>&, const Form<S>&);                                          \
    template Form<S> scale<S>(const Form<S>&, const S&);                                                     \
    template S evaluate<S>(const Form<S>&, const Vec<S>&);                                                   \
    template S coefficient<S>(const Form<S>&, std::initializer_list<int>);                                   \
    template std::optional<Form<S>> divide<S>(const Form<S>&, const LinearForm<S>&);                         \
    template Mat<S> evaluation_matrix<S>(const PointConfig<S>&, int);                                        \
    template FormSpace<S> ideal_degree_part<S>(const PointConfig<S>&, int);                                  \
    template Index hilbert_function<S>(const PointConfig<S>&, int);                                          \
    template bool contains<S>(const FormSpace<S>&, const Form<S>&);                                          \
    template std::optional<std::size_t> first_nonvanishing_point<S>(const PointConfig<S>&, const Form<S>&);  \
    template bool product_in_ideal<S>(const PointConfig<S>&, const LinearForm<S>&, const LinearForm<S>&);    \
    template SplitResult<S> split_quadric<S>(const Quadric<S>&, const FieldDesc&);

LINSTRAND_INSTANTIATE(Fp)
LINSTRAND_INSTANTIATE(Rational)

}  // namespace linstrand
