#include "linstrand/koszul.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <string>

#include "linstrand/combinatorics.hpp"

namespace linstrand {

namespace {

const ExtBasis& ext_basis(int n, int k) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<ExtBasis>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[{n, k}];
    if (!slot) slot = std::make_unique<ExtBasis>(n, k);
    return *slot;
}

std::vector<int> without(const std::vector<int>& set, std::size_t pos) {
    std::vector<int> out;
    out.reserve(set.size() - 1);
    for (std::size_t i = 0; i < set.size(); ++i)
        if (i != pos) out.push_back(set[i]);
    return out;
}

template <class S> S sign(std::size_t l) { return (l % 2 == 0) ? S(1) : S(-1); }

// mult[m][v] = index of (monomial m of degree d) * x_v in degree d+1
std::vector<std::vector<Index>> multiplication_table(int n, int d) {
    const MonomialBasis& lo = monomial_basis(n, d);
    const MonomialBasis& hi = monomial_basis(n, d + 1);
    std::vector<std::vector<Index>> table(static_cast<std::size_t>(lo.size()));
    for (Index m = 0; m < lo.size(); ++m) {
        auto& row = table[static_cast<std::size_t>(m)];
        for (int v = 0; v <= n; ++v) {
            std::vector<int> e = lo.exponents(m);
            ++e[static_cast<std::size_t>(v)];
            row.push_back(hi.index(e));
        }
    }
    return table;
}

std::vector<int> complement(int n, std::initializer_list<int> drop) {
    std::vector<int> out;
    for (int v = 0; v <= n; ++v) {
        bool keep = true;
        for (int d : drop) keep = keep && d != v;
        if (keep) out.push_back(v);
    }
    return out;
}

}  // namespace

ExtBasis::ExtBasis(int n, int k) : n_(n), k_(k) {
    if (n < 0 || k < 0 || k > n + 1) fail(ErrorCode::OutOfRange, "wedge power out of range");
    subsets_ = combinations(n + 1, k);
    for (std::size_t i = 0; i < subsets_.size(); ++i) lookup_.emplace(subsets_[i], static_cast<Index>(i));
}

Index ExtBasis::index(const std::vector<int>& subset) const {
    auto it = lookup_.find(subset);
    if (it == lookup_.end()) fail(ErrorCode::IndexError, "not an increasing subset of the right size");
    return it->second;
}

template <class S> Mat<S> koszul_delta(int n, int k, int d) {
    if (k < 1 || k > n + 1) fail(ErrorCode::OutOfRange, "koszul_delta: k must lie in 1..n+1");
    if (d - k + 1 < 0 || d - k + 1 > kMaxDegree) fail(ErrorCode::OutOfRange, "koszul_delta: degree out of range");
    const ExtBasis& dom = ext_basis(n, k);
    const ExtBasis& cod = ext_basis(n, k - 1);
    const Index cod_mons = monomial_basis(n, d - k + 1).size();
    if (d - k < 0) return zeros<S>(cod.size() * cod_mons, 0);
    const Index dom_mons = monomial_basis(n, d - k).size();
    const auto table = multiplication_table(n, d - k);
    Mat<S> m = zeros<S>(cod.size() * cod_mons, dom.size() * dom_mons);
    for (Index J = 0; J < dom.size(); ++J) {
        const auto& subset = dom.subset(J);
        for (std::size_t l = 0; l < subset.size(); ++l) {
            const Index target = cod.index(without(subset, l));
            const S sg = sign<S>(l);
            for (Index mon = 0; mon < dom_mons; ++mon)
                m(target * cod_mons + table[static_cast<std::size_t>(mon)][static_cast<std::size_t>(subset[l])],
                  J * dom_mons + mon) += sg;
        }
    }
    return m;
}

template <class S> LinearStrand strand_betti(const PointConfig<S>& cfg) {
    const int n = cfg.n();
    const std::size_t s = cfg.size();
    LinearStrand strand;
    for (int i = 1; i <= n; ++i) {
        // out: wedge^i (x) A_1 -> wedge^{i-1} (x) A_2, with A_2 embedded by evaluation at X
        const ExtBasis& dom = ext_basis(n, i);
        const ExtBasis& cod = ext_basis(n, i - 1);
        Mat<S> out = zeros<S>(cod.size() * static_cast<Index>(s), dom.size() * (n + 1));
        for (Index J = 0; J < dom.size(); ++J) {
            const auto& subset = dom.subset(J);
            for (std::size_t l = 0; l < subset.size(); ++l) {
                const Index target = cod.index(without(subset, l));
                const S sg = sign<S>(l);
                for (std::size_t p = 0; p < s; ++p) {
                    const Vec<S>& x = cfg[p].coords();
                    const S xj = x(subset[l]);
                    if (is_zero(xj)) continue;
                    for (int c = 0; c <= n; ++c)
                        out(target * static_cast<Index>(s) + static_cast<Index>(p), J * (n + 1) + c) += sg * xj * x(c);
                }
            }
        }
        const Index kernel = out.cols() - rank(out);
        const Index image = rank(koszul_delta<S>(n, i + 1, i + 1));
        strand.values.push_back(kernel - image);
    }
    return strand;
}

template <class S> const Quadric<S>& KoszulElement<S>::F(int a, int b, int c) const {
    if (!(0 <= a && a < b && b < c && c <= n)) fail(ErrorCode::IndexError, "F needs 0 <= a < b < c <= n");
    return components[static_cast<std::size_t>(ext_basis(n, n - 2).index(complement(n, {a, b, c})))];
}

template <class S> Quadric<S>& KoszulElement<S>::F(int a, int b, int c) {
    return const_cast<Quadric<S>&>(static_cast<const KoszulElement&>(*this).F(a, b, c));
}

template <class S> bool KoszulElement<S>::is_zero() const {
    for (const auto& q : components)
        if (!q.is_zero()) return false;
    return true;
}

template <class S> TopIntersection<S> a_top_via_intersection(const PointConfig<S>& cfg) {
    const int n = cfg.n();
    if (n < 2) fail(ErrorCode::OutOfRange, "a_{n-1} needs n >= 2");
    const FormSpace<S> i2 = ideal_degree_part(cfg, 2);
    const ExtBasis& wedge = ext_basis(n, n - 2);
    const Index mons = monomial_basis(n, 2).size();
    TopIntersection<S> out;
    out.basis = zeros<S>(0, wedge.size() * mons);
    if (i2.dim() == 0) return out;
    if (n == 2) {
        // K_0 is all of R_2
        out.basis = row_basis(i2.basis);
        out.count = out.basis.rows();
        return out;
    }
    const ExtBasis& lower = ext_basis(n, n - 3);
    const Index cubic_mons = monomial_basis(n, 3).size();
    const auto table = multiplication_table(n, 2);
    const Index r = i2.dim();
    // columns: eps_J (x) q_k; rows: delta of it in wedge^{n-3} (x) R_3
    Mat<S> m = zeros<S>(lower.size() * cubic_mons, wedge.size() * r);
    for (Index J = 0; J < wedge.size(); ++J) {
        const auto& subset = wedge.subset(J);
        for (std::size_t l = 0; l < subset.size(); ++l) {
            const Index target = lower.index(without(subset, l));
            const S sg = sign<S>(l);
            for (Index k = 0; k < r; ++k)
                for (Index mon = 0; mon < mons; ++mon) {
                    const S c = i2.basis(k, mon);
                    if (is_zero(c)) continue;
                    m(target * cubic_mons + table[static_cast<std::size_t>(mon)][static_cast<std::size_t>(subset[l])],
                      J * r + k) += sg * c;
                }
        }
    }
    const Mat<S> ker = nullspace(m);
    if (ker.cols() == 0) return out;
    Mat<S> alphas = zeros<S>(ker.cols(), wedge.size() * mons);
    for (Index v = 0; v < ker.cols(); ++v)
        for (Index J = 0; J < wedge.size(); ++J)
            for (Index k = 0; k < r; ++k) {
                const S c = ker(J * r + k, v);
                if (is_zero(c)) continue;
                alphas.row(v).segment(J * mons, mons) += c * i2.basis.row(k);
            }
    out.basis = row_basis(alphas);
    out.count = out.basis.rows();
    return out;
}

template <class S> KoszulElement<S> split_alpha(int n, const Vec<S>& alpha) {
    const ExtBasis& wedge = ext_basis(n, n - 2);
    const Index mons = monomial_basis(n, 2).size();
    if (alpha.size() != wedge.size() * mons) fail(ErrorCode::DimensionMismatch, "alpha has the wrong length");
    KoszulElement<S> ke;
    ke.n = n;
    for (Index J = 0; J < wedge.size(); ++J)
        ke.components.push_back(Quadric<S>{n, 2, Vec<S>(alpha.segment(J * mons, mons))});
    return ke;
}

template <class S> KoszulElement<S> extract_special_quadrics(const PointConfig<S>& cfg, const Vec<S>& alpha) {
    const int n = cfg.n();
    KoszulElement<S> ke = split_alpha(n, alpha);
    if (!contains_coordinate_points(cfg))
        fail(ErrorCode::HypothesisError, "extraction needs every coordinate point e_l in X; use coordinate_frame first");
    const ExtBasis& wedge = ext_basis(n, n - 2);
    const MonomialBasis& mb = monomial_basis(n, 2);
    for (Index J = 0; J < wedge.size(); ++J) {
        const Quadric<S>& q = ke.components[static_cast<std::size_t>(J)];
        if (n >= 3) {
            const auto& drop = wedge.subset(J);
            for (Index mon = 0; mon < mb.size(); ++mon) {
                if (is_zero(q.coeffs(mon))) continue;
                const auto& e = mb.exponents(mon);
                for (std::size_t v = 0; v < e.size(); ++v) {
                    const bool dropped = std::find(drop.begin(), drop.end(), static_cast<int>(v)) != drop.end();
                    if (e[v] > 1 || (e[v] > 0 && dropped))
                        fail(ErrorCode::NotSquareFree, "component " + std::to_string(J) + " is not square-free in its variables");
                }
            }
        }
        if (!vanishes_on_X(cfg, q)) fail(ErrorCode::NotInIdeal, "component " + std::to_string(J) + " does not vanish on X");
    }
    return ke;
}

template <class S> bool check_syzygy_relation(const KoszulElement<S>& ke) {
    const int n = ke.n;
    bool ok = true;
    for_each_combination(n + 1, 4, [&](const std::vector<int>& q) {
        const int a = q[0], b = q[1], c = q[2], d = q[3];
        auto term = [&](int v, int e, const Quadric<S>& f) {
            return scale(multiply(from_linear(variable<S>(n, v)), f), parity<S>(e));
        };
        const Form<S> sum = term(a, a, ke.F(b, c, d)) + term(b, b - 1, ke.F(a, c, d)) + term(c, c - 2, ke.F(a, b, d)) +
                            term(d, d - 3, ke.F(a, b, c));
        ok = sum.is_zero();
        return ok;
    });
    return ok;
}

template <class S> bool coefficient_identities(const KoszulElement<S>& ke) {
    const int n = ke.n;
    bool ok = true;
    for_each_combination(n + 1, 4, [&](const std::vector<int>& q) {
        const int d = q[0], e = q[1], f = q[2], g = q[3];
        const S s_d = parity<S>(d), s_e = parity<S>(e - 1), s_f = parity<S>(f - 2), s_g = parity<S>(g - 3);
        const S i1 = s_d * ke.lambda(e, f, g) + s_e * ke.lambda(d, f, g) + s_f * ke.lambda(d, e, g);
        const S i2 = s_d * ke.mu(e, f, g) + s_e * ke.mu(d, f, g) + s_g * ke.lambda(d, e, f);
        const S i3 = s_d * ke.nu(e, f, g) + s_f * ke.mu(d, e, g) + s_g * ke.mu(d, e, f);
        const S i4 = s_e * ke.nu(d, f, g) + s_f * ke.nu(d, e, g) + s_g * ke.nu(d, e, f);
        ok = is_zero(i1) && is_zero(i2) && is_zero(i3) && is_zero(i4);
        return ok;
    });
    return ok;
}

#define LINSTRAND_INSTANTIATE(S)                                                                 \
    template Mat<S> koszul_delta<S>(int, int, int);                                              \
    template LinearStrand strand_betti<S>(const PointConfig<S>&);                                \
    template struct KoszulElement<S>;                                                            \
    template TopIntersection<S> a_top_via_intersection<S>(const PointConfig<S>&);                \
    template KoszulElement<S> split_alpha<S>(int, const Vec<S>&);                                \
    template KoszulElement<S> extract_special_quadrics<S>(const PointConfig<S>&, const Vec<S>&); \
    template bool check_syzygy_relation<S>(const KoszulElement<S>&);                             \
    template bool coefficient_identities<S>(const KoszulElement<S>&);

LINSTRAND_INSTANTIATE(Fp)
LINSTRAND_INSTANTIATE(Rational)

}  // namespace linstrand
