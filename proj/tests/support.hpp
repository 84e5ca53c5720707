#pragma once

// Oracles written without the library's linear algebra: plain integer
// elimination modulo a prime and brute-force Koszul cohomology.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "linstrand/classify.hpp"
#include "linstrand/harness.hpp"

namespace test_support {

using linstrand::Fp;
using linstrand::Rational;

using IntMatrix = std::vector<std::vector<long long>>;

inline long long mod(long long a, long long p) {
    a %= p;
    return a < 0 ? a + p : a;
}

inline long long inv_mod(long long a, long long p) {
    long long r = 1, e = p - 2;
    a = mod(a, p);
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

inline int rank_mod(IntMatrix m, long long p) {
    int rank = 0;
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (mod(m[r][c], p) != 0) piv = r;
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        const long long inv = inv_mod(m[rank][c], p);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || mod(m[r][c], p) == 0) continue;
            const long long f = mod(m[r][c], p) * inv % p;
            for (int k = 0; k < cols; ++k) m[r][k] = mod(m[r][k] - f * mod(m[rank][k], p), p);
        }
        ++rank;
    }
    return rank;
}

inline std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> c;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(c.size()) == k) {
            out.push_back(c);
            return;
        }
        for (int v = start; v < n; ++v) {
            c.push_back(v);
            self(self, v + 1);
            c.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// a_i = dim ker(wedge^i V (x) S_1 -> wedge^{i-1} V (x) (S/I)_2) - C(n+1, i+1),
// with (S/I)_2 realized as values at the points.
inline std::vector<int> strand_by_cohomology(const IntMatrix& points, int n, long long p) {
    std::vector<int> a;
    const int s = static_cast<int>(points.size());
    for (int i = 1; i <= n; ++i) {
        const auto src = subsets(n + 1, i), dst = subsets(n + 1, i - 1);
        std::map<std::vector<int>, int> dst_index;
        for (std::size_t k = 0; k < dst.size(); ++k) dst_index[dst[k]] = static_cast<int>(k);
        // columns: (J, x_v); rows: (J', point)
        IntMatrix m(dst.size() * static_cast<std::size_t>(s), std::vector<long long>(src.size() * static_cast<std::size_t>(n + 1), 0));
        for (std::size_t J = 0; J < src.size(); ++J)
            for (int v = 0; v <= n; ++v) {
                const std::size_t col = J * static_cast<std::size_t>(n + 1) + static_cast<std::size_t>(v);
                for (int l = 0; l < i; ++l) {
                    std::vector<int> rest = src[J];
                    const int jl = rest[static_cast<std::size_t>(l)];
                    rest.erase(rest.begin() + l);
                    const long long sign = l % 2 ? -1 : 1;
                    const std::size_t row0 = static_cast<std::size_t>(dst_index[rest]) * static_cast<std::size_t>(s);
                    for (int q = 0; q < s; ++q)
                        m[row0 + static_cast<std::size_t>(q)][col] =
                            mod(m[row0 + static_cast<std::size_t>(q)][col] + sign * points[q][jl] % p * points[q][v], p);
                }
            }
        const long long choose_next = static_cast<long long>(subsets(n + 1, i + 1).size());
        a.push_back(static_cast<int>(static_cast<long long>(src.size()) * (n + 1) - rank_mod(m, p) - choose_next));
    }
    return a;
}

inline IntMatrix residues(const linstrand::PointConfig<Fp>& cfg) {
    IntMatrix out;
    for (const auto& pt : cfg.points()) {
        std::vector<long long> row;
        for (linstrand::Index l = 0; l <= cfg.n(); ++l) row.push_back(pt[l].value());
        out.push_back(row);
    }
    return out;
}

inline Fp fp(long long v, std::uint32_t p = 32003) { return Fp(v, p); }

inline linstrand::Vec<Fp> fp_vec(std::initializer_list<long long> vals, std::uint32_t p = 32003) {
    linstrand::Vec<Fp> v(static_cast<linstrand::Index>(vals.size()));
    linstrand::Index i = 0;
    for (long long x : vals) v(i++) = Fp(x, p);
    return v;
}

inline linstrand::Vec<Rational> q_vec(std::initializer_list<long long> vals) {
    linstrand::Vec<Rational> v(static_cast<linstrand::Index>(vals.size()));
    linstrand::Index i = 0;
    for (long long x : vals) v(i++) = Rational(x);
    return v;
}

// Points (1 : t : ... : t^n) for t = 0..s-1 over Q.
inline linstrand::PointConfig<Rational> moment_curve(int n, int s) {
    std::vector<linstrand::Vec<Rational>> rows;
    for (int t = 0; t < s; ++t) {
        linstrand::Vec<Rational> v(n + 1);
        Rational pw = 1;
        for (int l = 0; l <= n; ++l) {
            v(l) = pw;
            pw *= t;
        }
        rows.push_back(v);
    }
    return linstrand::make_config<Rational>(n, linstrand::FieldDesc::rational(), rows);
}

// Substitutes the parametrization directly: the frame image of point i must
// be proportional to (1/(t-b_0) : ... : 1/(t-b_n)), or to e_l when t = b_l,
// or to (1 : ... : 1) when t is infinite.
template <class S> bool on_curve_by_substitution(const linstrand::PointConfig<S>& cfg, const linstrand::RncWitness<S>& w) {
    const int n = cfg.n();
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        const linstrand::Vec<S> img = w.frame * cfg[i].coords();
        std::vector<S> curve(static_cast<std::size_t>(n + 1), S(0));
        const auto& t = w.params[i];
        int hit = -1;
        for (int l = 0; l <= n && t; ++l)
            if (*t == w.b(l)) hit = l;
        for (int l = 0; l <= n; ++l) {
            if (!t) curve[l] = S(1);
            else if (hit >= 0) curve[l] = l == hit ? S(1) : S(0);
            else curve[l] = S(1) / (*t - w.b(l));
        }
        int lead = -1;
        for (int l = 0; l <= n && lead < 0; ++l)
            if (!linstrand::is_zero(curve[l])) lead = l;
        if (lead < 0 || linstrand::is_zero(img(lead))) return false;
        const S ratio = img(lead) / curve[lead];
        for (int l = 0; l <= n; ++l)
            if (img(l) != ratio * curve[l]) return false;
    }
    return true;
}

// Split data whose forms live on a few variables, with X made of the
// coordinate points e_v (v in idxs) and random points where every L_{ef}
// vanishes.  Then x_j L_{ef} and every rebuilt F_{efg} vanish on X.
struct SyntheticSplit {
    std::optional<linstrand::SplitInput<Fp>> input;
    int d = 0;
};

inline SyntheticSplit synthetic_split(std::mt19937_64& rng, int m, int spare = 0) {
    const linstrand::FieldDesc f = linstrand::FieldDesc::prime(32003);
    const int n = m + spare, j = m;
    std::vector<int> idxs;
    for (int v = 0; v < m; ++v) idxs.push_back(v);
    std::vector<int> perm = idxs;
    std::shuffle(perm.begin(), perm.end(), rng);
    const int tsize = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::max(1, m - 2)));
    const std::set<int> T(perm.begin(), perm.begin() + tsize);
    const int density = static_cast<int>(rng() % 3);
    std::map<std::pair<int, int>, linstrand::LinearForm<Fp>> L;
    linstrand::Mat<Fp> rows(0, n + 1);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            linstrand::LinearForm<Fp> l = linstrand::zeros<Fp>(n + 1, 1);
            if (static_cast<int>(rng() % 3) < density) {
                if (T.count(a) && rng() % 2) l(a) = fp(1 + static_cast<long long>(rng() % 5));
                if (T.count(b) && rng() % 2) l(b) = fp(1 + static_cast<long long>(rng() % 5));
            }
            L[{a, b}] = l;
            rows = linstrand::vstack<Fp>(rows, linstrand::Mat<Fp>(l.transpose()));
        }
    SyntheticSplit out;
    out.d = static_cast<int>(linstrand::rank(rows));
    const linstrand::Mat<Fp> Z = linstrand::nullspace(rows);
    std::vector<linstrand::Vec<Fp>> pts;
    for (int v = 0; v < m; ++v) {
        linstrand::Vec<Fp> e = linstrand::zeros<Fp>(n + 1, 1);
        e(v) = fp(1);
        pts.push_back(e);
    }
    for (linstrand::Index k = 0; k < Z.cols() + 2; ++k) {
        linstrand::Vec<Fp> c(Z.cols());
        for (linstrand::Index q = 0; q < c.size(); ++q) c(q) = linstrand::random_scalar<Fp>(f, rng);
        pts.push_back(Z * c);
    }
    try {
        out.input = linstrand::SplitInput<Fp>{linstrand::make_config<Fp>(n, f, pts), j, idxs, L};
    } catch (const linstrand::Error&) {
        // a repeated or zero random point; the caller draws again
    }
    return out;
}

}  // namespace test_support
