#include "linstrand/witness.hpp"

#include <algorithm>

namespace linstrand {

template <class S> Vec<S> rnc_point(const Vec<S>& b, const std::optional<S>& t) {
    const Index len = b.size();
    Vec<S> out(len);
    if (!t) {
        out.setConstant(S(1));
        return out;
    }
    for (Index l = 0; l < len; ++l) {
        S prod(1);
        for (Index m = 0; m < len; ++m)
            if (m != l) prod *= (*t - b(m));
        out(l) = prod;
    }
    return out;
}

namespace {

template <class S> Mat<S> rows_of(const PointConfig<S>& cfg, const std::vector<bool>& mask) {
    Index count = 0;
    for (bool b : mask) count += b ? 1 : 0;
    Mat<S> m(count, cfg.n() + 1);
    Index r = 0;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) m.row(r++) = cfg[i].coords().transpose();
    return m;
}

// Forms vanishing on the span of the rows, reduced echelon, one per row.
template <class S> Mat<S> annihilator(const Mat<S>& points, int n) {
    if (points.rows() == 0) {
        Mat<S> id = zeros<S>(n + 1, n + 1);
        for (int i = 0; i <= n; ++i) id(i, i) = S(1);
        return id;
    }
    const Mat<S> ker = nullspace(points);
    if (ker.cols() == 0) return zeros<S>(0, n + 1);
    return row_basis(Mat<S>(ker.transpose()));
}

template <class S> bool zero_on(const Mat<S>& forms, const Vec<S>& p) {
    for (Index r = 0; r < forms.rows(); ++r)
        if (!is_zero(forms.row(r).dot(p))) return false;
    return true;
}

}  // namespace

template <class S>
std::optional<UnionWitness<S>> union_from_sides(const PointConfig<S>& cfg, const std::vector<bool>& side_a,
                                                const std::vector<bool>& side_b) {
    const int n = cfg.n();
    const std::size_t s = cfg.size();
    if (side_a.size() != s || side_b.size() != s) fail(ErrorCode::DimensionMismatch, "side masks must cover every point");
    for (std::size_t i = 0; i < s; ++i)
        if (!side_a[i] && !side_b[i]) return std::nullopt;
    Mat<S> ann_a = annihilator(rows_of(cfg, side_a), n);
    Mat<S> ann_b = annihilator(rows_of(cfg, side_b), n);
    int k = n - static_cast<int>(ann_a.rows());
    int r = n - static_cast<int>(ann_b.rows());
    if (k > r) {
        std::swap(ann_a, ann_b);
        std::swap(k, r);
    }
    if (r > n - 1 || k + r > n) return std::nullopt;
    UnionWitness<S> w;
    w.k = std::max(k, 1);
    w.r = n - w.k;
    // dropping equations enlarges a side
    w.forms_a = ann_a.topRows(n - w.k);
    w.forms_b = ann_b.topRows(n - w.r);
    for (std::size_t i = 0; i < s; ++i) {
        const bool in_a = zero_on(w.forms_a, cfg[i].coords()), in_b = zero_on(w.forms_b, cfg[i].coords());
        w.assignment.push_back(in_a && in_b ? '*' : in_a ? 'A' : 'B');
    }
    return w;
}

template <class S>
std::optional<UnionWitness<S>> union_from_forms(const PointConfig<S>& cfg, const Mat<S>& forms_a, const Mat<S>& forms_b) {
    std::vector<bool> side_a, side_b;
    for (const auto& p : cfg.points()) {
        side_a.push_back(zero_on(forms_a, p.coords()));
        side_b.push_back(zero_on(forms_b, p.coords()));
    }
    return union_from_sides(cfg, side_a, side_b);
}

template <class S> bool check_union_witness(const PointConfig<S>& cfg, const UnionWitness<S>& w, std::string* why) {
    auto bad = [why](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const int n = cfg.n();
    if (w.k < 1 || w.r < 1) return bad("subspace dimensions must be positive");
    if (w.k + w.r != n) return bad("dimensions do not add up to n");
    if (w.forms_a.rows() != n - w.k || w.forms_a.cols() != n + 1) return bad("side A has the wrong number of equations");
    if (w.forms_b.rows() != n - w.r || w.forms_b.cols() != n + 1) return bad("side B has the wrong number of equations");
    if (rank(w.forms_a) != n - w.k) return bad("side A equations are dependent");
    if (rank(w.forms_b) != n - w.r) return bad("side B equations are dependent");
    if (w.assignment.size() != cfg.size()) return bad("assignment length differs from point count");
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        const Vec<S>& p = cfg[i].coords();
        const char tag = w.assignment[i];
        bool ok = false;
        for (char side : {'A', 'B'}) {
            if (tag != side && tag != '*') continue;
            const Mat<S>& forms = side == 'A' ? w.forms_a : w.forms_b;
            Vec<S> values = forms * p;
            ok = is_zero_matrix<S>(values);
            if (!ok) break;
        }
        if (tag != 'A' && tag != 'B' && tag != '*') ok = false;
        if (!ok) return bad("point " + std::to_string(i) + " is off its assigned subspace");
    }
    return true;
}

template <class S> bool check_rnc_witness(const PointConfig<S>& cfg, const RncWitness<S>& w, std::string* why) {
    auto bad = [why](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const int n = cfg.n();
    if (w.frame.rows() != n + 1 || w.frame.cols() != n + 1 || rank(w.frame) != n + 1) return bad("frame is not invertible");
    if (w.b.size() != n + 1) return bad("b has the wrong length");
    for (int l = 0; l <= n; ++l)
        for (int m = l + 1; m <= n; ++m)
            if (w.b(l) == w.b(m)) return bad("b values are not distinct");
    if (w.params.size() != cfg.size()) return bad("one parameter per point required");
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        const Vec<S> image = w.frame * cfg[i].coords();
        const Vec<S> curve = rnc_point(w.b, w.params[i]);
        if (is_zero_matrix<S>(curve)) return bad("parameter of point " + std::to_string(i) + " gives the zero vector");
        // proportional iff every 2x2 minor vanishes
        for (int l = 0; l <= n; ++l)
            for (int m = l + 1; m <= n; ++m)
                if (image(l) * curve(m) != image(m) * curve(l))
                    return bad("point " + std::to_string(i) + " is not on the curve at its parameter");
    }
    return true;
}

#define LINSTRAND_INSTANTIATE(S)                                                                                        \
    template Vec<S> rnc_point<S>(const Vec<S>&, const std::optional<S>&);                                               \
    template std::optional<UnionWitness<S>> union_from_sides<S>(const PointConfig<S>&, const std::vector<bool>&,        \
                                                                const std::vector<bool>&);                              \
    template std::optional<UnionWitness<S>> union_from_forms<S>(const PointConfig<S>&, const Mat<S>&, const Mat<S>&);   \
    template bool check_union_witness<S>(const PointConfig<S>&, const UnionWitness<S>&, std::string*);                  \
    template bool check_rnc_witness<S>(const PointConfig<S>&, const RncWitness<S>&, std::string*);

LINSTRAND_INSTANTIATE(Fp)
LINSTRAND_INSTANTIATE(Rational)

}  // namespace linstrand
