#include "linstrand/projective.hpp"

#include <algorithm>
#include <string>

#include "linstrand/combinatorics.hpp"

namespace linstrand {

namespace {

template <class S> void check_entries_in_field(const Vec<S>& v, const FieldDesc& field) {
    if constexpr (std::is_same_v<S, Fp>) {
        if (field.is_rational()) fail(ErrorCode::FieldMismatch, "residues given for a rational configuration");
        for (Index i = 0; i < v.size(); ++i)
            if (v(i).bound() && v(i).modulus() != field.p)
                fail(ErrorCode::FieldMismatch, "coordinate modulo " + std::to_string(v(i).modulus()) +
                                                   " in a configuration over F_" + std::to_string(field.p));
    } else {
        if (!field.is_rational()) fail(ErrorCode::FieldMismatch, "rationals given for a prime-field configuration");
    }
}

void check_cap(std::uint64_t count, std::size_t cap) {
    if (count > cap)
        fail(ErrorCode::SizeLimit, std::to_string(count) + " subsets exceed the cap of " + std::to_string(cap));
}

}  // namespace

std::size_t default_subset_cap() { return 200000; }

template <class S> ProjPoint<S>::ProjPoint(Vec<S> coords) : coords_(std::move(coords)) {
    Index lead = 0;
    while (lead < coords_.size() && is_zero(coords_(lead))) ++lead;
    if (lead == coords_.size()) fail(ErrorCode::InvalidConfig, "the zero vector is not a projective point");
    const S inv = S(1) / coords_(lead);
    for (Index i = 0; i < coords_.size(); ++i) coords_(i) = is_zero(coords_(i)) ? S(0) : coords_(i) * inv;
}

template <class S>
PointConfig<S>::PointConfig(int n, FieldDesc field, std::vector<ProjPoint<S>> points)
    : n_(n), field_(field), points_(std::move(points)) {
    if (n < 1) fail(ErrorCode::InvalidConfig, "ambient dimension must be at least 1");
    if (!field_.is_rational() && field_.p <= static_cast<std::uint32_t>(n + 1))
        fail(ErrorCode::InvalidConfig, "prime must exceed n+1");
    for (const auto& p : points_) {
        if (p.n() != n) fail(ErrorCode::InvalidConfig, "point has the wrong number of coordinates");
        check_entries_in_field(p.coords(), field_);
    }
    if (points_.size() < static_cast<std::size_t>(n + 1))
        fail(ErrorCode::InvalidConfig, "need at least n+1 points");
    for (std::size_t a = 0; a < points_.size(); ++a)
        for (std::size_t b = a + 1; b < points_.size(); ++b)
            if (points_[a] == points_[b])
                fail(ErrorCode::InvalidConfig, "points " + std::to_string(a) + " and " + std::to_string(b) + " coincide");
    if (rank(coordinate_matrix()) != n + 1) fail(ErrorCode::InvalidConfig, "points lie on a hyperplane");
}

template <class S> Mat<S> PointConfig<S>::coordinate_matrix() const {
    Mat<S> m(static_cast<Index>(points_.size()), n_ + 1);
    for (std::size_t i = 0; i < points_.size(); ++i) m.row(static_cast<Index>(i)) = points_[i].coords().transpose();
    return m;
}

template <class S> PointConfig<S> PointConfig<S>::permuted(const std::vector<std::size_t>& order) const {
    std::vector<ProjPoint<S>> pts;
    pts.reserve(order.size());
    for (std::size_t i : order) pts.push_back(points_.at(i));
    return PointConfig(n_, field_, std::move(pts));
}

template <class S> PointConfig<S> make_config(int n, const FieldDesc& field, const std::vector<Vec<S>>& rows) {
    std::vector<ProjPoint<S>> pts;
    pts.reserve(rows.size());
    for (const auto& r : rows) {
        if (r.size() != n + 1) fail(ErrorCode::InvalidConfig, "point has the wrong number of coordinates");
        pts.emplace_back(r);
    }
    return PointConfig<S>(n, field, std::move(pts));
}

template <class S> std::optional<Mat<S>> inverse(const Mat<S>& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const Index n = m.rows();
    Mat<S> aug = zeros<S>(n, 2 * n);
    aug.leftCols(n) = m;
    for (Index i = 0; i < n; ++i) aug(i, n + i) = S(1);
    const Echelon<S> e = rref(aug);
    if (e.rank() < n || e.pivots[static_cast<std::size_t>(n - 1)] != n - 1) return std::nullopt;
    return Mat<S>(e.reduced.rightCols(n));
}

template <class S> FrameMap<S>::FrameMap(Mat<S> g) : g_(std::move(g)) {
    if (g_.rows() != g_.cols() || rank(g_) != g_.rows()) fail(ErrorCode::SingularFrame, "frame map is not invertible");
}

template <class S> FrameMap<S> FrameMap<S>::identity(int n) {
    Mat<S> g = zeros<S>(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) g(i, i) = S(1);
    return FrameMap(std::move(g));
}

template <class S> PointConfig<S> FrameMap<S>::apply(const PointConfig<S>& cfg) const {
    std::vector<ProjPoint<S>> pts;
    pts.reserve(cfg.size());
    for (const auto& p : cfg.points()) pts.push_back(apply(p));
    return PointConfig<S>(cfg.n(), cfg.field(), std::move(pts));
}

template <class S> FrameMap<S> FrameMap<S>::inverse() const {
    auto inv = linstrand::inverse(g_);
    if (!inv) fail(ErrorCode::SingularFrame, "frame map is not invertible");
    return FrameMap(std::move(*inv));
}

template <class S> Index subset_rank(const PointConfig<S>& cfg, const std::vector<int>& idxs) {
    if (idxs.empty()) fail(ErrorCode::IndexError, "empty index list");
    Mat<S> m(static_cast<Index>(idxs.size()), cfg.n() + 1);
    for (std::size_t r = 0; r < idxs.size(); ++r) {
        if (idxs[r] < 0 || static_cast<std::size_t>(idxs[r]) >= cfg.size())
            fail(ErrorCode::IndexError, "point index " + std::to_string(idxs[r]) + " out of range");
        m.row(static_cast<Index>(r)) = cfg[static_cast<std::size_t>(idxs[r])].coords().transpose();
    }
    return rank(m);
}

namespace {

// Lex-first k-subset whose points have rank below `full_rank`.
template <class S>
std::optional<std::vector<int>> first_deficient_subset(const PointConfig<S>& cfg, int k, Index full_rank,
                                                       std::size_t cap) {
    const int s = static_cast<int>(cfg.size());
    check_cap(binomial(s, k), cap);
    std::optional<std::vector<int>> found;
    for_each_combination(s, k, [&](const std::vector<int>& c) {
        if (subset_rank(cfg, c) < full_rank) {
            found = c;
            return false;
        }
        return true;
    });
    return found;
}

}  // namespace

template <class S> bool is_general_position(const PointConfig<S>& cfg, std::size_t cap) {
    const int n = cfg.n();
    return !first_deficient_subset(cfg, n + 1, n + 1, cap).has_value();
}

template <class S> Position special_position_index(const PointConfig<S>& cfg, std::size_t cap) {
    const int n = cfg.n();
    auto witness = first_deficient_subset(cfg, n + 1, n + 1, cap);
    if (!witness) return GeneralPosition{};
    for (int i = 0; i <= n - 2; ++i) {
        // nondegeneracy at i: no n-i points of rank <= n-i-1
        auto violation = first_deficient_subset(cfg, n - i, n - i, cap);
        if (!violation) return SpecialPosition{i, *witness};
        // nondegeneracy failing at i is degeneracy at i+1, and the failing set is the next witness
        witness = violation;
    }
    // i = n-2 is always nondegenerate because points are distinct
    fail(ErrorCode::InvalidConfig, "distinct points violate the pairwise condition");
}

template <class S>
std::pair<FrameMap<S>, PointConfig<S>> frame_transform(const PointConfig<S>& cfg, const std::vector<int>& frame_idxs,
                                                       std::optional<int> unit_idx) {
    const int n = cfg.n();
    if (frame_idxs.size() != static_cast<std::size_t>(n + 1)) fail(ErrorCode::SingularFrame, "frame needs n+1 points");
    Mat<S> cols(n + 1, n + 1);
    for (int l = 0; l <= n; ++l) {
        const int idx = frame_idxs[static_cast<std::size_t>(l)];
        if (idx < 0 || static_cast<std::size_t>(idx) >= cfg.size()) fail(ErrorCode::IndexError, "frame index out of range");
        cols.col(l) = cfg[static_cast<std::size_t>(idx)].coords();
    }
    if (rank(cols) != n + 1) fail(ErrorCode::SingularFrame, "frame points are dependent");
    if (unit_idx) {
        if (*unit_idx < 0 || static_cast<std::size_t>(*unit_idx) >= cfg.size())
            fail(ErrorCode::IndexError, "unit index out of range");
        const auto scale = solve(cols, cfg[static_cast<std::size_t>(*unit_idx)].coords());
        for (int l = 0; l <= n; ++l)
            if (is_zero((*scale)(l))) fail(ErrorCode::BadUnit, "unit point lies on a coordinate hyperplane of the frame");
        for (int l = 0; l <= n; ++l) cols.col(l) *= (*scale)(l);
    }
    FrameMap<S> g = FrameMap<S>(cols).inverse();
    return {g, g.apply(cfg)};
}

template <class S> std::vector<int> first_basis_points(const PointConfig<S>& cfg) {
    const int n = cfg.n();
    std::vector<int> chosen;
    Mat<S> rows(0, n + 1);
    for (std::size_t i = 0; i < cfg.size() && chosen.size() < static_cast<std::size_t>(n + 1); ++i) {
        Mat<S> trial = vstack<S>(rows, Mat<S>(cfg[i].coords().transpose()));
        if (rank(trial) == trial.rows()) {
            rows = trial;
            chosen.push_back(static_cast<int>(i));
        }
    }
    return chosen;
}

template <class S> std::pair<FrameMap<S>, PointConfig<S>> coordinate_frame(const PointConfig<S>& cfg) {
    return frame_transform(cfg, first_basis_points(cfg));
}

template <class S> bool contains_coordinate_points(const PointConfig<S>& cfg) {
    const int n = cfg.n();
    for (int l = 0; l <= n; ++l) {
        Vec<S> e = Vec<S>::Zero(n + 1);
        e(l) = S(1);
        const ProjPoint<S> target(e);
        bool found = false;
        for (const auto& p : cfg.points()) found = found || p == target;
        if (!found) return false;
    }
    return true;
}

#define LINSTRAND_INSTANTIATE(S)                                                                             \
    template class ProjPoint<S>;                                                                             \
    template class PointConfig<S>;                                                                           \
    template class FrameMap<S>;                                                                              \
    template PointConfig<S> make_config<S>(int, const FieldDesc&, const std::vector<Vec<S>>&);               \
    template std::optional<Mat<S>> inverse<S>(const Mat<S>&);                                                \
    template Index subset_rank<S>(const PointConfig<S>&, const std::vector<int>&);                           \
    template bool is_general_position<S>(const PointConfig<S>&, std::size_t);                                \
    template Position special_position_index<S>(const PointConfig<S>&, std::size_t);                         \
    template std::pair<FrameMap<S>, PointConfig<S>> frame_transform<S>(const PointConfig<S>&, const std::vector<int>&, \
                                                                       std::optional<int>);                \
    template std::vector<int> first_basis_points<S>(const PointConfig<S>&);                                  \
    template std::pair<FrameMap<S>, PointConfig<S>> coordinate_frame<S>(const PointConfig<S>&);              \
    template bool contains_coordinate_points<S>(const PointConfig<S>&);

LINSTRAND_INSTANTIATE(Fp)
LINSTRAND_INSTANTIATE(Rational)

}  // namespace linstrand
