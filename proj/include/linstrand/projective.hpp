#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "linstrand/linalg.hpp"

namespace linstrand {

/// A point of P^n stored in canonical scaling: the first nonzero coordinate
/// is 1.
template <class S> class ProjPoint {
public:
    ProjPoint() = default;
    explicit ProjPoint(Vec<S> coords);

    const Vec<S>& coords() const { return coords_; }
    int n() const { return static_cast<int>(coords_.size()) - 1; }
    const S& operator[](Index i) const { return coords_(i); }

    friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.coords_ == b.coords_; }

private:
    Vec<S> coords_;
};

/// Distinct points spanning P^n.  Construction validates the invariants.
template <class S> class PointConfig {
public:
    PointConfig(int n, FieldDesc field, std::vector<ProjPoint<S>> points);

    int n() const { return n_; }
    const FieldDesc& field() const { return field_; }
    const std::vector<ProjPoint<S>>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    const ProjPoint<S>& operator[](std::size_t i) const { return points_[i]; }

    /// s x (n+1), one point per row.
    Mat<S> coordinate_matrix() const;

    /// Same points in a different order.
    PointConfig permuted(const std::vector<std::size_t>& order) const;

private:
    int n_;
    FieldDesc field_;
    std::vector<ProjPoint<S>> points_;
};

/// Build a configuration from raw coordinate rows.
template <class S> PointConfig<S> make_config(int n, const FieldDesc& field, const std::vector<Vec<S>>& rows);

/// Invertible linear change of coordinates acting on column vectors.
template <class S> class FrameMap {
public:
    explicit FrameMap(Mat<S> g);
    static FrameMap identity(int n);

    const Mat<S>& matrix() const { return g_; }
    ProjPoint<S> apply(const ProjPoint<S>& p) const { return ProjPoint<S>(Vec<S>(g_ * p.coords())); }
    PointConfig<S> apply(const PointConfig<S>& cfg) const;
    /// Pulls a linear form written in the new coordinates back to the old
    /// ones: l'(g x) = (g^T l')(x).
    Vec<S> pull_back_form(const Vec<S>& coeffs) const { return g_.transpose() * coeffs; }
    FrameMap inverse() const;
    /// (this * other)(p) = this(other(p))
    FrameMap compose(const FrameMap& other) const { return FrameMap(Mat<S>(g_ * other.g_)); }

private:
    Mat<S> g_;
};

template <class S> std::optional<Mat<S>> inverse(const Mat<S>& m);

std::size_t default_subset_cap();

/// Rank of the chosen coordinate rows.
template <class S> Index subset_rank(const PointConfig<S>& cfg, const std::vector<int>& idxs);

/// True iff no n+1 points lie on a hyperplane.  Throws SizeLimit when more
/// than `cap` subsets would need checking.
template <class S> bool is_general_position(const PointConfig<S>& cfg, std::size_t cap = default_subset_cap());

struct GeneralPosition {};

/// Smallest i for which no n-i points lie on a P^{n-i-2}; the witness is the
/// lexicographically first set of n-i+1 points spanning only a P^{n-i-1}.
struct SpecialPosition {
    int i = 0;
    std::vector<int> witness;
};

using Position = std::variant<GeneralPosition, SpecialPosition>;

template <class S> Position special_position_index(const PointConfig<S>& cfg, std::size_t cap = default_subset_cap());

/// Change of coordinates sending frame points to e_0..e_n (and the unit
/// point, when given, to (1:...:1)).
template <class S>
std::pair<FrameMap<S>, PointConfig<S>> frame_transform(const PointConfig<S>& cfg, const std::vector<int>& frame_idxs,
                                                       std::optional<int> unit_idx = std::nullopt);

/// Indices of the greedily chosen first n+1 independent points.
template <class S> std::vector<int> first_basis_points(const PointConfig<S>& cfg);

/// frame_transform on first_basis_points: afterwards every e_l is in X.
template <class S> std::pair<FrameMap<S>, PointConfig<S>> coordinate_frame(const PointConfig<S>& cfg);

/// True iff each coordinate point e_0..e_n is one of the points.
template <class S> bool contains_coordinate_points(const PointConfig<S>& cfg);

}  // namespace linstrand
