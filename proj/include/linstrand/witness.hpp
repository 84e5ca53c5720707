#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linstrand/projective.hpp"

namespace linstrand {

/// X inside P^k u P^r, each side cut out by independent linear forms.
template <class S> struct UnionWitness {
    int k = 0;
    int r = 0;
    Mat<S> forms_a;  // n-k rows
    Mat<S> forms_b;  // n-r rows
    std::vector<char> assignment;  // 'A', 'B', or '*' for both
};

/// Points on the curve t -> (1/(t-b_0) : ... : 1/(t-b_n)) after applying
/// `frame`; a missing parameter stands for t = infinity, the unit point.
template <class S> struct RncWitness {
    Mat<S> frame;
    Vec<S> b;
    std::vector<std::optional<S>> params;
};

/// The curve point at parameter t, denominators cleared.
template <class S> Vec<S> rnc_point(const Vec<S>& b, const std::optional<S>& t);

/// Smallest (k, r) with k <= r, k + r = n containing the spans of the two
/// point sets, or nullopt when the sides are too big.  Sides are given as
/// membership masks over the points.
template <class S>
std::optional<UnionWitness<S>> union_from_sides(const PointConfig<S>& cfg, const std::vector<bool>& side_a,
                                                const std::vector<bool>& side_b);

/// Smallest union witness containing the zero sets of two lists of forms.
template <class S>
std::optional<UnionWitness<S>> union_from_forms(const PointConfig<S>& cfg, const Mat<S>& forms_a, const Mat<S>& forms_b);

/// Independent re-verification; on failure `why` says what broke.
template <class S> bool check_union_witness(const PointConfig<S>& cfg, const UnionWitness<S>& w, std::string* why = nullptr);
template <class S> bool check_rnc_witness(const PointConfig<S>& cfg, const RncWitness<S>& w, std::string* why = nullptr);

}  // namespace linstrand
