#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "linstrand/koszul.hpp"
#include "linstrand/split.hpp"
#include "linstrand/witness.hpp"

namespace linstrand {

/// Coordinates in which e_0..e_n lie on X, the degenerate subspace is
/// x_{n-i} = ... = x_n = 0 and Q = (q_0 : ... : q_{n-i-1} : 0 : ... : 0).
template <class S> struct Normalized {
    FrameMap<S> g;
    PointConfig<S> cfg;
    int q_index = 0;
    std::vector<int> frame_idxs;
};

template <class S> Normalized<S> normalize_special(const PointConfig<S>& cfg, const SpecialPosition& pos);

/// W_j: the span of the L^j_{ab} with F_{abj} = x_j L^j_{ab}, 0 <= a < b <= n-i-1.
template <class S> struct WSpace {
    int j = 0;
    std::map<std::pair<int, int>, LinearForm<S>> forms;
    Mat<S> basis;

    int dim() const { return static_cast<int>(basis.rows()); }
};

template <class S> std::vector<WSpace<S>> build_Wj(const PointConfig<S>& cfg, int i, const KoszulElement<S>& ke);

/// A product (A)(B) contained in I together with how it was reached.
template <class S> struct ProductWitness {
    std::vector<LinearForm<S>> side_a;
    std::vector<LinearForm<S>> side_b;
    std::vector<std::string> provenance;
    int assertions = 0;
    std::optional<SplitCertificate<S>> certificate;
};

template <class S> struct StepContext {
    const PointConfig<S>& cfg;  // normalized
    int i = 0;
    const KoszulElement<S>& ke;
    bool allow_fallback = true;
    std::vector<SplitInput<S>>* harvest = nullptr;
};

template <class S> ProductWitness<S> step1(const StepContext<S>& ctx);
template <class S> ProductWitness<S> step2(const StepContext<S>& ctx, const std::vector<WSpace<S>>& wjs);

struct NotOnRnc {
    std::string reason;
};

template <class S> using RncResult = std::variant<RncWitness<S>, NotOnRnc>;

/// Frames the first n+1 points, sends point n+1 to the unit point and uses
/// point n+2 (when present) to fix the curve.  Needs general position.
template <class S> RncResult<S> rnc_witness(const PointConfig<S>& cfg);

enum class VerdictTag { NoLinearStrand, OnRnc, OnUnion, UnsplitOverBaseField };

std::string verdict_name(VerdictTag t);
VerdictTag parse_verdict(const std::string& name);

template <class S> struct Verdict {
    VerdictTag tag = VerdictTag::NoLinearStrand;
    LinearStrand strand;
    Position position;
    std::optional<RncWitness<S>> rnc;
    std::optional<UnionWitness<S>> union_witness;
    std::optional<SplitCertificate<S>> certificate;
    std::string diagnostic;
    std::vector<std::string> provenance;
    int assertions_checked = 0;

    bool used_fallback() const;
};

template <class S> struct ClassifyOptions {
    bool allow_fallback = true;
    std::size_t subset_cap = default_subset_cap();
    std::vector<SplitInput<S>>* harvest = nullptr;
    /// Which row of the canonical intersection basis plays alpha.
    Index alpha_row = 0;
};

template <class S> Verdict<S> classify(const PointConfig<S>& cfg, const ClassifyOptions<S>& opts = {});

/// Every split input the two steps would build, over all alpha in the
/// canonical basis: W_j data with 0 < dim W_j < n-i-1, and P_de data with
/// 0 < dim W < i when all W_j vanish.  Empty for general position.
template <class S> std::vector<SplitInput<S>> harvest_split_inputs(const PointConfig<S>& cfg);

/// Coordinates in which extraction is legal: normalize_special in special
/// position, coordinate_frame otherwise.
template <class S> PointConfig<S> extraction_frame(const PointConfig<S>& cfg);

/// Splitting data L_{ef} = F_{efj} / x_j for e < f in `idxs`.  Throws
/// HypothesisError when some F_{efj} is not a multiple of x_j.
template <class S>
SplitInput<S> split_input_at(const PointConfig<S>& framed, const KoszulElement<S>& ke, int j, std::vector<int> idxs);

/// Union witness for the original points from a product found in the
/// normalized frame (same point order).
template <class S>
std::optional<UnionWitness<S>> witness_from_product(const PointConfig<S>& cfg, const PointConfig<S>& normalized,
                                                    const ProductWitness<S>& pw);

}  // namespace linstrand
