#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linstrand/ideal.hpp"

namespace linstrand {

/// Splitting data F_{efj} = x_j L_{ef} for e, f in `idxs`.  The forms are
/// full (n+1)-vectors supported on y_e, y_f.
template <class S> struct SplitInput {
    PointConfig<S> cfg;
    int j = 0;
    std::vector<int> idxs;
    std::map<std::pair<int, int>, LinearForm<S>> L;  // keyed by (e, f), e < f

    int m() const { return static_cast<int>(idxs.size()); }
    const LinearForm<S>& form(int e, int f) const;
    /// Row basis of the span of all L_{ef}.
    Mat<S> span() const;
};

/// Throws HypothesisError unless m >= 3, j is not among idxs, every L_{ef}
/// lives in y_e, y_f and x_j L_{ef} vanishes on X.
template <class S> void validate(const SplitInput<S>& in);

enum class Branch { BadBlock, Gak, Bgn, BasisVarOut, OnlyBinomials, OneMonBlock, Final, FallbackSearch };

std::string branch_name(Branch b);
Branch parse_branch(const std::string& name);

struct Block {
    int generator = 0;           // y_a with L_{ab} = lambda y_a
    int starter = 0;             // b
    std::vector<int> closure;    // B^{ab}
    std::vector<int> members;    // B_q: closure minus earlier blocks
    bool starter_inside = false; // no starter with y_b outside the closure exists
};

template <class S> struct BlockState {
    int d = 0;
    std::vector<Block> blocks;
    std::vector<std::pair<int, int>> binomials;          // the set L, as pairs (e, f)
    std::vector<std::vector<std::pair<int, int>>> clusters;  // D_0 first (possibly empty), then D_1..D_p
    std::vector<std::vector<int>> cluster_vars;          // V_{D_r}
    std::vector<int> v_l;                                // V_L
    std::vector<int> v_n;                                // variables absent from V
};

struct ProductCheck {
    int l_index = 0;
    int h_index = 0;
    bool vanishes = false;
};

template <class S> struct SplitCertificate {
    int m = 0;
    Mat<S> Ls;  // t rows
    Mat<S> hs;  // m-1-t rows
    Branch provenance = Branch::FallbackSearch;
    std::vector<ProductCheck> transcript;

    int t() const { return static_cast<int>(Ls.rows()); }
};

/// F_{efg} rebuilt from the L's through the alternating relation on
/// {j, e, f, g}; asserts it vanishes on X.
template <class S> Quadric<S> useful_relation(const SplitInput<S>& in, int e, int f, int g);

/// Checks the hypotheses on the data, then whether y_f T vanishes on X.
template <class S>
bool key_lemma_propagate(const SplitInput<S>& in, int e, int f, const LinearForm<S>& T, int u, int v);

template <class S> BlockState<S> build_blocks(const SplitInput<S>& in);

/// Runs the constructive branches in order; with `allow_fallback` the
/// bounded search is the last resort.  Throws DimOutOfRange, NoCertificate.
template <class S> SplitCertificate<S> derive_certificate(const SplitInput<S>& in, bool allow_fallback = true);

inline constexpr std::size_t kFallbackBound = 100000;

/// The bounded search on its own; nullopt when the bound is exhausted.
template <class S> std::optional<SplitCertificate<S>> fallback_certificate(const SplitInput<S>& in);

/// Independent re-verification against the span V of the L's.
template <class S>
bool check_certificate(const PointConfig<S>& cfg, const SplitCertificate<S>& cert, const Mat<S>& V, std::string* why = nullptr);

}  // namespace linstrand
