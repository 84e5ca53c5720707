#pragma once

#include <map>
#include <vector>

#include "linstrand/ideal.hpp"

namespace linstrand {

/// Strictly increasing k-subsets of {0..n} in lexicographic order; these
/// index the wedge basis e_{j_1} ^ ... ^ e_{j_k}.
class ExtBasis {
public:
    ExtBasis(int n, int k);

    int n() const { return n_; }
    int k() const { return k_; }
    Index size() const { return static_cast<Index>(subsets_.size()); }
    const std::vector<int>& subset(Index i) const { return subsets_[static_cast<std::size_t>(i)]; }
    Index index(const std::vector<int>& subset) const;

private:
    int n_, k_;
    std::vector<std::vector<int>> subsets_;
    std::map<std::vector<int>, Index> lookup_;
};

/// delta_k on the degree-d piece: wedge^k V (x) R_{d-k} -> wedge^{k-1} V (x) R_{d-k+1}.
/// Rows and columns are ordered wedge-major, monomial-minor.
template <class S> Mat<S> koszul_delta(int n, int k, int d);

/// a_1..a_n; a(i) is 1-based.
struct LinearStrand {
    std::vector<Index> values;

    Index a(int i) const { return values.at(static_cast<std::size_t>(i - 1)); }
    int length() const { return static_cast<int>(values.size()); }
    friend bool operator==(const LinearStrand&, const LinearStrand&) = default;
};

template <class S> LinearStrand strand_betti(const PointConfig<S>& cfg);

/// alpha = sum_j eps_j (x) F_{C_j}, one quadric per (n-2)-subset j.
template <class S> struct KoszulElement {
    int n = 0;
    std::vector<Quadric<S>> components;  // ExtBasis(n, n-2) order

    /// F_{abc}: the component whose complement is {a,b,c}.
    const Quadric<S>& F(int a, int b, int c) const;
    Quadric<S>& F(int a, int b, int c);
    /// F_{abc} = lambda x_a x_b + mu x_a x_c + nu x_b x_c, for a < b < c.
    S lambda(int a, int b, int c) const { return coefficient(F(a, b, c), {a, b}); }
    S mu(int a, int b, int c) const { return coefficient(F(a, b, c), {a, c}); }
    S nu(int a, int b, int c) const { return coefficient(F(a, b, c), {b, c}); }

    bool is_zero() const;
    friend bool operator==(const KoszulElement&, const KoszulElement&) = default;
};

/// (wedge^{n-2} V (x) I_2) cap K_{n-2}: its dimension and a canonical basis,
/// one alpha per row (reduced echelon form of the intersection).
template <class S> struct TopIntersection {
    Index count = 0;
    Mat<S> basis;
};

template <class S> TopIntersection<S> a_top_via_intersection(const PointConfig<S>& cfg);

/// Splits an alpha vector into its quadrics, checking that each lies in I_2
/// and (for n >= 3) is square-free in its three variables.  The coordinate
/// points must belong to X; otherwise HypothesisError.
template <class S> KoszulElement<S> extract_special_quadrics(const PointConfig<S>& cfg, const Vec<S>& alpha);

/// Same grouping without any checks.
template <class S> KoszulElement<S> split_alpha(int n, const Vec<S>& alpha);

/// The alternating cubic relation on every 4-subset a<b<c<d.
template <class S> bool check_syzygy_relation(const KoszulElement<S>& ke);

/// The four scalar identities among lambda, mu, nu on every d<e<f<g.
template <class S> bool coefficient_identities(const KoszulElement<S>& ke);

}  // namespace linstrand
