#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "linstrand/koszul.hpp"
#include "linstrand/witness.hpp"

namespace linstrand {

enum class Family { Rnc, Union, GeneralRandom, SpecialRandom };

std::string family_name(Family f);
Family parse_family(const std::string& name);

struct GenSpec {
    Family family = Family::GeneralRandom;
    int n = 3;
    int s = 0;
    int k = 0, r = 0;      // Union: subspace dimensions, k + r = n
    int s_a = 0, s_b = 0;  // Union: points per side
    int i = 0;             // SpecialRandom: planted index
    FieldDesc field;
    std::uint64_t seed = 1;
};

/// What the generator planted.  Union-like families record the two
/// subspaces; the RNC family records the curve parameters and the frame.
template <class S> struct GroundTruth {
    Family family = Family::GeneralRandom;
    std::vector<S> params;
    Mat<S> frame;
    std::optional<UnionWitness<S>> planted_union;
    std::vector<int> planted_subset;  // SpecialRandom: the n-i+1 degenerate points
};

template <class S> struct Generated {
    PointConfig<S> cfg;
    GroundTruth<S> truth;
};

inline constexpr int kMaxRejections = 10000;

/// SpecialRandom(i) puts n-i+1 points on a P^{n-i-1} and the rest on a
/// P^{i+1}; this is how many the second side can take before nondegeneracy
/// fails for every draw (i+3 of them plus any others make a degenerate
/// (n-i)-subset once n-i >= i+3).
inline int max_special_off(int n, int i) { return n - i >= i + 3 ? i + 2 : 1 << 20; }

/// Seeded and deterministic; throws RejectionOverflow after kMaxRejections
/// failed draws and InvalidConfig on inconsistent parameters.
template <class S> Generated<S> generate(const GenSpec& spec);

template <class S> S random_scalar(const FieldDesc& field, std::mt19937_64& rng);
template <class S> Mat<S> random_invertible(int size, const FieldDesc& field, std::mt19937_64& rng);

/// Lexicographically first bipartition X_A u X_B with spans fitting a
/// P^k u P^r, k + r = n; point 0 always goes to X_A.  Needs s <= 16.
template <class S> std::optional<UnionWitness<S>> bipartition_oracle(const PointConfig<S>& cfg);

/// Second implementation of the strand: reversed orderings, membership in
/// wedge^{i-1} (x) I_2 tested by stacking, fraction-free elimination.
template <class S> LinearStrand strand_oracle(const PointConfig<S>& cfg);

/// Bareiss fraction-free rank.
template <class S> Index oracle_rank(Mat<S> m);

}  // namespace linstrand
