#include "linstrand/harness.hpp"

#include <algorithm>
#include <set>

#include "linstrand/combinatorics.hpp"

namespace linstrand {

std::string family_name(Family f) {
    switch (f) {
        case Family::Rnc: return "rnc";
        case Family::Union: return "union";
        case Family::GeneralRandom: return "general";
        case Family::SpecialRandom: return "special";
    }
    return "?";
}

Family parse_family(const std::string& name) {
    for (Family f : {Family::Rnc, Family::Union, Family::GeneralRandom, Family::SpecialRandom})
        if (family_name(f) == name) return f;
    fail(ErrorCode::ParseError, "unknown family '" + name + "'");
}

template <class S> S random_scalar(const FieldDesc& field, std::mt19937_64& rng) {
    if constexpr (std::is_same_v<S, Fp>) {
        std::uniform_int_distribution<long long> dist(0, static_cast<long long>(field.p) - 1);
        return Fp(dist(rng), field.p);
    } else {
        // small integers keep rational coefficient growth in check
        std::uniform_int_distribution<long long> dist(-9, 9);
        return Rational(dist(rng));
    }
}

template <class S> Mat<S> random_invertible(int size, const FieldDesc& field, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
        Mat<S> m(size, size);
        for (Index i = 0; i < m.size(); ++i) m.data()[i] = random_scalar<S>(field, rng);
        if (rank(m) == size) return m;
    }
    fail(ErrorCode::RejectionOverflow, "no invertible matrix drawn");
}

namespace {

template <class S> Vec<S> random_vector(int len, const FieldDesc& field, std::mt19937_64& rng) {
    Vec<S> v(len);
    for (int i = 0; i < len; ++i) v(i) = random_scalar<S>(field, rng);
    return v;
}

// Random point of the projective subspace spanned by the columns of `span`.
template <class S> Vec<S> random_point_in(const Mat<S>& span, const FieldDesc& field, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
        Vec<S> p = span * random_vector<S>(static_cast<int>(span.cols()), field, rng);
        if (!is_zero_matrix<S>(p)) return p;
    }
    fail(ErrorCode::RejectionOverflow, "only zero vectors drawn");
}

// Points with the given rows, or nullopt when they do not form a valid
// configuration (duplicates, not spanning).
template <class S>
std::optional<PointConfig<S>> try_config(int n, const FieldDesc& field, const std::vector<Vec<S>>& rows) {
    try {
        return make_config<S>(n, field, rows);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidConfig) return std::nullopt;
        throw;
    }
}

void check_spec(const GenSpec& spec) {
    require(spec.n >= 2, ErrorCode::InvalidConfig, "generator needs n >= 2");
    switch (spec.family) {
        case Family::Union:
            require(spec.k >= 1 && spec.r >= 1 && spec.k + spec.r == spec.n, ErrorCode::InvalidConfig, "union needs k + r = n");
            require(spec.s_a >= spec.k + 1 && spec.s_b >= spec.r + 1, ErrorCode::InvalidConfig,
                    "each side needs enough points to span its subspace");
            require(spec.s == 0 || spec.s == spec.s_a + spec.s_b, ErrorCode::InvalidConfig, "s must equal s_a + s_b");
            break;
        case Family::SpecialRandom:
            require(spec.i >= 0 && spec.i <= spec.n - 2, ErrorCode::InvalidConfig, "special index must lie in 0..n-2");
            require(spec.s >= spec.n + 2, ErrorCode::InvalidConfig, "special family needs s >= n+2");
            // nondegeneracy at i could never hold
            require(spec.s - (spec.n - spec.i + 1) <= max_special_off(spec.n, spec.i), ErrorCode::InvalidConfig,
                    "special family: too many points off the degenerate subspace for nondegeneracy at i");
            break;
        default: require(spec.s >= spec.n + 1, ErrorCode::InvalidConfig, "need s >= n+1"); break;
    }
}

// Nondegeneracy at i: no n-i points span only a P^{n-i-2}.
template <class S> bool condition_two(const PointConfig<S>& cfg, int i) {
    const int n = cfg.n();
    bool ok = true;
    for_each_combination(static_cast<int>(cfg.size()), n - i, [&](const std::vector<int>& c) {
        ok = subset_rank(cfg, c) == n - i;
        return ok;
    });
    return ok;
}

template <class S> Generated<S> generate_rnc(const GenSpec& spec, std::mt19937_64& rng) {
    const int n = spec.n;
    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
        std::vector<S> params;
        for (int i = 0; i < spec.s; ++i) {
            S t = random_scalar<S>(spec.field, rng);
            if (std::find(params.begin(), params.end(), t) != params.end()) break;
            params.push_back(t);
        }
        if (static_cast<int>(params.size()) != spec.s) continue;
        const Mat<S> frame = random_invertible<S>(n + 1, spec.field, rng);
        std::vector<Vec<S>> rows;
        for (const S& t : params) {
            Vec<S> v(n + 1);
            S power = make_scalar<S>(1, spec.field);
            for (int l = 0; l <= n; ++l) {
                v(l) = power;
                power *= t;
            }
            rows.push_back(frame * v);
        }
        auto cfg = try_config<S>(n, spec.field, rows);
        if (!cfg) continue;
        GroundTruth<S> truth;
        truth.family = Family::Rnc;
        truth.params = params;
        truth.frame = frame;
        return {*cfg, truth};
    }
    fail(ErrorCode::RejectionOverflow, "rnc family: too many rejections");
}

template <class S> Generated<S> generate_union(const GenSpec& spec, std::mt19937_64& rng) {
    const int n = spec.n;
    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
        const Mat<S> basis = random_invertible<S>(n + 1, spec.field, rng);
        const Mat<S> span_a = basis.leftCols(spec.k + 1), span_b = basis.rightCols(spec.r + 1);
        std::vector<Vec<S>> rows;
        for (int i = 0; i < spec.s_a; ++i) rows.push_back(random_point_in(span_a, spec.field, rng));
        for (int i = 0; i < spec.s_b; ++i) rows.push_back(random_point_in(span_b, spec.field, rng));
        auto cfg = try_config<S>(n, spec.field, rows);
        if (!cfg) continue;
        std::vector<bool> side_a(rows.size(), false), side_b(rows.size(), false);
        for (std::size_t i = 0; i < rows.size(); ++i) (static_cast<int>(i) < spec.s_a ? side_a : side_b)[i] = true;
        GroundTruth<S> truth;
        truth.family = Family::Union;
        truth.frame = basis;
        truth.planted_union = union_from_sides(*cfg, side_a, side_b);
        if (!truth.planted_union) continue;
        return {*cfg, truth};
    }
    fail(ErrorCode::RejectionOverflow, "union family: too many rejections");
}

template <class S> Generated<S> generate_general(const GenSpec& spec, std::mt19937_64& rng) {
    const int n = spec.n;
    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
        std::vector<Vec<S>> rows;
        for (int i = 0; i < spec.s; ++i) rows.push_back(random_vector<S>(n + 1, spec.field, rng));
        auto cfg = try_config<S>(n, spec.field, rows);
        if (!cfg || !is_general_position(*cfg)) continue;
        GroundTruth<S> truth;
        truth.family = Family::GeneralRandom;
        return {*cfg, truth};
    }
    fail(ErrorCode::RejectionOverflow, "general family: too many rejections");
}

// n-i+1 points on a P^{n-i-1} plus the rest on a complementary P^{i+1}, so
// the configuration sits on a union and is special at exactly index i.
template <class S> Generated<S> generate_special(const GenSpec& spec, std::mt19937_64& rng) {
    const int n = spec.n, i = spec.i;
    const int on_a = n - i + 1, on_b = spec.s - on_a;
    require(on_b >= i + 1, ErrorCode::InvalidConfig, "special family: too few points off the degenerate subspace");
    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
        const Mat<S> basis = random_invertible<S>(n + 1, spec.field, rng);
        const Mat<S> span_a = basis.leftCols(n - i), span_b = basis.rightCols(i + 2);
        std::vector<Vec<S>> rows;
        for (int p = 0; p < on_a; ++p) rows.push_back(random_point_in(span_a, spec.field, rng));
        for (int p = 0; p < on_b; ++p) rows.push_back(random_point_in(span_b, spec.field, rng));
        // shuffle so the degenerate subset is not always a prefix
        std::vector<std::size_t> order(rows.size());
        for (std::size_t p = 0; p < order.size(); ++p) order[p] = p;
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<Vec<S>> shuffled;
        std::vector<int> planted;
        for (std::size_t p = 0; p < order.size(); ++p) {
            shuffled.push_back(rows[order[p]]);
            if (static_cast<int>(order[p]) < on_a) planted.push_back(static_cast<int>(p));
        }
        auto cfg = try_config<S>(n, spec.field, shuffled);
        if (!cfg || !condition_two(*cfg, i)) continue;
        std::vector<bool> side_a(shuffled.size(), false), side_b(shuffled.size(), false);
        for (std::size_t p = 0; p < order.size(); ++p) (static_cast<int>(order[p]) < on_a ? side_a : side_b)[p] = true;
        GroundTruth<S> truth;
        truth.family = Family::SpecialRandom;
        truth.frame = basis;
        truth.planted_union = union_from_sides(*cfg, side_a, side_b);
        truth.planted_subset = planted;
        if (!truth.planted_union) continue;
        return {*cfg, truth};
    }
    fail(ErrorCode::RejectionOverflow, "special family: too many rejections");
}

}  // namespace

template <class S> Generated<S> generate(const GenSpec& spec_in) {
    GenSpec spec = spec_in;
    if (spec.family == Family::Union && spec.s == 0) spec.s = spec.s_a + spec.s_b;
    check_spec(spec);
    if constexpr (std::is_same_v<S, Fp>) {
        require(!spec.field.is_rational(), ErrorCode::FieldMismatch, "prime-field generator asked for rationals");
    } else {
        require(spec.field.is_rational(), ErrorCode::FieldMismatch, "rational generator asked for a prime field");
    }
    std::mt19937_64 rng(spec.seed);
    switch (spec.family) {
        case Family::Rnc: return generate_rnc<S>(spec, rng);
        case Family::Union: return generate_union<S>(spec, rng);
        case Family::GeneralRandom: return generate_general<S>(spec, rng);
        case Family::SpecialRandom: return generate_special<S>(spec, rng);
    }
    fail(ErrorCode::InvalidConfig, "unknown family");
}

template <class S> std::optional<UnionWitness<S>> bipartition_oracle(const PointConfig<S>& cfg) {
    const int n = cfg.n();
    const int s = static_cast<int>(cfg.size());
    if (s > 16) fail(ErrorCode::SizeLimit, "bipartition oracle needs at most 16 points");
    const Mat<S> coords = cfg.coordinate_matrix();
    auto span_dim = [&](std::uint32_t mask) {
        Mat<S> m(__builtin_popcount(mask), n + 1);
        Index r = 0;
        for (int p = 0; p < s; ++p)
            if (mask & (1u << p)) m.row(r++) = coords.row(p);
        return static_cast<int>(oracle_rank<S>(m)) - 1;
    };
    const std::uint32_t all = (1u << s) - 1;
    // point 0 in X_A; X_B = complement, nonempty
    for (std::uint32_t rest = 0; rest < (1u << (s - 1)); ++rest) {
        const std::uint32_t a = 1u | (rest << 1);
        const std::uint32_t b = all & ~a;
        if (b == 0) continue;
        const int da = span_dim(a), db = span_dim(b);
        if (da > n - 1 || db > n - 1 || da + db > n) continue;
        std::vector<bool> side_a(static_cast<std::size_t>(s)), side_b(static_cast<std::size_t>(s));
        for (int p = 0; p < s; ++p) {
            side_a[static_cast<std::size_t>(p)] = (a >> p) & 1u;
            side_b[static_cast<std::size_t>(p)] = (b >> p) & 1u;
        }
        return union_from_sides(cfg, side_a, side_b);
    }
    return std::nullopt;
}

template <class S> Index oracle_rank(Mat<S> m) {
    const Index rows = m.rows(), cols = m.cols();
    Index r = 0;
    S prev(1);
    for (Index c = 0; c < cols && r < rows; ++c) {
        Index piv = r;
        while (piv < rows && is_zero(m(piv, c))) ++piv;
        if (piv == rows) continue;
        m.row(piv).swap(m.row(r));
        for (Index i = r + 1; i < rows; ++i) {
            for (Index k = c + 1; k < cols; ++k) m(i, k) = (m(i, k) * m(r, c) - m(i, c) * m(r, k)) / prev;
            m(i, c) = S(0);
        }
        prev = m(r, c);
        ++r;
    }
    return r;
}

template <class S> LinearStrand strand_oracle(const PointConfig<S>& cfg) {
    const int n = cfg.n();
    // reversed orderings: subsets colex-descending, monomials in reverse
    auto subsets = [n](int k) {
        auto all = combinations(n + 1, k);
        std::reverse(all.begin(), all.end());
        return all;
    };
    const MonomialBasis& quad = monomial_basis(n, 2);
    const Index nq = quad.size();
    auto qidx = [&](int a, int b) { return nq - 1 - quad.index_of_product({a, b}); };
    const FormSpace<S> i2 = ideal_degree_part(cfg, 2);
    LinearStrand strand;
    for (int i = 1; i <= n; ++i) {
        const auto dom = subsets(i), cod = subsets(i - 1);
        std::map<std::vector<int>, Index> cod_index;
        for (std::size_t t = 0; t < cod.size(); ++t) cod_index[cod[t]] = static_cast<Index>(t);
        const Index rows = static_cast<Index>(cod.size()) * nq;
        // delta: wedge^i (x) R_1 -> wedge^{i-1} (x) R_2
        Mat<S> delta = zeros<S>(rows, static_cast<Index>(dom.size()) * (n + 1));
        for (std::size_t J = 0; J < dom.size(); ++J)
            for (int v = n; v >= 0; --v) {
                const Index col = static_cast<Index>(J) * (n + 1) + (n - v);
                for (std::size_t l = 0; l < dom[J].size(); ++l) {
                    std::vector<int> rest = dom[J];
                    const int x = rest[l];
                    rest.erase(rest.begin() + static_cast<long>(l));
                    delta(cod_index.at(rest) * nq + qidx(x, v), col) += (l % 2 == 0) ? S(1) : S(-1);
                }
            }
        // wedge^{i-1} (x) I_2
        Mat<S> ideal_part = zeros<S>(rows, static_cast<Index>(cod.size()) * i2.dim());
        for (std::size_t t = 0; t < cod.size(); ++t)
            for (Index q = 0; q < i2.dim(); ++q)
                for (Index mon = 0; mon < nq; ++mon)
                    ideal_part(static_cast<Index>(t) * nq + (nq - 1 - mon), static_cast<Index>(t) * i2.dim() + q) = i2.basis(q, mon);
        const Index kernel = delta.cols() + ideal_part.cols() - oracle_rank<S>(hstack<S>(delta, ideal_part));
        // image of wedge^{i+1} (x) R_0 in wedge^i (x) R_1
        Index image = 0;
        if (i + 1 <= n + 1) {
            const auto top = subsets(i + 1);
            std::map<std::vector<int>, Index> dom_index;
            for (std::size_t t = 0; t < dom.size(); ++t) dom_index[dom[t]] = static_cast<Index>(t);
            Mat<S> in = zeros<S>(static_cast<Index>(dom.size()) * (n + 1), static_cast<Index>(top.size()));
            for (std::size_t J = 0; J < top.size(); ++J)
                for (std::size_t l = 0; l < top[J].size(); ++l) {
                    std::vector<int> rest = top[J];
                    const int x = rest[l];
                    rest.erase(rest.begin() + static_cast<long>(l));
                    in(dom_index.at(rest) * (n + 1) + (n - x), static_cast<Index>(J)) += (l % 2 == 0) ? S(1) : S(-1);
                }
            image = oracle_rank<S>(in);
        }
        strand.values.push_back(kernel - image);
    }
    return strand;
}

#define LINSTRAND_INSTANTIATE(S)                                                                 \
    template S random_scalar<S>(const FieldDesc&, std::mt19937_64&);                             \
    template Mat<S> random_invertible<S>(int, const FieldDesc&, std::mt19937_64&);               \
    template Generated<S> generate<S>(const GenSpec&);                                           \
    template std::optional<UnionWitness<S>> bipartition_oracle<S>(const PointConfig<S>&);       \
    template Index oracle_rank<S>(Mat<S>);                                                       \
    template LinearStrand strand_oracle<S>(const PointConfig<S>&);

LINSTRAND_INSTANTIATE(Fp)
LINSTRAND_INSTANTIATE(Rational)

}  // namespace linstrand
