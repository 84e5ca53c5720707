#include "linstrand/acceptance.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <sstream>

#include "linstrand/classify.hpp"
#include "linstrand/harness.hpp"

namespace linstrand {

namespace {

const FieldDesc kField = FieldDesc::prime(32003);

class Clock {
public:
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int cap(const AcceptanceOptions& o, int full) { return o.max_trials > 0 && o.max_trials < full ? o.max_trials : full; }

std::uint64_t trial_seed(const AcceptanceOptions& o, int criterion, int trial) {
    return o.seed * 1000003ULL + static_cast<std::uint64_t>(criterion) * 100003ULL + static_cast<std::uint64_t>(trial);
}

// Small deterministic choices derived from a seed.
int pick(std::uint64_t seed, int lo, int hi) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

GenSpec rnc_spec(int n, std::uint64_t seed) {
    GenSpec g;
    g.family = Family::Rnc;
    g.n = n;
    g.s = pick(seed, n + 3, 2 * n + 2);
    g.field = kField;
    g.seed = seed;
    return g;
}

// s_A >= k+2 keeps the points off every RNC-style general position.
GenSpec union_spec(int k, int r, std::uint64_t seed) {
    GenSpec g;
    g.family = Family::Union;
    g.n = k + r;
    g.k = k;
    g.r = r;
    g.s_a = pick(seed, k + 2, k + 4);
    g.s_b = pick(seed + 1, r + 1, r + 4);
    g.s = g.s_a + g.s_b;
    g.field = kField;
    g.seed = seed;
    return g;
}

GenSpec special_spec(int n, std::uint64_t seed) {
    GenSpec g;
    g.family = Family::SpecialRandom;
    g.n = n;
    g.i = pick(seed, 0, n - 2);
    g.s = pick(seed + 1, n + 2, std::min({12, n + 6, n - g.i + 1 + max_special_off(n, g.i)}));
    g.field = kField;
    g.seed = seed;
    return g;
}

GenSpec general_spec(int n, int s_lo, int s_hi, std::uint64_t seed) {
    GenSpec g;
    g.family = Family::GeneralRandom;
    g.n = n;
    g.s = pick(seed, s_lo, s_hi);
    g.field = kField;
    g.seed = seed;
    return g;
}

// Mixed families over n = 2..5, in a fixed rotation.
GenSpec mixed_spec(int trial, std::uint64_t seed) {
    const int n = 2 + trial % 4;
    switch ((trial / 4) % 4) {
        case 0: return rnc_spec(n, seed);
        case 1: {
            const int k = pick(seed + 7, 1, n / 2);
            GenSpec g = union_spec(k, n - k, seed);
            g.s_a = pick(seed + 2, k + 1, k + 3);
            g.s = g.s_a + g.s_b;
            return g;
        }
        case 2: return general_spec(n, n + 2, n + 5, seed);
        default: return special_spec(n, seed);
    }
}

CriterionResult start(int id, const std::string& title) {
    CriterionResult r;
    r.id = id;
    r.title = title;
    return r;
}

std::string failure_note(const std::string& label, const GenSpec& g, const std::string& what) {
    return label + " (family " + family_name(g.family) + ", n " + std::to_string(g.n) + ", seed " + std::to_string(g.seed) + "): " + what;
}

// All alpha rows, extracted in a frame with the coordinate points on X.
template <class S> std::vector<KoszulElement<S>> extract_all(const PointConfig<S>& cfg) {
    std::vector<KoszulElement<S>> out;
    const PointConfig<S> framed = extraction_frame(cfg);
    const TopIntersection<S> top = a_top_via_intersection(framed);
    for (Index row = 0; row < top.count; ++row) out.push_back(extract_special_quadrics(framed, Vec<S>(top.basis.row(row).transpose())));
    return out;
}

}  // namespace

CriterionResult criterion_formula_agreement(const AcceptanceOptions& opts) {
    CriterionResult res = start(1, "formula agreement");
    const Clock clock;
    const int total = cap(opts, 200);
    int agree = 0;
    std::string first;
    for (int t = 0; t < total; ++t) {
        const GenSpec g = mixed_spec(t, trial_seed(opts, 1, t));
        try {
            const auto gen = generate<Fp>(g);
            const Index a = strand_betti(gen.cfg).a(g.n - 1);
            const Index b = a_top_via_intersection(gen.cfg).count;
            if (a == b) ++agree;
            else if (first.empty()) first = failure_note("mismatch", g, std::to_string(a) + " vs " + std::to_string(b));
        } catch (const std::exception& e) {
            if (first.empty()) first = failure_note("error", g, e.what());
        }
    }
    res.seconds = clock.seconds();
    res.passed = agree == total && res.seconds < 60;
    std::ostringstream os;
    os << agree << "/" << total << " agree, " << res.seconds << " s (limit 60 s)";
    if (!first.empty()) os << "; " << first;
    res.detail = os.str();
    return res;
}

CriterionResult criterion_rnc_forward(const AcceptanceOptions& opts) {
    CriterionResult res = start(2, "RNC forward check");
    const Clock clock;
    const int per = cap(opts, 50);
    int ok = 0, total = 0, fallback = 0;
    std::string first;
    for (int n = 3; n <= 5; ++n)
        for (int t = 0; t < per; ++t) {
            ++total;
            const GenSpec g = rnc_spec(n, trial_seed(opts, 2, n * 1000 + t));
            try {
                const auto gen = generate<Fp>(g);
                const auto v = classify(gen.cfg);
                std::string why;
                if (v.used_fallback()) ++fallback;
                if (v.strand.a(n - 1) < 1) why = "a_{n-1} = 0";
                else if (v.tag != VerdictTag::OnRnc) why = "verdict " + verdict_name(v.tag);
                else if (!v.rnc || !check_rnc_witness(gen.cfg, *v.rnc, &why)) why = "witness: " + why;
                else if (v.used_fallback()) why = "fallback provenance";
                if (why.empty()) ++ok;
                else if (first.empty()) first = failure_note("failed", g, why);
            } catch (const std::exception& e) {
                if (first.empty()) first = failure_note("error", g, e.what());
            }
        }
    res.seconds = clock.seconds();
    res.passed = ok == total && fallback == 0 && res.seconds < 60;
    std::ostringstream os;
    os << ok << "/" << total << " OnRNC with verified witness, " << fallback << " fallback, " << res.seconds << " s (limit 60 s)";
    if (!first.empty()) os << "; " << first;
    res.detail = os.str();
    return res;
}

CriterionResult criterion_union_forward(const AcceptanceOptions& opts) {
    CriterionResult res = start(3, "union forward check");
    const Clock clock;
    const int per = cap(opts, 50);
    int ok = 0, total = 0;
    std::string first;
    for (auto [k, r] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 2}, {2, 3}})
        for (int t = 0; t < per; ++t) {
            ++total;
            const GenSpec g = union_spec(k, r, trial_seed(opts, 3, (k * 10 + r) * 1000 + t));
            try {
                const auto gen = generate<Fp>(g);
                const auto v = classify(gen.cfg);
                std::string why;
                if (v.strand.a(g.n - 1) < 1) why = "a_{n-1} = 0";
                else if (v.tag != VerdictTag::OnUnion) why = "verdict " + verdict_name(v.tag) + " " + v.diagnostic;
                else if (!v.union_witness || !check_union_witness(gen.cfg, *v.union_witness, &why)) why = "witness: " + why;
                if (why.empty()) ++ok;
                else if (first.empty()) first = failure_note("failed", g, why);
            } catch (const std::exception& e) {
                if (first.empty()) first = failure_note("error", g, e.what());
            }
        }
    res.seconds = clock.seconds();
    res.passed = ok == total && res.seconds < 60;
    std::ostringstream os;
    os << ok << "/" << total << " OnUnion with valid witness, " << res.seconds << " s (limit 60 s)";
    if (!first.empty()) os << "; " << first;
    res.detail = os.str();
    return res;
}

CriterionResult criterion_special_converse(const AcceptanceOptions& opts) {
    CriterionResult res = start(4, "special-position converse");
    const Clock clock;
    const int want = cap(opts, 100);
    int ok = 0, kept = 0, drawn = 0, fallback = 0, oracle_disagree = 0;
    std::string first;
    for (int t = 0; kept < want && t < 50 * want; ++t) {
        const GenSpec g = special_spec(3 + t % 3, trial_seed(opts, 4, t));
        ++drawn;
        try {
            const auto gen = generate<Fp>(g);
            if (strand_betti(gen.cfg).a(g.n - 1) == 0) continue;
            ++kept;
            const auto v = classify(gen.cfg);
            std::string why;
            if (v.used_fallback()) ++fallback;
            if (v.tag != VerdictTag::OnUnion) why = "verdict " + verdict_name(v.tag) + " " + v.diagnostic;
            else if (!v.union_witness || !check_union_witness(gen.cfg, *v.union_witness, &why)) why = "witness: " + why;
            else if (v.used_fallback()) why = "fallback provenance";
            if (gen.cfg.size() <= 12 && bipartition_oracle(gen.cfg).has_value() != (v.tag == VerdictTag::OnUnion)) {
                ++oracle_disagree;
                if (why.empty()) why = "oracle disagrees on existence";
            }
            if (why.empty()) ++ok;
            else if (first.empty()) first = failure_note("failed", g, why);
        } catch (const std::exception& e) {
            ++kept;
            if (first.empty()) first = failure_note("error", g, e.what());
        }
    }
    res.seconds = clock.seconds();
    res.passed = kept == want && ok == want && fallback == 0 && oracle_disagree == 0;
    std::ostringstream os;
    os << ok << "/" << want << " OnUnion (" << kept << " kept with a_{n-1} != 0 of " << drawn << " drawn), " << fallback
       << " fallback, " << oracle_disagree << " oracle disagreements, " << res.seconds << " s";
    if (!first.empty()) os << "; " << first;
    res.detail = os.str();
    return res;
}

CriterionResult criterion_twisted_cubic(const AcceptanceOptions&) {
    CriterionResult res = start(5, "twisted cubic fixture");
    const Clock clock;
    const FieldDesc q = FieldDesc::rational();
    std::vector<Vec<Rational>> rows;
    for (int t = 0; t <= 7; ++t) {
        Vec<Rational> v(4);
        v << 1, t, t * t, t * t * t;
        rows.push_back(v);
    }
    std::ostringstream os;
    try {
        const auto cfg = make_config<Rational>(3, q, rows);
        const Index dim_i2 = ideal_degree_part(cfg, 2).dim();
        const LinearStrand a = strand_betti(cfg);
        const LinearStrand expected{{3, 2, 0}};
        const auto v = classify(cfg);
        std::string why;
        const bool witness_ok = v.rnc && check_rnc_witness(cfg, *v.rnc, &why) && v.rnc->params.size() == 8;
        res.passed = dim_i2 == 3 && a == expected && strand_oracle(cfg) == expected && v.tag == VerdictTag::OnRnc && witness_ok;
        os << "dim I_2 = " << dim_i2 << ", a = (";
        for (int k = 1; k <= a.length(); ++k) os << (k > 1 ? ", " : "") << a.a(k);
        os << "), verdict " << verdict_name(v.tag) << ", witness " << (witness_ok ? "verified on 8 points" : "rejected: " + why);
    } catch (const std::exception& e) {
        os << "error: " << e.what();
    }
    res.seconds = clock.seconds();
    res.detail = os.str();
    return res;
}

CriterionResult criterion_syzygy_identities(const AcceptanceOptions& opts) {
    CriterionResult res = start(6, "syzygy identity suite");
    const Clock clock;
    std::vector<GenSpec> specs;
    for (int t = 0; t < cap(opts, 200); ++t) specs.push_back(mixed_spec(t, trial_seed(opts, 1, t)));
    for (int n = 3; n <= 5; ++n)
        for (int t = 0; t < cap(opts, 50); ++t) specs.push_back(rnc_spec(n, trial_seed(opts, 2, n * 1000 + t)));
    for (auto [k, r] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 2}, {2, 3}})
        for (int t = 0; t < cap(opts, 50); ++t) specs.push_back(union_spec(k, r, trial_seed(opts, 3, (k * 10 + r) * 1000 + t)));
    for (int t = 0; t < cap(opts, 100); ++t) specs.push_back(special_spec(3 + t % 3, trial_seed(opts, 4, t)));

    int elements = 0, passed = 0, mutants = 0, caught = 0;
    std::string first;
    for (const GenSpec& g : specs) {
        try {
            const auto gen = generate<Fp>(g);
            if (strand_betti(gen.cfg).a(g.n - 1) == 0) continue;
            for (const auto& ke : extract_all(gen.cfg)) {
                ++elements;
                if (check_syzygy_relation(ke) && coefficient_identities(ke)) ++passed;
                else if (first.empty()) first = failure_note("identity failed", g, "extracted element");
                if (ke.n < 3) continue;  // no 4-subsets, nothing to break
                // perturb one square-free coefficient of one quadric
                const int a = pick(g.seed + static_cast<std::uint64_t>(elements), 0, ke.n - 2);
                KoszulElement<Fp> bad = ke;
                Quadric<Fp>& f = bad.F(a, a + 1, a + 2);
                f.coeffs(monomial_basis(ke.n, 2).index_of_product({a, a + 1})) += Fp(1, kField.p);
                ++mutants;
                if (!check_syzygy_relation(bad) && !coefficient_identities(bad)) ++caught;
                else if (first.empty()) first = failure_note("mutation survived", g, "F_{" + std::to_string(a) + "..}");
            }
        } catch (const std::exception& e) {
            if (first.empty()) first = failure_note("error", g, e.what());
        }
    }
    res.seconds = clock.seconds();
    res.passed = elements > 0 && passed == elements && mutants > 0 && caught == mutants && first.empty();
    std::ostringstream os;
    os << passed << "/" << elements << " extracted elements satisfy both identity sets; " << caught << "/" << mutants
       << " mutants fail both, " << res.seconds << " s";
    if (!first.empty()) os << "; " << first;
    res.detail = os.str();
    return res;
}

CriterionResult criterion_split_certificates(const AcceptanceOptions& opts) {
    CriterionResult res = start(7, "split certificates");
    const Clock clock;
    const int want = cap(opts, 100);
    const std::vector<std::pair<int, int>> shapes{{1, 2}, {1, 3}, {2, 2}, {2, 3}, {1, 4}, {3, 3}, {2, 4}, {1, 5}};
    int harvested = 0, ok = 0;
    std::map<std::string, int> branches;
    std::string first;
    for (int t = 0; harvested < want && t < 200 * want; ++t) {
        const auto [k, r] = shapes[static_cast<std::size_t>(t) % shapes.size()];
        const GenSpec g = union_spec(k, r, trial_seed(opts, 7, t));
        try {
            const auto gen = generate<Fp>(g);
            if (strand_betti(gen.cfg).a(g.n - 1) == 0) continue;
            for (const auto& in : harvest_split_inputs(gen.cfg)) {
                const Mat<Fp> V = in.span();
                const int d = static_cast<int>(V.rows()), m = in.m();
                if (!(d > 0 && d < m - 1) || harvested >= want) continue;
                ++harvested;
                std::string why;
                try {
                    const auto cert = derive_certificate(in, false);
                    ++branches[branch_name(cert.provenance)];
                    if (cert.provenance == Branch::FallbackSearch) why = "fallback search";
                    else if (cert.t() + static_cast<int>(cert.hs.rows()) != m - 1) why = "|Ls| + |hs| != m-1";
                    else if (!check_certificate(in.cfg, cert, V, &why)) why = "check_certificate: " + why;
                } catch (const std::exception& e) {
                    why = e.what();
                }
                if (why.empty()) ++ok;
                else if (first.empty()) first = failure_note("failed", g, why);
            }
        } catch (const std::exception& e) {
            if (first.empty()) first = failure_note("error", g, e.what());
        }
    }
    res.seconds = clock.seconds();
    res.passed = harvested == want && ok == want;
    std::ostringstream os;
    os << ok << "/" << want << " certified constructively (harvested " << harvested << "; branches";
    for (const auto& [b, c] : branches) os << " " << b << "=" << c;
    os << "), " << res.seconds << " s";
    if (!first.empty()) os << "; " << first;
    res.detail = os.str();
    return res;
}

CriterionResult criterion_negative_control(const AcceptanceOptions& opts) {
    CriterionResult res = start(8, "negative control");
    const Clock clock;
    const int total = cap(opts, 50);
    const int allowed = total * 2 / 50;
    int zero = 0, consistent = 0;
    std::string first;
    for (int t = 0; t < total; ++t) {
        const int n = 2 + t % 4;
        const GenSpec g = general_spec(n, n + 4, n + 6, trial_seed(opts, 8, t));
        try {
            const auto gen = generate<Fp>(g);
            if (strand_betti(gen.cfg).a(n - 1) == 0) {
                ++zero;
                continue;
            }
            const auto v = classify(gen.cfg);
            std::string why;
            if (v.tag == VerdictTag::OnRnc && v.rnc && check_rnc_witness(gen.cfg, *v.rnc, &why)) ++consistent;
            else if (first.empty()) first = failure_note("exception case inconsistent", g, verdict_name(v.tag) + " " + why);
        } catch (const std::exception& e) {
            if (first.empty()) first = failure_note("error", g, e.what());
        }
    }
    res.seconds = clock.seconds();
    res.passed = zero >= total - allowed && zero + consistent == total;
    std::ostringstream os;
    os << zero << "/" << total << " with a_{n-1} = 0 (need >= " << total - allowed << "), " << consistent
       << " exceptions classified OnRNC with verified witness, " << res.seconds << " s";
    if (!first.empty()) os << "; " << first;
    res.detail = os.str();
    return res;
}

CriterionResult criterion_invariance(const AcceptanceOptions& opts) {
    CriterionResult res = start(9, "frame invariance");
    const Clock clock;
    const int configs = cap(opts, 20);
    const int transforms = 10;
    int stable = 0;
    std::string first;
    for (int c = 0; c < configs; ++c) {
        const GenSpec g = mixed_spec(c, trial_seed(opts, 9, c));
        try {
            const auto gen = generate<Fp>(g);
            const LinearStrand base = strand_betti(gen.cfg);
            const VerdictTag tag = classify(gen.cfg).tag;
            std::mt19937_64 rng(g.seed);
            bool same = true;
            for (int k = 0; k < transforms && same; ++k) {
                const FrameMap<Fp> map(random_invertible<Fp>(g.n + 1, kField, rng));
                const PointConfig<Fp> moved = map.apply(gen.cfg);
                const LinearStrand a = strand_betti(moved);
                const VerdictTag t2 = classify(moved).tag;
                same = a == base && t2 == tag;
                if (!same && first.empty()) first = failure_note("changed", g, verdict_name(tag) + " -> " + verdict_name(t2));
            }
            if (same) ++stable;
        } catch (const std::exception& e) {
            if (first.empty()) first = failure_note("error", g, e.what());
        }
    }
    res.seconds = clock.seconds();
    res.passed = stable == configs;
    std::ostringstream os;
    os << stable << "/" << configs << " configs unchanged under " << transforms << " frame transforms each, " << res.seconds << " s";
    if (!first.empty()) os << "; " << first;
    res.detail = os.str();
    return res;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
    const std::vector<std::function<CriterionResult(const AcceptanceOptions&)>> all{
        criterion_formula_agreement,  criterion_rnc_forward,        criterion_union_forward,
        criterion_special_converse,   criterion_twisted_cubic,      criterion_syzygy_identities,
        criterion_split_certificates, criterion_negative_control,   criterion_invariance};
    std::vector<CriterionResult> out;
    if (!opts.parallel) {
        for (const auto& f : all) out.push_back(f(opts));
        return out;
    }
    std::vector<std::future<CriterionResult>> jobs;
    for (const auto& f : all) jobs.push_back(std::async(std::launch::async, f, opts));
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.id << "  " << r.title << ": " << r.detail;
    return os.str();
}

}  // namespace linstrand
