#include "linstrand/classify.hpp"

#include <algorithm>
#include <array>

#include "linstrand/harness.hpp"

namespace linstrand {

std::string verdict_name(VerdictTag t) {
    switch (t) {
        case VerdictTag::NoLinearStrand: return "NoLinearStrand";
        case VerdictTag::OnRnc: return "OnRNC";
        case VerdictTag::OnUnion: return "OnUnion";
        case VerdictTag::UnsplitOverBaseField: return "UnsplitOverBaseField";
    }
    return "?";
}

VerdictTag parse_verdict(const std::string& name) {
    for (VerdictTag t : {VerdictTag::NoLinearStrand, VerdictTag::OnRnc, VerdictTag::OnUnion, VerdictTag::UnsplitOverBaseField})
        if (verdict_name(t) == name) return t;
    fail(ErrorCode::ParseError, "unknown verdict tag '" + name + "'");
}

template <class S> bool Verdict<S>::used_fallback() const {
    for (const auto& p : provenance)
        if (p.find("fallback") != std::string::npos) return true;
    return false;
}

template <class S> Normalized<S> normalize_special(const PointConfig<S>& cfg, const SpecialPosition& pos) {
    const int n = cfg.n(), i = pos.i;
    require(static_cast<int>(pos.witness.size()) == n - i + 1, ErrorCode::HypothesisError, "witness has the wrong size");
    std::vector<int> frame(pos.witness.begin(), pos.witness.begin() + (n - i));
    const int q = pos.witness.back();
    Mat<S> rows(0, n + 1);
    for (int idx : frame) rows = vstack<S>(rows, Mat<S>(cfg[static_cast<std::size_t>(idx)].coords().transpose()));
    require(rank(rows) == n - i, ErrorCode::SingularFrame, "n-i witness points are dependent");
    for (std::size_t p = 0; p < cfg.size() && rows.rows() < n + 1; ++p) {
        if (std::find(pos.witness.begin(), pos.witness.end(), static_cast<int>(p)) != pos.witness.end()) continue;
        Mat<S> trial = vstack<S>(rows, Mat<S>(cfg[p].coords().transpose()));
        if (rank(trial) == trial.rows()) {
            rows = trial;
            frame.push_back(static_cast<int>(p));
        }
    }
    require(rows.rows() == n + 1, ErrorCode::SingularFrame, "points do not span");
    auto [g, moved] = frame_transform(cfg, frame);
    const Vec<S>& qc = moved[static_cast<std::size_t>(q)].coords();
    for (int l = 0; l < n - i; ++l)
        require(!is_zero(qc(l)), ErrorCode::HypothesisError, "extra point has a zero coordinate q_" + std::to_string(l));
    for (int l = n - i; l <= n; ++l)
        require(is_zero(qc(l)), ErrorCode::HypothesisError, "extra point is off the degenerate subspace");
    return Normalized<S>{g, moved, q, frame};
}

namespace {

template <class S> const Quadric<S>& F_of(const KoszulElement<S>& ke, int a, int b, int c) {
    std::array<int, 3> t{a, b, c};
    std::sort(t.begin(), t.end());
    return ke.F(t[0], t[1], t[2]);
}

// H with F_{cuj} = x_j H, or nullopt when F_{cuj} is not a multiple of x_j.
template <class S> std::optional<LinearForm<S>> over_xj(const KoszulElement<S>& ke, int c, int u, int j) {
    const Quadric<S>& f = F_of(ke, c, u, j);
    if (!is_zero(coefficient(f, {std::min(c, u), std::max(c, u)}))) return std::nullopt;
    LinearForm<S> h = zeros<S>(ke.n + 1, 1);
    h(c) = coefficient(f, {std::min(c, j), std::max(c, j)});
    h(u) = coefficient(f, {std::min(u, j), std::max(u, j)});
    return h;
}

template <class S> bool products_vanish(const PointConfig<S>& cfg, const std::vector<LinearForm<S>>& a,
                                        const std::vector<LinearForm<S>>& b) {
    for (const auto& p : cfg.points()) {
        bool a_zero = true, b_zero = true;
        for (const auto& l : a) a_zero = a_zero && is_zero(l.dot(p.coords()));
        for (const auto& l : b) b_zero = b_zero && is_zero(l.dot(p.coords()));
        if (!a_zero && !b_zero) return false;
    }
    return true;
}

template <class S> class Prover {
public:
    Prover(const StepContext<S>& ctx, ProductWitness<S>& pw) : ctx_(ctx), pw_(pw), n_(ctx.cfg.n()) {}

    LinearForm<S> x(int v) const { return variable<S>(n_, v); }

    std::vector<LinearForm<S>> vars(const std::vector<int>& vs) const {
        std::vector<LinearForm<S>> out;
        for (int v : vs) out.push_back(x(v));
        return out;
    }

    // A claim the argument guarantees; failure means corrupted input.
    void claim(const std::vector<LinearForm<S>>& a, const std::vector<LinearForm<S>>& b, const std::string& what) {
        ++pw_.assertions;
        if (!products_vanish(ctx_.cfg, a, b)) fail(ErrorCode::ContradictionReached, what + " does not vanish on X");
    }

    bool test(const LinearForm<S>& a, const LinearForm<S>& b) const { return product_in_ideal(ctx_.cfg, a, b); }

    // H_{cu} over x_j with nonzero x_u coefficient, c from the support of T.
    std::optional<std::pair<int, LinearForm<S>>> harvest_H(const LinearForm<S>& T, int u, int j) {
        for (int c = 0; c <= n_; ++c) {
            if (c == u || c == j || is_zero(T(c))) continue;
            const auto h = over_xj(ctx_.ke, c, u, j);
            if (h && !is_zero((*h)(u))) {
                claim({x(j)}, {*h}, "x_j H_{" + std::to_string(c) + "," + std::to_string(u) + "}");
                return std::make_pair(c, *h);
            }
        }
        return std::nullopt;
    }

    // The chain A_0 > A_1 > ... of the large-W_j argument: strip the
    // variables that fail against the current forms, adding one H per
    // stripped variable, until (A_l)(H) is in I.
    void bigdim(int j, std::vector<LinearForm<S>> hset, std::vector<int> A) {
        for (int round = 0; round <= ctx_.i + 1; ++round) {
            if (products_vanish(ctx_.cfg, vars(A), hset)) {
                pw_.side_a = vars(A);
                pw_.side_b = hset;
                return;
            }
            std::vector<std::pair<int, LinearForm<S>>> failing;
            for (int u : A) {
                if (u == j) continue;
                for (const auto& T : hset)
                    if (!test(x(u), T)) {
                        failing.emplace_back(u, T);
                        break;
                    }
            }
            if (failing.empty()) fail(ErrorCode::PropagationStalled, "no variable fails but the product is not in I");
            for (const auto& [u, T] : failing) {
                const auto found = harvest_H(T, u, j);
                if (!found) fail(ErrorCode::PropagationStalled, "no H form introduces x_" + std::to_string(u));
                hset.push_back(found->second);
                A.erase(std::find(A.begin(), A.end(), u));
            }
        }
        fail(ErrorCode::PropagationStalled, "propagation did not close within i+1 rounds");
    }

    const StepContext<S>& ctx_;
    ProductWitness<S>& pw_;
    int n_;
};

template <class S> std::vector<LinearForm<S>> rows_of(const Mat<S>& m) {
    std::vector<LinearForm<S>> out;
    for (Index r = 0; r < m.rows(); ++r) out.push_back(LinearForm<S>(m.row(r).transpose()));
    return out;
}

template <class S> SplitCertificate<S> run_split(const StepContext<S>& ctx, SplitInput<S> in, ProductWitness<S>& pw) {
    validate(in);
    if (ctx.harvest) ctx.harvest->push_back(in);
    SplitCertificate<S> cert = derive_certificate(in, ctx.allow_fallback);
    pw.provenance.push_back("split:" + branch_name(cert.provenance));
    pw.certificate = cert;
    return cert;
}

}  // namespace

template <class S> std::vector<WSpace<S>> build_Wj(const PointConfig<S>& cfg, int i, const KoszulElement<S>& ke) {
    const int n = cfg.n();
    std::vector<WSpace<S>> out;
    for (int j = n - i; j <= n; ++j) {
        WSpace<S> w;
        w.j = j;
        Mat<S> rows(0, n + 1);
        for (int a = 0; a < n - i; ++a)
            for (int b = a + 1; b < n - i; ++b) {
                const auto l = over_xj(ke, a, b, j);
                if (!l)
                    fail(ErrorCode::NotDivisible, "F_{" + std::to_string(a) + "," + std::to_string(b) + "," +
                                                      std::to_string(j) + "} is not a multiple of x_j");
                w.forms[{a, b}] = *l;
                rows = vstack<S>(rows, Mat<S>(l->transpose()));
            }
        w.basis = row_basis(rows);
        out.push_back(std::move(w));
    }
    return out;
}

namespace {

// P_de from F_{0de}, checked against F_{sde} = (-1)^s x_s P_de for every s.
template <class S>
std::map<std::pair<int, int>, LinearForm<S>> p_forms(const PointConfig<S>& cfg, int i, const KoszulElement<S>& ke, int* checks) {
    const int n = cfg.n();
    std::map<std::pair<int, int>, LinearForm<S>> P;
    for (int d = n - i; d <= n; ++d)
        for (int e = d + 1; e <= n; ++e) {
            LinearForm<S> p = zeros<S>(n + 1, 1);
            p(d) = coefficient(ke.F(0, d, e), {0, d});
            p(e) = coefficient(ke.F(0, d, e), {0, e});
            for (int s = 0; s < n - i; ++s) {
                const Quadric<S> expect = scale(multiply(variable<S>(n, s), p), parity<S>(s));
                if (checks) ++*checks;
                if (!(ke.F(s, d, e) == expect))
                    fail(ErrorCode::ContradictionReached,
                         "F_{" + std::to_string(s) + std::to_string(d) + std::to_string(e) + "} is not (-1)^s x_s P_de");
            }
            P[{d, e}] = p;
        }
    return P;
}

template <class S> Mat<S> span_of(const std::map<std::pair<int, int>, LinearForm<S>>& forms, int n) {
    Mat<S> rows(0, n + 1);
    for (const auto& [key, f] : forms) rows = vstack<S>(rows, Mat<S>(f.transpose()));
    return row_basis(rows);
}

}  // namespace

template <class S> ProductWitness<S> step1(const StepContext<S>& ctx) {
    const int n = ctx.cfg.n(), i = ctx.i;
    ProductWitness<S> pw;
    pw.provenance.push_back("step1");
    Prover<S> pr(ctx, pw);
    if (i == 0) fail(ErrorCode::ContradictionReached, "all W_j vanish with i = 0, so alpha = 0");
    const auto P = p_forms(ctx.cfg, i, ctx.ke, &pw.assertions);
    const Mat<S> W = span_of(P, n);
    if (W.rows() == 0) fail(ErrorCode::ContradictionReached, "every P_de vanishes, so alpha = 0");
    std::vector<int> low(static_cast<std::size_t>(n - i));
    for (int s = 0; s < n - i; ++s) low[static_cast<std::size_t>(s)] = s;
    pr.claim(pr.vars(low), rows_of(W), "(x_0..x_{n-i-1})W");
    if (W.rows() >= i) {
        pw.side_a = pr.vars(low);
        pw.side_b = rows_of(W);
        return pw;
    }
    SplitInput<S> in{ctx.cfg, 0, {}, P};
    for (int v = n - i; v <= n; ++v) in.idxs.push_back(v);
    const SplitCertificate<S> cert = run_split(ctx, in, pw);
    pw.side_a = rows_of(cert.Ls);
    pw.side_b = rows_of(cert.hs);
    for (const auto& f : pr.vars(low)) pw.side_b.push_back(f);
    return pw;
}

template <class S> ProductWitness<S> step2(const StepContext<S>& ctx, const std::vector<WSpace<S>>& wjs) {
    const int n = ctx.cfg.n(), i = ctx.i;
    ProductWitness<S> pw;
    pw.provenance.push_back("step2");
    Prover<S> pr(ctx, pw);
    // largest dim W_j, ties to the largest j
    const WSpace<S>* w = nullptr;
    for (const auto& c : wjs)
        if (c.dim() > 0 && (!w || c.dim() >= w->dim())) w = &c;
    if (!w) fail(ErrorCode::HypothesisError, "step 2 needs some W_j != 0");
    const int j = w->j;
    std::vector<LinearForm<S>> generators;
    for (const auto& [key, f] : w->forms)
        if (!is_zero_matrix<S>(f)) generators.push_back(f);
    pr.claim({pr.x(j)}, generators, "x_j W_j");
    std::vector<int> top;
    for (int v = n - i; v <= n; ++v) top.push_back(v);

    if (w->dim() >= n - i - 1) {
        pw.provenance.push_back("bigdim");
        pr.bigdim(j, generators, top);
        return pw;
    }

    SplitInput<S> in{ctx.cfg, j, {}, w->forms};
    for (int v = 0; v < n - i; ++v) in.idxs.push_back(v);
    const SplitCertificate<S> cert = run_split(ctx, in, pw);
    const std::vector<LinearForm<S>> Ls = rows_of(cert.Ls), hs = rows_of(cert.hs);
    pr.claim({pr.x(j)}, Ls, "x_j (L_1..L_t)");
    std::vector<int> contributed;
    if (cert.hs.rows() > 0)
        for (Index c : rref(cert.hs).pivots) contributed.push_back(static_cast<int>(c));

    std::vector<int> A = top, mon;
    std::vector<LinearForm<S>> culprits = Ls, introduced;
    pw.provenance.push_back("propagation");
    for (int round = 0; round <= i + 1; ++round) {
        std::vector<LinearForm<S>> side_a = pr.vars(A), side_b = Ls;
        side_a.insert(side_a.end(), hs.begin(), hs.end());
        for (int u : mon) side_b.push_back(pr.x(u));
        if (products_vanish(ctx.cfg, side_a, side_b)) {
            pw.side_a = side_a;
            pw.side_b = side_b;
            return pw;
        }
        std::vector<std::pair<int, LinearForm<S>>> failing;
        for (int u : A) {
            if (u == j) continue;
            for (const auto& T : culprits)
                if (!pr.test(pr.x(u), T)) {
                    failing.emplace_back(u, T);
                    break;
                }
        }
        if (failing.empty()) fail(ErrorCode::PropagationStalled, "product fails but no variable is introduced");
        std::vector<LinearForm<S>> fresh;
        for (const auto& [u, T] : failing) {
            const auto found = pr.harvest_H(T, u, j);
            if (!found) fail(ErrorCode::PropagationStalled, "no H form introduces x_" + std::to_string(u));
            const auto& [c, H] = *found;
            // mu: coefficient of x_c in H_{cu}; c from the low block or an
            // earlier introduced variable
            std::optional<int> partner;
            if (!is_zero(H(c)) && c < n - i) partner = c;
            if (!partner) {
                pr.claim({pr.x(j)}, {pr.x(u)}, "x_j x_" + std::to_string(u));
                if (!is_zero(H(c)))
                    for (int s = 0; s < n - i && !partner; ++s) {
                        const auto h = over_xj(ctx.ke, s, u, j);
                        if (h && !is_zero((*h)(s))) partner = s;
                    }
            }
            if (partner) {
                std::vector<LinearForm<S>> hset = Ls;
                hset.insert(hset.end(), introduced.begin(), introduced.end());
                hset.insert(hset.end(), fresh.begin(), fresh.end());
                hset.push_back(H);
                for (int l : contributed) {
                    const auto h = over_xj(ctx.ke, l, u, j);
                    if (!h) fail(ErrorCode::PropagationStalled, "F_{l_p u j} is not a multiple of x_j");
                    pr.claim({pr.x(j)}, {*h}, "x_j H_{l_p u}");
                    hset.push_back(*h);
                }
                std::vector<int> rest;
                for (int v : A) {
                    bool gone = false;
                    for (const auto& fu : failing) gone = gone || fu.first == v;
                    if (!gone) rest.push_back(v);
                }
                pw.provenance.push_back("bigdim");
                pr.bigdim(j, hset, rest);
                return pw;
            }
            mon.push_back(u);
            fresh.push_back(H);
        }
        for (const auto& fu : failing) A.erase(std::find(A.begin(), A.end(), fu.first));
        introduced.insert(introduced.end(), fresh.begin(), fresh.end());
        culprits = fresh;
    }
    fail(ErrorCode::PropagationStalled, "propagation did not close within i+1 rounds");
}

template <class S> RncResult<S> rnc_witness(const PointConfig<S>& cfg) {
    const int n = cfg.n();
    const std::size_t s = cfg.size();
    std::vector<int> frame(static_cast<std::size_t>(n + 1));
    for (int l = 0; l <= n; ++l) frame[static_cast<std::size_t>(l)] = l;
    if (subset_rank(cfg, frame) != n + 1) return NotOnRnc{"first n+1 points are dependent"};
    std::optional<int> unit;
    if (s >= static_cast<std::size_t>(n + 2)) unit = n + 1;
    const auto moved = frame_transform(cfg, frame, unit);
    const PointConfig<S>& c = moved.second;
    Vec<S> b(n + 1);
    if (s >= static_cast<std::size_t>(n + 3)) {
        const Vec<S>& q = c[static_cast<std::size_t>(n + 2)].coords();
        for (int l = 0; l <= n; ++l) {
            if (is_zero(q(l))) return NotOnRnc{"point n+2 lies on a coordinate hyperplane"};
            b(l) = S(-1) / q(l);
        }
    } else {
        for (int l = 0; l <= n; ++l) b(l) = S(l);
    }
    for (int l = 0; l <= n; ++l)
        for (int m = l + 1; m <= n; ++m)
            if (b(l) == b(m)) return NotOnRnc{"curve constants b_l are not distinct"};
    RncWitness<S> w;
    w.frame = moved.first.matrix();
    w.b = b;
    for (std::size_t p = 0; p < s; ++p) {
        if (p <= static_cast<std::size_t>(n)) {
            w.params.emplace_back(b(static_cast<Index>(p)));
        } else if (p == static_cast<std::size_t>(n + 1)) {
            w.params.emplace_back(std::nullopt);
        } else if (p == static_cast<std::size_t>(n + 2)) {
            w.params.emplace_back(S(0));
        } else {
            // (t - b_l) p_l is the same for every l
            const Vec<S>& pc = c[p].coords();
            for (int l = 0; l <= n; ++l)
                if (is_zero(pc(l))) return NotOnRnc{"point " + std::to_string(p) + " lies on a coordinate hyperplane"};
            if (pc(0) == pc(1)) return NotOnRnc{"point " + std::to_string(p) + " is not on the curve"};
            const S t = (pc(0) * b(0) - pc(1) * b(1)) / (pc(0) - pc(1));
            w.params.emplace_back(t);
        }
    }
    std::string why;
    if (!check_rnc_witness(cfg, w, &why)) return NotOnRnc{why};
    return w;
}

template <class S> std::vector<SplitInput<S>> harvest_split_inputs(const PointConfig<S>& cfg) {
    std::vector<SplitInput<S>> out;
    const Position pos = special_position_index(cfg);
    const auto* sp = std::get_if<SpecialPosition>(&pos);
    if (!sp) return out;
    const int n = cfg.n(), i = sp->i;
    const Normalized<S> nm = normalize_special(cfg, *sp);
    const TopIntersection<S> top = a_top_via_intersection(nm.cfg);
    for (Index row = 0; row < top.count; ++row) {
        const KoszulElement<S> ke = extract_special_quadrics(nm.cfg, Vec<S>(top.basis.row(row).transpose()));
        const auto wjs = build_Wj(nm.cfg, i, ke);
        bool all_zero = true;
        for (const auto& w : wjs) {
            all_zero = all_zero && w.dim() == 0;
            if (w.dim() > 0 && w.dim() < n - i - 1) {
                SplitInput<S> in{nm.cfg, w.j, {}, w.forms};
                for (int v = 0; v < n - i; ++v) in.idxs.push_back(v);
                out.push_back(std::move(in));
            }
        }
        if (all_zero && i >= 2) {
            const auto P = p_forms(nm.cfg, i, ke, nullptr);
            const Index d = span_of(P, n).rows();
            if (d > 0 && d < i) {
                SplitInput<S> in{nm.cfg, 0, {}, P};
                for (int v = n - i; v <= n; ++v) in.idxs.push_back(v);
                out.push_back(std::move(in));
            }
        }
    }
    return out;
}

template <class S> PointConfig<S> extraction_frame(const PointConfig<S>& cfg) {
    const Position pos = special_position_index(cfg);
    if (const auto* sp = std::get_if<SpecialPosition>(&pos)) return normalize_special(cfg, *sp).cfg;
    return coordinate_frame(cfg).second;
}

template <class S>
SplitInput<S> split_input_at(const PointConfig<S>& framed, const KoszulElement<S>& ke, int j, std::vector<int> idxs) {
    const int n = framed.n();
    require(j >= 0 && j <= n, ErrorCode::IndexError, "j out of range");
    std::sort(idxs.begin(), idxs.end());
    SplitInput<S> in{framed, j, idxs, {}};
    for (std::size_t a = 0; a < idxs.size(); ++a) {
        require(idxs[a] >= 0 && idxs[a] <= n && idxs[a] != j, ErrorCode::IndexError, "index out of range or equal to j");
        require(a == 0 || idxs[a] != idxs[a - 1], ErrorCode::IndexError, "repeated index");
        for (std::size_t b = 0; b < a; ++b) {
            const auto l = over_xj(ke, idxs[b], idxs[a], j);
            if (!l)
                fail(ErrorCode::HypothesisError, "F_{" + std::to_string(idxs[b]) + std::to_string(idxs[a]) + std::to_string(j) +
                                                     "} is not a multiple of x_" + std::to_string(j));
            in.L[{idxs[b], idxs[a]}] = *l;
        }
    }
    validate(in);
    return in;
}

template <class S>
std::optional<UnionWitness<S>> witness_from_product(const PointConfig<S>& cfg, const PointConfig<S>& normalized,
                                                    const ProductWitness<S>& pw) {
    std::vector<bool> in_a, in_b;
    for (const auto& p : normalized.points()) {
        bool a = true, b = true;
        for (const auto& l : pw.side_a) a = a && is_zero(l.dot(p.coords()));
        for (const auto& l : pw.side_b) b = b && is_zero(l.dot(p.coords()));
        in_a.push_back(a);
        in_b.push_back(b);
    }
    return union_from_sides(cfg, in_a, in_b);
}

template <class S> Verdict<S> classify(const PointConfig<S>& cfg, const ClassifyOptions<S>& opts) {
    Verdict<S> v;
    const int n = cfg.n();
    v.strand = strand_betti(cfg);
    v.position = special_position_index(cfg, opts.subset_cap);
    if (v.strand.a(n - 1) == 0) {
        v.tag = VerdictTag::NoLinearStrand;
        return v;
    }
    if (std::holds_alternative<GeneralPosition>(v.position)) {
        v.provenance.push_back("rnc");
        RncResult<S> r = rnc_witness(cfg);
        ++v.assertions_checked;
        if (auto* w = std::get_if<RncWitness<S>>(&r)) {
            v.tag = VerdictTag::OnRnc;
            v.rnc = *w;
        } else {
            v.tag = VerdictTag::UnsplitOverBaseField;
            v.diagnostic = std::get<NotOnRnc>(r).reason;
        }
        return v;
    }
    const SpecialPosition& pos = std::get<SpecialPosition>(v.position);
    try {
        const Normalized<S> nm = normalize_special(cfg, pos);
        const TopIntersection<S> top = a_top_via_intersection(nm.cfg);
        require(top.count == v.strand.a(n - 1), ErrorCode::ContradictionReached, "the two a_{n-1} formulas disagree");
        require(opts.alpha_row >= 0 && opts.alpha_row < top.count, ErrorCode::IndexError, "alpha row out of range");
        const KoszulElement<S> ke = extract_special_quadrics(nm.cfg, Vec<S>(top.basis.row(opts.alpha_row).transpose()));
        v.assertions_checked += 2;
        const auto wjs = build_Wj(nm.cfg, pos.i, ke);
        StepContext<S> ctx{nm.cfg, pos.i, ke, opts.allow_fallback, opts.harvest};
        bool all_zero = true;
        for (const auto& w : wjs) all_zero = all_zero && w.dim() == 0;
        ProductWitness<S> pw = all_zero ? step1(ctx) : step2(ctx, wjs);
        v.provenance = pw.provenance;
        v.assertions_checked += pw.assertions;
        v.certificate = pw.certificate;
        auto w = witness_from_product(cfg, nm.cfg, pw);
        std::string why;
        if (!w) fail(ErrorCode::PropagationStalled, "product sides are too large for a union witness");
        if (!check_union_witness(cfg, *w, &why)) fail(ErrorCode::PropagationStalled, "witness failed re-check: " + why);
        ++v.assertions_checked;
        v.tag = VerdictTag::OnUnion;
        v.union_witness = *w;
        return v;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::PropagationStalled && e.code() != ErrorCode::NoCertificate) throw;
        v.diagnostic = e.what();
    }
    if (opts.allow_fallback && cfg.size() <= 16) {
        v.provenance.push_back("fallback-bipartition");
        if (auto w = bipartition_oracle(cfg)) {
            v.tag = VerdictTag::OnUnion;
            v.union_witness = *w;
            return v;
        }
    }
    v.tag = VerdictTag::UnsplitOverBaseField;
    return v;
}

#define LINSTRAND_INSTANTIATE(S)                                                                                     \
    template struct Verdict<S>;                                                                                      \
    template Normalized<S> normalize_special<S>(const PointConfig<S>&, const SpecialPosition&);                      \
    template std::vector<WSpace<S>> build_Wj<S>(const PointConfig<S>&, int, const KoszulElement<S>&);                \
    template ProductWitness<S> step1<S>(const StepContext<S>&);                                                      \
    template ProductWitness<S> step2<S>(const StepContext<S>&, const std::vector<WSpace<S>>&);                       \
    template RncResult<S> rnc_witness<S>(const PointConfig<S>&);                                                     \
    template std::optional<UnionWitness<S>> witness_from_product<S>(const PointConfig<S>&, const PointConfig<S>&,    \
                                                                    const ProductWitness<S>&);                       \
    template Verdict<S> classify<S>(const PointConfig<S>&, const ClassifyOptions<S>&);                               \
    template std::vector<SplitInput<S>> harvest_split_inputs<S>(const PointConfig<S>&);                              \
    template PointConfig<S> extraction_frame<S>(const PointConfig<S>&);                                              \
    template SplitInput<S> split_input_at<S>(const PointConfig<S>&, const KoszulElement<S>&, int, std::vector<int>);

LINSTRAND_INSTANTIATE(Fp)
LINSTRAND_INSTANTIATE(Rational)

}  // namespace linstrand
