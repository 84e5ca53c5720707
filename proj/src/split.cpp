#include "linstrand/split.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <set>

#include "linstrand/combinatorics.hpp"
#include "linstrand/harness.hpp"

namespace linstrand {

std::string branch_name(Branch b) {
    switch (b) {
        case Branch::BadBlock: return "eqbadblock";
        case Branch::Gak: return "Gak";
        case Branch::Bgn: return "BGN";
        case Branch::BasisVarOut: return "basis+varout";
        case Branch::OnlyBinomials: return "onlybinomials";
        case Branch::OneMonBlock: return "onemonblock";
        case Branch::Final: return "final";
        case Branch::FallbackSearch: return "fallback-search";
    }
    return "?";
}

Branch parse_branch(const std::string& name) {
    for (Branch b : {Branch::BadBlock, Branch::Gak, Branch::Bgn, Branch::BasisVarOut, Branch::OnlyBinomials,
                     Branch::OneMonBlock, Branch::Final, Branch::FallbackSearch})
        if (branch_name(b) == name) return b;
    fail(ErrorCode::ParseError, "unknown branch '" + name + "'");
}

template <class S> const LinearForm<S>& SplitInput<S>::form(int e, int f) const {
    auto it = L.find({std::min(e, f), std::max(e, f)});
    if (it == L.end()) fail(ErrorCode::IndexError, "no form L_{" + std::to_string(e) + "," + std::to_string(f) + "}");
    return it->second;
}

template <class S> Mat<S> SplitInput<S>::span() const {
    Mat<S> rows(static_cast<Index>(L.size()), cfg.n() + 1);
    Index r = 0;
    for (const auto& [key, f] : L) rows.row(r++) = f.transpose();
    return row_basis(rows);
}

template <class S> void validate(const SplitInput<S>& in) {
    const int n = in.cfg.n();
    require(in.m() >= 3, ErrorCode::HypothesisError, "need at least three indices");
    require(in.j >= 0 && in.j <= n, ErrorCode::IndexError, "pivot out of range");
    for (std::size_t a = 0; a < in.idxs.size(); ++a) {
        require(in.idxs[a] >= 0 && in.idxs[a] <= n, ErrorCode::IndexError, "index out of range");
        require(a == 0 || in.idxs[a - 1] < in.idxs[a], ErrorCode::HypothesisError, "indices must increase");
        require(in.idxs[a] != in.j, ErrorCode::HypothesisError, "pivot among the indices");
    }
    const LinearForm<S> xj = variable<S>(n, in.j);
    for (std::size_t a = 0; a < in.idxs.size(); ++a)
        for (std::size_t b = a + 1; b < in.idxs.size(); ++b) {
            const int e = in.idxs[a], f = in.idxs[b];
            const LinearForm<S>& l = in.form(e, f);
            require(l.size() == n + 1, ErrorCode::DimensionMismatch, "form length differs from n+1");
            for (int v = 0; v <= n; ++v)
                require(v == e || v == f || is_zero(l(v)), ErrorCode::HypothesisError,
                        "L_{" + std::to_string(e) + "," + std::to_string(f) + "} leaves its two variables");
            require(product_in_ideal(in.cfg, xj, l), ErrorCode::HypothesisError,
                    "x_j L_{" + std::to_string(e) + "," + std::to_string(f) + "} does not vanish on X");
        }
}

template <class S> Quadric<S> useful_relation(const SplitInput<S>& in, int e, int f, int g) {
    if (!(in.j < in.idxs.front() || in.j > in.idxs.back()))
        fail(ErrorCode::PivotInterleaved, "pivot lies strictly inside the index range");
    std::array<int, 3> t{e, f, g};
    std::sort(t.begin(), t.end());
    e = t[0], f = t[1], g = t[2];
    if (e == f || f == g) fail(ErrorCode::IndexError, "indices must be distinct");
    const int n = in.cfg.n(), j = in.j;
    auto term = [&](int v, int parity_exp, const LinearForm<S>& l) {
        return scale(multiply(variable<S>(n, v), l), parity<S>(parity_exp));
    };
    Quadric<S> q = term(e, e + j, in.form(f, g)) + term(f, f + j - 1, in.form(e, g)) + term(g, g + j, in.form(e, f));
    if (!vanishes_on_X(in.cfg, q))
        fail(ErrorCode::NotInIdeal, "F_{" + std::to_string(e) + std::to_string(f) + std::to_string(g) +
                                        "} from the split data does not vanish on X");
    return q;
}

template <class S>
bool key_lemma_propagate(const SplitInput<S>& in, int e, int f, const LinearForm<S>& T, int u, int v) {
    const int n = in.cfg.n();
    auto in_idxs = [&](int x) { return std::find(in.idxs.begin(), in.idxs.end(), x) != in.idxs.end(); };
    require(in_idxs(e) && in_idxs(f) && in_idxs(u) && in_idxs(v), ErrorCode::IndexError, "index outside the split data");
    require(e != f && u != v && u != e && u != f && v != e && v != f, ErrorCode::HypothesisError, "indices must be distinct");
    require(!is_zero(in.form(e, f)(f)), ErrorCode::HypothesisError, "coefficient of y_f in L_{ef} is zero");
    for (int x = 0; x <= n; ++x)
        require(x == u || x == v || is_zero(T(x)), ErrorCode::HypothesisError, "T is not a form in y_u, y_v");
    require(product_in_ideal(in.cfg, variable<S>(n, e), T), ErrorCode::HypothesisError, "y_e T does not vanish on X");
    require(is_zero(in.form(e, u)(u)) && is_zero(in.form(e, v)(v)), ErrorCode::HypothesisError,
            "L_{eu} or L_{ev} is not a monomial in y_e");
    return product_in_ideal(in.cfg, variable<S>(n, f), T);
}

namespace {

template <class S> class Engine {
public:
    explicit Engine(const SplitInput<S>& in) : in_(in), n_(in.cfg.n()), Y_(in.idxs), V_(in.span()) {
        d_ = static_cast<int>(V_.rows());
    }

    int d() const { return d_; }
    int m() const { return in_.m(); }
    const Mat<S>& V() const { return V_; }

    bool connected(int x, int c) const { return !is_zero(in_.form(x, c)(c)); }
    // L_{ef} = lambda y_e, nonzero
    bool monomial_in(int e, int f) const {
        const LinearForm<S>& l = in_.form(e, f);
        return !is_zero(l(e)) && is_zero(l(f));
    }

    std::vector<int> reach(const std::vector<int>& start) const {
        std::set<int> seen(start.begin(), start.end());
        std::vector<int> frontier = start;
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int x : frontier)
                for (int c : Y_)
                    if (c != x && !seen.count(c) && connected(x, c)) {
                        seen.insert(c);
                        next.push_back(c);
                    }
            frontier = std::move(next);
        }
        return {seen.begin(), seen.end()};
    }

    LinearForm<S> y(int x) const { return variable<S>(n_, x); }

    bool absent_from_V(int x) const {
        for (Index r = 0; r < V_.rows(); ++r)
            if (!is_zero(V_(r, x))) return false;
        return true;
    }

    // G_{uv}: F_{auv} divided by y_a, when that division is exact.
    std::optional<LinearForm<S>> G(int a, int u, int v) const {
        if (a == u || a == v || u == v) return std::nullopt;
        const Quadric<S> q = useful_relation(in_, a, u, v);
        const auto quotient = divide(q, y(a));
        if (!quotient) return std::nullopt;
        return LinearForm<S>(quotient->coeffs);
    }

    std::optional<SplitCertificate<S>> make(const std::vector<LinearForm<S>>& ls, const std::vector<LinearForm<S>>& hs,
                                            Branch branch) const {
        if (ls.empty() || static_cast<int>(ls.size()) > d_) return std::nullopt;
        Mat<S> lm = stack(ls);
        if (rank(lm) != lm.rows() || rank(vstack<S>(V_, lm)) != d_) return std::nullopt;
        const int t = static_cast<int>(ls.size());
        const int need = m() - 1 - t;
        if (need < 0) return std::nullopt;
        std::vector<LinearForm<S>> chosen;
        Mat<S> acc(0, n_ + 1);
        for (const auto& h : hs) {
            if (static_cast<int>(chosen.size()) == need) break;
            Mat<S> trial = vstack<S>(acc, Mat<S>(h.transpose()));
            if (rank(trial) == trial.rows()) {
                acc = trial;
                chosen.push_back(h);
            }
        }
        if (static_cast<int>(chosen.size()) != need) return std::nullopt;
        SplitCertificate<S> cert;
        cert.m = m();
        cert.Ls = lm;
        cert.hs = chosen.empty() ? Mat<S>(0, n_ + 1) : stack(chosen);
        cert.provenance = branch;
        for (int a = 0; a < t; ++a)
            for (int b = 0; b < need; ++b) {
                const bool ok = product_in_ideal(in_.cfg, ls[static_cast<std::size_t>(a)], chosen[static_cast<std::size_t>(b)]);
                cert.transcript.push_back({a, b, ok});
                if (!ok) return std::nullopt;
            }
        return cert;
    }

    std::vector<LinearForm<S>> monomials(const std::vector<int>& vars) const {
        std::vector<LinearForm<S>> out;
        for (int x : vars) out.push_back(y(x));
        return out;
    }

    Mat<S> stack(const std::vector<LinearForm<S>>& forms) const {
        Mat<S> m(static_cast<Index>(forms.size()), n_ + 1);
        for (std::size_t r = 0; r < forms.size(); ++r) m.row(static_cast<Index>(r)) = forms[r].transpose();
        return m;
    }

    const SplitInput<S>& in_;
    int n_;
    std::vector<int> Y_;
    Mat<S> V_;
    int d_ = 0;
};

template <class S> std::vector<std::pair<int, int>> starters(const Engine<S>& eng) {
    std::vector<std::pair<int, int>> out;
    for (int a : eng.Y_)
        for (int b : eng.Y_)
            if (a != b && eng.monomial_in(a, b)) out.emplace_back(a, b);
    return out;
}

bool contains_all(const std::vector<int>& big, const std::vector<int>& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool has(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

template <class S> BlockState<S> blocks_of(const Engine<S>& eng) {
    BlockState<S> st;
    st.d = eng.d();
    const auto all = starters(eng);
    std::set<int> covered;
    while (true) {
        std::vector<std::pair<int, int>> cand;
        for (const auto& s : all)
            if (!covered.count(s.first)) cand.push_back(s);
        if (cand.empty()) break;
        std::vector<std::vector<int>> closures;
        for (const auto& s : cand) closures.push_back(eng.reach({s.first}));
        // maximal: not strictly inside another candidate's closure
        std::size_t pick = cand.size();
        for (std::size_t c = 0; c < cand.size() && pick == cand.size(); ++c) {
            bool maximal = true;
            for (std::size_t o = 0; o < cand.size(); ++o)
                if (closures[o].size() > closures[c].size() && contains_all(closures[o], closures[c])) maximal = false;
            if (maximal) pick = c;
        }
        Block blk;
        blk.closure = closures[pick];
        blk.generator = cand[pick].first;
        blk.starter = cand[pick].second;
        blk.starter_inside = true;
        // prefer a starter whose partner lies outside the block
        for (std::size_t c = 0; c < cand.size(); ++c)
            if (closures[c] == blk.closure && !has(blk.closure, cand[c].second)) {
                blk.generator = cand[c].first;
                blk.starter = cand[c].second;
                blk.starter_inside = false;
                break;
            }
        for (int x : blk.closure)
            if (!covered.count(x)) blk.members.push_back(x);
        covered.insert(blk.closure.begin(), blk.closure.end());
        st.blocks.push_back(std::move(blk));
    }
    // complete the block monomials to a basis of V with forms of the list
    Mat<S> acc(0, eng.n_ + 1);
    for (const auto& b : st.blocks)
        for (int x : b.members) acc = vstack<S>(acc, Mat<S>(eng.y(x).transpose()));
    for (std::size_t a = 0; a < eng.Y_.size() && acc.rows() < eng.d(); ++a)
        for (std::size_t b = a + 1; b < eng.Y_.size() && acc.rows() < eng.d(); ++b) {
            const int e = eng.Y_[a], f = eng.Y_[b];
            Mat<S> trial = vstack<S>(acc, Mat<S>(eng.in_.form(e, f).transpose()));
            if (rank(trial) == trial.rows()) {
                acc = trial;
                st.binomials.emplace_back(e, f);
            }
        }
    std::set<int> vl;
    for (const auto& [e, f] : st.binomials) {
        const LinearForm<S>& l = eng.in_.form(e, f);
        if (!is_zero(l(e))) vl.insert(e);
        if (!is_zero(l(f))) vl.insert(f);
    }
    st.v_l.assign(vl.begin(), vl.end());
    for (int x : eng.Y_)
        if (eng.absent_from_V(x)) st.v_n.push_back(x);
    // clusters: connected components of the binomials over their variables
    std::map<int, int> parent;
    for (int x : st.v_l) parent[x] = x;
    std::function<int(int)> root = [&](int x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
    for (const auto& [e, f] : st.binomials)
        if (parent.count(e) && parent.count(f)) parent[root(e)] = root(f);
    std::map<int, std::vector<std::pair<int, int>>> comp_forms;
    std::map<int, std::vector<int>> comp_vars;
    for (int x : st.v_l) comp_vars[root(x)].push_back(x);
    for (const auto& bf : st.binomials) {
        const int anchor = parent.count(bf.first) ? bf.first : bf.second;
        if (parent.count(anchor)) comp_forms[root(anchor)].push_back(bf);
    }
    st.clusters.emplace_back();
    st.cluster_vars.emplace_back();
    std::vector<std::pair<int, int>> tree_roots;  // (smallest variable, root)
    for (const auto& [r, vars] : comp_vars) {
        if (vars.size() == comp_forms[r].size() + 1)
            tree_roots.emplace_back(vars.front(), r);
        else {
            st.clusters[0].insert(st.clusters[0].end(), comp_forms[r].begin(), comp_forms[r].end());
            st.cluster_vars[0].insert(st.cluster_vars[0].end(), vars.begin(), vars.end());
        }
    }
    std::sort(st.cluster_vars[0].begin(), st.cluster_vars[0].end());
    std::sort(tree_roots.begin(), tree_roots.end());
    for (const auto& [lead, r] : tree_roots) {
        st.clusters.push_back(comp_forms[r]);
        st.cluster_vars.push_back(comp_vars[r]);
    }
    return st;
}

// A form from the M/N iteration: the index it is attached to and the other
// index of its G.
template <class S> struct Tagged {
    int w;
    int partner;
    LinearForm<S> form;
};

// The M_k / N_k / C_k / A_k iteration started from the generator a with
// partner b and one form per variable outside B^{ab} and b.
template <class S>
std::optional<SplitCertificate<S>> monomial_machinery(const Engine<S>& eng, int a, const std::vector<int>& block,
                                                      std::vector<Tagged<S>> base) {
    std::vector<int> M;
    std::vector<Tagged<S>> forms;
    for (auto& t : base) {
        if (is_zero(t.form(t.w)))
            M.push_back(t.w);
        else
            forms.push_back(std::move(t));
    }
    auto forms_of = [](const std::vector<Tagged<S>>& ts) {
        std::vector<LinearForm<S>> out;
        for (const auto& t : ts) out.push_back(t.form);
        return out;
    };
    if (M.empty()) return eng.make(eng.monomials(block), forms_of(forms), Branch::Bgn);
    for (int round = 0; round <= eng.m(); ++round) {
        const std::vector<int> reached = eng.reach(M);
        std::vector<int> cvars;
        std::vector<Tagged<S>> avars;
        for (const auto& t : forms) {
            if (has(reached, t.w))
                cvars.push_back(t.w);
            else
                avars.push_back(t);
        }
        if (avars.empty()) return std::nullopt;
        std::vector<int> next;
        std::vector<Tagged<S>> fresh;
        for (int w : M) {
            std::optional<Tagged<S>> witness;
            for (const auto& v : avars) {
                for (int idx : {v.partner, v.w}) {
                    if (idx == w || has(block, idx)) continue;
                    const auto g = eng.G(a, idx, w);
                    if (!g) return std::nullopt;
                    if (!is_zero((*g)(w))) {
                        witness = Tagged<S>{w, idx, *g};
                        break;
                    }
                }
                if (witness) break;
            }
            if (witness)
                fresh.push_back(*witness);
            else
                next.push_back(w);
        }
        if (fresh.empty()) {
            std::vector<int> ls = block;
            ls.insert(ls.end(), M.begin(), M.end());
            ls.insert(ls.end(), cvars.begin(), cvars.end());
            return eng.make(eng.monomials(ls), forms_of(avars), Branch::Gak);
        }
        forms.insert(forms.end(), fresh.begin(), fresh.end());
        if (next.empty()) return eng.make(eng.monomials(block), forms_of(forms), Branch::Bgn);
        if (next.size() == M.size()) return std::nullopt;
        M = std::move(next);
    }
    return std::nullopt;
}

template <class S>
std::optional<SplitCertificate<S>> lemma_monomial(const Engine<S>& eng, int a, int b) {
    const std::vector<int> block = eng.reach({a});
    if (has(block, b)) return std::nullopt;
    std::vector<Tagged<S>> base;
    for (int w : eng.Y_) {
        if (w == b || has(block, w)) continue;
        const auto g = eng.G(a, b, w);
        if (!g) return std::nullopt;
        base.push_back({w, b, *g});
    }
    return monomial_machinery(eng, a, block, std::move(base));
}

template <class S>
std::optional<SplitCertificate<S>> mon_and_bin(const Engine<S>& eng, const BlockState<S>& st, const Block& blk) {
    const int a = blk.generator, b = blk.starter;
    std::size_t u_cluster = st.clusters.size();
    for (std::size_t r = 0; r < st.cluster_vars.size(); ++r)
        if (has(st.cluster_vars[r], b)) u_cluster = r;
    if (u_cluster == st.clusters.size()) return std::nullopt;
    const std::vector<int>& vu = st.cluster_vars[u_cluster];
    const std::vector<int> block = eng.reach({a});
    for (int t : st.v_l) {
        if (has(vu, t) || is_zero(eng.in_.form(a, t)(a))) continue;
        std::vector<Tagged<S>> base;
        bool ok = true;
        for (int w : eng.Y_) {
            if (w == b || has(block, w)) continue;
            const int partner = (has(vu, w)) ? t : b;
            const auto g = partner == t ? eng.G(a, w, t) : eng.G(a, b, w);
            if (!g) {
                ok = false;
                break;
            }
            base.push_back({w, partner, *g});
        }
        if (!ok) continue;
        if (auto cert = monomial_machinery(eng, a, block, std::move(base))) return cert;
    }
    return std::nullopt;
}

template <class S>
std::optional<SplitCertificate<S>> final_equation(const Engine<S>& eng, const BlockState<S>& st, std::size_t first) {
    const Block& b1 = st.blocks[first];
    std::size_t j1 = st.clusters.size();
    for (std::size_t r = 0; r < st.cluster_vars.size(); ++r)
        if (has(st.cluster_vars[r], b1.starter)) j1 = r;
    if (j1 == st.clusters.size()) return std::nullopt;
    const auto& vd = st.cluster_vars[j1];
    std::vector<LinearForm<S>> ls = eng.monomials(b1.members);
    std::vector<LinearForm<S>> hs = eng.monomials(st.v_n);
    for (int x : st.v_l)
        if (!has(vd, x)) hs.push_back(eng.y(x));
    for (const auto& [e, f] : st.clusters[j1]) ls.push_back(eng.in_.form(e, f));
    if (st.blocks.size() == 1) return eng.make(ls, hs, Branch::OneMonBlock);
    for (std::size_t q = 0; q < st.blocks.size(); ++q) {
        if (q == first) continue;
        const Block& bq = st.blocks[q];
        bool touches = false;
        for (int t : vd) touches = touches || eng.monomial_in(bq.generator, t);
        auto mons = eng.monomials(bq.members);
        (touches ? ls : hs).insert((touches ? ls : hs).end(), mons.begin(), mons.end());
    }
    return eng.make(ls, hs, Branch::Final);
}

template <class S> std::optional<SplitCertificate<S>> search(const Engine<S>& eng) {
    const Mat<S> basis = rref(eng.V()).reduced.topRows(eng.d());
    const int n = eng.n_;
    std::optional<SplitCertificate<S>> found;
    std::size_t tried = 0;
    for (int t = 1; t <= eng.d() && !found; ++t) {
        for_each_combination(eng.d(), t, [&](const std::vector<int>& rows) {
            if (++tried > kFallbackBound) return false;
            std::vector<LinearForm<S>> ls;
            for (int r : rows) ls.push_back(LinearForm<S>(basis.row(r).transpose()));
            // h must vanish wherever some L does not; h lives in the y-variables
            std::vector<Vec<S>> pts;
            for (const auto& p : eng.in_.cfg.points()) {
                bool off = false;
                for (const auto& l : ls) off = off || !is_zero(l.dot(p.coords()));
                if (off) pts.push_back(p.coords());
            }
            Mat<S> cons = zeros<S>(static_cast<Index>(pts.size()), static_cast<Index>(eng.Y_.size()));
            for (std::size_t r = 0; r < pts.size(); ++r)
                for (std::size_t c = 0; c < eng.Y_.size(); ++c)
                    cons(static_cast<Index>(r), static_cast<Index>(c)) = pts[r](eng.Y_[c]);
            const Mat<S> ker = nullspace(cons);
            std::vector<LinearForm<S>> hs;
            for (Index c = 0; c < ker.cols(); ++c) {
                LinearForm<S> h = zeros<S>(n + 1, 1);
                for (std::size_t v = 0; v < eng.Y_.size(); ++v) h(eng.Y_[v]) = ker(static_cast<Index>(v), c);
                hs.push_back(h);
            }
            found = eng.make(ls, hs, Branch::FallbackSearch);
            return !found;
        });
        if (tried > kFallbackBound) break;
    }
    return found;
}

}  // namespace

template <class S> BlockState<S> build_blocks(const SplitInput<S>& in) {
    Engine<S> eng(in);
    if (eng.d() == 0 || eng.d() >= in.m() - 1)
        fail(ErrorCode::DimOutOfRange, "dim V = " + std::to_string(eng.d()) + " with m = " + std::to_string(in.m()));
    return blocks_of(eng);
}

template <class S> std::optional<SplitCertificate<S>> fallback_certificate(const SplitInput<S>& in) {
    Engine<S> eng(in);
    if (eng.d() == 0 || eng.d() >= in.m() - 1)
        fail(ErrorCode::DimOutOfRange, "dim V = " + std::to_string(eng.d()) + " with m = " + std::to_string(in.m()));
    return search(eng);
}

template <class S> SplitCertificate<S> derive_certificate(const SplitInput<S>& in, bool allow_fallback) {
    Engine<S> eng(in);
    if (eng.d() == 0 || eng.d() >= in.m() - 1)
        fail(ErrorCode::DimOutOfRange, "dim V = " + std::to_string(eng.d()) + " with m = " + std::to_string(in.m()));
    const BlockState<S> st = blocks_of(eng);
    const auto& blocks = st.blocks;

    for (const Block& b : blocks) {
        if (!b.starter_inside) continue;
        std::vector<int> rest;
        for (int x : eng.Y_)
            if (!has(b.closure, x)) rest.push_back(x);
        if (auto c = eng.make(eng.monomials(b.closure), eng.monomials(rest), Branch::BadBlock)) return *c;
    }
    if (st.binomials.empty())
        for (const Block& b : blocks)
            if (auto c = lemma_monomial(eng, b.generator, b.starter)) return *c;
    for (const Block& b : blocks)
        if (has(st.v_n, b.starter))
            if (auto c = lemma_monomial(eng, b.generator, b.starter)) return *c;
    const int l = static_cast<int>(st.binomials.size()), s = static_cast<int>(st.v_l.size());
    if (l >= 1 && l >= s - 1) {
        std::vector<LinearForm<S>> ls;
        for (const Block& b : blocks)
            for (int x : b.members) ls.push_back(eng.y(x));
        for (const auto& [e, f] : st.binomials) ls.push_back(in.form(e, f));
        if (auto c = eng.make(ls, eng.monomials(st.v_n), Branch::BasisVarOut)) return *c;
    }
    if (blocks.empty() && l >= 1)
        for (std::size_t r = 1; r < st.clusters.size(); ++r) {
            std::vector<LinearForm<S>> ls, hs;
            for (const auto& [e, f] : st.clusters[r]) ls.push_back(in.form(e, f));
            for (int x : st.v_l)
                if (!has(st.cluster_vars[r], x)) hs.push_back(eng.y(x));
            for (int x : st.v_n) hs.push_back(eng.y(x));
            if (auto c = eng.make(ls, hs, Branch::OnlyBinomials)) return *c;
        }
    if (l >= 1)
        for (std::size_t q = 0; q < blocks.size(); ++q)
            if (auto c = final_equation(eng, st, q)) return *c;
    for (const Block& b : blocks)
        if (auto c = mon_and_bin(eng, st, b)) return *c;
    for (const auto& [a, b] : starters(eng))
        if (auto c = lemma_monomial(eng, a, b)) return *c;
    if (allow_fallback)
        if (auto c = search(eng)) return *c;
    fail(ErrorCode::NoCertificate, "no branch produced a certificate");
}

template <class S>
bool check_certificate(const PointConfig<S>& cfg, const SplitCertificate<S>& cert, const Mat<S>& V, std::string* why) {
    auto bad = [why](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const Index n1 = cfg.n() + 1;
    if (cert.Ls.cols() != n1 || (cert.hs.rows() > 0 && cert.hs.cols() != n1) || V.cols() != n1)
        return bad("form lengths differ from n+1");
    const Index t = cert.Ls.rows();
    const Index d = oracle_rank<S>(V);
    if (t < 1) return bad("no L forms");
    if (t > d) return bad("more L forms than dim V");
    if (oracle_rank<S>(cert.Ls) != t) return bad("L forms are dependent");
    Mat<S> both(V.rows() + t, n1);
    both << V, cert.Ls;
    if (oracle_rank<S>(both) != d) return bad("an L form lies outside V");
    if (cert.hs.rows() > 0 && oracle_rank<S>(cert.hs) != cert.hs.rows()) return bad("h forms are dependent");
    if (t + cert.hs.rows() != cert.m - 1) return bad("counts do not add up to m-1");
    for (std::size_t p = 0; p < cfg.size(); ++p) {
        const Vec<S>& x = cfg[p].coords();
        for (Index a = 0; a < t; ++a) {
            S la(0);
            for (Index c = 0; c < n1; ++c) la += cert.Ls(a, c) * x(c);
            if (is_zero(la)) continue;
            for (Index b = 0; b < cert.hs.rows(); ++b) {
                S hb(0);
                for (Index c = 0; c < n1; ++c) hb += cert.hs(b, c) * x(c);
                if (!is_zero(hb))
                    return bad("product L" + std::to_string(a) + " h" + std::to_string(b) + " is nonzero at point " +
                               std::to_string(p));
            }
        }
    }
    return true;
}

#define LINSTRAND_INSTANTIATE(S)                                                                                   \
    template struct SplitInput<S>;                                                                                 \
    template void validate<S>(const SplitInput<S>&);                                                               \
    template Quadric<S> useful_relation<S>(const SplitInput<S>&, int, int, int);                                   \
    template bool key_lemma_propagate<S>(const SplitInput<S>&, int, int, const LinearForm<S>&, int, int);           \
    template BlockState<S> build_blocks<S>(const SplitInput<S>&);                                                  \
    template SplitCertificate<S> derive_certificate<S>(const SplitInput<S>&, bool);                                \
    template std::optional<SplitCertificate<S>> fallback_certificate<S>(const SplitInput<S>&);                     \
    template bool check_certificate<S>(const PointConfig<S>&, const SplitCertificate<S>&, const Mat<S>&, std::string*);

LINSTRAND_INSTANTIATE(Fp)
LINSTRAND_INSTANTIATE(Rational)

}  // namespace linstrand
