#include "linstrand/io.hpp"

#include <fstream>
#include <sstream>

namespace linstrand {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) { fail(ErrorCode::ParseError, where + ": " + what); }

const Json& member(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) bad(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(where + "." + key, "missing");
    return *it;
}

int as_int(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) bad(where, "expected an integer");
    return j.get<int>();
}

const Json& as_array(const Json& j, const std::string& where) {
    if (!j.is_array()) bad(where, "expected an array");
    return j;
}

std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

std::vector<int> int_list(const Json& j, const std::string& where) {
    std::vector<int> out;
    for (std::size_t i = 0; i < as_array(j, where).size(); ++i) out.push_back(as_int(j[i], at(where, i)));
    return out;
}

template <class S> Json vec_to_json(const Vec<S>& v) {
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(scalar_to_json(v(i)));
    return out;
}

template <class S> Vec<S> vec_from_json(const Json& j, const FieldDesc& field, const std::string& where) {
    as_array(j, where);
    Vec<S> v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = scalar_from_json<S>(j[i], field, at(where, i));
    return v;
}

}  // namespace

Json field_to_json(const FieldDesc& f) {
    if (f.is_rational()) return Json{{"kind", "rational"}};
    return Json{{"kind", "fp"}, {"p", f.p}};
}

FieldDesc field_from_json(const Json& j, const std::string& where) {
    try {
        if (j.is_string()) return FieldDesc::parse(j.get<std::string>());
        const Json& kind = member(j, "kind", where);
        if (kind == "rational") return FieldDesc::rational();
        if (kind == "fp") {
            const Json& p = member(j, "p", where);
            if (!p.is_number_unsigned()) bad(where + ".p", "expected a positive integer");
            return FieldDesc::parse("fp:" + std::to_string(p.get<std::uint64_t>()));
        }
        bad(where + ".kind", "expected \"fp\" or \"rational\"");
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError && std::string(e.what()).find(where) != std::string::npos) throw;
        bad(where, e.what());
    }
}

template <class S> Json scalar_to_json(const S& x) { return to_string(x); }

template <class S> S scalar_from_json(const Json& j, const FieldDesc& field, const std::string& where) {
    if (j.is_number_integer()) return make_scalar<S>(j.get<long long>(), field);
    if (!j.is_string()) bad(where, "expected a scalar string");
    try {
        return parse_scalar<S>(j.get<std::string>(), field);
    } catch (const Error& e) {
        bad(where, e.what());
    }
}

template <class S> Json matrix_to_json(const Mat<S>& m) {
    Json out = Json::array();
    for (Index r = 0; r < m.rows(); ++r) out.push_back(vec_to_json<S>(Vec<S>(m.row(r).transpose())));
    return out;
}

template <class S> Mat<S> matrix_from_json(const Json& j, const FieldDesc& field, const std::string& where) {
    as_array(j, where);
    if (j.empty()) return Mat<S>(0, 0);
    std::vector<Vec<S>> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        rows.push_back(vec_from_json<S>(j[i], field, at(where, i)));
        if (rows.back().size() != rows.front().size()) bad(at(where, i), "row length differs from row 0");
    }
    Mat<S> m(static_cast<Index>(rows.size()), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Index>(i)) = rows[i].transpose();
    return m;
}

template <class S> Json config_to_json(const PointConfig<S>& cfg) {
    Json pts = Json::array();
    for (const auto& p : cfg.points()) pts.push_back(vec_to_json<S>(p.coords()));
    return Json{{"n", cfg.n()}, {"field", field_to_json(cfg.field())}, {"points", pts}};
}

FieldDesc config_field(const Json& j, const std::optional<FieldDesc>& override) {
    if (override) return *override;
    if (!j.is_object()) bad("config", "expected an object");
    if (!j.contains("field")) return FieldDesc::prime(32003);
    return field_from_json(j["field"]);
}

template <class S> PointConfig<S> config_from_json(const Json& j, const FieldDesc& field) {
    const int n = as_int(member(j, "n", "config"), "n");
    if (n < 1) bad("n", "must be at least 1");
    const Json& pts = as_array(member(j, "points", "config"), "points");
    if (pts.empty()) bad("points", "empty point list");
    std::vector<Vec<S>> rows;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        rows.push_back(vec_from_json<S>(pts[i], field, at("points", i)));
        if (rows.back().size() != n + 1) bad(at("points", i), "expected " + std::to_string(n + 1) + " coordinates");
    }
    try {
        return make_config<S>(n, field, rows);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidConfig) bad("points", e.what());
        throw;
    }
}

Json strand_to_json(const LinearStrand& a) { return Json(a.values); }

LinearStrand strand_from_json(const Json& j, const std::string& where) {
    LinearStrand a;
    for (int v : int_list(j, where)) a.values.push_back(v);
    return a;
}

Json position_to_json(const Position& p) {
    if (std::holds_alternative<GeneralPosition>(p)) return "general";
    const auto& sp = std::get<SpecialPosition>(p);
    return Json{{"i", sp.i}, {"points", sp.witness}};
}

Position position_from_json(const Json& j, const std::string& where) {
    if (j == "general") return GeneralPosition{};
    SpecialPosition sp;
    sp.i = as_int(member(j, "i", where), where + ".i");
    sp.witness = int_list(member(j, "points", where), where + ".points");
    return sp;
}

template <class S> Json koszul_to_json(const KoszulElement<S>& ke) {
    const ExtBasis wedge(ke.n, ke.n - 2);
    Json comps = Json::array();
    for (Index c = 0; c < wedge.size(); ++c) {
        std::vector<int> comp;
        const auto& sub = wedge.subset(c);
        for (int v = 0; v <= ke.n; ++v)
            if (std::find(sub.begin(), sub.end(), v) == sub.end()) comp.push_back(v);
        comps.push_back(Json{{"complement", comp}, {"coeffs", vec_to_json<S>(ke.components[static_cast<std::size_t>(c)].coeffs)}});
    }
    return Json{{"n", ke.n}, {"quadrics", comps}};
}

template <class S> KoszulElement<S> koszul_from_json(const Json& j, const FieldDesc& field) {
    KoszulElement<S> ke;
    ke.n = as_int(member(j, "n", "koszul"), "koszul.n");
    if (ke.n < 2) bad("koszul.n", "must be at least 2");
    const ExtBasis wedge(ke.n, ke.n - 2);
    const Json& q = as_array(member(j, "quadrics", "koszul"), "koszul.quadrics");
    if (static_cast<Index>(q.size()) != wedge.size()) bad("koszul.quadrics", "expected " + std::to_string(wedge.size()) + " entries");
    const Index width = monomial_basis(ke.n, 2).size();
    for (std::size_t c = 0; c < q.size(); ++c) {
        const std::string w = at("koszul.quadrics", c);
        Quadric<S> f = zero_form<S>(ke.n, 2);
        f.coeffs = vec_from_json<S>(member(q[c], "coeffs", w), field, w + ".coeffs");
        if (f.coeffs.size() != width) bad(w + ".coeffs", "expected " + std::to_string(width) + " coefficients");
        ke.components.push_back(f);
    }
    return ke;
}

template <class S> Json union_to_json(const UnionWitness<S>& w) {
    return Json{{"k", w.k},
                {"r", w.r},
                {"forms_a", matrix_to_json(w.forms_a)},
                {"forms_b", matrix_to_json(w.forms_b)},
                {"assignment", std::string(w.assignment.begin(), w.assignment.end())}};
}

template <class S> UnionWitness<S> union_from_json(const Json& j, const FieldDesc& field, const std::string& where) {
    UnionWitness<S> w;
    w.k = as_int(member(j, "k", where), where + ".k");
    w.r = as_int(member(j, "r", where), where + ".r");
    w.forms_a = matrix_from_json<S>(member(j, "forms_a", where), field, where + ".forms_a");
    w.forms_b = matrix_from_json<S>(member(j, "forms_b", where), field, where + ".forms_b");
    const Json& a = member(j, "assignment", where);
    if (!a.is_string()) bad(where + ".assignment", "expected a string over A, B, *");
    const std::string s = a.get<std::string>();
    for (char c : s)
        if (c != 'A' && c != 'B' && c != '*') bad(where + ".assignment", "unexpected character");
    w.assignment.assign(s.begin(), s.end());
    return w;
}

template <class S> Json rnc_to_json(const RncWitness<S>& w) {
    Json params = Json::array();
    for (const auto& t : w.params) params.push_back(t ? scalar_to_json(*t) : Json());
    return Json{{"frame", matrix_to_json(w.frame)}, {"b", vec_to_json<S>(w.b)}, {"params", params}};
}

template <class S> RncWitness<S> rnc_from_json(const Json& j, const FieldDesc& field, const std::string& where) {
    RncWitness<S> w;
    w.frame = matrix_from_json<S>(member(j, "frame", where), field, where + ".frame");
    w.b = vec_from_json<S>(member(j, "b", where), field, where + ".b");
    const Json& p = as_array(member(j, "params", where), where + ".params");
    for (std::size_t i = 0; i < p.size(); ++i)
        w.params.push_back(p[i].is_null() ? std::nullopt : std::optional<S>(scalar_from_json<S>(p[i], field, at(where + ".params", i))));
    return w;
}

template <class S> Json certificate_to_json(const SplitCertificate<S>& c) {
    Json tr = Json::array();
    for (const auto& pc : c.transcript) tr.push_back(Json{{"l", pc.l_index}, {"h", pc.h_index}, {"vanishes", pc.vanishes}});
    return Json{{"m", c.m},
                {"provenance", branch_name(c.provenance)},
                {"Ls", matrix_to_json(c.Ls)},
                {"hs", matrix_to_json(c.hs)},
                {"transcript", tr}};
}

template <class S> SplitCertificate<S> certificate_from_json(const Json& j, const FieldDesc& field, const std::string& where) {
    SplitCertificate<S> c;
    c.m = as_int(member(j, "m", where), where + ".m");
    const Json& prov = member(j, "provenance", where);
    if (!prov.is_string()) bad(where + ".provenance", "expected a branch name");
    try {
        c.provenance = parse_branch(prov.get<std::string>());
    } catch (const Error& e) {
        bad(where + ".provenance", e.what());
    }
    c.Ls = matrix_from_json<S>(member(j, "Ls", where), field, where + ".Ls");
    c.hs = matrix_from_json<S>(member(j, "hs", where), field, where + ".hs");
    const Json& tr = as_array(member(j, "transcript", where), where + ".transcript");
    for (std::size_t i = 0; i < tr.size(); ++i) {
        const std::string w = at(where + ".transcript", i);
        const Json& v = member(tr[i], "vanishes", w);
        if (!v.is_boolean()) bad(w + ".vanishes", "expected a boolean");
        c.transcript.push_back({as_int(member(tr[i], "l", w), w + ".l"), as_int(member(tr[i], "h", w), w + ".h"), v.get<bool>()});
    }
    return c;
}

template <class S> Json split_input_to_json(const SplitInput<S>& in) {
    Json forms = Json::array();
    for (const auto& [key, f] : in.L) forms.push_back(Json{{"e", key.first}, {"f", key.second}, {"form", vec_to_json<S>(f)}});
    return Json{{"config", config_to_json(in.cfg)}, {"j", in.j}, {"idxs", in.idxs}, {"L", forms}};
}

template <class S> SplitInput<S> split_input_from_json(const Json& j, const FieldDesc& field) {
    SplitInput<S> in{config_from_json<S>(member(j, "config", "input"), field), 0, {}, {}};
    in.j = as_int(member(j, "j", "input"), "input.j");
    in.idxs = int_list(member(j, "idxs", "input"), "input.idxs");
    const Json& forms = as_array(member(j, "L", "input"), "input.L");
    for (std::size_t i = 0; i < forms.size(); ++i) {
        const std::string w = at("input.L", i);
        const int e = as_int(member(forms[i], "e", w), w + ".e"), f = as_int(member(forms[i], "f", w), w + ".f");
        in.L[{e, f}] = vec_from_json<S>(member(forms[i], "form", w), field, w + ".form");
    }
    return in;
}

template <class S> Json verdict_to_json(const Verdict<S>& v) {
    Json witness;
    if (v.rnc) witness = Json{{"kind", "rnc"}, {"rnc", rnc_to_json(*v.rnc)}};
    if (v.union_witness) witness = Json{{"kind", "union"}, {"union", union_to_json(*v.union_witness)}};
    Json out{{"tag", verdict_name(v.tag)},
             {"strand", strand_to_json(v.strand)},
             {"position", position_to_json(v.position)},
             {"witness", witness},
             {"provenance", v.provenance},
             {"assertions_checked", v.assertions_checked},
             {"used_fallback", v.used_fallback()}};
    if (!v.diagnostic.empty()) out["diagnostic"] = v.diagnostic;
    if (v.certificate) out["certificate"] = certificate_to_json(*v.certificate);
    return out;
}

template <class S> Verdict<S> verdict_from_json(const Json& j, const FieldDesc& field) {
    Verdict<S> v;
    const Json& tag = member(j, "tag", "verdict");
    if (!tag.is_string()) bad("tag", "expected a string");
    try {
        v.tag = parse_verdict(tag.get<std::string>());
    } catch (const Error& e) {
        bad("tag", e.what());
    }
    v.strand = strand_from_json(member(j, "strand", "verdict"));
    v.position = position_from_json(member(j, "position", "verdict"));
    const Json& w = member(j, "witness", "verdict");
    if (!w.is_null()) {
        const Json& kind = member(w, "kind", "witness");
        if (kind == "rnc") v.rnc = rnc_from_json<S>(member(w, "rnc", "witness"), field, "witness.rnc");
        else if (kind == "union") v.union_witness = union_from_json<S>(member(w, "union", "witness"), field, "witness.union");
        else bad("witness.kind", "expected \"rnc\" or \"union\"");
    }
    for (std::size_t i = 0; i < as_array(member(j, "provenance", "verdict"), "provenance").size(); ++i) {
        if (!j["provenance"][i].is_string()) bad(at("provenance", i), "expected a string");
        v.provenance.push_back(j["provenance"][i].get<std::string>());
    }
    v.assertions_checked = as_int(member(j, "assertions_checked", "verdict"), "assertions_checked");
    if (j.contains("diagnostic")) {
        if (!j["diagnostic"].is_string()) bad("diagnostic", "expected a string");
        v.diagnostic = j["diagnostic"].get<std::string>();
    }
    if (j.contains("certificate")) v.certificate = certificate_from_json<S>(j["certificate"], field);
    return v;
}

Json genspec_to_json(const GenSpec& g) {
    return Json{{"family", family_name(g.family)}, {"n", g.n}, {"s", g.s}, {"k", g.k}, {"r", g.r}, {"s_a", g.s_a},
                {"s_b", g.s_b}, {"i", g.i}, {"field", field_to_json(g.field)}, {"seed", g.seed}};
}

GenSpec genspec_from_json(const Json& j) {
    GenSpec g;
    const Json& fam = member(j, "family", "genspec");
    if (!fam.is_string()) bad("family", "expected a string");
    try {
        g.family = parse_family(fam.get<std::string>());
    } catch (const Error& e) {
        bad("family", e.what());
    }
    g.n = as_int(member(j, "n", "genspec"), "n");
    auto opt = [&](const char* key, int& dst) {
        if (j.contains(key)) dst = as_int(j[key], key);
    };
    opt("s", g.s);
    opt("k", g.k);
    opt("r", g.r);
    opt("s_a", g.s_a);
    opt("s_b", g.s_b);
    opt("i", g.i);
    if (j.contains("field")) g.field = field_from_json(j["field"]);
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) bad("seed", "expected a non-negative integer");
        g.seed = j["seed"].get<std::uint64_t>();
    }
    return g;
}

template <class S> Json truth_to_json(const GroundTruth<S>& t) {
    Json params = Json::array();
    for (const auto& p : t.params) params.push_back(scalar_to_json(p));
    Json out{{"family", family_name(t.family)}, {"params", params}, {"frame", matrix_to_json(t.frame)}};
    out["planted_union"] = t.planted_union ? union_to_json(*t.planted_union) : Json();
    out["planted_subset"] = t.planted_subset;
    return out;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad(path, "cannot open");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const Json::parse_error& e) {
        bad(path, std::string("byte ") + std::to_string(e.byte) + ": " + e.what());
    }
}

#define LINSTRAND_IO(S)                                                                                         \
    template Json scalar_to_json<S>(const S&);                                                                  \
    template S scalar_from_json<S>(const Json&, const FieldDesc&, const std::string&);                          \
    template Json matrix_to_json<S>(const Mat<S>&);                                                             \
    template Mat<S> matrix_from_json<S>(const Json&, const FieldDesc&, const std::string&);                     \
    template Json config_to_json<S>(const PointConfig<S>&);                                                     \
    template PointConfig<S> config_from_json<S>(const Json&, const FieldDesc&);                                 \
    template Json koszul_to_json<S>(const KoszulElement<S>&);                                                   \
    template KoszulElement<S> koszul_from_json<S>(const Json&, const FieldDesc&);                               \
    template Json union_to_json<S>(const UnionWitness<S>&);                                                     \
    template UnionWitness<S> union_from_json<S>(const Json&, const FieldDesc&, const std::string&);             \
    template Json rnc_to_json<S>(const RncWitness<S>&);                                                         \
    template RncWitness<S> rnc_from_json<S>(const Json&, const FieldDesc&, const std::string&);                 \
    template Json certificate_to_json<S>(const SplitCertificate<S>&);                                           \
    template SplitCertificate<S> certificate_from_json<S>(const Json&, const FieldDesc&, const std::string&);   \
    template Json split_input_to_json<S>(const SplitInput<S>&);                                                 \
    template SplitInput<S> split_input_from_json<S>(const Json&, const FieldDesc&);                             \
    template Json verdict_to_json<S>(const Verdict<S>&);                                                        \
    template Verdict<S> verdict_from_json<S>(const Json&, const FieldDesc&);                                    \
    template Json truth_to_json<S>(const GroundTruth<S>&);

LINSTRAND_IO(Fp)
LINSTRAND_IO(Rational)

}  // namespace linstrand
