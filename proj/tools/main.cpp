// linstrand command-line front end.
//
// Exit codes: 0 success, 2 DimOutOfRange, 3 UnsplitOverBaseField (or no
// certificate without fallback), 4 fallback provenance, 64 malformed input,
// 70 internal assertion or failed self-test.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "linstrand/acceptance.hpp"
#include "linstrand/io.hpp"

using namespace linstrand;

namespace {

enum Exit { kOk = 0, kDimOutOfRange = 2, kUnsplit = 3, kFallback = 4, kMalformed = 64, kInternal = 70 };

struct Globals {
    std::string field;
    std::optional<std::uint64_t> seed;
    bool no_fallback = false;
    std::size_t cap_subsets = default_subset_cap();
    bool json = false;
};

std::optional<FieldDesc> field_override(const Globals& g) {
    if (g.field.empty()) return std::nullopt;
    return FieldDesc::parse(g.field);
}

void emit(const Globals& g, const Json& j, const std::string& human) {
    if (g.json) std::cout << j.dump(2) << "\n";
    else std::cout << human;
}

std::string join(const std::vector<Index>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    return os.str();
}

// Calls fn<Fp> or fn<Rational> depending on the field.
template <class Fn> int with_field(const FieldDesc& f, Fn&& fn) {
    if (f.is_rational()) return fn(Rational{});
    return fn(Fp{});
}

int cmd_strand(const Globals& g, const std::string& path) {
    const Json doc = read_json_file(path);
    const FieldDesc field = config_field(doc, field_override(g));
    return with_field(field, [&](auto tag) {
        using S = decltype(tag);
        const auto cfg = config_from_json<S>(doc, field);
        const LinearStrand a = strand_betti(cfg);
        const Index dim_i2 = ideal_degree_part(cfg, 2).dim();
        std::vector<Index> hf;
        for (int d = 1; d <= 3; ++d) hf.push_back(hilbert_function(cfg, d));
        Json j{{"n", cfg.n()}, {"points", cfg.size()}, {"a", strand_to_json(a)}, {"dim_I2", dim_i2}, {"hilbert", hf}};
        std::ostringstream os;
        os << "a = (" << join(a.values) << ")\ndim I_2 = " << dim_i2 << "\nHF(1..3) = " << join(hf) << "\n";
        emit(g, j, os.str());
        return kOk;
    });
}

int cmd_classify(const Globals& g, const std::string& path, int alpha_row) {
    const Json doc = read_json_file(path);
    const FieldDesc field = config_field(doc, field_override(g));
    return with_field(field, [&](auto tag) {
        using S = decltype(tag);
        const auto cfg = config_from_json<S>(doc, field);
        ClassifyOptions<S> opts;
        opts.allow_fallback = !g.no_fallback;
        opts.subset_cap = g.cap_subsets;
        opts.alpha_row = alpha_row;
        const Verdict<S> v = classify(cfg, opts);
        std::ostringstream os;
        os << "verdict " << verdict_name(v.tag) << "\na = (" << join(v.strand.values) << ")\n";
        if (const auto* sp = std::get_if<SpecialPosition>(&v.position)) os << "position special, i = " << sp->i << "\n";
        else os << "position general\n";
        os << "provenance";
        for (const auto& p : v.provenance) os << " " << p;
        os << "\nassertions checked " << v.assertions_checked << "\n";
        if (v.union_witness) {
            os << "union P^" << v.union_witness->k << " u P^" << v.union_witness->r << ", assignment "
               << std::string(v.union_witness->assignment.begin(), v.union_witness->assignment.end()) << "\n";
        }
        if (v.rnc) os << "rational normal curve through all " << v.rnc->params.size() << " points\n";
        if (!v.diagnostic.empty()) os << "diagnostic: " << v.diagnostic << "\n";
        emit(g, verdict_to_json(v), os.str());
        if (v.tag == VerdictTag::UnsplitOverBaseField) return kUnsplit;
        if (v.used_fallback()) return kFallback;
        return kOk;
    });
}

int cmd_decompose(const Globals& g, const std::string& path, std::optional<int> j, std::vector<int> idxs, int alpha_row) {
    const Json doc = read_json_file(path);
    const bool is_input = doc.is_object() && doc.contains("L");
    const FieldDesc field = config_field(is_input ? doc.value("config", Json::object()) : doc, field_override(g));
    return with_field(field, [&](auto tag) {
        using S = decltype(tag);
        const SplitInput<S> in = [&] {
            if (is_input) {
                auto parsed = split_input_from_json<S>(doc, field);
                validate(parsed);
                return parsed;
            }
            if (!j || idxs.empty()) fail(ErrorCode::ParseError, "--j and --idxs are required with a point configuration");
            const auto cfg = config_from_json<S>(doc, field);
            const PointConfig<S> framed = extraction_frame(cfg);
            const TopIntersection<S> top = a_top_via_intersection(framed);
            require(top.count > 0, ErrorCode::HypothesisError, "a_{n-1} = 0, nothing to decompose");
            require(alpha_row >= 0 && alpha_row < top.count, ErrorCode::IndexError, "alpha row out of range");
            const auto ke = extract_special_quadrics(framed, Vec<S>(top.basis.row(alpha_row).transpose()));
            return split_input_at(framed, ke, *j, idxs);
        }();
        const auto cert = derive_certificate(in, !g.no_fallback);
        std::string why;
        if (!check_certificate(in.cfg, cert, in.span(), &why)) fail(ErrorCode::ContradictionReached, "certificate re-check failed: " + why);
        std::ostringstream os;
        os << "m = " << cert.m << ", d = " << in.span().rows() << ", branch " << branch_name(cert.provenance) << "\n"
           << cert.t() << " L's and " << cert.hs.rows() << " h's, " << cert.transcript.size() << " products checked\n";
        emit(g, certificate_to_json(cert), os.str());
        return cert.provenance == Branch::FallbackSearch ? kFallback : kOk;
    });
}

struct GenArgs {
    std::string spec_path, family = "union", out, truth;
    int n = 3, s = 0, k = 0, r = 0, s_a = 0, s_b = 0, i = 0;
};

int cmd_gen(const Globals& g, const GenArgs& a) {
    GenSpec spec;
    if (!a.spec_path.empty()) {
        spec = genspec_from_json(read_json_file(a.spec_path));
    } else {
        spec.family = parse_family(a.family);
        spec.n = a.n;
        spec.s = a.s;
        spec.k = a.k;
        spec.r = a.r;
        spec.s_a = a.s_a;
        spec.s_b = a.s_b;
        spec.i = a.i;
    }
    if (auto f = field_override(g)) spec.field = *f;
    if (g.seed) spec.seed = *g.seed;
    return with_field(spec.field, [&](auto tag) {
        using S = decltype(tag);
        const Generated<S> gen = generate<S>(spec);
        const Json cfg = config_to_json(gen.cfg);
        Json truth = truth_to_json(gen.truth);
        truth["spec"] = genspec_to_json(spec);
        auto write = [](const std::string& path, const Json& j) {
            std::ofstream os(path);
            if (!os) fail(ErrorCode::ParseError, path + ": cannot write");
            os << j.dump(2) << "\n";
        };
        std::string truth_path = a.truth;
        if (truth_path.empty() && !a.out.empty()) truth_path = a.out + ".truth.json";
        if (!a.out.empty()) write(a.out, cfg);
        else std::cout << cfg.dump(2) << "\n";
        if (!truth_path.empty()) write(truth_path, truth);
        if (!g.json && !a.out.empty())
            std::cout << "wrote " << gen.cfg.size() << " points to " << a.out << (truth_path.empty() ? "" : " and " + truth_path) << "\n";
        return kOk;
    });
}

int cmd_oracle(const Globals& g, const std::string& path) {
    const Json doc = read_json_file(path);
    const FieldDesc field = config_field(doc, field_override(g));
    return with_field(field, [&](auto tag) {
        using S = decltype(tag);
        const auto cfg = config_from_json<S>(doc, field);
        const LinearStrand a = strand_betti(cfg), b = strand_oracle(cfg);
        Json j{{"strand", strand_to_json(a)}, {"strand_oracle", strand_to_json(b)}, {"strand_agree", a == b}};
        std::ostringstream os;
        os << "strand (" << join(a.values) << "), oracle (" << join(b.values) << ")" << (a == b ? "" : "  DISAGREE") << "\n";
        if (cfg.size() <= 16) {
            const auto w = bipartition_oracle(cfg);
            j["bipartition"] = w ? union_to_json(*w) : Json();
            if (w) os << "bipartition P^" << w->k << " u P^" << w->r << ": " << std::string(w->assignment.begin(), w->assignment.end()) << "\n";
            else os << "no bipartition onto a union P^k u P^r\n";
        } else {
            j["bipartition"] = "skipped: more than 16 points";
            os << "bipartition skipped: more than 16 points\n";
        }
        emit(g, j, os.str());
        return a == b ? kOk : kInternal;
    });
}

int cmd_selftest(const Globals& g, int trials) {
    AcceptanceOptions opts;
    opts.max_trials = trials;
    opts.parallel = true;
    if (g.seed) opts.seed = *g.seed;
    const auto results = run_acceptance(opts);
    bool all = true;
    Json j = Json::array();
    std::ostringstream os;
    for (const auto& r : results) {
        all = all && r.passed;
        j.push_back(Json{{"criterion", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
        os << format_result(r) << "\n";
    }
    emit(g, j, os.str());
    return all ? kOk : kInternal;
}

int exit_for(const Error& e) {
    switch (e.code()) {
        case ErrorCode::DimOutOfRange: return kDimOutOfRange;
        case ErrorCode::NoCertificate: return kUnsplit;
        case ErrorCode::ParseError:
        case ErrorCode::InvalidConfig:
        case ErrorCode::IndexError:
        case ErrorCode::FieldMismatch:
        case ErrorCode::DimensionMismatch:
        case ErrorCode::HypothesisError:
        case ErrorCode::SizeLimit:
        case ErrorCode::RejectionOverflow: return kMalformed;
        default: return kInternal;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linear strands of point configurations: Betti numbers, classification, split certificates"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--field", g.field, "fp:<prime> or rational; overrides the input file");
    app.add_option("--seed", g.seed, "generator / self-test seed");
    app.add_flag("--no-fallback", g.no_fallback, "never fall back to bounded searches");
    app.add_option("--cap-subsets", g.cap_subsets, "subset budget for position checks")->check(CLI::PositiveNumber);
    app.add_flag("--json", g.json, "JSON only on stdout");

    std::string input;
    int alpha_row = 0;
    auto* strand = app.add_subcommand("strand", "a_1..a_n, dim I_2 and Hilbert function values");
    strand->add_option("input", input, "point configuration JSON")->required();

    auto* classify_cmd = app.add_subcommand("classify", "full verdict with witness");
    classify_cmd->add_option("input", input, "point configuration JSON")->required();
    classify_cmd->add_option("--alpha-row", alpha_row, "row of the canonical basis used as alpha");

    std::optional<int> j;
    std::vector<int> idxs;
    auto* decompose = app.add_subcommand("decompose", "split certificate for F_{efj} = x_j L_{ef}");
    decompose->add_option("input", input, "point configuration or split input JSON")->required();
    decompose->add_option("--j", j, "the variable x_j");
    decompose->add_option("--idxs", idxs, "indices e, f, ... (comma separated)")->delimiter(',');
    decompose->add_option("--alpha-row", alpha_row, "row of the canonical basis used as alpha");

    GenArgs ga;
    auto* gen = app.add_subcommand("gen", "generate a configuration and its ground truth");
    gen->add_option("--spec", ga.spec_path, "GenSpec JSON file");
    gen->add_option("--family", ga.family, "rnc, union, general or special");
    gen->add_option("--n", ga.n);
    gen->add_option("--s", ga.s);
    gen->add_option("--k", ga.k);
    gen->add_option("--r", ga.r);
    gen->add_option("--s-a", ga.s_a);
    gen->add_option("--s-b", ga.s_b);
    gen->add_option("--i", ga.i);
    gen->add_option("--out", ga.out, "config output file (stdout when absent)");
    gen->add_option("--truth", ga.truth, "ground truth output file (default <out>.truth.json)");

    auto* oracle = app.add_subcommand("oracle", "independent strand and bipartition oracles");
    oracle->add_option("input", input, "point configuration JSON")->required();

    int trials = 10;
    auto* selftest = app.add_subcommand("selftest", "acceptance suite at reduced scale");
    selftest->add_option("--trials", trials, "trial cap per criterion (0 = full scale)")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kMalformed;
    }

    try {
        if (*strand) return cmd_strand(g, input);
        if (*classify_cmd) return cmd_classify(g, input, alpha_row);
        if (*decompose) return cmd_decompose(g, input, j, idxs, alpha_row);
        if (*gen) return cmd_gen(g, ga);
        if (*oracle) return cmd_oracle(g, input);
        if (*selftest) return cmd_selftest(g, trials);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_for(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}
