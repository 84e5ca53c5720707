#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "linstrand/classify.hpp"
#include "linstrand/harness.hpp"

namespace linstrand {

using Json = nlohmann::ordered_json;

// Every reader throws Error(ParseError) naming the offending field path.

Json field_to_json(const FieldDesc& f);
FieldDesc field_from_json(const Json& j, const std::string& where = "field");

template <class S> Json scalar_to_json(const S& x);
template <class S> S scalar_from_json(const Json& j, const FieldDesc& field, const std::string& where);

template <class S> Json matrix_to_json(const Mat<S>& m);
template <class S> Mat<S> matrix_from_json(const Json& j, const FieldDesc& field, const std::string& where);

/// {"n": 3, "field": {...}, "points": [["1", "0", "0", "0"], ...]}
template <class S> Json config_to_json(const PointConfig<S>& cfg);
/// The field stored in the document, or `override` when given.
FieldDesc config_field(const Json& j, const std::optional<FieldDesc>& override = std::nullopt);
template <class S> PointConfig<S> config_from_json(const Json& j, const FieldDesc& field);

Json strand_to_json(const LinearStrand& a);
LinearStrand strand_from_json(const Json& j, const std::string& where = "strand");

Json position_to_json(const Position& p);
Position position_from_json(const Json& j, const std::string& where = "position");

template <class S> Json koszul_to_json(const KoszulElement<S>& ke);
template <class S> KoszulElement<S> koszul_from_json(const Json& j, const FieldDesc& field);

template <class S> Json union_to_json(const UnionWitness<S>& w);
template <class S> UnionWitness<S> union_from_json(const Json& j, const FieldDesc& field, const std::string& where);
template <class S> Json rnc_to_json(const RncWitness<S>& w);
template <class S> RncWitness<S> rnc_from_json(const Json& j, const FieldDesc& field, const std::string& where);

template <class S> Json certificate_to_json(const SplitCertificate<S>& c);
template <class S> SplitCertificate<S> certificate_from_json(const Json& j, const FieldDesc& field, const std::string& where = "certificate");

template <class S> Json split_input_to_json(const SplitInput<S>& in);
template <class S> SplitInput<S> split_input_from_json(const Json& j, const FieldDesc& field);

/// {"tag", "strand", "position", "witness", "provenance", "assertions_checked", ...}
template <class S> Json verdict_to_json(const Verdict<S>& v);
template <class S> Verdict<S> verdict_from_json(const Json& j, const FieldDesc& field);

Json genspec_to_json(const GenSpec& g);
GenSpec genspec_from_json(const Json& j);

template <class S> Json truth_to_json(const GroundTruth<S>& t);

/// Reads a whole file; parse errors carry the byte offset.
Json read_json_file(const std::string& path);

}  // namespace linstrand
