#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace linstrand {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

struct AcceptanceOptions {
    /// Caps every per-criterion trial count; 0 keeps the full counts.
    int max_trials = 0;
    std::uint64_t seed = 20240601;
    /// Run the criteria concurrently.  Time limits are only meaningful
    /// when this is off.
    bool parallel = false;
};

CriterionResult criterion_formula_agreement(const AcceptanceOptions& opts);
CriterionResult criterion_rnc_forward(const AcceptanceOptions& opts);
CriterionResult criterion_union_forward(const AcceptanceOptions& opts);
CriterionResult criterion_special_converse(const AcceptanceOptions& opts);
CriterionResult criterion_twisted_cubic(const AcceptanceOptions& opts);
CriterionResult criterion_syzygy_identities(const AcceptanceOptions& opts);
CriterionResult criterion_split_certificates(const AcceptanceOptions& opts);
CriterionResult criterion_negative_control(const AcceptanceOptions& opts);
CriterionResult criterion_invariance(const AcceptanceOptions& opts);

/// Criteria 1..9 in order.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

/// "PASS  3  union forward check: ..." style line.
std::string format_result(const CriterionResult& r);

}  // namespace linstrand
