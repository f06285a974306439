#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "similarity.hpp"
#include "types.hpp"
#include "validate.hpp"

namespace reprometry {

struct AssessOptions {
    GateMode mode = GateMode::lenient;
    double confidence_level = 0.95;
    bool exclude_tied_pairs = false;  // drop tied sign pairs from P
    bool study_p_average = false;     // average per-QC P instead of pooling
    bool prefer_fleiss = false;       // Fleiss's kappa even for n = 2
};

// Comparable set: experiments sharing one quality criterion and one result
// kind. The unit the measures run over.
struct QcGroup {
    std::string qc;
    ResultKind kind = ResultKind::scores;
    std::vector<const Experiment*> experiments;
};

// (qc, kind) groups in order of first appearance in the bundle.
std::vector<QcGroup> group_by_qc(const StudyBundle& bundle);

struct SystemResults {
    std::string system;
    std::vector<MeasureResult> results;
};

struct QcAssessment {
    std::string qc;
    ResultKind kind = ResultKind::scores;
    int n = 0;  // experiments compared
    std::vector<std::string> experiment_ids;
    std::vector<SystemResults> system_level;  // declared-system order
    std::vector<MeasureResult> qc_level;
    SimilarityProfile profile;  // conditions compared within this group
    std::vector<std::string> caveats;
    // Type IV bookkeeping for study-level pooling.
    std::optional<std::pair<long long, long long>> p_counts;
};

struct LevelledAssessment {
    std::string study_id;
    std::vector<QcAssessment> qcs;
    std::vector<MeasureResult> study_level;
    SimilarityProfile similarity;  // merged over the per-group profiles
    std::vector<std::string> caveats;
    AssessOptions options;
};

// Bundle failed structural validation; carries the findings.
class ValidationFailure : public Error {
public:
    explicit ValidationFailure(std::vector<ValidationFinding> found);
    std::vector<ValidationFinding> findings;
};

// Strict-mode comparability refusal; carries the offending profile.
class GateRefusal : public Error {
public:
    GateRefusal(std::string message, SimilarityProfile prof);
    SimilarityProfile profile;
};

// Unweighted arithmetic mean; the aggregation every level-to-level step in
// the Type I and Type III rows uses.
double level_mean(std::span<const double> values);

// Per-result-type assessment over one comparable group. These throw
// DomainError on unassessable inputs; assess_study converts such failures
// into caveats instead of failing the study.
struct Type1Outcome {
    std::vector<SystemResults> system_level;
    std::optional<MeasureResult> qc_level;
    std::vector<double> system_values;
    std::vector<std::string> caveats;
};
Type1Outcome assess_type1(const QcGroup& group, const AssessOptions& opts);

std::vector<MeasureResult> assess_type2(const QcGroup& group,
                                        std::vector<std::string>& caveats);

struct Type3Outcome {
    std::vector<SystemResults> system_level;
    std::vector<MeasureResult> qc_level;
    std::vector<std::string> caveats;
};
Type3Outcome assess_type3(const QcGroup& group, const AssessOptions& opts);

struct Type4Outcome {
    std::optional<MeasureResult> qc_level;
    std::optional<std::pair<long long, long long>> counts;
    std::vector<std::string> caveats;
};
Type4Outcome assess_type4(const QcGroup& group, const AssessOptions& opts);

// Full orchestration: validates, gates each comparable group, routes result
// kinds to the measures, and assembles the three levels. Deterministic for
// identical input. Throws ValidationFailure or GateRefusal (strict mode).
LevelledAssessment assess_study(const StudyBundle& bundle, const AssessOptions& opts = {});

}  // namespace reprometry
