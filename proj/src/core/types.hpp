#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace reprometry {

// One measured quantity value together with the scale of the instrument
// that produced it. scale_max is empty for open-ended measures such as
// error counts.
struct QuantityValue {
    double value = 0.0;
    double scale_min = 0.0;
    std::optional<double> scale_max;
};

// A single measurement: evaluation measure applied to one system. The
// measurement conditions are the property sheet of the owning experiment.
struct Measurement {
    std::string measurand;  // quality criterion / metric name
    std::string system;
    std::optional<std::string> time;
    QuantityValue value;
};

// Character span inside an evaluated output; end is exclusive.
struct Span {
    long start = 0;
    long end = 0;
    friend auto operator<=>(const Span&, const Span&) = default;
};

struct LabeledItem {
    std::string item_id;
    std::optional<Span> span;
    std::string label;
};

// All labels one experiment attached to one system's outputs.
struct AnnotationSet {
    std::string system;
    std::vector<LabeledItem> items;
};

// Measurement conditions, split the way the property schema splits them:
// evaluation-agnostic keys, human-evaluation keys, and free extensions
// (keys prefixed "x.").
struct PropertySheet {
    std::map<std::string, std::string> general;
    std::map<std::string, std::string> human_eval;
    std::map<std::string, std::string> extensions;

    bool empty() const { return general.empty() && human_eval.empty() && extensions.empty(); }
    // Looks a key up across all three blocks.
    std::optional<std::string> get(const std::string& key) const;
};

// Sign of a score difference for one unordered system pair, stored under a
// canonical orientation (lexicographically smaller system first).
struct PairwiseSignTable {
    std::string experiment;
    // (lo, hi) -> sign of score(lo) - score(hi), in {-1, 0, +1}
    std::map<std::pair<std::string, std::string>, int> signs;
};

enum class ResultKind { scores, labels, findings };

const char* to_string(ResultKind kind);

// An assessment of a single set of systems on a single evaluation measure.
struct Experiment {
    std::string id;
    std::string quality_criterion;
    ResultKind kind = ResultKind::scores;
    std::vector<Measurement> measurements;      // kind == scores
    std::vector<AnnotationSet> annotations;     // kind == labels
    std::vector<std::string> label_set;         // kind == labels
    std::optional<PairwiseSignTable> findings;  // kind == findings
    PropertySheet properties;
    double scale_min = 0.0;
    std::optional<double> scale_max;
    bool scale_declared = false;
};

// The unit of assessment: n >= 2 comparable experiments plus the declared
// system universe they range over.
struct StudyBundle {
    std::string study_id;
    std::vector<Experiment> experiments;
    std::vector<std::string> declared_system_set;
};

// Precision summary for one system's repeated scores.
struct PrecisionStats {
    int n = 0;
    double mean = 0.0;
    double s = 0.0;       // Bessel-corrected sample standard deviation
    double s_star = 0.0;  // s / c4(n)
    double cv_star = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double confidence_level = 0.95;
    bool degenerate_ci = false;  // zero-variance interval
};

enum class Measure {
    cv_star,
    pearson_r,
    spearman_rho,
    kendall_tau_b,
    kendall_w,
    cohen_kappa,
    fleiss_kappa,
    kripp_alpha,
    p_measure,
};

enum class Level { system, qc, study };

const char* to_string(Measure m);
const char* to_string(Level l);

// Availability and native-level matrix for (measure, level) cells.
// Correlations apply only at the quality-criterion level; P applies at the
// quality-criterion and study levels; CV* and the agreement measures apply
// everywhere, each with a single native level.
bool measure_level_allowed(Measure m, Level l);
bool measure_level_native(Measure m, Level l);

// One computed degree-of-reproducibility value.
struct MeasureResult {
    Measure measure = Measure::cv_star;
    Level level = Level::system;
    bool native = false;
    double value = 0.0;
    std::vector<std::string> scope;    // qc and/or system identifiers covered
    std::vector<std::string> caveats;
    std::string inputs_digest;         // hash over the inputs that produced value
    std::map<std::string, double> detail;  // extra numbers (n, mean, ci, ...)
};

// MeasureResult constructor that enforces the availability matrix and sets
// the native flag. Throws DomainError on a forbidden (measure, level) cell.
MeasureResult make_result(Measure m, Level l, double value, std::vector<std::string> scope);

struct ValidationFinding {
    std::string path;  // stable identifier path, e.g. "experiment run-2 / score SVM"
    std::string message;
};

// FNV-1a over a canonical input description; used for result provenance.
std::string digest(const std::string& canonical_inputs);

}  // namespace reprometry
