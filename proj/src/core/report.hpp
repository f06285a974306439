#pragma once

#include <string>

#include <json.hpp>

#include "assess.hpp"

namespace reprometry {

enum class ReportFormat { canonical_json, delimited, markdown };

// Display precision per measure family; internal values keep full precision
// and never feed rounded numbers back into computation.
struct DisplayRules {
    int cv_decimals = 2;
    int corr_decimals = 3;  // correlations and agreement measures
    int p_decimals = 3;
};

// Fixed-point rendering with trailing zeros trimmed ("29.90" -> "29.9",
// "1.000" -> "1").
std::string format_value(double v, int decimals);

// Renders the full result-type x measure x level grid. The canonical JSON
// form is key-sorted with values at 4 decimal places; identical assessments
// yield byte-identical output.
std::string emit_report(const LevelledAssessment& assessment, ReportFormat format,
                        const DisplayRules& rules = {});

// Reads a canonical JSON report back; throws ParseError on malformed input
// or a missing required section.
nlohmann::json parse_report(const std::string& text);

// Human-readable rendering of a similarity profile (used by the CLI and for
// strict-gate diagnostics).
std::string render_similarity(const SimilarityProfile& profile);

}  // namespace reprometry
