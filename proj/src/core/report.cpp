#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "errors.hpp"

namespace reprometry {

namespace {

int decimals_for(Measure m, const DisplayRules& rules) {
    switch (m) {
        case Measure::cv_star: return rules.cv_decimals;
        case Measure::p_measure: return rules.p_decimals;
        default: return rules.corr_decimals;
    }
}

std::string display_name(const MeasureResult& r) {
    const bool mean_pairwise = r.detail.count("mean_pairwise") > 0;
    switch (r.measure) {
        case Measure::cv_star: return r.level == Level::system ? "CV*" : "mean CV*";
        case Measure::pearson_r: return mean_pairwise ? "mean r" : "r";
        case Measure::spearman_rho: return mean_pairwise ? "mean rho" : "rho";
        case Measure::kendall_tau_b: return "tau-b";
        case Measure::kendall_w: return "W";
        case Measure::cohen_kappa: return "kappa (Cohen)";
        case Measure::fleiss_kappa: return "kappa (Fleiss)";
        case Measure::kripp_alpha: return "alpha";
        case Measure::p_measure: return "P";
    }
    return "?";
}

const char* section_of(Measure m) {
    switch (m) {
        case Measure::cv_star: return "Type I";
        case Measure::pearson_r:
        case Measure::spearman_rho:
        case Measure::kendall_tau_b:
        case Measure::kendall_w: return "Type II";
        case Measure::cohen_kappa:
        case Measure::fleiss_kappa:
        case Measure::kripp_alpha: return "Type III";
        case Measure::p_measure: return "Type IV";
    }
    return "?";
}

double round_to(double v, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::round(v * scale) / scale;
}

// One grid row: the value sits in its own level's column; levels where the
// measure cannot operate render a literal "n/a", levels reported on another
// row stay blank.
struct GridRow {
    std::string label;
    std::string measure;
    std::string cells[3];
};

GridRow row_for(const std::string& label, const MeasureResult& r, const DisplayRules& rules) {
    GridRow row;
    row.label = label;
    row.measure = display_name(r);
    const Level levels[3] = {Level::system, Level::qc, Level::study};
    for (int i = 0; i < 3; ++i) {
        if (levels[i] == r.level) {
            row.cells[i] = format_value(r.value, decimals_for(r.measure, rules));
            if (r.native) row.cells[i] += "*";
        } else if (!measure_level_allowed(r.measure, levels[i])) {
            row.cells[i] = "n/a";
        }
    }
    return row;
}

struct Grid {
    std::string title;
    std::vector<GridRow> rows;
    std::vector<std::string> notes;
};

Grid build_grid(const LevelledAssessment& a, const DisplayRules& rules) {
    Grid grid;

    bool uniform_n = true;
    for (const QcAssessment& qa : a.qcs)
        if (qa.n != a.qcs.front().n) uniform_n = false;
    {
        std::ostringstream os;
        os << "degree of reproducibility";
        if (!a.qcs.empty() && uniform_n) os << " (n=" << a.qcs.front().n << ")";
        grid.title = os.str();
    }
    auto qc_label = [&](const QcAssessment& qa) {
        std::ostringstream os;
        os << "QC: " << qa.qc;
        if (!uniform_n) os << " (n=" << qa.n << ")";
        return os.str();
    };
    auto note = [&](const std::string& context, const std::string& text) {
        grid.notes.push_back(context.empty() ? text : context + ": " + text);
    };

    const char* sections[4] = {"Type I", "Type II", "Type III", "Type IV"};
    for (const char* section : sections) {
        std::vector<GridRow> rows;
        for (const QcAssessment& qa : a.qcs) {
            for (const MeasureResult& r : qa.qc_level)
                if (std::string(section_of(r.measure)) == section)
                    rows.push_back(row_for(qc_label(qa), r, rules));
            // system rows belong under their QC row
            std::vector<GridRow> system_rows;
            for (const SystemResults& sr : qa.system_level)
                for (const MeasureResult& r : sr.results)
                    if (std::string(section_of(r.measure)) == section)
                        system_rows.push_back(row_for("- " + sr.system, r, rules));
            rows.insert(rows.end(), system_rows.begin(), system_rows.end());
        }
        for (const MeasureResult& r : a.study_level)
            if (std::string(section_of(r.measure)) == section)
                rows.push_back(row_for("study", r, rules));
        if (rows.empty()) continue;  // section omitted entirely
        grid.rows.push_back({section, "", {"", "", ""}});
        grid.rows.insert(grid.rows.end(), rows.begin(), rows.end());
    }

    std::set<std::string> seen;
    auto collect = [&](const std::string& context, const MeasureResult& r) {
        for (const auto& c : r.caveats) {
            const std::string line =
                context + " " + display_name(r) + ": " + c;
            if (seen.insert(line).second) note("", line);
        }
    };
    for (const QcAssessment& qa : a.qcs) {
        for (const auto& c : qa.caveats) {
            const std::string line = qa.qc + ": " + c;
            if (seen.insert(line).second) note("", line);
        }
        for (const MeasureResult& r : qa.qc_level) collect(qa.qc, r);
        for (const SystemResults& sr : qa.system_level)
            for (const MeasureResult& r : sr.results) collect(qa.qc + "/" + sr.system, r);
    }
    for (const MeasureResult& r : a.study_level) collect("study", r);
    for (const auto& c : a.caveats)
        if (seen.insert(c).second) note("", c);
    return grid;
}

nlohmann::json result_json(const MeasureResult& r, const std::string& qc,
                           const std::string& system) {
    nlohmann::json j;
    j["measure"] = to_string(r.measure);
    j["level"] = to_string(r.level);
    j["native"] = r.native;
    j["value"] = round_to(r.value, 4);
    if (!qc.empty()) j["qc"] = qc;
    if (!system.empty()) j["system"] = system;
    j["scope"] = r.scope;
    j["caveats"] = r.caveats;
    j["digest"] = r.inputs_digest;
    nlohmann::json detail;
    for (const auto& [key, value] : r.detail) detail[key] = round_to(value, 4);
    j["detail"] = detail;
    return j;
}

nlohmann::json similarity_json(const SimilarityProfile& p) {
    nlohmann::json j;
    j["same"] = p.same;
    j["coverage"] = p.coverage;
    nlohmann::json diffs = nlohmann::json::array();
    for (const auto& d : p.different) {
        nlohmann::json entry;
        entry["key"] = d.key;
        nlohmann::json values;
        for (const auto& [exp, value] : d.values) values[exp] = value;
        entry["values"] = values;
        diffs.push_back(entry);
    }
    j["different"] = diffs;
    return j;
}

std::string emit_json(const LevelledAssessment& a) {
    nlohmann::json j;
    j["study"] = a.study_id;
    nlohmann::json groups = nlohmann::json::array();
    for (const QcAssessment& qa : a.qcs) {
        nlohmann::json g;
        g["qc"] = qa.qc;
        g["kind"] = to_string(qa.kind);
        g["n"] = qa.n;
        g["experiments"] = qa.experiment_ids;
        g["caveats"] = qa.caveats;
        g["similarity"] = similarity_json(qa.profile);
        groups.push_back(g);
    }
    j["groups"] = groups;
    nlohmann::json options;
    options["mode"] = a.options.mode == GateMode::strict ? "strict" : "lenient";
    options["confidence_level"] = a.options.confidence_level;
    options["exclude_tied_pairs"] = a.options.exclude_tied_pairs;
    options["study_p_average"] = a.options.study_p_average;
    options["prefer_fleiss"] = a.options.prefer_fleiss;
    j["options"] = options;
    j["similarity"] = similarity_json(a.similarity);

    nlohmann::json system_level = nlohmann::json::array();
    nlohmann::json qc_level = nlohmann::json::array();
    for (const QcAssessment& qa : a.qcs) {
        for (const SystemResults& sr : qa.system_level)
            for (const MeasureResult& r : sr.results)
                system_level.push_back(result_json(r, qa.qc, sr.system));
        for (const MeasureResult& r : qa.qc_level)
            qc_level.push_back(result_json(r, qa.qc, ""));
    }
    nlohmann::json study_level = nlohmann::json::array();
    for (const MeasureResult& r : a.study_level)
        study_level.push_back(result_json(r, "", ""));
    nlohmann::json results;
    results["system_level"] = system_level;
    results["qc_level"] = qc_level;
    results["study_level"] = study_level;
    j["results"] = results;
    j["caveats"] = a.caveats;
    return j.dump(2) + "\n";
}

std::string emit_markdown(const LevelledAssessment& a, const DisplayRules& rules) {
    const Grid grid = build_grid(a, rules);
    std::ostringstream os;
    os << "# Reproducibility assessment: " << a.study_id << "\n\n";
    os << grid.title << "\n\n";
    os << "| Type of result | Measure applied | System level | QC level | Study level |\n";
    os << "|---|---|---|---|---|\n";
    for (const GridRow& row : grid.rows) {
        os << "| " << row.label << " | " << row.measure;
        for (const auto& cell : row.cells) os << " | " << cell;
        os << " |\n";
    }
    os << "\n`*` marks the level at which a measure natively applies.\n";
    if (!(a.similarity.different.empty() && a.similarity.coverage.empty())) {
        os << "\nConditions of measurement: " << a.similarity.same.size() << " same, "
           << a.similarity.different.size() << " differing, "
           << a.similarity.coverage.size() << " with coverage gaps.\n";
        for (const auto& d : a.similarity.different) {
            os << "- " << d.key << " differs:";
            for (const auto& [exp, value] : d.values) os << " " << exp << "='" << value << "'";
            os << "\n";
        }
    }
    if (!grid.notes.empty()) {
        os << "\nNotes:\n";
        for (const auto& note : grid.notes) os << "- " << note << "\n";
    }
    return os.str();
}

std::string emit_delimited(const LevelledAssessment& a, const DisplayRules& rules) {
    const Grid grid = build_grid(a, rules);
    std::ostringstream os;
    os << "# study: " << a.study_id << "\t" << grid.title << "\n";
    os << "type_of_result\tmeasure\tsystem_level\tqc_level\tstudy_level\n";
    for (const GridRow& row : grid.rows) {
        os << row.label << "\t" << row.measure;
        for (const auto& cell : row.cells) os << "\t" << cell;
        os << "\n";
    }
    return os.str();
}

}  // namespace

std::string format_value(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s(buf);
    if (s.find('.') != std::string::npos) {
        while (!s.empty() && s.back() == '0') s.pop_back();
        if (!s.empty() && s.back() == '.') s.pop_back();
    }
    if (s == "-0") s = "0";
    return s;
}

std::string emit_report(const LevelledAssessment& assessment, ReportFormat format,
                        const DisplayRules& rules) {
    switch (format) {
        case ReportFormat::canonical_json: return emit_json(assessment);
        case ReportFormat::markdown: return emit_markdown(assessment, rules);
        case ReportFormat::delimited: return emit_delimited(assessment, rules);
    }
    throw DomainError("unknown report format");
}

nlohmann::json parse_report(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError(0, "malformed JSON report");
    for (const char* key : {"study", "groups", "results", "similarity", "options"})
        if (!j.contains(key))
            throw ParseError(0, std::string("report misses required key '") + key + "'");
    return j;
}

std::string render_similarity(const SimilarityProfile& profile) {
    std::ostringstream os;
    os << "same (" << profile.same.size() << "):";
    for (const auto& k : profile.same) os << " " << k;
    os << "\ndifferent (" << profile.different.size() << "):";
    if (profile.different.empty()) os << " none";
    os << "\n";
    for (const auto& d : profile.different) {
        os << "  " << d.key << ":";
        for (const auto& [exp, value] : d.values) os << " " << exp << "='" << value << "'";
        os << "\n";
    }
    os << "coverage gaps (" << profile.coverage.size() << "):";
    for (const auto& k : profile.coverage) os << " " << k;
    os << "\n";
    return os.str();
}

}  // namespace reprometry
