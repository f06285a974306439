#include "reprometry/reprometry.h"

#include <cstring>
#include <set>
#include <sstream>
#include <string>

#include "core/assess.hpp"
#include "core/bundle_format.hpp"
#include "core/report.hpp"
#include "core/similarity.hpp"
#include "core/validate.hpp"

using namespace reprometry;

struct repro_bundle {
    StudyBundle bundle;
};

struct repro_assessment {
    LevelledAssessment assessment;
    DisplayRules rules;
};

struct repro_partition {
    std::vector<PartitionGroup> groups;
    StudyBundle original;  // keeps experiment order for remainder pooling
};

namespace {

thread_local std::string g_last_error;

repro_status fail(repro_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Maps library exceptions onto status codes; runs `fn` and stores results.
template <typename Fn>
repro_status guarded(Fn&& fn) {
    try {
        fn();
        return REPRO_OK;
    } catch (const ValidationFailure& e) {
        return fail(REPRO_E_VALIDATION, e.what());
    } catch (const GateRefusal& e) {
        return fail(REPRO_E_GATE, std::string(e.what()) + "\n" +
                                      render_similarity(e.profile));
    } catch (const ParseError& e) {
        return fail(REPRO_E_PARSE, e.what());
    } catch (const SchemaError& e) {
        return fail(REPRO_E_PARSE, e.what());
    } catch (const DomainError& e) {
        return fail(REPRO_E_DOMAIN, e.what());
    } catch (const std::exception& e) {
        return fail(REPRO_E_DOMAIN, e.what());
    }
}

}  // namespace

extern "C" {

void repro_assess_options_init(repro_assess_options* options) {
    if (options == nullptr) return;
    options->mode = REPRO_MODE_LENIENT;
    options->confidence_level = 0.95;
    options->exclude_tied_pairs = 0;
    options->study_p_average = 0;
    options->prefer_fleiss = 0;
    options->cv_decimals = -1;
    options->corr_decimals = -1;
    options->p_decimals = -1;
}

repro_status repro_bundle_parse_file(const char* path, repro_bundle** out) {
    if (path == nullptr || out == nullptr) return fail(REPRO_E_ARG, "null argument");
    *out = nullptr;
    return guarded([&] { *out = new repro_bundle{parse_bundle_file(path)}; });
}

repro_status repro_bundle_parse_text(const char* text, repro_bundle** out) {
    if (text == nullptr || out == nullptr) return fail(REPRO_E_ARG, "null argument");
    *out = nullptr;
    return guarded([&] { *out = new repro_bundle{parse_bundle(text)}; });
}

void repro_bundle_free(repro_bundle* bundle) { delete bundle; }

repro_status repro_bundle_serialize(const repro_bundle* bundle, char** out_text) {
    if (bundle == nullptr || out_text == nullptr) return fail(REPRO_E_ARG, "null argument");
    return guarded([&] { *out_text = dup_string(serialize_bundle(bundle->bundle)); });
}

repro_status repro_bundle_validate(const repro_bundle* bundle, char** out_findings) {
    if (bundle == nullptr || out_findings == nullptr)
        return fail(REPRO_E_ARG, "null argument");
    *out_findings = nullptr;
    const std::vector<ValidationFinding> findings = validate_bundle(bundle->bundle);
    if (findings.empty()) return REPRO_OK;
    std::ostringstream os;
    for (const auto& f : findings) os << f.path << ": " << f.message << "\n";
    *out_findings = dup_string(os.str());
    return fail(REPRO_E_VALIDATION, "bundle failed validation");
}

repro_status repro_bundle_similarity(const repro_bundle* bundle, char** out_text) {
    if (bundle == nullptr || out_text == nullptr) return fail(REPRO_E_ARG, "null argument");
    return guarded([&] {
        std::ostringstream os;
        for (const QcGroup& group : group_by_qc(bundle->bundle)) {
            if (group.experiments.size() < 2) continue;
            std::vector<PropertySheet> sheets;
            std::vector<std::string> ids;
            for (const Experiment* exp : group.experiments) {
                sheets.push_back(exp->properties);
                ids.push_back(exp->id);
            }
            os << "quality criterion '" << group.qc << "' (" << to_string(group.kind)
               << ", n=" << group.experiments.size() << ")\n";
            os << render_similarity(similarity_profile(sheets, ids)) << "\n";
        }
        *out_text = dup_string(os.str());
    });
}

repro_status repro_bundle_partition(const repro_bundle* bundle, const char* keys_csv,
                                    repro_partition** out) {
    if (bundle == nullptr || keys_csv == nullptr || out == nullptr)
        return fail(REPRO_E_ARG, "null argument");
    *out = nullptr;
    return guarded([&] {
        std::vector<std::string> keys;
        std::stringstream ss(keys_csv);
        std::string key;
        while (std::getline(ss, key, ','))
            if (!key.empty()) keys.push_back(key);
        if (keys.empty()) throw DomainError("no partition keys given");
        *out = new repro_partition{partition(bundle->bundle, keys), bundle->bundle};
    });
}

int repro_partition_count(const repro_partition* partition) {
    return partition == nullptr ? 0 : static_cast<int>(partition->groups.size());
}

int repro_partition_group_size(const repro_partition* partition, int index) {
    if (partition == nullptr || index < 0 ||
        index >= static_cast<int>(partition->groups.size()))
        return 0;
    return static_cast<int>(
        partition->groups[static_cast<std::size_t>(index)].bundle.experiments.size());
}

repro_status repro_partition_label(const repro_partition* partition, int index, char** out) {
    if (partition == nullptr || out == nullptr) return fail(REPRO_E_ARG, "null argument");
    if (index < 0 || index >= static_cast<int>(partition->groups.size()))
        return fail(REPRO_E_ARG, "partition group index out of range");
    const PartitionGroup& group = partition->groups[static_cast<std::size_t>(index)];
    std::ostringstream os;
    for (std::size_t i = 0; i < group.key_values.size(); ++i) {
        if (i > 0) os << ", ";
        os << group.key_values[i].first << "="
           << (group.key_values[i].second.empty() ? "<unset>" : group.key_values[i].second);
    }
    os << " (n=" << group.bundle.experiments.size() << ")";
    *out = dup_string(os.str());
    return REPRO_OK;
}

repro_status repro_partition_members(const repro_partition* partition, int index, char** out) {
    if (partition == nullptr || out == nullptr) return fail(REPRO_E_ARG, "null argument");
    if (index < 0 || index >= static_cast<int>(partition->groups.size()))
        return fail(REPRO_E_ARG, "partition group index out of range");
    const PartitionGroup& group = partition->groups[static_cast<std::size_t>(index)];
    std::ostringstream os;
    for (std::size_t i = 0; i < group.bundle.experiments.size(); ++i) {
        if (i > 0) os << ", ";
        os << group.bundle.experiments[i].id;
    }
    *out = dup_string(os.str());
    return REPRO_OK;
}

repro_status repro_partition_bundle(const repro_partition* partition, int index,
                                    repro_bundle** out) {
    if (partition == nullptr || out == nullptr) return fail(REPRO_E_ARG, "null argument");
    if (index < 0 || index >= static_cast<int>(partition->groups.size()))
        return fail(REPRO_E_ARG, "partition group index out of range");
    *out = new repro_bundle{partition->groups[static_cast<std::size_t>(index)].bundle};
    return REPRO_OK;
}

repro_status repro_partition_remainder(const repro_partition* partition, int min_size,
                                       repro_bundle** out) {
    if (partition == nullptr || out == nullptr) return fail(REPRO_E_ARG, "null argument");
    *out = nullptr;
    std::set<std::string> pooled_ids;
    for (const PartitionGroup& group : partition->groups)
        if (static_cast<int>(group.bundle.experiments.size()) < min_size)
            for (const Experiment& exp : group.bundle.experiments)
                pooled_ids.insert(exp.id);
    if (pooled_ids.empty())
        return fail(REPRO_E_DOMAIN, "no groups below the given size");
    StudyBundle rest;
    rest.study_id = partition->original.study_id + "/remainder";
    rest.declared_system_set = partition->original.declared_system_set;
    for (const Experiment& exp : partition->original.experiments)
        if (pooled_ids.count(exp.id)) rest.experiments.push_back(exp);
    *out = new repro_bundle{std::move(rest)};
    return REPRO_OK;
}

void repro_partition_free(repro_partition* partition) { delete partition; }

repro_status repro_assess(const repro_bundle* bundle, const repro_assess_options* options,
                          repro_assessment** out) {
    if (bundle == nullptr || out == nullptr) return fail(REPRO_E_ARG, "null argument");
    *out = nullptr;
    repro_assess_options defaults;
    repro_assess_options_init(&defaults);
    const repro_assess_options& o = options ? *options : defaults;
    if (!(o.confidence_level > 0.0 && o.confidence_level < 1.0))
        return fail(REPRO_E_ARG, "confidence level must be in (0, 1)");

    AssessOptions core;
    core.mode = o.mode == REPRO_MODE_STRICT ? GateMode::strict : GateMode::lenient;
    core.confidence_level = o.confidence_level;
    core.exclude_tied_pairs = o.exclude_tied_pairs != 0;
    core.study_p_average = o.study_p_average != 0;
    core.prefer_fleiss = o.prefer_fleiss != 0;
    DisplayRules rules;
    if (o.cv_decimals >= 0) rules.cv_decimals = o.cv_decimals;
    if (o.corr_decimals >= 0) rules.corr_decimals = o.corr_decimals;
    if (o.p_decimals >= 0) rules.p_decimals = o.p_decimals;

    return guarded([&] {
        *out = new repro_assessment{assess_study(bundle->bundle, core), rules};
    });
}

repro_status repro_assessment_render(const repro_assessment* assessment, int format,
                                     char** out_text) {
    if (assessment == nullptr || out_text == nullptr)
        return fail(REPRO_E_ARG, "null argument");
    ReportFormat rf;
    switch (format) {
        case REPRO_FORMAT_JSON: rf = ReportFormat::canonical_json; break;
        case REPRO_FORMAT_DELIMITED: rf = ReportFormat::delimited; break;
        case REPRO_FORMAT_MARKDOWN: rf = ReportFormat::markdown; break;
        default: return fail(REPRO_E_ARG, "unknown report format");
    }
    return guarded([&] {
        *out_text = dup_string(emit_report(assessment->assessment, rf, assessment->rules));
    });
}

void repro_assessment_free(repro_assessment* assessment) { delete assessment; }

const char* repro_last_error(void) { return g_last_error.c_str(); }

void repro_string_free(char* text) { delete[] text; }

const char* repro_version(void) { return "0.1.0"; }

}  // extern "C"
