// Command-line front end over the reprometry shared library. Talks to the
// library exclusively through its C interface.
//
// Exit codes: 0 success, 1 validation failure, 2 strict-gate refusal,
// 3 I/O, parse, or usage error.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "reprometry/reprometry.h"

namespace {

struct StringFree {
    void operator()(char* s) const { repro_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringFree>;

struct BundleFree {
    void operator()(repro_bundle* b) const { repro_bundle_free(b); }
};
using OwnedBundle = std::unique_ptr<repro_bundle, BundleFree>;

int exit_code_for(repro_status status) {
    switch (status) {
        case REPRO_OK: return 0;
        case REPRO_E_VALIDATION: return 1;
        case REPRO_E_GATE: return 2;
        case REPRO_E_PARSE: return 3;
        default: return 1;
    }
}

int report_failure(repro_status status) {
    std::fprintf(stderr, "error: %s\n", repro_last_error());
    return exit_code_for(status);
}

int parse_format(const std::string& name) {
    if (name == "json") return REPRO_FORMAT_JSON;
    if (name == "delimited") return REPRO_FORMAT_DELIMITED;
    return REPRO_FORMAT_MARKDOWN;
}

// "--precision cv=2,corr=3,p=3" or a single integer for all families.
bool apply_precision(const std::string& spec, repro_assess_options* options) {
    if (spec.empty()) return true;
    if (spec.find('=') == std::string::npos) {
        try {
            const int all = std::stoi(spec);
            options->cv_decimals = options->corr_decimals = options->p_decimals = all;
            return all >= 0;
        } catch (...) {
            return false;
        }
    }
    std::string rest = spec;
    while (!rest.empty()) {
        const std::size_t comma = rest.find(',');
        const std::string part = rest.substr(0, comma);
        rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
        const std::size_t eq = part.find('=');
        if (eq == std::string::npos) return false;
        const std::string key = part.substr(0, eq);
        int value = 0;
        try {
            value = std::stoi(part.substr(eq + 1));
        } catch (...) {
            return false;
        }
        if (value < 0) return false;
        if (key == "cv")
            options->cv_decimals = value;
        else if (key == "corr")
            options->corr_decimals = value;
        else if (key == "p")
            options->p_decimals = value;
        else
            return false;
    }
    return true;
}

int assess_and_print(const repro_bundle* bundle, const repro_assess_options& options,
                     int format) {
    repro_assessment* assessment = nullptr;
    repro_status status = repro_assess(bundle, &options, &assessment);
    if (status != REPRO_OK) return report_failure(status);
    char* text = nullptr;
    status = repro_assessment_render(assessment, format, &text);
    repro_assessment_free(assessment);
    if (status != REPRO_OK) return report_failure(status);
    std::fputs(text, stdout);
    repro_string_free(text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"degree-of-reproducibility assessment for comparable evaluation experiments"};
    app.require_subcommand(1);

    std::string bundle_path, mode = "lenient", format_name = "markdown", precision, by_keys;
    double confidence = 0.95;
    bool exclude_ties = false, p_average = false, prefer_fleiss = false, do_assess = false;

    auto add_common = [&](CLI::App* cmd, bool with_assess_flags) {
        cmd->add_option("bundle", bundle_path, "study bundle file")->required();
        if (with_assess_flags) {
            cmd->add_option("--mode", mode, "comparability gate: strict or lenient")
                ->check(CLI::IsMember({"strict", "lenient"}));
            cmd->add_option("--format", format_name, "report format")
                ->check(CLI::IsMember({"json", "delimited", "markdown"}));
            cmd->add_option("--confidence", confidence,
                            "confidence level for s* intervals (0, 1)");
            cmd->add_option("--precision", precision,
                            "display decimals: N or cv=2,corr=3,p=3");
            cmd->add_flag("--exclude-ties", exclude_ties,
                          "drop tied sign pairs from the P measure");
            cmd->add_flag("--p-average", p_average,
                          "average per-QC P at study level instead of pooling");
            cmd->add_flag("--prefer-fleiss", prefer_fleiss,
                          "use Fleiss's kappa even for two raters");
        }
    };

    CLI::App* assess_cmd = app.add_subcommand("assess", "run a full assessment");
    add_common(assess_cmd, true);
    CLI::App* similarity_cmd =
        app.add_subcommand("similarity", "compare measurement conditions");
    add_common(similarity_cmd, false);
    CLI::App* partition_cmd =
        app.add_subcommand("partition", "group experiments by property values");
    add_common(partition_cmd, true);
    partition_cmd->add_option("--by", by_keys, "comma-separated property keys")->required();
    partition_cmd->add_flag("--assess", do_assess, "assess each group (and the remainder)");
    CLI::App* validate_cmd = app.add_subcommand("validate", "check bundle invariants");
    add_common(validate_cmd, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    repro_assess_options options;
    repro_assess_options_init(&options);
    options.mode = mode == "strict" ? REPRO_MODE_STRICT : REPRO_MODE_LENIENT;
    options.confidence_level = confidence;
    options.exclude_tied_pairs = exclude_ties ? 1 : 0;
    options.study_p_average = p_average ? 1 : 0;
    options.prefer_fleiss = prefer_fleiss ? 1 : 0;
    if (!apply_precision(precision, &options)) {
        std::fprintf(stderr, "error: malformed --precision '%s'\n", precision.c_str());
        return 3;
    }
    const int format = parse_format(format_name);

    repro_bundle* raw = nullptr;
    repro_status status = repro_bundle_parse_file(bundle_path.c_str(), &raw);
    if (status != REPRO_OK) return report_failure(status);
    OwnedBundle bundle(raw);

    if (validate_cmd->parsed()) {
        char* findings = nullptr;
        status = repro_bundle_validate(bundle.get(), &findings);
        if (status == REPRO_OK) return 0;
        if (findings != nullptr) {
            std::fputs(findings, stderr);
            repro_string_free(findings);
        }
        return exit_code_for(status);
    }

    if (similarity_cmd->parsed()) {
        char* text = nullptr;
        status = repro_bundle_similarity(bundle.get(), &text);
        if (status != REPRO_OK) return report_failure(status);
        std::fputs(text, stdout);
        repro_string_free(text);
        return 0;
    }

    if (assess_cmd->parsed()) return assess_and_print(bundle.get(), options, format);

    // partition
    repro_partition* partition = nullptr;
    status = repro_bundle_partition(bundle.get(), by_keys.c_str(), &partition);
    if (status != REPRO_OK) return report_failure(status);

    int rc = 0;
    const int count = repro_partition_count(partition);
    for (int i = 0; i < count; ++i) {
        char* label = nullptr;
        repro_partition_label(partition, i, &label);
        OwnedString label_owner(label);
        char* members = nullptr;
        repro_partition_members(partition, i, &members);
        OwnedString members_owner(members);
        if (!do_assess) {
            std::fprintf(stdout, "group %d: %s: %s\n", i + 1, label, members);
            continue;
        }
        if (repro_partition_group_size(partition, i) < 2) continue;
        repro_bundle* group = nullptr;
        repro_partition_bundle(partition, i, &group);
        OwnedBundle group_owner(group);
        std::fprintf(stdout, "== group: %s ==\n", label);
        const int group_rc = assess_and_print(group, options, format);
        if (group_rc != 0 && rc == 0) rc = group_rc;
        std::fputs("\n", stdout);
    }
    if (do_assess) {
        repro_bundle* rest = nullptr;
        if (repro_partition_remainder(partition, 2, &rest) == REPRO_OK) {
            OwnedBundle rest_owner(rest);
            std::fprintf(stdout, "== group: remainder (unmatched key values) ==\n");
            const int rest_rc = assess_and_print(rest, options, format);
            if (rest_rc != 0 && rc == 0) rc = rest_rc;
        }
    }
    repro_partition_free(partition);
    return rc;
}
