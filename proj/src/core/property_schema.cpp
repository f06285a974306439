#include "property_schema.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace reprometry {

namespace {

std::vector<PropertyKeyInfo> build_schema() {
    const std::vector<std::string> io_types = {
        "raw-structured-data", "deep-linguistic-representation",
        "shallow-linguistic-representation", "text-subsentential", "text-sentence",
        "text-multiple-sentences", "text-document", "text-dialogue", "text-other",
        "speech", "visual", "multi-modal", "control-feature", "no-input", "other"};
    const std::vector<std::string> tasks = {
        "content-selection", "content-ordering", "aggregation",
        "referring-expression-generation", "lexicalisation", "deep-generation",
        "surface-realisation", "feature-controlled-text-generation",
        "data-to-text-generation", "dialogue-turn-generation", "question-generation",
        "question-answering", "paraphrasing", "compression", "machine-translation",
        "summarisation", "end-to-end-text-generation", "image-video-description",
        "post-editing-correction", "other"};
    const std::vector<std::string> yes_no_na = {"yes", "no", "n/a"};
    const std::vector<std::string> qa_methods = {
        "native-speakers", "automatic-checks", "manual-checks", "evaluator-exclusion",
        "evaluation-exclusion", "other", "none"};
    const std::vector<std::string> instruments = {
        "multiple-choice", "check-boxes", "slider", "n/a", "other"};
    const std::vector<std::string> elicitation = {
        "agreement-with-quality-statement", "direct-quality-estimation",
        "relative-quality-estimation", "counting-occurrences", "qualitative-feedback",
        "post-editing-annotation", "output-classification", "user-text-interaction",
        "task-performance", "user-system-interaction", "other"};

    using B = PropertyBlock;
    using D = ValueDomain;
    std::vector<PropertyKeyInfo> s;
    s.push_back({"test_dataset", "", "Test dataset", B::general, D::free_text, {}});
    s.push_back({"metric", "", "Metric", B::general, D::free_text, {}});
    s.push_back({"metric_implementation", "", "Metric implementation", B::general, D::free_text, {}});
    s.push_back({"run_time_environment", "", "Run-time environment", B::general, D::free_text, {}});
    s.push_back({"input_type", "h2.1", "Input type", B::general, D::multi_choice, io_types});
    s.push_back({"output_type", "h2.2", "Output type", B::general, D::multi_choice, io_types});
    s.push_back({"task", "h2.3", "Task", B::general, D::multi_choice, tasks});
    s.push_back({"total_evaluated_items", "h3.1.1", "Total evaluated items", B::general, D::free_text, {}});
    s.push_back({"objective_vs_subjective", "h4.2.1", "Objective vs. subjective evaluation mode",
                 B::general, D::single_choice, {"objective", "subjective"}});
    s.push_back({"absolute_vs_relative", "h4.2.2", "Absolute vs. relative evaluation mode",
                 B::general, D::single_choice, {"absolute", "relative"}});
    s.push_back({"intrinsic_vs_extrinsic", "h4.2.3", "Intrinsic vs. extrinsic evaluation mode",
                 B::general, D::single_choice, {"intrinsic", "extrinsic"}});

    s.push_back({"number_of_evaluators", "h3.2.1", "Number of evaluators", B::human_eval, D::free_text, {}});
    s.push_back({"evaluator_domain_expertise", "h3.2.2.1", "Evaluator domain expertise",
                 B::human_eval, D::single_choice, yes_no_na});
    s.push_back({"authors_among_evaluators", "h3.2.2.4", "Authors among evaluators",
                 B::human_eval, D::single_choice, yes_no_na});
    s.push_back({"evaluator_training", "h3.2.4", "Evaluator training/practice", B::human_eval, D::free_text, {}});
    s.push_back({"evaluator_type", "h3.2.5", "Evaluator type", B::human_eval, D::free_text, {}});
    s.push_back({"response_collection_tool", "h3.3.2", "Response collection tool/platform",
                 B::human_eval, D::free_text, {}});
    s.push_back({"quality_assurance_methods", "h3.3.3.1", "Quality assurance methods",
                 B::human_eval, D::multi_choice, qa_methods});
    s.push_back({"standardised_quality_criterion", "h4.3.1.2", "Standardised quality criterion",
                 B::human_eval, D::free_text, {}});
    s.push_back({"rating_instrument_type", "h4.3.5", "Rating instrument type",
                 B::human_eval, D::single_choice, instruments});
    s.push_back({"verbatim_prompt", "h4.3.7", "Verbatim instrument question or prompt",
                 B::human_eval, D::free_text, {}});
    s.push_back({"response_elicitation_form", "h4.3.8", "Form of response elicitation",
                 B::human_eval, D::single_choice, elicitation});
    return s;
}

std::string fold(const std::string& in) {
    size_t b = 0, e = in.size();
    while (b < e && std::isspace(static_cast<unsigned char>(in[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(in[e - 1]))) --e;
    std::string out = in.substr(b, e - b);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

const std::vector<PropertyKeyInfo>& property_schema() {
    static const std::vector<PropertyKeyInfo> schema = build_schema();
    return schema;
}

std::optional<std::string> resolve_property_key(const std::string& key) {
    static const std::map<std::string, std::string> lookup = [] {
        std::map<std::string, std::string> m;
        for (const auto& info : property_schema()) {
            m[info.key] = info.key;
            if (!info.heds_code.empty()) m[info.heds_code] = info.key;
        }
        return m;
    }();
    std::string k = fold(key);
    if (is_extension_key(k)) return k;
    if (auto it = lookup.find(k); it != lookup.end()) return it->second;
    return std::nullopt;
}

const PropertyKeyInfo* property_info(const std::string& canonical_key) {
    for (const auto& info : property_schema())
        if (info.key == canonical_key) return &info;
    return nullptr;
}

bool is_extension_key(const std::string& key) {
    return key.size() > 2 && key.rfind("x.", 0) == 0;
}

std::string normalize_property_value(const std::string& value) { return fold(value); }

std::string check_property_value(const std::string& canonical_key, const std::string& value) {
    const PropertyKeyInfo* info = property_info(canonical_key);
    if (info == nullptr || info->domain == ValueDomain::free_text) return "";
    auto admissible = [&](const std::string& v) {
        return std::find(info->options.begin(), info->options.end(), v) != info->options.end();
    };
    if (info->domain == ValueDomain::single_choice) {
        if (admissible(normalize_property_value(value))) return "";
    } else {
        std::stringstream ss(value);
        std::string part;
        bool all_ok = true, any = false;
        while (std::getline(ss, part, ',')) {
            any = true;
            if (!admissible(normalize_property_value(part))) all_ok = false;
        }
        if (any && all_ok) return "";
    }
    std::string msg = "value '" + value + "' not admissible for " + canonical_key + " (expected";
    for (const auto& o : info->options) msg += " '" + o + "'";
    return msg + ")";
}

}  // namespace reprometry
