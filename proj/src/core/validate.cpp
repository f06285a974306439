#include "validate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "property_schema.hpp"

namespace reprometry {

namespace {

std::string span_text(const std::optional<Span>& span) {
    if (!span) return "";
    std::ostringstream os;
    os << " " << span->start << ".." << span->end;
    return os.str();
}

}  // namespace

std::vector<ValidationFinding> validate_bundle(const StudyBundle& bundle) {
    std::vector<ValidationFinding> out;
    auto add = [&](const std::string& path, const std::string& msg) {
        out.push_back({path, msg});
    };

    std::set<std::string> declared(bundle.declared_system_set.begin(),
                                   bundle.declared_system_set.end());
    if (bundle.study_id.empty()) add("study", "missing study identifier");

    std::set<std::string> experiment_ids;
    std::map<std::string, int> qc_counts;  // (qc, kind) -> count

    for (const Experiment& exp : bundle.experiments) {
        const std::string at = "experiment " + exp.id;
        if (exp.id.empty()) add("experiment", "missing experiment identifier");
        if (!experiment_ids.insert(exp.id).second)
            add(at, "duplicate experiment identifier");
        if (exp.quality_criterion.empty()) add(at, "missing quality criterion");
        if (exp.properties.empty()) add(at, "empty property sheet (conditions of measurement)");
        qc_counts[exp.quality_criterion + "\x1f" + to_string(exp.kind)]++;

        if (exp.scale_max && !(exp.scale_min < *exp.scale_max))
            add(at, "scale minimum must be below scale maximum");

        // property values against the schema's enumerations
        for (const auto* block : {&exp.properties.general, &exp.properties.human_eval}) {
            for (const auto& [key, value] : *block) {
                std::string msg = check_property_value(key, value);
                if (!msg.empty()) add(at + " / property " + key, msg);
            }
        }

        if (exp.kind == ResultKind::scores) {
            std::set<std::string> scored;
            for (const Measurement& m : exp.measurements) {
                const std::string mp = at + " / score " + m.system;
                if (m.system.empty()) add(at, "measurement with empty system identifier");
                if (m.measurand.empty())
                    add(mp, "measurement with empty measurand");
                else if (m.measurand != exp.quality_criterion)
                    add(mp, "measurand '" + m.measurand + "' differs from experiment quality criterion");
                if (!scored.insert(m.system).second) add(mp, "duplicate system score");
                if (!declared.count(m.system))
                    add(mp, "system not in declared system set");
                const QuantityValue& qv = m.value;
                if (qv.scale_max && !(qv.scale_min < *qv.scale_max))
                    add(mp, "scale minimum must be below scale maximum");
                if (qv.value < qv.scale_min ||
                    (qv.scale_max && qv.value > *qv.scale_max))
                    add(mp, "value outside scale");
            }
            if (exp.measurements.empty()) add(at, "scores experiment without scores");
        } else if (exp.kind == ResultKind::labels) {
            std::set<std::string> labels(exp.label_set.begin(), exp.label_set.end());
            if (exp.label_set.empty()) add(at, "labels experiment without a declared label set");
            for (const AnnotationSet& ann : exp.annotations) {
                const std::string ap = at + " / labels " + ann.system;
                if (!declared.count(ann.system)) add(ap, "system not in declared system set");
                std::set<std::pair<std::string, std::optional<Span>>> seen;
                for (const LabeledItem& item : ann.items) {
                    if (!seen.insert({item.item_id, item.span}).second)
                        add(ap + " / item " + item.item_id + span_text(item.span),
                            "duplicate (item, span) annotation");
                    if (!labels.count(item.label))
                        add(ap + " / item " + item.item_id + span_text(item.span),
                            "label '" + item.label + "' not in declared label set");
                }
            }
            if (exp.annotations.empty()) add(at, "labels experiment without annotations");
        } else {
            if (!exp.findings || exp.findings->signs.empty())
                add(at, "findings experiment without a sign table");
            if (exp.findings) {
                for (const auto& [pair_key, sign] : exp.findings->signs) {
                    const std::string fp = at + " / finding " + pair_key.first + "/" + pair_key.second;
                    if (!declared.count(pair_key.first) || !declared.count(pair_key.second))
                        add(fp, "system not in declared system set");
                    if (sign < -1 || sign > 1) add(fp, "sign outside {-1, 0, +1}");
                    if (pair_key.first >= pair_key.second)
                        add(fp, "pair not in canonical orientation");
                }
            }
        }
    }

    for (const auto& [key, count] : qc_counts) {
        if (count < 2) {
            const std::string qc = key.substr(0, key.find('\x1f'));
            add("quality criterion " + qc,
                "fewer than 2 comparable experiments (" + std::to_string(count) + ")");
        }
    }

    // Deterministic order regardless of traversal above.
    std::sort(out.begin(), out.end(), [](const ValidationFinding& a, const ValidationFinding& b) {
        return std::tie(a.path, a.message) < std::tie(b.path, b.message);
    });
    return out;
}

}  // namespace reprometry
