#include "similarity.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "errors.hpp"
#include "property_schema.hpp"

namespace reprometry {

SimilarityProfile similarity_profile(std::span<const PropertySheet> sheets,
                                     std::span<const std::string> experiment_ids) {
    if (sheets.size() < 2)
        throw DomainError("similarity profile requires at least 2 property sheets");

    std::set<std::string> all_keys;
    for (const PropertySheet& sheet : sheets)
        for (const auto* block : {&sheet.general, &sheet.human_eval, &sheet.extensions})
            for (const auto& [key, value] : *block) {
                (void)value;
                all_keys.insert(key);
            }

    SimilarityProfile profile;
    for (const std::string& key : all_keys) {
        bool everywhere = true;
        std::vector<std::pair<std::string, std::string>> values;
        std::set<std::string> distinct;
        for (std::size_t i = 0; i < sheets.size(); ++i) {
            auto v = sheets[i].get(key);
            if (!v) {
                everywhere = false;
                continue;
            }
            const std::string norm = normalize_property_value(*v);
            distinct.insert(norm);
            values.emplace_back(i < experiment_ids.size() ? experiment_ids[i]
                                                          : std::to_string(i),
                                norm);
        }
        if (!everywhere)
            profile.coverage.push_back(key);
        else if (distinct.size() <= 1)
            profile.same.push_back(key);
        else
            profile.different.push_back({key, std::move(values)});
    }
    return profile;
}

GateDecision gate(const SimilarityProfile& profile, GateMode mode) {
    GateDecision decision;
    if (mode == GateMode::strict) {
        decision.comparable = profile.different.empty();
        for (const auto& diff : profile.different)
            decision.reasons.push_back("property '" + diff.key +
                                       "' differs across experiments");
    } else {
        decision.comparable = true;
        for (const auto& diff : profile.different)
            decision.caveats.push_back("property '" + diff.key +
                                       "' differs: differences in outcomes are expected");
    }
    return decision;
}

std::vector<PartitionGroup> partition(const StudyBundle& bundle,
                                      std::span<const std::string> keys) {
    std::vector<std::string> canonical;
    for (const std::string& key : keys) {
        auto resolved = resolve_property_key(key);
        if (!resolved)
            throw DomainError("unknown partition key '" + key +
                              "' (not in the property schema or x.* extensions)");
        canonical.push_back(*resolved);
    }

    std::map<std::vector<std::string>, std::vector<const Experiment*>> groups;
    for (const Experiment& exp : bundle.experiments) {
        std::vector<std::string> tuple;
        for (const std::string& key : canonical) {
            auto v = exp.properties.get(key);
            tuple.push_back(v ? normalize_property_value(*v) : "");
        }
        groups[tuple].push_back(&exp);
    }

    std::vector<PartitionGroup> out;
    int index = 0;
    for (const auto& [tuple, members] : groups) {
        PartitionGroup group;
        for (std::size_t i = 0; i < canonical.size(); ++i)
            group.key_values.emplace_back(canonical[i], tuple[i]);
        group.bundle.study_id = bundle.study_id + "/group-" + std::to_string(++index);
        group.bundle.declared_system_set = bundle.declared_system_set;
        for (const Experiment* exp : members) group.bundle.experiments.push_back(*exp);
        out.push_back(std::move(group));
    }
    return out;
}

}  // namespace reprometry
