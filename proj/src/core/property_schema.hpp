#pragma once

#include <optional>
#include <string>
#include <vector>

namespace reprometry {

// The fixed experiment-property schema: eleven evaluation-agnostic keys and
// eleven human-evaluation keys, plus a free "x." extension namespace
// (e.g. x.random_seed). Enumerated keys constrain their value domain.

enum class PropertyBlock { general, human_eval, extension };

enum class ValueDomain {
    free_text,
    single_choice,  // value must be one of the listed options
    multi_choice,   // comma-separated list, each entry one of the options
};

struct PropertyKeyInfo {
    std::string key;                   // canonical key, e.g. "input_type"
    std::string heds_code;             // "" for the non-HEDS keys
    std::string display_name;
    PropertyBlock block = PropertyBlock::general;
    ValueDomain domain = ValueDomain::free_text;
    std::vector<std::string> options;  // for single_choice / multi_choice
};

// Whole schema in a fixed order (general block first).
const std::vector<PropertyKeyInfo>& property_schema();

// Canonical key for `key` accepting canonical names and HEDS codes
// ("h2.1" -> "input_type"); empty when unknown. Extension keys ("x.foo")
// resolve to themselves.
std::optional<std::string> resolve_property_key(const std::string& key);

const PropertyKeyInfo* property_info(const std::string& canonical_key);

bool is_extension_key(const std::string& key);

// Trims surrounding whitespace and case-folds; property values are compared
// by equality of this form.
std::string normalize_property_value(const std::string& value);

// Empty string when `value` is admissible for `key`, otherwise a message
// naming the expected options. Extension keys admit anything.
std::string check_property_value(const std::string& canonical_key, const std::string& value);

}  // namespace reprometry
