#pragma once

#include <span>
#include <string>
#include <vector>

#include "types.hpp"

namespace reprometry {

// Per-key comparison of measurement conditions across >= 2 experiments.
// Every key present in any sheet lands in exactly one of the three lists.
struct SimilarityProfile {
    struct Difference {
        std::string key;
        // (experiment id, normalized value) in experiment order
        std::vector<std::pair<std::string, std::string>> values;
    };
    std::vector<std::string> same;        // equal (normalized) in all sheets
    std::vector<Difference> different;    // present everywhere, values differ
    std::vector<std::string> coverage;    // absent from at least one sheet
};

SimilarityProfile similarity_profile(std::span<const PropertySheet> sheets,
                                     std::span<const std::string> experiment_ids);

enum class GateMode { strict, lenient };

struct GateDecision {
    bool comparable;
    std::vector<std::string> reasons;  // strict refusal: differing keys
    std::vector<std::string> caveats;  // lenient: expectation-lowering notes
};

// Strict mode admits only profiles with no differing keys; lenient mode
// always admits but turns each differing key into a caveat (differences in
// outcomes are then expected rather than a reproducibility problem).
GateDecision gate(const SimilarityProfile& profile, GateMode mode);

struct PartitionGroup {
    std::vector<std::pair<std::string, std::string>> key_values;  // key -> shared value
    StudyBundle bundle;  // sub-bundle holding just this group's experiments
};

// Groups a bundle's experiments by the tuple of normalized values they carry
// on `keys` (schema keys or x.* extensions). Groups are ordered by value
// tuple; experiments keep their bundle order within a group.
std::vector<PartitionGroup> partition(const StudyBundle& bundle,
                                      std::span<const std::string> keys);

}  // namespace reprometry
