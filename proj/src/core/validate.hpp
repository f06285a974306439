#pragma once

#include <vector>

#include "types.hpp"

namespace reprometry {

// Structural validation of a study bundle. Returns one finding per invariant
// violation; an empty list means the bundle is well formed. Pure: never
// mutates the bundle, and the finding multiset is invariant under permuting
// experiments or measurements (paths use identifiers, not positions).
std::vector<ValidationFinding> validate_bundle(const StudyBundle& bundle);

}  // namespace reprometry
