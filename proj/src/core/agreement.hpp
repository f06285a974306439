#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "types.hpp"

namespace reprometry {

// Alignment of raw labels across experiments: each experiment acts as one
// rater, each (system, item, span) triple is one unit. Cells may be absent
// when an experiment did not label a unit.
struct LabelGrid {
    struct UnitKey {
        std::string system;
        std::string item_id;
        std::optional<Span> span;
        friend auto operator<=>(const UnitKey&, const UnitKey&) = default;
    };

    std::vector<UnitKey> units;
    std::vector<std::string> raters;  // experiment identifiers
    // units x raters; empty optional = absent cell
    std::vector<std::vector<std::optional<std::string>>> labels;
    std::vector<std::string> label_set;

    // Grid restricted to one system's units.
    LabelGrid for_system(const std::string& system) const;
    bool complete() const;
};

// Two-rater chance-corrected agreement from marginal label distributions.
// Requires a complete 2-rater grid; throws DomainError otherwise or when
// the expected agreement degenerates to 1.
double cohen_kappa(const LabelGrid& grid);

// Multi-rater agreement over per-unit label counts; every unit must carry
// the same number of labels (use kripp_alpha for ragged coverage).
double fleiss_kappa(const LabelGrid& grid);

// Chance-corrected agreement via the coincidence-matrix formulation with a
// nominal distance metric; units with fewer than 2 present labels are
// excluded. Throws DomainError with fewer than 2 pairable values overall or
// when no label variation exists.
double kripp_alpha(const LabelGrid& grid);

// Study-level aggregation: arithmetic mean over QC-level agreement values.
// The result is a point of reference only; callers attach the caveat.
double aggregate_type3(std::span<const double> qc_values);

}  // namespace reprometry
