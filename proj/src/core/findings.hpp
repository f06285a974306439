#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "types.hpp"

namespace reprometry {

// Sign table for one experiment's scores: for every unordered system pair,
// the sign of the score difference under the canonical orientation
// (lexicographically smaller system first). Equal scores yield 0.
PairwiseSignTable sign_table(const std::map<std::string, double>& scores,
                             const std::string& experiment_id = "");

struct PMeasure {
    double p;          // matches / comparisons
    long long matches;
    long long comparisons;
};

struct POptions {
    // When set, (experiment pair, system pair) cells where either sign is 0
    // are dropped from both counts instead of being compared.
    bool exclude_ties = false;
};

// Proportion of identical pairwise system ranks over all unordered pairs of
// experiments and all unordered pairs of systems. Every table must cover the
// same pair set; throws DomainError on incomplete system coverage.
PMeasure p_measure_from_signs(std::span<const PairwiseSignTable> tables,
                              const POptions& opts = {});

// Same, from per-experiment score mappings over a shared system set.
PMeasure p_measure(std::span<const std::map<std::string, double>> experiment_scores,
                   const POptions& opts = {});

// Study-level pooling of per-QC (matches, comparisons): sum of matches over
// sum of comparisons, not a mean of proportions.
double pooled_p(std::span<const std::pair<long long, long long>> per_qc);

}  // namespace reprometry
