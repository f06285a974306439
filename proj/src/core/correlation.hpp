#pragma once

#include <span>
#include <string>
#include <vector>

#include "types.hpp"

namespace reprometry {

// Fully populated experiments x systems score matrix; rows are experiments.
struct AlignedScoreMatrix {
    std::vector<std::string> systems;      // size m >= 2
    std::vector<std::string> experiments;  // size n >= 2
    std::vector<std::vector<double>> scores;  // n rows of m scores

    double at(std::size_t experiment, std::size_t system) const {
        return scores[experiment][system];
    }
};

// Mid-rank ("fractional rank") transform; ties share the average of the
// positions they occupy. Ranks are 1-based.
std::vector<double> mid_ranks(std::span<const double> values);

// Product-moment correlation. Throws DomainError when either vector has
// zero variance ("correlation undefined").
double pearson_r(std::span<const double> x, std::span<const double> y);

// Pearson over mid-rank transforms.
double spearman_rho(std::span<const double> x, std::span<const double> y);

// Tie-corrected Kendall correlation:
// (C - D) / sqrt((n0 - n1)(n0 - n2)), with n1/n2 the pair counts tied in
// x/y. Throws DomainError when all pairs are tied in either vector.
double kendall_tau_b(std::span<const double> x, std::span<const double> y);

// Coefficient of concordance over mid-ranked rows with the standard tie
// correction: W = 12 S / (n^2 (m^3 - m) - n T).
double kendall_w(const AlignedScoreMatrix& matrix);

enum class PairwiseStat { pearson, spearman };

struct PairwiseMean {
    double value;
    int pairs_used;
    std::vector<std::string> skipped;  // "exp-a/exp-b: <reason>" per undefined pair
};

// Arithmetic mean of the statistic over all unordered experiment-row pairs,
// in a fixed row order. Pairs with an undefined statistic are excluded and
// reported; throws DomainError when every pair is undefined.
PairwiseMean pairwise_mean(const AlignedScoreMatrix& matrix, PairwiseStat which);

}  // namespace reprometry
