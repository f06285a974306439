#include "agreement.hpp"

#include <algorithm>
#include <map>

#include "errors.hpp"

namespace reprometry {

LabelGrid LabelGrid::for_system(const std::string& system) const {
    LabelGrid out;
    out.raters = raters;
    out.label_set = label_set;
    for (std::size_t u = 0; u < units.size(); ++u) {
        if (units[u].system != system) continue;
        out.units.push_back(units[u]);
        out.labels.push_back(labels[u]);
    }
    return out;
}

bool LabelGrid::complete() const {
    for (const auto& row : labels)
        for (const auto& cell : row)
            if (!cell) return false;
    return true;
}

double cohen_kappa(const LabelGrid& grid) {
    if (grid.raters.size() != 2)
        throw DomainError("Cohen's kappa requires exactly 2 raters");
    if (!grid.complete())
        throw DomainError("Cohen's kappa requires complete alignment");
    const std::size_t n = grid.units.size();
    if (n == 0) throw DomainError("Cohen's kappa requires at least one unit");

    std::map<std::string, double> marg_a, marg_b;
    double observed = 0.0;
    for (const auto& row : grid.labels) {
        const std::string& a = *row[0];
        const std::string& b = *row[1];
        marg_a[a] += 1.0;
        marg_b[b] += 1.0;
        if (a == b) observed += 1.0;
    }
    const double p_o = observed / static_cast<double>(n);
    double p_e = 0.0;
    for (const auto& [label, count_a] : marg_a) {
        auto it = marg_b.find(label);
        if (it != marg_b.end())
            p_e += (count_a / n) * (it->second / n);
    }
    if (p_e == 1.0) throw DomainError("kappa undefined: degenerate marginals");
    return (p_o - p_e) / (1.0 - p_e);
}

double fleiss_kappa(const LabelGrid& grid) {
    if (grid.raters.size() < 2)
        throw DomainError("Fleiss's kappa requires at least 2 raters");
    const std::size_t n_units = grid.units.size();
    if (n_units == 0) throw DomainError("Fleiss's kappa requires at least one unit");

    // per-unit category counts; coverage must be rectangular
    std::size_t per_unit = 0;
    std::vector<std::map<std::string, int>> counts(n_units);
    for (std::size_t u = 0; u < n_units; ++u) {
        std::size_t present = 0;
        for (const auto& cell : grid.labels[u]) {
            if (!cell) continue;
            counts[u][*cell]++;
            ++present;
        }
        if (u == 0) per_unit = present;
        if (present != per_unit || present < 2)
            throw DomainError(
                "Fleiss's kappa requires every unit labelled by the same number of "
                "raters; use Krippendorff's alpha for ragged coverage");
    }

    const double r = static_cast<double>(per_unit);
    double p_bar = 0.0;
    std::map<std::string, double> totals;
    for (const auto& unit_counts : counts) {
        double sum_sq = 0.0;
        for (const auto& [label, c] : unit_counts) {
            sum_sq += static_cast<double>(c) * c;
            totals[label] += c;
        }
        p_bar += (sum_sq - r) / (r * (r - 1.0));
    }
    p_bar /= static_cast<double>(n_units);
    double p_e = 0.0;
    const double grand = r * static_cast<double>(n_units);
    for (const auto& [label, total] : totals) {
        const double p = total / grand;
        p_e += p * p;
    }
    if (p_e == 1.0) throw DomainError("kappa undefined: degenerate marginals");
    return (p_bar - p_e) / (1.0 - p_e);
}

double kripp_alpha(const LabelGrid& grid) {
    // coincidence matrix over pairable values
    std::map<std::string, std::size_t> cat_index;
    for (const auto& row : grid.labels)
        for (const auto& cell : row)
            if (cell && !cat_index.count(*cell))
                cat_index.emplace(*cell, cat_index.size());
    const std::size_t k = cat_index.size();
    if (k == 0) throw DomainError("alpha undefined: no labels present");

    std::vector<std::vector<double>> coincidence(k, std::vector<double>(k, 0.0));
    for (const auto& row : grid.labels) {
        std::vector<std::size_t> present;
        for (const auto& cell : row)
            if (cell) present.push_back(cat_index.at(*cell));
        const std::size_t m_u = present.size();
        if (m_u < 2) continue;  // unpairable unit, excluded
        const double w = 1.0 / static_cast<double>(m_u - 1);
        for (std::size_t i = 0; i < m_u; ++i)
            for (std::size_t j = 0; j < m_u; ++j)
                if (i != j) coincidence[present[i]][present[j]] += w;
    }

    double n_total = 0.0;
    std::vector<double> n_cat(k, 0.0);
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t d = 0; d < k; ++d) {
            n_cat[c] += coincidence[c][d];
            n_total += coincidence[c][d];
        }
    if (n_total < 2.0) throw DomainError("alpha undefined: fewer than 2 pairable values");

    // nominal metric: disagreement weight 1 for c != d
    double d_o = 0.0, d_e = 0.0;
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t d = 0; d < k; ++d)
            if (c != d) {
                d_o += coincidence[c][d];
                d_e += n_cat[c] * n_cat[d];
            }
    d_o /= n_total;
    d_e /= n_total * (n_total - 1.0);
    if (d_e == 0.0) throw DomainError("alpha undefined: no label variation");
    return 1.0 - d_o / d_e;
}

double aggregate_type3(std::span<const double> qc_values) {
    if (qc_values.empty())
        throw DomainError("study-level agreement requires at least one QC-level value");
    double sum = 0.0;
    for (double v : qc_values) sum += v;
    return sum / static_cast<double>(qc_values.size());
}

}  // namespace reprometry
