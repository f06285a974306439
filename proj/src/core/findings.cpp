#include "findings.hpp"

#include <algorithm>

#include "errors.hpp"

namespace reprometry {

PairwiseSignTable sign_table(const std::map<std::string, double>& scores,
                             const std::string& experiment_id) {
    if (scores.size() < 2)
        throw DomainError("sign table requires at least 2 scored systems");
    PairwiseSignTable table;
    table.experiment = experiment_id;
    for (auto it = scores.begin(); it != scores.end(); ++it) {
        for (auto jt = std::next(it); jt != scores.end(); ++jt) {
            const double diff = it->second - jt->second;  // it->first < jt->first
            const int sign = diff > 0.0 ? 1 : (diff < 0.0 ? -1 : 0);
            table.signs.emplace(std::make_pair(it->first, jt->first), sign);
        }
    }
    return table;
}

PMeasure p_measure_from_signs(std::span<const PairwiseSignTable> tables,
                              const POptions& opts) {
    if (tables.size() < 2)
        throw DomainError("P requires at least 2 comparable experiments");
    const auto& reference = tables.front().signs;
    if (reference.empty()) throw DomainError("P requires at least one system pair");
    for (const auto& t : tables) {
        if (t.signs.size() != reference.size())
            throw DomainError("incomplete system coverage: experiment '" + t.experiment +
                              "' covers a different system-pair set");
        for (const auto& [pair_key, sign] : reference) {
            (void)sign;
            if (!t.signs.count(pair_key))
                throw DomainError("incomplete system coverage: experiment '" + t.experiment +
                                  "' misses pair " + pair_key.first + "/" + pair_key.second);
        }
    }

    long long matches = 0, comparisons = 0;
    for (std::size_t i = 0; i < tables.size(); ++i) {
        for (std::size_t j = i + 1; j < tables.size(); ++j) {
            for (const auto& [pair_key, sign_i] : tables[i].signs) {
                const int sign_j = tables[j].signs.at(pair_key);
                if (opts.exclude_ties && (sign_i == 0 || sign_j == 0)) continue;
                ++comparisons;
                if (sign_i == sign_j) ++matches;
            }
        }
    }
    if (comparisons == 0)
        throw DomainError("P undefined: no comparable sign pairs");
    return {static_cast<double>(matches) / static_cast<double>(comparisons), matches,
            comparisons};
}

PMeasure p_measure(std::span<const std::map<std::string, double>> experiment_scores,
                   const POptions& opts) {
    if (experiment_scores.size() < 2)
        throw DomainError("P requires at least 2 comparable experiments");
    // every experiment must score the same system set
    const auto& first = experiment_scores.front();
    for (const auto& scores : experiment_scores) {
        if (scores.size() != first.size())
            throw DomainError("incomplete system coverage across experiments");
        for (const auto& [system, v] : first) {
            (void)v;
            if (!scores.count(system))
                throw DomainError("incomplete system coverage: missing system '" + system + "'");
        }
    }
    std::vector<PairwiseSignTable> tables;
    tables.reserve(experiment_scores.size());
    for (const auto& scores : experiment_scores) tables.push_back(sign_table(scores));
    return p_measure_from_signs(tables, opts);
}

double pooled_p(std::span<const std::pair<long long, long long>> per_qc) {
    if (per_qc.empty()) throw DomainError("pooled P requires at least one QC entry");
    long long matches = 0, comparisons = 0;
    for (const auto& [m, c] : per_qc) {
        matches += m;
        comparisons += c;
    }
    if (comparisons == 0) throw DomainError("pooled P undefined: zero comparisons");
    return static_cast<double>(matches) / static_cast<double>(comparisons);
}

}  // namespace reprometry
