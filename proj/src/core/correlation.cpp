#include "correlation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "errors.hpp"

namespace reprometry {

std::vector<double> mid_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

double pearson_r(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DomainError("correlation requires equal-length vectors");
    const std::size_t n = x.size();
    if (n < 2) throw DomainError("correlation requires at least 2 points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw DomainError("correlation undefined: zero variance");
    return sxy / std::sqrt(sxx * syy);
}

double spearman_rho(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DomainError("correlation requires equal-length vectors");
    const std::vector<double> rx = mid_ranks(x);
    const std::vector<double> ry = mid_ranks(y);
    return pearson_r(rx, ry);
}

double kendall_tau_b(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DomainError("correlation requires equal-length vectors");
    const std::size_t n = x.size();
    if (n < 2) throw DomainError("correlation requires at least 2 points");
    long long concordant = 0, discordant = 0, tied_x = 0, tied_y = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = x[i] - x[j];
            const double dy = y[i] - y[j];
            if (dx == 0.0 && dy == 0.0) {
                ++tied_x;
                ++tied_y;
            } else if (dx == 0.0) {
                ++tied_x;
            } else if (dy == 0.0) {
                ++tied_y;
            } else if (dx * dy > 0.0) {
                ++concordant;
            } else {
                ++discordant;
            }
        }
    }
    const long long n0 = static_cast<long long>(n) * (n - 1) / 2;
    const double denom =
        std::sqrt(static_cast<double>((n0 - tied_x) * (n0 - tied_y)));
    if (denom == 0.0) throw DomainError("tau-b undefined: all pairs tied");
    return static_cast<double>(concordant - discordant) / denom;
}

double kendall_w(const AlignedScoreMatrix& matrix) {
    const std::size_t n = matrix.scores.size();
    const std::size_t m = matrix.systems.size();
    if (m < 2) throw DomainError("concordance requires at least 2 systems");
    if (n < 2) throw DomainError("concordance requires at least 2 experiments");

    std::vector<double> rank_sums(m, 0.0);
    double tie_term = 0.0;
    for (const auto& row : matrix.scores) {
        const std::vector<double> ranks = mid_ranks(row);
        for (std::size_t j = 0; j < m; ++j) rank_sums[j] += ranks[j];
        std::map<double, int> groups;
        for (double r : ranks) groups[r]++;
        for (const auto& [rank, count] : groups)
            tie_term += static_cast<double>(count) * count * count - count;
    }
    const double mean_sum = static_cast<double>(n) * (m + 1) / 2.0;
    double s = 0.0;
    for (double rs : rank_sums) s += (rs - mean_sum) * (rs - mean_sum);
    const double nn = static_cast<double>(n);
    const double mm = static_cast<double>(m);
    const double denom = nn * nn * (mm * mm * mm - mm) - nn * tie_term;
    if (denom == 0.0) throw DomainError("concordance undefined: all rows fully tied");
    return 12.0 * s / denom;
}

PairwiseMean pairwise_mean(const AlignedScoreMatrix& matrix, PairwiseStat which) {
    const std::size_t n = matrix.scores.size();
    if (n < 2) throw DomainError("pairwise mean requires at least 2 experiments");
    PairwiseMean out{0.0, 0, {}};
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            try {
                const double v = which == PairwiseStat::pearson
                                     ? pearson_r(matrix.scores[i], matrix.scores[j])
                                     : spearman_rho(matrix.scores[i], matrix.scores[j]);
                sum += v;
                out.pairs_used++;
            } catch (const DomainError& e) {
                out.skipped.push_back(matrix.experiments[i] + "/" + matrix.experiments[j] +
                                      ": " + e.what());
            }
        }
    }
    if (out.pairs_used == 0)
        throw DomainError("pairwise mean undefined: statistic undefined for every pair");
    out.value = sum / out.pairs_used;
    return out;
}

}  // namespace reprometry
