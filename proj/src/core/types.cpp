#include "types.hpp"

#include "errors.hpp"

namespace reprometry {

std::optional<std::string> PropertySheet::get(const std::string& key) const {
    if (auto it = general.find(key); it != general.end()) return it->second;
    if (auto it = human_eval.find(key); it != human_eval.end()) return it->second;
    if (auto it = extensions.find(key); it != extensions.end()) return it->second;
    return std::nullopt;
}

const char* to_string(ResultKind kind) {
    switch (kind) {
        case ResultKind::scores: return "scores";
        case ResultKind::labels: return "labels";
        case ResultKind::findings: return "findings";
    }
    return "?";
}

const char* to_string(Measure m) {
    switch (m) {
        case Measure::cv_star: return "cv_star";
        case Measure::pearson_r: return "pearson_r";
        case Measure::spearman_rho: return "spearman_rho";
        case Measure::kendall_tau_b: return "kendall_tau_b";
        case Measure::kendall_w: return "kendall_w";
        case Measure::cohen_kappa: return "cohen_kappa";
        case Measure::fleiss_kappa: return "fleiss_kappa";
        case Measure::kripp_alpha: return "kripp_alpha";
        case Measure::p_measure: return "p_measure";
    }
    return "?";
}

const char* to_string(Level l) {
    switch (l) {
        case Level::system: return "system";
        case Level::qc: return "qc";
        case Level::study: return "study";
    }
    return "?";
}

bool measure_level_allowed(Measure m, Level l) {
    switch (m) {
        case Measure::cv_star:
        case Measure::cohen_kappa:
        case Measure::fleiss_kappa:
        case Measure::kripp_alpha:
            return true;
        case Measure::pearson_r:
        case Measure::spearman_rho:
        case Measure::kendall_tau_b:
        case Measure::kendall_w:
            return l == Level::qc;
        case Measure::p_measure:
            return l == Level::qc || l == Level::study;
    }
    return false;
}

bool measure_level_native(Measure m, Level l) {
    if (!measure_level_allowed(m, l)) return false;
    switch (m) {
        case Measure::cv_star:
            return l == Level::system;
        case Measure::pearson_r:
        case Measure::spearman_rho:
        case Measure::kendall_tau_b:
        case Measure::kendall_w:
        case Measure::cohen_kappa:
        case Measure::fleiss_kappa:
        case Measure::kripp_alpha:
            return l == Level::qc;
        case Measure::p_measure:
            return l == Level::study;
    }
    return false;
}

MeasureResult make_result(Measure m, Level l, double value, std::vector<std::string> scope) {
    if (!measure_level_allowed(m, l))
        throw DomainError(std::string(to_string(m)) + " does not apply at the " +
                          to_string(l) + " level");
    MeasureResult r;
    r.measure = m;
    r.level = l;
    r.native = measure_level_native(m, l);
    r.value = value;
    r.scope = std::move(scope);
    return r;
}

std::string digest(const std::string& canonical_inputs) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : canonical_inputs) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* hexd = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hexd[h & 0xF];
        h >>= 4;
    }
    return out;
}

}  // namespace reprometry
