#include "assess.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "agreement.hpp"
#include "bundle_format.hpp"
#include "correlation.hpp"
#include "findings.hpp"
#include "precision.hpp"
#include "property_schema.hpp"

namespace reprometry {

namespace {

std::string join_findings(const std::vector<ValidationFinding>& findings) {
    std::ostringstream os;
    os << "bundle failed validation (" << findings.size() << " finding"
       << (findings.size() == 1 ? "" : "s") << ")";
    for (const auto& f : findings) os << "\n  " << f.path << ": " << f.message;
    return os.str();
}

// Canonical "key=value,..." string feeding the provenance digest.
template <typename Range>
std::string digest_of(const std::string& tag, const Range& parts) {
    std::ostringstream os;
    os << tag;
    for (const auto& p : parts) os << "|" << p;
    return digest(os.str());
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// Advisory interpretation band for CV*; never pass/fail logic.
void attach_cv_band_caveat(MeasureResult& result, const PropertySheet& sheet) {
    auto mode = sheet.get("objective_vs_subjective");
    const bool metric = mode && normalize_property_value(*mode) == "objective";
    const double band = metric ? 1.0 : 12.0;
    std::ostringstream os;
    os << "advisory: CV* below " << (metric ? "1" : "12") << " indicates good "
       << (metric ? "metric" : "human") << "-evaluation reproducibility; value is "
       << (result.value < band ? "within" : "above") << " that band";
    result.caveats.push_back(os.str());
}

SimilarityProfile merge_profiles(const std::vector<const SimilarityProfile*>& profiles) {
    // A key differing inside any comparable group dominates; coverage gaps
    // come next; only keys equal within every group count as same.
    std::map<std::string, SimilarityProfile::Difference> different;
    std::set<std::string> coverage, same;
    for (const SimilarityProfile* p : profiles) {
        for (const auto& d : p->different) {
            auto& slot = different[d.key];
            slot.key = d.key;
            slot.values.insert(slot.values.end(), d.values.begin(), d.values.end());
        }
        for (const auto& k : p->coverage) coverage.insert(k);
        for (const auto& k : p->same) same.insert(k);
    }
    SimilarityProfile merged;
    for (auto& [key, diff] : different) merged.different.push_back(diff);
    for (const auto& k : coverage)
        if (!different.count(k)) merged.coverage.push_back(k);
    for (const auto& k : same)
        if (!different.count(k) && !coverage.count(k)) merged.same.push_back(k);
    return merged;
}

}  // namespace

ValidationFailure::ValidationFailure(std::vector<ValidationFinding> found)
    : Error(join_findings(found)), findings(std::move(found)) {}

GateRefusal::GateRefusal(std::string message, SimilarityProfile prof)
    : Error(std::move(message)), profile(std::move(prof)) {}

std::vector<QcGroup> group_by_qc(const StudyBundle& bundle) {
    std::vector<QcGroup> groups;
    for (const Experiment& exp : bundle.experiments) {
        auto it = std::find_if(groups.begin(), groups.end(), [&](const QcGroup& g) {
            return g.qc == exp.quality_criterion && g.kind == exp.kind;
        });
        if (it == groups.end()) {
            groups.push_back({exp.quality_criterion, exp.kind, {&exp}});
        } else {
            it->experiments.push_back(&exp);
        }
    }
    return groups;
}

double level_mean(std::span<const double> values) {
    if (values.empty()) throw DomainError("mean of an empty value set");
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

Type1Outcome assess_type1(const QcGroup& group, const AssessOptions& opts) {
    Type1Outcome out;
    if (group.experiments.size() < 2)
        throw DomainError("Type I assessment requires at least 2 experiments");

    // declared-system order = order of first appearance across the group
    std::vector<std::string> systems;
    for (const Experiment* exp : group.experiments)
        for (const Measurement& m : exp->measurements)
            if (std::find(systems.begin(), systems.end(), m.system) == systems.end())
                systems.push_back(m.system);

    for (const std::string& system : systems) {
        std::vector<double> shifted;
        std::vector<std::string> digest_parts;
        for (const Experiment* exp : group.experiments) {
            for (const Measurement& m : exp->measurements) {
                if (m.system != system) continue;
                const std::vector<double> one =
                    shift_to_zero({&m.value.value, 1}, m.value.scale_min);
                shifted.push_back(one[0]);
                digest_parts.push_back(exp->id + "=" + num(one[0]));
            }
        }
        if (shifted.size() < 2) {
            out.caveats.push_back("system '" + system +
                                  "' skipped: fewer than 2 scores across experiments");
            continue;
        }
        try {
            CvOptions cv_opts;
            cv_opts.confidence_level = opts.confidence_level;
            const PrecisionStats st = cv_star(shifted, cv_opts);
            MeasureResult r = make_result(Measure::cv_star, Level::system, st.cv_star,
                                          {group.qc, system});
            r.detail = {{"n", static_cast<double>(st.n)}, {"mean", st.mean},
                        {"s", st.s},        {"s_star", st.s_star},
                        {"ci_low", st.ci_low}, {"ci_high", st.ci_high},
                        {"confidence_level", st.confidence_level}};
            r.inputs_digest = digest_of("cv_star|" + group.qc + "|" + system, digest_parts);
            if (st.degenerate_ci) r.caveats.push_back("degenerate zero-variance CI");
            attach_cv_band_caveat(r, group.experiments.front()->properties);
            out.system_values.push_back(st.cv_star);
            out.system_level.push_back({system, {std::move(r)}});
        } catch (const DomainError& e) {
            out.caveats.push_back("system '" + system + "' skipped: " + std::string(e.what()));
        }
    }

    if (!out.system_values.empty()) {
        MeasureResult qc = make_result(Measure::cv_star, Level::qc,
                                       level_mean(out.system_values), {group.qc});
        qc.detail = {{"systems", static_cast<double>(out.system_values.size())},
                     {"n", static_cast<double>(group.experiments.size())}};
        std::vector<std::string> parts;
        for (double v : out.system_values) parts.push_back(num(v));
        qc.inputs_digest = digest_of("cv_star_mean|" + group.qc, parts);
        qc.caveats = out.caveats;
        out.qc_level = std::move(qc);
    }
    return out;
}

namespace {

AlignedScoreMatrix build_matrix(const QcGroup& group) {
    AlignedScoreMatrix matrix;
    for (const Experiment* exp : group.experiments) {
        matrix.experiments.push_back(exp->id);
        for (const Measurement& m : exp->measurements)
            if (std::find(matrix.systems.begin(), matrix.systems.end(), m.system) ==
                matrix.systems.end())
                matrix.systems.push_back(m.system);
    }
    std::vector<std::string> missing;
    for (const Experiment* exp : group.experiments) {
        std::vector<double> row;
        for (const std::string& system : matrix.systems) {
            auto it = std::find_if(exp->measurements.begin(), exp->measurements.end(),
                                   [&](const Measurement& m) { return m.system == system; });
            if (it == exp->measurements.end()) {
                missing.push_back("(" + exp->id + ", " + system + ")");
                row.push_back(0.0);
            } else {
                row.push_back(it->value.value);
            }
        }
        matrix.scores.push_back(std::move(row));
    }
    if (!missing.empty()) {
        std::string msg = "incomplete score matrix; missing cells:";
        for (const auto& cell : missing) msg += " " + cell;
        throw DomainError(msg);
    }
    if (matrix.systems.size() < 2)
        throw DomainError("Type II assessment requires at least 2 systems");
    return matrix;
}

std::string matrix_digest(const char* tag, const AlignedScoreMatrix& m, const std::string& qc) {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < m.scores.size(); ++i)
        for (std::size_t j = 0; j < m.systems.size(); ++j)
            parts.push_back(m.experiments[i] + ":" + m.systems[j] + "=" + num(m.at(i, j)));
    return digest_of(std::string(tag) + "|" + qc, parts);
}

}  // namespace

std::vector<MeasureResult> assess_type2(const QcGroup& group,
                                        std::vector<std::string>& caveats) {
    const AlignedScoreMatrix matrix = build_matrix(group);
    const std::size_t n = matrix.scores.size();
    std::vector<MeasureResult> results;

    auto emit = [&](Measure measure, double value, std::vector<std::string> extra_caveats,
                    bool mean_pairwise) {
        MeasureResult r = make_result(measure, Level::qc, value, {group.qc});
        r.detail = {{"n", static_cast<double>(n)},
                    {"systems", static_cast<double>(matrix.systems.size())}};
        if (mean_pairwise) r.detail["mean_pairwise"] = 1.0;
        r.inputs_digest = matrix_digest(to_string(measure), matrix, group.qc);
        r.caveats = std::move(extra_caveats);
        results.push_back(std::move(r));
    };

    if (n == 2) {
        struct Stat {
            Measure measure;
            double (*fn)(std::span<const double>, std::span<const double>);
        };
        const Stat stats[] = {{Measure::pearson_r, pearson_r},
                              {Measure::spearman_rho, spearman_rho},
                              {Measure::kendall_tau_b, kendall_tau_b}};
        for (const Stat& st : stats) {
            try {
                emit(st.measure, st.fn(matrix.scores[0], matrix.scores[1]), {}, false);
            } catch (const DomainError& e) {
                caveats.push_back(std::string(to_string(st.measure)) + ": " + e.what());
            }
        }
    } else {
        for (auto which : {PairwiseStat::pearson, PairwiseStat::spearman}) {
            const Measure measure =
                which == PairwiseStat::pearson ? Measure::pearson_r : Measure::spearman_rho;
            try {
                const PairwiseMean pm = pairwise_mean(matrix, which);
                std::vector<std::string> extra;
                for (const auto& skip : pm.skipped)
                    extra.push_back("pair excluded from mean: " + skip);
                emit(measure, pm.value, std::move(extra), true);
            } catch (const DomainError& e) {
                caveats.push_back(std::string(to_string(measure)) + ": " + e.what());
            }
        }
        try {
            emit(Measure::kendall_w, kendall_w(matrix), {}, false);
        } catch (const DomainError& e) {
            caveats.push_back(std::string("kendall_w: ") + e.what());
        }
    }
    return results;
}

namespace {

LabelGrid build_grid(const QcGroup& group, std::vector<std::string>* caveats) {
    LabelGrid grid;
    std::set<LabelGrid::UnitKey> unit_keys;
    std::set<std::string> label_sets_seen;
    for (const Experiment* exp : group.experiments) {
        grid.raters.push_back(exp->id);
        std::string ls;
        for (const std::string& label : exp->label_set) {
            ls += label + ",";
            if (std::find(grid.label_set.begin(), grid.label_set.end(), label) ==
                grid.label_set.end())
                grid.label_set.push_back(label);
        }
        label_sets_seen.insert(ls);
        for (const AnnotationSet& ann : exp->annotations)
            for (const LabeledItem& item : ann.items)
                unit_keys.insert({ann.system, item.item_id, item.span});
    }
    if (label_sets_seen.size() > 1 && caveats)
        caveats->push_back("declared label sets differ across experiments; union used");

    grid.units.assign(unit_keys.begin(), unit_keys.end());
    grid.labels.assign(grid.units.size(),
                       std::vector<std::optional<std::string>>(grid.raters.size()));
    for (std::size_t e = 0; e < group.experiments.size(); ++e) {
        for (const AnnotationSet& ann : group.experiments[e]->annotations) {
            for (const LabeledItem& item : ann.items) {
                const LabelGrid::UnitKey key{ann.system, item.item_id, item.span};
                const auto it = std::lower_bound(grid.units.begin(), grid.units.end(), key);
                grid.labels[static_cast<std::size_t>(it - grid.units.begin())][e] = item.label;
            }
        }
    }
    return grid;
}

std::string grid_digest(const char* tag, const LabelGrid& grid, const std::string& scope) {
    std::vector<std::string> parts;
    for (std::size_t u = 0; u < grid.units.size(); ++u)
        for (std::size_t r = 0; r < grid.raters.size(); ++r)
            if (grid.labels[u][r])
                parts.push_back(grid.units[u].system + ":" + grid.units[u].item_id + ":" +
                                grid.raters[r] + "=" + *grid.labels[u][r]);
    return digest_of(std::string(tag) + "|" + scope, parts);
}

void run_agreement(const LabelGrid& grid, const QcGroup& group, const AssessOptions& opts,
                   Level level, const std::string& system,
                   std::vector<MeasureResult>* results, std::vector<std::string>* caveats) {
    const bool use_cohen = grid.raters.size() == 2 && !opts.prefer_fleiss;
    std::vector<std::string> scope = {group.qc};
    if (!system.empty()) scope.push_back(system);
    const std::string scope_text = system.empty() ? group.qc : group.qc + "|" + system;
    const std::string where = system.empty() ? "" : "system '" + system + "': ";

    try {
        MeasureResult r = make_result(use_cohen ? Measure::cohen_kappa : Measure::fleiss_kappa,
                                      level, use_cohen ? cohen_kappa(grid) : fleiss_kappa(grid),
                                      scope);
        r.detail = {{"raters", static_cast<double>(grid.raters.size())},
                    {"units", static_cast<double>(grid.units.size())}};
        r.inputs_digest = grid_digest(use_cohen ? "cohen" : "fleiss", grid, scope_text);
        if (use_cohen)
            r.caveats.push_back(
                "kappa follows Cohen's two-rater formulation; Fleiss's multi-rater "
                "generalisation is available as an option");
        results->push_back(std::move(r));
    } catch (const DomainError& e) {
        caveats->push_back(where + std::string(use_cohen ? "cohen_kappa: " : "fleiss_kappa: ") +
                           e.what());
    }
    try {
        MeasureResult r = make_result(Measure::kripp_alpha, level, kripp_alpha(grid), scope);
        r.detail = {{"raters", static_cast<double>(grid.raters.size())},
                    {"units", static_cast<double>(grid.units.size())}};
        r.inputs_digest = grid_digest("alpha", grid, scope_text);
        results->push_back(std::move(r));
    } catch (const DomainError& e) {
        caveats->push_back(where + "kripp_alpha: " + std::string(e.what()));
    }
}

}  // namespace

Type3Outcome assess_type3(const QcGroup& group, const AssessOptions& opts) {
    Type3Outcome out;
    const LabelGrid grid = build_grid(group, &out.caveats);
    if (grid.units.empty()) throw DomainError("no aligned units across experiments");

    run_agreement(grid, group, opts, Level::qc, "", &out.qc_level, &out.caveats);

    std::vector<std::string> systems;
    for (const auto& unit : grid.units)
        if (std::find(systems.begin(), systems.end(), unit.system) == systems.end())
            systems.push_back(unit.system);
    std::sort(systems.begin(), systems.end());
    for (const std::string& system : systems) {
        const LabelGrid sub = grid.for_system(system);
        SystemResults sr{system, {}};
        run_agreement(sub, group, opts, Level::system, system, &sr.results, &out.caveats);
        if (!sr.results.empty()) out.system_level.push_back(std::move(sr));
    }
    return out;
}

Type4Outcome assess_type4(const QcGroup& group, const AssessOptions& opts) {
    Type4Outcome out;
    POptions popts;
    popts.exclude_ties = opts.exclude_tied_pairs;
    try {
        PMeasure pm{};
        std::vector<std::string> digest_parts;
        if (group.kind == ResultKind::findings) {
            std::vector<PairwiseSignTable> tables;
            for (const Experiment* exp : group.experiments) {
                if (!exp->findings) throw DomainError("experiment '" + exp->id +
                                                      "' carries no sign table");
                tables.push_back(*exp->findings);
                for (const auto& [pair_key, sign] : exp->findings->signs)
                    digest_parts.push_back(exp->id + ":" + pair_key.first + "/" +
                                           pair_key.second + "=" + std::to_string(sign));
            }
            pm = p_measure_from_signs(tables, popts);
        } else {
            std::vector<std::map<std::string, double>> scores;
            for (const Experiment* exp : group.experiments) {
                std::map<std::string, double> row;
                for (const Measurement& m : exp->measurements) row[m.system] = m.value.value;
                for (const auto& [system, v] : row)
                    digest_parts.push_back(exp->id + ":" + system + "=" + num(v));
                scores.push_back(std::move(row));
            }
            pm = p_measure(scores, popts);
        }
        MeasureResult r = make_result(Measure::p_measure, Level::qc, pm.p, {group.qc});
        r.detail = {{"matches", static_cast<double>(pm.matches)},
                    {"comparisons", static_cast<double>(pm.comparisons)},
                    {"n", static_cast<double>(group.experiments.size())}};
        r.inputs_digest = digest_of("p|" + group.qc, digest_parts);
        if (group.kind == ResultKind::findings)
            r.caveats.push_back("findings-only: computed from ingested sign tables");
        if (opts.exclude_tied_pairs) r.caveats.push_back("tied sign pairs excluded");
        out.counts = {pm.matches, pm.comparisons};
        out.qc_level = std::move(r);
    } catch (const DomainError& e) {
        out.caveats.push_back("p_measure: " + std::string(e.what()));
    }
    return out;
}

LevelledAssessment assess_study(const StudyBundle& bundle, const AssessOptions& opts) {
    const std::vector<ValidationFinding> findings = validate_bundle(bundle);
    if (!findings.empty()) throw ValidationFailure(findings);

    LevelledAssessment assessment;
    assessment.study_id = bundle.study_id;
    assessment.options = opts;

    const std::vector<QcGroup> groups = group_by_qc(bundle);

    // Gate each comparable group on its conditions of measurement.
    std::vector<const SimilarityProfile*> profile_ptrs;
    std::vector<SimilarityProfile> profiles;
    profiles.reserve(groups.size());
    std::vector<std::string> refusals;
    for (const QcGroup& group : groups) {
        std::vector<PropertySheet> sheets;
        std::vector<std::string> ids;
        for (const Experiment* exp : group.experiments) {
            sheets.push_back(exp->properties);
            ids.push_back(exp->id);
        }
        profiles.push_back(similarity_profile(sheets, ids));
        const GateDecision decision = gate(profiles.back(), opts.mode);
        if (!decision.comparable)
            for (const auto& reason : decision.reasons)
                refusals.push_back(group.qc + ": " + reason);
    }
    for (const auto& p : profiles) profile_ptrs.push_back(&p);
    assessment.similarity = merge_profiles(profile_ptrs);
    if (!refusals.empty()) {
        std::string msg = "experiments are not comparable under strict conditions:";
        for (const auto& r : refusals) msg += "\n  " + r;
        throw GateRefusal(msg, assessment.similarity);
    }

    std::vector<double> all_system_cv;
    std::map<Measure, std::vector<double>> qc_agreement_values;
    std::vector<std::pair<long long, long long>> p_counts;
    std::vector<double> p_values;
    std::set<std::string> label_set_signatures;

    for (std::size_t g = 0; g < groups.size(); ++g) {
        const QcGroup& group = groups[g];
        QcAssessment qa;
        qa.qc = group.qc;
        qa.kind = group.kind;
        qa.n = static_cast<int>(group.experiments.size());
        for (const Experiment* exp : group.experiments) qa.experiment_ids.push_back(exp->id);
        qa.profile = profiles[g];
        qa.caveats = gate(profiles[g], opts.mode).caveats;

        if (group.kind == ResultKind::scores) {
            Type1Outcome t1 = assess_type1(group, opts);
            qa.system_level = std::move(t1.system_level);
            if (t1.qc_level) qa.qc_level.push_back(std::move(*t1.qc_level));
            for (const auto& c : t1.caveats) qa.caveats.push_back(c);
            all_system_cv.insert(all_system_cv.end(), t1.system_values.begin(),
                                 t1.system_values.end());

            try {
                for (auto& r : assess_type2(group, qa.caveats)) qa.qc_level.push_back(std::move(r));
            } catch (const DomainError& e) {
                qa.caveats.push_back("type II skipped: " + std::string(e.what()));
            }

            Type4Outcome t4 = assess_type4(group, opts);
            if (t4.qc_level) {
                qa.qc_level.push_back(*t4.qc_level);
                p_counts.push_back(*t4.counts);
                p_values.push_back(t4.qc_level->value);
            }
            for (const auto& c : t4.caveats) qa.caveats.push_back(c);
        } else if (group.kind == ResultKind::labels) {
            try {
                Type3Outcome t3 = assess_type3(group, opts);
                qa.system_level = std::move(t3.system_level);
                for (auto& r : t3.qc_level) {
                    qc_agreement_values[r.measure].push_back(r.value);
                    qa.qc_level.push_back(std::move(r));
                }
                for (const auto& c : t3.caveats) qa.caveats.push_back(c);
                std::string signature;
                for (const Experiment* exp : group.experiments)
                    for (const std::string& label : exp->label_set) signature += label + ",";
                label_set_signatures.insert(signature);
            } catch (const DomainError& e) {
                qa.caveats.push_back("type III skipped: " + std::string(e.what()));
            }
        } else {
            Type4Outcome t4 = assess_type4(group, opts);
            if (t4.qc_level) {
                qa.qc_level.push_back(*t4.qc_level);
                p_counts.push_back(*t4.counts);
                p_values.push_back(t4.qc_level->value);
            }
            for (const auto& c : t4.caveats) qa.caveats.push_back(c);
        }
        assessment.qcs.push_back(std::move(qa));
    }

    // Study level. Type I: mean over every computable system-level CV*.
    if (!all_system_cv.empty()) {
        MeasureResult r = make_result(Measure::cv_star, Level::study,
                                      level_mean(all_system_cv), {});
        r.detail = {{"systems", static_cast<double>(all_system_cv.size())}};
        std::vector<std::string> parts;
        for (double v : all_system_cv) parts.push_back(num(v));
        r.inputs_digest = digest_of("cv_star_study", parts);
        r.caveats.push_back(
            "point of reference only: obscures differences between quality criteria");
        assessment.study_level.push_back(std::move(r));
    }
    // Type III: mean of QC-level agreement values, per measure.
    for (const auto& [measure, values] : qc_agreement_values) {
        MeasureResult r = make_result(measure, Level::study, aggregate_type3(values), {});
        r.detail = {{"qcs", static_cast<double>(values.size())}};
        std::vector<std::string> parts;
        for (double v : values) parts.push_back(num(v));
        r.inputs_digest = digest_of(std::string(to_string(measure)) + "_study", parts);
        r.caveats.push_back("study-level means of agreement measures produce points of "
                            "reference only");
        if (label_set_signatures.size() > 1)
            r.caveats.push_back("label sets differ across quality criteria");
        assessment.study_level.push_back(std::move(r));
    }
    // Type IV: pooled over all per-QC (matches, comparisons).
    if (!p_counts.empty()) {
        const double value = opts.study_p_average ? level_mean(p_values) : pooled_p(p_counts);
        MeasureResult r = make_result(Measure::p_measure, Level::study, value, {});
        long long matches = 0, comparisons = 0;
        for (const auto& [m, c] : p_counts) {
            matches += m;
            comparisons += c;
        }
        r.detail = {{"matches", static_cast<double>(matches)},
                    {"comparisons", static_cast<double>(comparisons)},
                    {"qcs", static_cast<double>(p_counts.size())}};
        std::vector<std::string> parts;
        for (const auto& [m, c] : p_counts)
            parts.push_back(std::to_string(m) + "/" + std::to_string(c));
        r.inputs_digest = digest_of("p_study", parts);
        if (p_counts.size() > 1)
            r.caveats.push_back(opts.study_p_average
                                    ? "study-level P averages per-QC proportions (pooling is "
                                      "the default reading)"
                                    : "study-level P pools matches over comparisons across "
                                      "QCs; averaging available as an option");
        assessment.study_level.push_back(std::move(r));
    }

    return assessment;
}

}  // namespace reprometry
