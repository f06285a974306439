#include "bundle_format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "property_schema.hpp"

namespace reprometry {

namespace {

std::vector<std::string> tokenize(const std::string& line, int line_no) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '#') break;
        if (c == '"') {
            const std::size_t close = line.find('"', i + 1);
            if (close == std::string::npos)
                throw ParseError(line_no, "unterminated quoted token");
            tokens.push_back(line.substr(i + 1, close - i - 1));
            i = close + 1;
        } else {
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
                   line[j] != '#')
                ++j;
            tokens.push_back(line.substr(i, j - i));
            i = j;
        }
    }
    return tokens;
}

double parse_number(const std::string& token, int line_no) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError(line_no, "expected a number, got '" + token + "'");
    return value;
}

std::optional<Span> parse_span(const std::string& token) {
    const std::size_t dots = token.find("..");
    if (dots == std::string::npos) return std::nullopt;
    Span span;
    const char* b = token.data();
    auto [p1, e1] = std::from_chars(b, b + dots, span.start);
    auto [p2, e2] =
        std::from_chars(b + dots + 2, b + token.size(), span.end);
    if (e1 != std::errc() || e2 != std::errc() || p1 != b + dots ||
        p2 != b + token.size())
        return std::nullopt;
    return span;
}

std::string format_number(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string quote(const std::string& token) {
    if (token.empty() ||
        token.find_first_of(" \t\"#") != std::string::npos)
        return "\"" + token + "\"";
    return token;
}

void set_kind(Experiment& exp, bool& kind_set, ResultKind kind, int line_no) {
    if (!kind_set) {
        exp.kind = kind;
        kind_set = true;
    } else if (exp.kind != kind) {
        throw ParseError(line_no, "experiment '" + exp.id + "' mixes " +
                                      to_string(exp.kind) + " and " + to_string(kind) +
                                      " entries");
    }
}

void finish_experiment(Experiment& exp) {
    // A rating instrument implies a bounded scale the scores live on.
    if (exp.kind == ResultKind::scores && !exp.scale_declared) {
        auto instrument = exp.properties.get("rating_instrument_type");
        if (instrument && normalize_property_value(*instrument) != "n/a")
            throw SchemaError("experiment " + exp.id,
                              "rating instrument declared but no scale given");
    }
    for (Measurement& m : exp.measurements) {
        m.value.scale_min = exp.scale_min;
        m.value.scale_max = exp.scale_max;
    }
}

}  // namespace

StudyBundle parse_bundle(const std::string& document) {
    StudyBundle bundle;
    std::istringstream stream(document);
    std::string line;
    int line_no = 0;
    bool in_experiment = false;
    bool kind_set = false;
    bool saw_study = false;
    Experiment current;
    std::optional<std::string> current_time;

    auto annotation_for = [&](const std::string& system) -> AnnotationSet& {
        for (auto& ann : current.annotations)
            if (ann.system == system) return ann;
        current.annotations.push_back({system, {}});
        return current.annotations.back();
    };

    while (std::getline(stream, line)) {
        ++line_no;
        const std::vector<std::string> t = tokenize(line, line_no);
        if (t.empty()) continue;
        const std::string& head = t[0];

        if (!in_experiment) {
            if (head == "study") {
                if (t.size() != 2) throw ParseError(line_no, "study takes one identifier");
                if (saw_study) throw ParseError(line_no, "duplicate study line");
                bundle.study_id = t[1];
                saw_study = true;
            } else if (head == "system") {
                if (t.size() < 2) throw ParseError(line_no, "system takes identifiers");
                for (std::size_t i = 1; i < t.size(); ++i)
                    bundle.declared_system_set.push_back(t[i]);
            } else if (head == "experiment") {
                if (t.size() != 2) throw ParseError(line_no, "experiment takes one identifier");
                current = Experiment{};
                current.id = t[1];
                current_time.reset();
                in_experiment = true;
                kind_set = false;
            } else {
                throw ParseError(line_no, "unknown directive '" + head + "'");
            }
            continue;
        }

        if (head == "end") {
            if (current_time)
                for (Measurement& m : current.measurements) m.time = current_time;
            finish_experiment(current);
            bundle.experiments.push_back(std::move(current));
            in_experiment = false;
        } else if (head == "qc") {
            if (t.size() != 2) throw ParseError(line_no, "qc takes one name");
            current.quality_criterion = t[1];
        } else if (head == "scale") {
            if (t.size() != 3) throw ParseError(line_no, "scale takes min and max");
            current.scale_min = parse_number(t[1], line_no);
            if (t[2] == "unbounded")
                current.scale_max.reset();
            else
                current.scale_max = parse_number(t[2], line_no);
            current.scale_declared = true;
        } else if (head == "time") {
            if (t.size() != 2) throw ParseError(line_no, "time takes one value");
            current_time = t[1];
        } else if (head == "property") {
            if (t.size() != 3) throw ParseError(line_no, "property takes a key and a value");
            auto key = resolve_property_key(t[1]);
            if (!key)
                throw SchemaError("experiment " + current.id,
                                  "unknown property key '" + t[1] +
                                      "' (not in the schema or x.* extensions)");
            const std::string problem = check_property_value(*key, t[2]);
            if (!problem.empty())
                throw SchemaError("experiment " + current.id, problem);
            if (is_extension_key(*key)) {
                current.properties.extensions[*key] = t[2];
            } else {
                const PropertyKeyInfo* info = property_info(*key);
                (info->block == PropertyBlock::general ? current.properties.general
                                                       : current.properties.human_eval)[*key] =
                    t[2];
            }
        } else if (head == "labelset") {
            if (t.size() < 2) throw ParseError(line_no, "labelset takes label names");
            set_kind(current, kind_set, ResultKind::labels, line_no);
            for (std::size_t i = 1; i < t.size(); ++i) current.label_set.push_back(t[i]);
        } else if (head == "score") {
            if (t.size() != 3) throw ParseError(line_no, "score takes a system and a value");
            set_kind(current, kind_set, ResultKind::scores, line_no);
            Measurement m;
            m.measurand = current.quality_criterion;
            m.system = t[1];
            m.value.value = parse_number(t[2], line_no);
            current.measurements.push_back(std::move(m));
        } else if (head == "label") {
            if (t.size() != 4 && t.size() != 5)
                throw ParseError(line_no, "label takes system, item, [span,] label");
            set_kind(current, kind_set, ResultKind::labels, line_no);
            LabeledItem item;
            item.item_id = t[2];
            if (t.size() == 5) {
                item.span = parse_span(t[3]);
                if (!item.span)
                    throw ParseError(line_no, "malformed span '" + t[3] + "' (want start..end)");
                item.label = t[4];
            } else {
                item.label = t[3];
            }
            annotation_for(t[1]).items.push_back(std::move(item));
        } else if (head == "finding") {
            if (t.size() != 4 || (t[2] != "<" && t[2] != "=" && t[2] != ">"))
                throw ParseError(line_no, "finding takes 'systemA <|=|> systemB'");
            set_kind(current, kind_set, ResultKind::findings, line_no);
            if (!current.findings) current.findings = PairwiseSignTable{current.id, {}};
            const std::string& a = t[1];
            const std::string& b = t[3];
            if (a == b) throw ParseError(line_no, "finding compares a system with itself");
            int sign = t[2] == "=" ? 0 : (t[2] == ">" ? 1 : -1);
            auto pair_key = std::make_pair(a, b);
            if (b < a) {
                pair_key = {b, a};
                sign = -sign;
            }
            if (!current.findings->signs.emplace(pair_key, sign).second)
                throw ParseError(line_no, "duplicate finding for pair " + pair_key.first +
                                              "/" + pair_key.second);
        } else {
            throw ParseError(line_no, "unknown directive '" + head + "' inside experiment");
        }
    }
    if (in_experiment)
        throw ParseError(line_no, "experiment '" + current.id + "' not closed with 'end'");
    if (!saw_study) throw ParseError(0, "document declares no study");
    return bundle;
}

StudyBundle parse_bundle_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_bundle(buffer.str());
}

std::string serialize_bundle(const StudyBundle& bundle) {
    std::ostringstream os;
    os << "study " << quote(bundle.study_id) << "\n";
    if (!bundle.declared_system_set.empty()) {
        os << "system";
        for (const auto& s : bundle.declared_system_set) os << " " << quote(s);
        os << "\n";
    }
    for (const Experiment& exp : bundle.experiments) {
        os << "\nexperiment " << quote(exp.id) << "\n";
        os << "  qc " << quote(exp.quality_criterion) << "\n";
        if (exp.scale_declared) {
            os << "  scale " << format_number(exp.scale_min) << " ";
            os << (exp.scale_max ? format_number(*exp.scale_max) : "unbounded") << "\n";
        }
        if (!exp.measurements.empty() && exp.measurements.front().time)
            os << "  time " << quote(*exp.measurements.front().time) << "\n";
        for (const auto* block :
             {&exp.properties.general, &exp.properties.human_eval, &exp.properties.extensions})
            for (const auto& [key, value] : *block)
                os << "  property " << key << " " << quote(value) << "\n";
        if (!exp.label_set.empty()) {
            os << "  labelset";
            for (const auto& label : exp.label_set) os << " " << quote(label);
            os << "\n";
        }
        for (const Measurement& m : exp.measurements)
            os << "  score " << quote(m.system) << " " << format_number(m.value.value) << "\n";
        for (const AnnotationSet& ann : exp.annotations)
            for (const LabeledItem& item : ann.items) {
                os << "  label " << quote(ann.system) << " " << quote(item.item_id);
                if (item.span)
                    os << " " << item.span->start << ".." << item.span->end;
                os << " " << quote(item.label) << "\n";
            }
        if (exp.findings)
            for (const auto& [pair_key, sign] : exp.findings->signs)
                os << "  finding " << quote(pair_key.first) << " "
                   << (sign == 0 ? "=" : (sign > 0 ? ">" : "<")) << " "
                   << quote(pair_key.second) << "\n";
        os << "end\n";
    }
    return os.str();
}

std::vector<double> shift_to_zero(std::span<const double> values, double scale_min) {
    std::vector<double> shifted;
    shifted.reserve(values.size());
    for (double v : values) {
        if (v < scale_min)
            throw DomainError("value " + format_number(v) + " below scale minimum " +
                              format_number(scale_min));
        shifted.push_back(v - scale_min);
    }
    return shifted;
}

}  // namespace reprometry
