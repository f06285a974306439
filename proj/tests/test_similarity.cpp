#include <doctest.h>

#include "builders.hpp"
#include "core/errors.hpp"
#include "core/property_schema.hpp"
#include "core/similarity.hpp"

using namespace reprometry;
using namespace builders;

TEST_CASE("identical sheets") {
    const std::vector<PropertySheet> sheets{sheet(), sheet()};
    const std::vector<std::string> ids{"a", "b"};
    const SimilarityProfile p = similarity_profile(sheets, ids);
    CHECK(p.different.empty());
    CHECK(p.coverage.empty());
    CHECK(p.same.size() == 2);
}

TEST_CASE("differing test dataset") {
    auto s1 = sheet({{"test_dataset", "d1"}, {"metric", "bleu"}});
    auto s2 = sheet({{"test_dataset", "d2"}, {"metric", "bleu"}});
    const std::vector<PropertySheet> sheets{s1, s2};
    const std::vector<std::string> ids{"orig", "rerun"};
    const SimilarityProfile p = similarity_profile(sheets, ids);
    REQUIRE(p.different.size() == 1);
    CHECK(p.different[0].key == "test_dataset");
    CHECK(p.different[0].values[0] == std::pair<std::string, std::string>{"orig", "d1"});
    CHECK(p.different[0].values[1] == std::pair<std::string, std::string>{"rerun", "d2"});
}

TEST_CASE("missing human-evaluation block lands in coverage") {
    auto with_human = sheet();
    with_human.human_eval = {{"number_of_evaluators", "3"},
                             {"evaluator_type", "crowdworker"}};
    const std::vector<PropertySheet> sheets{with_human, sheet()};
    const std::vector<std::string> ids{"human", "metric"};
    const SimilarityProfile p = similarity_profile(sheets, ids);
    CHECK(p.different.empty());
    CHECK(p.coverage.size() == 2);
}

TEST_CASE("values compare after trimming and case-folding") {
    auto s1 = sheet({{"test_dataset", "  WebNLG-2020 "}});
    auto s2 = sheet({{"test_dataset", "webnlg-2020"}});
    const std::vector<PropertySheet> sheets{s1, s2};
    const std::vector<std::string> ids{"a", "b"};
    const SimilarityProfile p = similarity_profile(sheets, ids);
    CHECK(p.different.empty());
    CHECK(p.same == std::vector<std::string>{"test_dataset"});
}

TEST_CASE("gate decisions") {
    SimilarityProfile clean;
    clean.same = {"metric"};
    CHECK(gate(clean, GateMode::strict).comparable);
    CHECK(gate(clean, GateMode::lenient).comparable);

    SimilarityProfile dirty;
    dirty.different.push_back({"test_dataset", {{"a", "d1"}, {"b", "d2"}}});
    const GateDecision strict = gate(dirty, GateMode::strict);
    CHECK_FALSE(strict.comparable);
    REQUIRE(strict.reasons.size() == 1);
    CHECK(strict.reasons[0].find("test_dataset") != std::string::npos);

    const GateDecision lenient = gate(dirty, GateMode::lenient);
    CHECK(lenient.comparable);
    REQUIRE(lenient.caveats.size() == 1);
    CHECK(lenient.caveats[0].find("expected") != std::string::npos);
}

TEST_CASE("partition groups by value tuples") {
    std::vector<Experiment> exps;
    for (int i = 0; i < 8; ++i) {
        auto props = sheet({{"test_dataset", i < 4 ? "D" : "D" + std::to_string(i)}});
        props.extensions["x.random_seed"] = i < 4 ? "42" : std::to_string(100 + i);
        exps.push_back(scores_experiment("e" + std::to_string(i), "qc",
                                         {{"A", 0.5}, {"B", 0.6}}, 0.0, 1.0, props));
    }
    const StudyBundle b = bundle("big", std::move(exps), {"A", "B"});

    const std::vector<std::string> keys{"test_dataset", "x.random_seed"};
    const auto groups = partition(b, keys);
    CHECK(groups.size() == 5);
    const auto four = std::find_if(groups.begin(), groups.end(), [](const PartitionGroup& g) {
        return g.bundle.experiments.size() == 4;
    });
    REQUIRE(four != groups.end());
    CHECK(four->key_values[0] == std::pair<std::string, std::string>{"test_dataset", "d"});
    CHECK(four->key_values[1] == std::pair<std::string, std::string>{"x.random_seed", "42"});
    CHECK(four->bundle.declared_system_set == b.declared_system_set);
}

TEST_CASE("partition edge cases") {
    const StudyBundle b = bundle(
        "s",
        {scores_experiment("e1", "qc", {{"A", 1.0}, {"B", 2.0}}, 0.0, 5.0),
         scores_experiment("e2", "qc", {{"A", 1.5}, {"B", 2.5}}, 0.0, 5.0)},
        {"A", "B"});
    const std::vector<std::string> none{};
    CHECK(partition(b, none).size() == 1);  // single group of all

    const std::vector<std::string> heds{"h2.1"};  // alias resolves to input_type
    CHECK(partition(b, heds).size() == 1);        // both sheets lack it -> same empty value

    const std::vector<std::string> bogus{"no_such_key"};
    CHECK_THROWS_AS(partition(b, bogus), DomainError);
}

TEST_CASE("property schema lookups") {
    CHECK(resolve_property_key("h4.2.1") == std::string("objective_vs_subjective"));
    CHECK(resolve_property_key("Test_Dataset") == std::string("test_dataset"));
    CHECK(resolve_property_key("x.random_seed") == std::string("x.random_seed"));
    CHECK_FALSE(resolve_property_key("banana").has_value());
    CHECK(property_schema().size() == 22);

    CHECK(check_property_value("objective_vs_subjective", "Objective").empty());
    CHECK_FALSE(check_property_value("objective_vs_subjective", "sideways").empty());
    CHECK(check_property_value("input_type", "text-sentence, speech").empty());
    CHECK_FALSE(check_property_value("input_type", "smoke-signals").empty());
    CHECK(check_property_value("verbatim_prompt", "anything at all").empty());
}
