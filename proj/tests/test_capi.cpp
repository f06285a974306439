#include <doctest.h>

#include <cstring>
#include <string>

#include "reprometry/reprometry.h"

namespace {

const char* kTwoExperimentDoc = R"(study capi-demo
system A B C

experiment orig
  qc Fluency
  scale 1 5
  property test_dataset d1
  score A 3
  score B 4
  score C 2
end

experiment rerun
  qc Fluency
  scale 1 5
  property test_dataset d1
  score A 3.2
  score B 4.4
  score C 2.2
end
)";

struct Cleanup {
    repro_bundle* bundle = nullptr;
    repro_assessment* assessment = nullptr;
    repro_partition* partition = nullptr;
    char* text = nullptr;
    ~Cleanup() {
        repro_bundle_free(bundle);
        repro_assessment_free(assessment);
        repro_partition_free(partition);
        repro_string_free(text);
    }
};

}  // namespace

TEST_CASE("parse, assess, and render through the C interface") {
    Cleanup c;
    REQUIRE(repro_bundle_parse_text(kTwoExperimentDoc, &c.bundle) == REPRO_OK);

    char* findings = nullptr;
    CHECK(repro_bundle_validate(c.bundle, &findings) == REPRO_OK);
    CHECK(findings == nullptr);

    repro_assess_options options;
    repro_assess_options_init(&options);
    CHECK(options.confidence_level == 0.95);
    REQUIRE(repro_assess(c.bundle, &options, &c.assessment) == REPRO_OK);

    for (int format : {REPRO_FORMAT_JSON, REPRO_FORMAT_DELIMITED, REPRO_FORMAT_MARKDOWN}) {
        char* text = nullptr;
        REQUIRE(repro_assessment_render(c.assessment, format, &text) == REPRO_OK);
        CHECK(std::strlen(text) > 0);
        repro_string_free(text);
    }
}

TEST_CASE("validation findings surface through the C interface") {
    const std::string bad = std::string(kTwoExperimentDoc) + R"(
experiment broken
  qc Fluency
  scale 1 5
  property test_dataset d1
  score A 9
end
)";
    Cleanup c;
    REQUIRE(repro_bundle_parse_text(bad.c_str(), &c.bundle) == REPRO_OK);
    char* findings = nullptr;
    CHECK(repro_bundle_validate(c.bundle, &findings) == REPRO_E_VALIDATION);
    REQUIRE(findings != nullptr);
    CHECK(std::string(findings).find("value outside scale") != std::string::npos);
    repro_string_free(findings);

    repro_assessment* assessment = nullptr;
    CHECK(repro_assess(c.bundle, nullptr, &assessment) == REPRO_E_VALIDATION);
    CHECK(assessment == nullptr);
    CHECK(std::string(repro_last_error()).find("validation") != std::string::npos);
}

TEST_CASE("strict gate refusal surfaces as REPRO_E_GATE") {
    const std::string differing = std::string(kTwoExperimentDoc);
    Cleanup c;
    REQUIRE(repro_bundle_parse_text(
                (differing.substr(0, differing.find("property test_dataset d1")) +
                 "property test_dataset other\n" +
                 differing.substr(differing.find("score A 3")))
                    .c_str(),
                &c.bundle) == REPRO_OK);
    repro_assess_options options;
    repro_assess_options_init(&options);
    options.mode = REPRO_MODE_STRICT;
    repro_assessment* assessment = nullptr;
    CHECK(repro_assess(c.bundle, &options, &assessment) == REPRO_E_GATE);
    CHECK(std::string(repro_last_error()).find("test_dataset") != std::string::npos);
}

TEST_CASE("parse and argument failures") {
    repro_bundle* bundle = nullptr;
    CHECK(repro_bundle_parse_file("/no/such/file.bundle", &bundle) == REPRO_E_PARSE);
    CHECK(repro_bundle_parse_text("study s\nbroken", &bundle) == REPRO_E_PARSE);
    CHECK(repro_bundle_parse_text(nullptr, &bundle) == REPRO_E_ARG);
    CHECK(repro_assess(nullptr, nullptr, nullptr) == REPRO_E_ARG);
    CHECK(std::strlen(repro_version()) > 0);
}

TEST_CASE("serialization round-trips through the C interface") {
    Cleanup c;
    REQUIRE(repro_bundle_parse_text(kTwoExperimentDoc, &c.bundle) == REPRO_OK);
    REQUIRE(repro_bundle_serialize(c.bundle, &c.text) == REPRO_OK);
    repro_bundle* again = nullptr;
    REQUIRE(repro_bundle_parse_text(c.text, &again) == REPRO_OK);
    char* second = nullptr;
    REQUIRE(repro_bundle_serialize(again, &second) == REPRO_OK);
    CHECK(std::string(c.text) == second);
    repro_string_free(second);
    repro_bundle_free(again);
}

TEST_CASE("similarity text through the C interface") {
    Cleanup c;
    REQUIRE(repro_bundle_parse_text(kTwoExperimentDoc, &c.bundle) == REPRO_OK);
    REQUIRE(repro_bundle_similarity(c.bundle, &c.text) == REPRO_OK);
    CHECK(std::string(c.text).find("quality criterion 'Fluency' (scores, n=2)") !=
          std::string::npos);
}

TEST_CASE("partitioning through the C interface") {
    const char* doc = R"(study part
system A B
experiment e1
  qc q
  property test_dataset one
  score A 0.4
  score B 0.5
end
experiment e2
  qc q
  property test_dataset one
  score A 0.45
  score B 0.55
end
experiment e3
  qc q
  property test_dataset two
  score A 0.6
  score B 0.3
end
experiment e4
  qc q
  property test_dataset three
  score A 0.2
  score B 0.9
end
)";
    Cleanup c;
    REQUIRE(repro_bundle_parse_text(doc, &c.bundle) == REPRO_OK);
    REQUIRE(repro_bundle_partition(c.bundle, "test_dataset", &c.partition) == REPRO_OK);
    CHECK(repro_partition_count(c.partition) == 3);

    int big = -1;
    for (int i = 0; i < 3; ++i)
        if (repro_partition_group_size(c.partition, i) == 2) big = i;
    REQUIRE(big >= 0);
    char* label = nullptr;
    REQUIRE(repro_partition_label(c.partition, big, &label) == REPRO_OK);
    CHECK(std::string(label) == "test_dataset=one (n=2)");
    repro_string_free(label);
    char* members = nullptr;
    REQUIRE(repro_partition_members(c.partition, big, &members) == REPRO_OK);
    CHECK(std::string(members) == "e1, e2");
    repro_string_free(members);

    repro_bundle* group = nullptr;
    REQUIRE(repro_partition_bundle(c.partition, big, &group) == REPRO_OK);
    repro_assessment* assessment = nullptr;
    CHECK(repro_assess(group, nullptr, &assessment) == REPRO_OK);
    repro_assessment_free(assessment);
    repro_bundle_free(group);

    // the two singletons pool into one remainder bundle
    repro_bundle* rest = nullptr;
    REQUIRE(repro_partition_remainder(c.partition, 2, &rest) == REPRO_OK);
    char* rest_text = nullptr;
    REQUIRE(repro_bundle_serialize(rest, &rest_text) == REPRO_OK);
    CHECK(std::string(rest_text).find("experiment e3") != std::string::npos);
    CHECK(std::string(rest_text).find("experiment e4") != std::string::npos);
    CHECK(std::string(rest_text).find("experiment e1") == std::string::npos);
    repro_string_free(rest_text);
    repro_bundle_free(rest);

    CHECK(repro_partition_label(c.partition, 99, &label) == REPRO_E_ARG);
    repro_partition* bad = nullptr;
    CHECK(repro_bundle_partition(c.bundle, "definitely_not_a_key", &bad) == REPRO_E_DOMAIN);
    CHECK(bad == nullptr);
}
