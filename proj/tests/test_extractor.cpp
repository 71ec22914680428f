// test_extractor.cpp : plausibility scoring, relation classification and
//                      pipeline assembly over the mock backend
//
///////////////////////////////////////////////////////////////////////////
//
// Copyright 2026 the FAKB engine authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
///////////////////////////////////////////////////////////////////////////

#include <doctest.h>

#include <cmath>
#include <random>

#include "error.hpp"
#include "fabox_io.hpp"
#include "mock_backend.hpp"

using namespace fakb;

namespace {

std::string fixture(const std::string& name) { return std::string(FAKB_FIXTURE_DIR) + "/" + name; }

// A small fixture with k equally implausible one-word arguments and no
// configured relations.
std::string uniform_fixture(int k) {
    std::string tagged;
    std::string logprobs = "[";
    std::string prompted = "[";
    for (int i = 1; i <= k; ++i) {
        if (i > 1) {
            tagged += " and ";
            logprobs += ",";
            prompted += ",";
        }
        tagged += "<AC" + std::to_string(i) + "> claim" + std::to_string(i) + " </AC" + std::to_string(i) + ">";
        logprobs += "[-2.0]";
        prompted += "0.5";
    }
    return "{\"tagged_text\": \"" + tagged + "\", \"logprobs\": " + logprobs +
           "], \"prompted_strengths\": " + prompted + "]}";
}

} // namespace

TEST_CASE("tagged-document parsing") {
    TaggedDocument doc = parse_tagged_text("intro <AC1> first claim </AC1> middle <AC2> second one here </AC2> end");
    REQUIRE(doc.spans.size() == 2);
    CHECK(doc.words.size() == 8);
    CHECK(doc.spans[0].begin == 2);
    CHECK(doc.spans[0].end == 3);
    CHECK(doc.spans[1].begin == 5);
    CHECK(doc.spans[1].end == 7);
    CHECK(doc.span_text(1) == "first claim");
    CHECK(doc.span_text(2) == "second one here");

    // markers hugging words still separate
    TaggedDocument hugged = parse_tagged_text("a<AC1>b c</AC1>d");
    REQUIRE(hugged.spans.size() == 1);
    CHECK(hugged.span_text(1) == "b c");
    CHECK(hugged.words.size() == 4);

    CHECK(parse_tagged_text("no markers at all").spans.empty());
    CHECK(parse_tagged_text("").words.empty());

    CHECK(strip_tags("a <AC1> b </AC1> c") == "a b c");

    CHECK_THROWS_AS(parse_tagged_text("<AC2> x </AC2>"), Error);              // must start at 1
    CHECK_THROWS_AS(parse_tagged_text("<AC1> x <AC2> y </AC2> </AC1>"), Error); // nesting
    CHECK_THROWS_AS(parse_tagged_text("<AC1> x </AC2>"), Error);              // mismatch
    CHECK_THROWS_AS(parse_tagged_text("<AC1> x"), Error);                     // unclosed
    CHECK_THROWS_AS(parse_tagged_text("<AC1> </AC1>"), Error);                // empty span
    CHECK_THROWS_AS(parse_tagged_text("<AC1> x </AC1> <AC3> y </AC3>"), Error); // gap in numbering
}

TEST_CASE("plausibility is the mean log-probability of the span") {
    CHECK(plausibility_mean({-2.0, -4.0}) == -3.0);
    CHECK(plausibility_mean({-1.5}) == -1.5);
    CHECK(plausibility_mean({0.0, 0.0, 0.0}) == 0.0);
    CHECK_THROWS_AS(plausibility_mean({}), Error);
    CHECK_THROWS_AS(plausibility_mean({-1.0, 0.5}), Error);
}

TEST_CASE("normalization maps onto the unit interval") {
    CHECK(normalize_plausibility({-2.0, -1.0, -3.0}) == std::vector<double>{0.5, 1.0, 0.0});
    CHECK(normalize_plausibility({-5.0, -5.0, -5.0}) == std::vector<double>{0.5, 0.5, 0.5});
    CHECK(normalize_plausibility({-7.0}) == std::vector<double>{0.5});
    CHECK_THROWS_AS(normalize_plausibility({}), Error);

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> lp(-9.0, 0.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> mu;
        for (int i = 0; i < 6; ++i) mu.push_back(lp(rng));
        auto out = normalize_plausibility(mu);
        double lo = 1.0, hi = 0.0;
        for (double v : out) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        CHECK(lo == 0.0);
        CHECK(hi == 1.0);
    }
}

TEST_CASE("initial strength blends the prompted value with relative plausibility") {
    // neutral plausibility returns the prompted value untouched
    for (double tau_p : {0.0, 0.3, 0.7, 1.0})
        for (double m : {0.0, 0.25, 0.5, 1.0}) CHECK(initial_strength(tau_p, m, m) == tau_p);

    CHECK(initial_strength(0.8, 1.0, 0.5) == 1.0); // clamped at the top
    CHECK(initial_strength(0.6, 0.2, 0.7) == doctest::Approx(0.30).epsilon(1e-12));
    // independent scalar route
    CHECK(initial_strength(0.6, 0.2, 0.7) ==
          doctest::Approx(std::max(0.0, std::min(1.0, 0.6 * (1.0 + 0.2 - 0.7)))).epsilon(1e-15));

    CHECK_THROWS_AS(initial_strength(1.2, 0.5, 0.5), Error);
    CHECK_THROWS_AS(initial_strength(0.5, -0.1, 0.5), Error);

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        double tau_p = unit(rng), avg = unit(rng);
        double lo = unit(rng), hi = unit(rng);
        if (lo > hi) std::swap(lo, hi);
        double a = initial_strength(tau_p, lo, avg);
        double b = initial_strength(tau_p, hi, avg);
        CHECK(a <= b + 1e-15); // nondecreasing in the normalized plausibility
        for (double v : {a, b}) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("softmax: normalization and shift invariance") {
    auto p = softmax3({0.0, 0.0, 0.0});
    CHECK(p[0] == doctest::Approx(1.0 / 3).epsilon(1e-12));

    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> raw(-30.0, 5.0);
    std::uniform_real_distribution<double> shift(-50.0, 50.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::array<double, 3> r{raw(rng), raw(rng), raw(rng)};
        auto probs = softmax3(r);
        CHECK(std::abs(probs[0] + probs[1] + probs[2] - 1.0) < 1e-9);
        double c = shift(rng);
        auto shifted = softmax3({r[0] + c, r[1] + c, r[2] + c});
        for (int i = 0; i < 3; ++i) CHECK(std::abs(shifted[i] - probs[i]) < 1e-9);
    }
}

TEST_CASE("relation classification emits only above the margin threshold") {
    const ArgumentId src{2}, tgt{1};

    RelationJudgement even = classify_relation(src, tgt, {1.0, 1.0, 1.0}, 0.0);
    CHECK(even.label == RelationLabel::Unrelated);
    CHECK_FALSE(even.strength.has_value());
    CHECK(even.margin == doctest::Approx(-1.0 / 3).epsilon(1e-12));

    std::array<double, 3> confident{std::log(0.99), std::log(0.005), std::log(0.005)};
    RelationJudgement attack = classify_relation(src, tgt, confident, 0.0);
    CHECK(attack.label == RelationLabel::Attack);
    REQUIRE(attack.strength.has_value());
    CHECK(*attack.strength == doctest::Approx(0.98).epsilon(1e-12));
    CHECK(attack.source.index > attack.target.index);

    // a margin exactly at the threshold is not emitted
    std::array<double, 3> support_leaning{std::log(0.2), std::log(0.6), std::log(0.2)};
    RelationJudgement baseline = classify_relation(src, tgt, support_leaning, 0.0);
    REQUIRE(baseline.label == RelationLabel::Support);
    RelationJudgement at_threshold = classify_relation(src, tgt, support_leaning, baseline.margin);
    CHECK(at_threshold.label == RelationLabel::Unrelated);
    CHECK_FALSE(at_threshold.strength.has_value());

    CHECK_THROWS_AS(classify_relation(src, tgt, {0.0, 0.0, std::nan("")}, 0.0), Error);
    CHECK_THROWS_AS(classify_relation(src, tgt, {0.0, 0.0, -INFINITY}, 0.0), Error);
    CHECK_THROWS_AS(classify_relation(src, tgt, {0.0, 0.0, 0.0}, 1.5), Error);

    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> raw(-8.0, 2.0);
    std::uniform_real_distribution<double> theta_dist(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        double theta = theta_dist(rng);
        RelationJudgement j = classify_relation(src, tgt, {raw(rng), raw(rng), raw(rng)}, theta);
        CHECK(std::abs(j.p_attack + j.p_support + j.p_unrelated - 1.0) < 1e-9);
        if (j.strength) {
            CHECK(j.label != RelationLabel::Unrelated);
            CHECK(*j.strength > theta);
            CHECK(*j.strength <= 1.0);
        }
    }
}

TEST_CASE("the climate fixture reproduces the worked source store") {
    MockBackend backend = MockBackend::from_file(fixture("climate_fixture.json"));
    Fabox source = extract_source_fabox(backend.document(), backend, 0.0);
    CHECK(check_fabox_consistency(source).ok());

    Fabox golden = load_fabox_file(fixture("climate_source.fabox"));
    REQUIRE(source.size() == golden.size());
    auto got = source.sorted();
    auto want = golden.sorted();
    for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].crisp_key() == want[i].crisp_key());
        CHECK(got[i].degree == doctest::Approx(want[i].degree).epsilon(1e-9));
    }

    // exact values on the argumentative layer
    WeightedQbaf qbaf = underlying_qbaf(source);
    CHECK(qbaf.arguments().at(ArgumentId{1}) == 0.7);
    CHECK(qbaf.arguments().at(ArgumentId{2}) == 0.6);
    CHECK(qbaf.arguments().at(ArgumentId{3}) == 0.8);
    CHECK(qbaf.attacks().at({ArgumentId{2}, ArgumentId{1}}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(qbaf.supports().at({ArgumentId{3}, ArgumentId{1}}) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("the updated store carries the recomputed strengths") {
    MockBackend backend = MockBackend::from_file(fixture("climate_fixture.json"));
    ModularSemantics sem = make_semantics("quadratic-energy");
    Fabox updated = extract_updated_fabox(backend.document(), backend, 0.0, sem);
    for (const auto& a : updated.assertions())
        if (a.predicate == "Arg" && a.args[0] == IndividualName::argument(1))
            CHECK(a.degree == doctest::Approx(71.0 / 101.0).epsilon(1e-9));
}

TEST_CASE("task accounting: one pass per argument, one call per ordered pair") {
    for (int k : {1, 3, 6}) {
        MockBackend backend = MockBackend::from_json(uniform_fixture(k));
        Fabox source = extract_source_fabox(backend.document(), backend, 0.0);
        CHECK(backend.tag_calls == 1);
        CHECK(backend.entity_calls == 1);
        CHECK(backend.logprob_calls == k);
        CHECK(backend.prompt_calls == k);
        CHECK(backend.relation_calls == k * (k - 1) / 2);

        // no relations configured: Unrelated everywhere, spans neutral
        long args = 0, relations = 0;
        for (const auto& a : source.assertions()) {
            if (a.predicate == "Arg") {
                ++args;
                CHECK(a.degree == 0.5); // tau_p, untouched by neutral plausibility
            }
            if (a.predicate == "att" || a.predicate == "sup") ++relations;
        }
        CHECK(args == k);
        CHECK(relations == 0);
        CHECK(source.size() == static_cast<std::size_t>(3 * k));
    }
}

TEST_CASE("a single-argument document yields one triple and no relations") {
    MockBackend backend = MockBackend::from_json(uniform_fixture(1));
    Fabox source = extract_source_fabox(backend.document(), backend, 0.0);
    CHECK(source.size() == 3);
    CHECK(backend.relation_calls == 0);
}

TEST_CASE("an empty document yields an empty store") {
    MockBackend backend = MockBackend::from_json(
        R"({"tagged_text": "", "logprobs": [], "prompted_strengths": []})");
    Fabox source = extract_source_fabox(backend.document(), backend, 0.0);
    CHECK(source.empty());
}

TEST_CASE("the emission threshold suppresses weak relations") {
    // margin 0.5 on both configured pairs
    MockBackend low = MockBackend::from_file(fixture("climate_fixture.json"));
    Fabox with_relations = extract_source_fabox(low.document(), low, 0.49);
    long rel = 0;
    for (const auto& a : with_relations.assertions())
        if (a.predicate == "att" || a.predicate == "sup") ++rel;
    CHECK(rel == 2);

    MockBackend high = MockBackend::from_file(fixture("climate_fixture.json"));
    Fabox without = extract_source_fabox(high.document(), high, 0.51);
    for (const auto& a : without.assertions()) {
        CHECK(a.predicate != "att");
        CHECK(a.predicate != "sup");
    }
}

TEST_CASE("fixture schema errors name the offending field") {
    auto expect_field = [](const std::string& json_text, const std::string& field) {
        try {
            MockBackend::from_json(json_text);
            FAIL("expected a schema error for ", field);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::Parse);
            CHECK(std::string(e.what()).find(field) != std::string::npos);
        }
    };
    expect_field(R"({"logprobs": [], "prompted_strengths": []})", "tagged_text");
    expect_field(R"({"tagged_text": "<AC1> x </AC1>", "prompted_strengths": [0.5]})", "logprobs");
    expect_field(R"({"tagged_text": "<AC1> x </AC1>", "logprobs": [[-1.0,-2.0]],
                     "prompted_strengths": [0.5]})", "logprobs[0]");
    expect_field(R"({"tagged_text": "<AC1> x </AC1>", "logprobs": [[0.5]],
                     "prompted_strengths": [0.5]})", "logprobs[0]");
    expect_field(R"({"tagged_text": "<AC1> x </AC1>", "logprobs": [[-1.0]],
                     "prompted_strengths": [1.5]})", "prompted_strengths[0]");
    expect_field(R"({"tagged_text": "<AC1> x </AC1>", "logprobs": [[-1.0]],
                     "prompted_strengths": [0.5], "spans": [[1, 2]]})", "spans[0]");
    expect_field(R"({"tagged_text": "<AC1> x </AC1> <AC2> y </AC2>", "logprobs": [[-1.0],[-1.0]],
                     "prompted_strengths": [0.5, 0.5],
                     "relations_raw": [{"source": 1, "target": 2, "logprobs": [0,0,0]}]})",
                 "relations_raw[0]");
    expect_field(R"({"tagged_text": "<AC1> x </AC1>", "logprobs": [[-1.0]],
                     "prompted_strengths": [0.5],
                     "entities": [{"kind": "idea", "predicate": "P", "args": ["v"]}]})",
                 "entities");
    expect_field("not json at all", "JSON");
}

TEST_CASE("spans cross-check accepts matching offsets") {
    MockBackend backend = MockBackend::from_json(
        R"({"tagged_text": "pre <AC1> one two </AC1> post", "spans": [[2, 3]],
            "logprobs": [[-1.0, -1.0]], "prompted_strengths": [0.5]})");
    CHECK(backend.document() == "pre one two post");
}

TEST_CASE("entity facts must be crisp") {
    MockBackend backend = MockBackend::from_json(
        R"({"tagged_text": "<AC1> x </AC1>", "logprobs": [[-1.0]], "prompted_strengths": [0.5],
            "entities": [{"kind": "concept", "predicate": "P", "args": ["v"], "degree": 0.5}]})");
    CHECK_THROWS_AS(extract_source_fabox(backend.document(), backend, 0.0), Error);
}
