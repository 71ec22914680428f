// test_query.cpp : parsing, rewriting, evaluation, certain answers and the
//                  model-theoretic oracle
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

#include "error.hpp"
#include "fabox_io.hpp"
#include "query.hpp"
#include "support/generators.hpp"

using namespace fakb;

namespace {

std::string fixture(const std::string& name) { return std::string(FAKB_FIXTURE_DIR) + "/" + name; }

Tbox climate_tbox() { return parse_tbox_text(read_file(fixture("climate.tbox"))); }
Fabox climate_updated() { return load_fabox_file(fixture("climate_updated.fabox")); }

const char* kClimateText1 = "Introducing a carbon tax reduces CO2 emissions";

double degree_of(const FuzzyAnswerSet& answers, const std::vector<IndividualName>& tuple) {
    auto it = answers.rows.find(tuple);
    REQUIRE(it != answers.rows.end());
    return it->second;
}

} // namespace

TEST_CASE("query parsing") {
    ThresholdedQuery q = parse_query("Arg(?x) > 0.75");
    CHECK(q.cmp == ThresholdCmp::Gt);
    CHECK(q.k == 0.75);
    REQUIRE(q.query.disjuncts.size() == 1);
    CHECK(q.query.disjuncts[0].atoms.size() == 1);
    REQUIRE(q.query.disjuncts[0].free_variables().size() == 1);
    CHECK(q.query.disjuncts[0].free_variables()[0].name == "x");

    ThresholdedQuery q2 =
        parse_query("q(?x) := topic(?y,climate), textOf(?y,?x), Left(?z), att(?w,?y), Right(?w)");
    CHECK(q2.cmp == ThresholdCmp::Gt);
    CHECK(q2.k == 0.0); // bare queries read as "> 0"
    REQUIRE(q2.query.disjuncts.size() == 1);
    CHECK(q2.query.disjuncts[0].atoms.size() == 5);
    REQUIRE(q2.query.disjuncts[0].free_variables().size() == 1);
    CHECK(q2.query.disjuncts[0].free_variables()[0].name == "x");

    ThresholdedQuery u = parse_query("q(?x) := [Left(?x)] | [Right(?x)] >= 0.5");
    CHECK(u.cmp == ThresholdCmp::Ge);
    CHECK(u.query.disjuncts.size() == 2);

    // constants: plain, argument-sorted, quoted text
    ThresholdedQuery c = parse_query("q() := textOf(a1, \"hello \\\"world\\\"\"), topic(a1, climate)");
    CHECK(c.query.disjuncts[0].head.empty());
    CHECK(std::get<IndividualName>(c.query.disjuncts[0].atoms[0].args[1]).label == "hello \"world\"");
}

TEST_CASE("query parse errors") {
    CHECK_THROWS_AS(parse_query("Arg(?x) >= 1.5"), Error); // threshold range
    CHECK_THROWS_AS(parse_query("Arg(?x) >= 0"), Error);
    CHECK_THROWS_AS(parse_query("Arg(?x) > 1"), Error);
    CHECK_THROWS_AS(parse_query("Left(?x,?y)"), Error);    // concept arity
    CHECK_THROWS_AS(parse_query("topic(?x)"), Error);      // role arity
    CHECK_THROWS_AS(parse_query("Arg(?x,"), Error);
    CHECK_THROWS_AS(parse_query(""), Error);
    CHECK_THROWS_AS(parse_query("q(?x) := Left(?y)"), Error);       // free var unused
    CHECK_THROWS_AS(parse_query("q(?x,?x) := Left(?x)"), Error);    // duplicate head var
    CHECK_THROWS_AS(parse_query("[Left(?x)] | [Right(?y)]"), Error); // headless union mismatch

    try {
        parse_query("Arg(?x) @ 1");
        FAIL("expected a syntax error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("position") != std::string::npos);
    }
}

TEST_CASE("rewrite dumps are parseable") {
    UnionQuery rewritten = perfect_ref(parse_query("Party(?x)").query, climate_tbox());
    std::string dump = print_union_query(rewritten);
    for (std::size_t start = 0; start < dump.size();) {
        std::size_t end = dump.find('\n', start);
        ThresholdedQuery line = parse_query(dump.substr(start, end - start));
        CHECK(line.query.disjuncts.size() == 1);
        start = end + 1;
    }
}

TEST_CASE("rewriting through the climate ontology") {
    UnionQuery party = perfect_ref(parse_query("Party(?x)").query, climate_tbox());
    REQUIRE(party.disjuncts.size() == 4);
    std::string dump = print_union_query(party);
    CHECK(dump.find("Party(?x)") != std::string::npos);
    CHECK(dump.find("Left(?x)") != std::string::npos);
    CHECK(dump.find("Right(?x)") != std::string::npos);
    CHECK(dump.find("saidBy(?_0,?x)") != std::string::npos);

    // an unbound second position trades the role atom for its domain concept
    UnionQuery boolean_topic = perfect_ref(parse_query("q() := topic(a1,?y)").query, climate_tbox());
    REQUIRE(boolean_topic.disjuncts.size() == 2);
    CHECK(print_union_query(boolean_topic).find("saidBy(a1,?_0)") != std::string::npos);

    // a bound position blocks the trade: the filler is constrained
    UnionQuery bound = perfect_ref(parse_query("q(?y) := topic(a1,?y)").query, climate_tbox());
    CHECK(bound.disjuncts.size() == 1);
}

TEST_CASE("rewriting with an empty ontology echoes the input") {
    Tbox empty;
    UnionQuery q = parse_query("q(?x) := Arg(?x), att(?y,?x)").query;
    UnionQuery out = perfect_ref(q, empty);
    CHECK(print_union_query(out) == print_union_query(q));
}

TEST_CASE("built-in atoms are never rewrite targets") {
    UnionQuery q = parse_query("q(?x) := Arg(?x), att(?y,?x), textOf(?x,?t)").query;
    UnionQuery out = perfect_ref(q, climate_tbox());
    CHECK(print_union_query(out) == print_union_query(q));
}

TEST_CASE("reduce unlocks applicability by merging atoms") {
    Tbox t = parse_tbox_text("A <= exists r\n");
    UnionQuery q = parse_query("q(?x) := r(?x,?y), r(?x,?z)").query;
    UnionQuery out = perfect_ref(q, t);
    CHECK(print_union_query(out).find("A(?x)") != std::string::npos);

    Fabox store;
    store.add(FuzzyAssertion::concept_assertion("A", IndividualName::plain("c"), 0.9));
    FuzzyAnswerSet answers = fcert(parse_query("q(?x) := r(?x,?y), r(?x,?z)"), t, store);
    REQUIRE(answers.rows.size() == 1);
    CHECK(degree_of(answers, {IndividualName::plain("c")}) == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("reduce may specialize an answer position to a constant") {
    Tbox t = parse_tbox_text("B <= exists r\n");
    Fabox store;
    store.add(FuzzyAssertion::concept_assertion("B", IndividualName::plain("c")));
    FuzzyAnswerSet answers = fcert(parse_query("q(?x) := r(?x,?y), r(c,?y)"), t, store);
    REQUIRE(answers.rows.size() == 1);
    CHECK(degree_of(answers, {IndividualName::plain("c")}) == 1.0);
}

TEST_CASE("direct evaluation over the updated climate store") {
    Fabox store = climate_updated();

    FuzzyAnswerSet all_args = fans(parse_query("Arg(?x)").query, store);
    REQUIRE(all_args.rows.size() == 3);
    CHECK(degree_of(all_args, {IndividualName::argument(1)}) == doctest::Approx(0.703).epsilon(1e-3));
    CHECK(degree_of(all_args, {IndividualName::argument(2)}) == 0.6);
    CHECK(degree_of(all_args, {IndividualName::argument(3)}) == 0.8);

    // conjunction takes the minimum over the matched degrees
    FuzzyAnswerSet attacked = fans(parse_query("q(?x) := Arg(?x), att(?y,?x)").query, store);
    REQUIRE(attacked.rows.size() == 1);
    CHECK(degree_of(attacked, {IndividualName::argument(1)}) == 0.5);

    CHECK(fans(parse_query("Arg(?x)").query, Fabox{}).rows.empty());

    // boolean query: the empty tuple carries the degree
    FuzzyAnswerSet boolean_q = fans(parse_query("q() := Arg(a3)").query, store);
    REQUIRE(boolean_q.rows.size() == 1);
    CHECK(boolean_q.rows.begin()->second == 0.8);
}

TEST_CASE("existential choice takes the best homomorphism") {
    Fabox store;
    auto x = IndividualName::plain("x");
    store.add(FuzzyAssertion::concept_assertion("A", x, 1.0));
    store.add(FuzzyAssertion::role_assertion("r", x, IndividualName::plain("y1"), 0.3));
    store.add(FuzzyAssertion::role_assertion("r", x, IndividualName::plain("y2"), 0.9));
    FuzzyAnswerSet answers = fans(parse_query("q(?a) := A(?a), r(?a,?b)").query, store);
    CHECK(degree_of(answers, {x}) == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("certain answers on the climate knowledge base") {
    Tbox t = climate_tbox();
    Fabox store = climate_updated();

    FuzzyAnswerSet strong = fcert(parse_query("Arg(?x) > 0.75"), t, store);
    REQUIRE(strong.rows.size() == 1);
    CHECK(degree_of(strong, {IndividualName::argument(3)}) == 0.8);

    // unsatisfiable threshold
    CHECK(fcert(parse_query("Arg(?x) > 0.9"), t, store).rows.empty());

    // threshold comparators at the boundary
    CHECK(fcert(parse_query("Arg(?x) >= 0.8"), t, store).rows.size() == 1);
    CHECK(fcert(parse_query("Arg(?x) > 0.8"), t, store).rows.empty());

    // rewriting feeds evaluation: Party holds via saidBy fillers
    FuzzyAnswerSet parties = fcert(parse_query("Party(?x)"), t, store);
    REQUIRE(parties.rows.size() == 2);
    CHECK(degree_of(parties, {IndividualName::plain("g")}) == 1.0);
    CHECK(degree_of(parties, {IndividualName::plain("c")}) == 1.0);
}

// The published walkthrough pairs this query with the answer
// {(TA1, 0.703)}. Under minimum-based conjunction that degree cannot
// arise: every match has to cross the att edge, whose weight 0.5 caps the
// row degree, and the literal form also binds ?w to an argument that is
// never asserted Right. The engine and the model-theoretic oracle agree on
// the outcome below; the acceptance suite tracks the published value as an
// open defect.
TEST_CASE("the attacked-climate-arguments query, literal and repaired") {
    Tbox t = climate_tbox();
    Fabox store = climate_updated();

    ThresholdedQuery literal =
        parse_query("q(?x) := topic(?y,climate), textOf(?y,?x), Left(?z), att(?w,?y), Right(?w)");
    CHECK(fcert(literal, t, store).rows.empty());
    CHECK(oracle_fcert_small(literal, t, store, 64).rows.empty());

    ThresholdedQuery repaired = parse_query(
        "q(?x) := topic(?y,climate), textOf(?y,?x), saidBy(?y,?z), Left(?z), att(?w,?y), "
        "saidBy(?w,?v), Right(?v)");
    FuzzyAnswerSet answers = fcert(repaired, t, store);
    REQUIRE(answers.rows.size() == 1);
    CHECK(degree_of(answers, {IndividualName::text(kClimateText1)}) == 0.5);
    CHECK(oracle_fcert_small(repaired, t, store, 64) == answers);
}

TEST_CASE("inconsistent knowledge bases are refused") {
    Tbox t = climate_tbox();
    Fabox store = climate_updated();
    store.add(FuzzyAssertion::concept_assertion("Right", IndividualName::plain("g")));
    try {
        fcert(parse_query("Arg(?x)"), t, store);
        FAIL("expected a refusal");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Inconsistent);
        CHECK(std::string(e.what()).find("Left <= not Right") != std::string::npos);
    }
    CHECK_THROWS_AS(fcert(parse_query("Arg(?x)"), parse_tbox_text("Important <= Arg\n"), Fabox{}), Error);
}

TEST_CASE("rewriting is a function of the query and ontology alone") {
    Tbox t = climate_tbox();
    UnionQuery q = parse_query("Party(?x)").query;
    std::string dump = print_union_query(perfect_ref(q, t));
    CHECK(print_union_query(perfect_ref(q, t)) == dump); // repeatable, store never consulted
}

TEST_CASE("raising the threshold never adds rows") {
    std::mt19937_64 rng(2468);
    int done = 0;
    for (int trial = 0; trial < 200 && done < 60; ++trial) {
        auto kb = testgen::random_kb(rng);
        if (!check_fabox_consistency(kb.fabox).ok()) continue;
        if (!check_kb_consistency(kb.tbox, kb.fabox).ok()) continue;
        ++done;
        ThresholdedQuery base = kb.query;
        base.cmp = ThresholdCmp::Gt;
        base.k = 0.0;
        FuzzyAnswerSet everything = fcert(base, kb.tbox, kb.fabox);
        // "> 0" returns exactly the evaluation of the rewriting
        CHECK(everything == fans(perfect_ref(base.query, kb.tbox), kb.fabox));

        ThresholdedQuery tighter = base;
        tighter.k = 0.5;
        FuzzyAnswerSet filtered = fcert(tighter, kb.tbox, kb.fabox);
        for (const auto& [tuple, degree] : filtered.rows) {
            CHECK(degree > 0.5);
            CHECK(everything.rows.count(tuple));
            CHECK(everything.rows.at(tuple) == degree); // degrees are the unfiltered ones
        }
        for (const auto& [tuple, degree] : everything.rows) {
            CHECK(degree > 0.0);
            CHECK(degree <= 1.0);
            if (degree > 0.5) CHECK(filtered.rows.count(tuple));
        }
    }
    CHECK(done >= 50);
}

TEST_CASE("duplicating a disjunct changes nothing") {
    Tbox t = climate_tbox();
    Fabox store = climate_updated();
    ThresholdedQuery once = parse_query("q(?x) := [Arg(?x)] | [Arg(?x)]");
    FuzzyAnswerSet doubled = fcert(once, t, store);
    CHECK(doubled == fcert(parse_query("Arg(?x)"), t, store));
}

TEST_CASE("with no axioms the oracle is plain evaluation") {
    std::mt19937_64 rng(13579);
    Tbox empty;
    int done = 0;
    for (int trial = 0; trial < 120 && done < 40; ++trial) {
        auto kb = testgen::random_kb(rng);
        if (!check_fabox_consistency(kb.fabox).ok()) continue;
        ++done;
        ThresholdedQuery q = kb.query;
        q.k = 0.0;
        q.cmp = ThresholdCmp::Gt;
        CHECK(oracle_fcert_small(q, empty, kb.fabox, 16) == fans(q.query, kb.fabox));
    }
    CHECK(done >= 30);
}

TEST_CASE("the oracle matches certain answers on the climate fixtures") {
    Tbox t = climate_tbox();
    Fabox store = climate_updated();
    for (const char* text :
         {"Arg(?x) > 0.75", "Party(?x)", "q() := topic(a1,?y)", "q(?x) := Arg(?x), att(?y,?x)"}) {
        ThresholdedQuery q = parse_query(text);
        CHECK(fcert(q, t, store) == oracle_fcert_small(q, t, store, 64));
    }
}

TEST_CASE("the chase stops at its witness budget") {
    // every witness demands another one: the chase is infinite
    Tbox t = parse_tbox_text("A <= exists r\nexists r- <= A\n");
    Fabox store;
    store.add(FuzzyAssertion::concept_assertion("A", IndividualName::plain("x"), 1.0));
    try {
        oracle_fcert_small(parse_query("A(?x)"), t, store, 8);
        FAIL("expected the witness budget to blow");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OracleIncomplete);
    }
}

TEST_CASE("certain answers equal the oracle on random knowledge bases") {
    std::mt19937_64 rng(86420);
    int compared = 0;
    for (int trial = 0; trial < 400 && compared < 80; ++trial) {
        auto kb = testgen::random_kb(rng);
        if (!check_fabox_consistency(kb.fabox).ok()) continue;
        if (!check_kb_consistency(kb.tbox, kb.fabox).ok()) continue;
        FuzzyAnswerSet via_rewriting = fcert(kb.query, kb.tbox, kb.fabox);
        try {
            FuzzyAnswerSet via_model = oracle_fcert_small(kb.query, kb.tbox, kb.fabox, 48);
            REQUIRE(via_rewriting.rows.size() == via_model.rows.size());
            for (const auto& [tuple, degree] : via_model.rows) {
                REQUIRE(via_rewriting.rows.count(tuple));
                CHECK(via_rewriting.rows.at(tuple) == doctest::Approx(degree).epsilon(1e-9));
            }
            ++compared;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::OracleIncomplete) throw;
        }
    }
    CHECK(compared >= 80);
}
