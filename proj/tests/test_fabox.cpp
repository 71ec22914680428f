// test_fabox.cpp : fact-store consistency, projection, strength update,
//                  serialization
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

#include <random>

#include "error.hpp"
#include "fabox.hpp"
#include "fabox_io.hpp"

using namespace fakb;

namespace {

IndividualName arg(int k) { return IndividualName::argument(k); }
IndividualName txt(const std::string& s) { return IndividualName::text(s); }

// Minimal three-argument store mirroring the running debate.
Fabox debate_store() {
    Fabox f;
    f.add(FuzzyAssertion::concept_assertion("Arg", arg(1), 0.7));
    f.add(FuzzyAssertion::concept_assertion("Arg", arg(2), 0.6));
    f.add(FuzzyAssertion::concept_assertion("Arg", arg(3), 0.8));
    f.add(FuzzyAssertion::role_assertion("att", arg(2), arg(1), 0.5));
    f.add(FuzzyAssertion::role_assertion("sup", arg(3), arg(1), 0.5));
    for (int i = 1; i <= 3; ++i) {
        std::string t = "text " + std::to_string(i);
        f.add(FuzzyAssertion::concept_assertion("TArg", txt(t)));
        f.add(FuzzyAssertion::role_assertion("textOf", arg(i), txt(t)));
    }
    f.add(FuzzyAssertion::concept_assertion("Left", IndividualName::plain("g")));
    f.add(FuzzyAssertion::role_assertion("saidBy", arg(1), IndividualName::plain("g")));
    return f;
}

bool has_rule(const FaboxReport& report, const std::string& rule) {
    for (const auto& v : report.violations)
        if (v.rule == rule) return true;
    return false;
}

} // namespace

TEST_CASE("assertion construction checks sorts, names and degrees") {
    CHECK_THROWS_AS(FuzzyAssertion::concept_assertion("Arg", IndividualName::plain("g")), Error);
    CHECK_THROWS_AS(FuzzyAssertion::concept_assertion("TArg", arg(1)), Error);
    CHECK_THROWS_AS(FuzzyAssertion::role_assertion("att", arg(1), IndividualName::plain("g")), Error);
    CHECK_THROWS_AS(FuzzyAssertion::role_assertion("textOf", arg(1), arg(2)), Error);
    CHECK_THROWS_AS(FuzzyAssertion::concept_assertion("Arg", arg(1), 1.2), Error);
    CHECK_THROWS_AS(FuzzyAssertion::concept_assertion("Arg", arg(1), -0.1), Error);
    CHECK_THROWS_AS(FuzzyAssertion::concept_assertion("left", IndividualName::plain("g")), Error);
    CHECK_THROWS_AS(FuzzyAssertion::role_assertion("SaidBy", arg(1), IndividualName::plain("g")), Error);
    // text individuals live in TArg/textOf positions only
    CHECK_THROWS_AS(FuzzyAssertion::role_assertion("topic", arg(1), txt("x")), Error);
    // reserved a<k> space
    CHECK_THROWS_AS(IndividualName::plain("a7"), Error);
}

TEST_CASE("exact duplicates collapse, degree conflicts are kept for the checker") {
    Fabox f;
    f.add(FuzzyAssertion::concept_assertion("Left", IndividualName::plain("g")));
    f.add(FuzzyAssertion::concept_assertion("Left", IndividualName::plain("g")));
    CHECK(f.size() == 1);
    f.add(FuzzyAssertion::concept_assertion("Arg", arg(1), 0.5));
    f.add(FuzzyAssertion::concept_assertion("Arg", arg(1), 0.6));
    CHECK(f.size() == 3);
    FaboxReport report = check_fabox_consistency(f);
    CHECK(has_rule(report, "arg-degree-functional"));
}

TEST_CASE("the debate store is consistent") {
    FaboxReport report = check_fabox_consistency(debate_store());
    CHECK(report.ok());
    CHECK(report.warnings.empty());
}

TEST_CASE("a second relation on the same ordered pair is a violation") {
    Fabox f = debate_store();
    f.add(FuzzyAssertion::role_assertion("sup", arg(2), arg(1), 0.4));
    CHECK(has_rule(check_fabox_consistency(f), "one-relation-per-pair"));

    Fabox g = debate_store();
    g.add(FuzzyAssertion::role_assertion("att", arg(2), arg(1), 0.9)); // same kind, new degree
    CHECK(has_rule(check_fabox_consistency(g), "one-relation-per-pair"));
}

TEST_CASE("relations need both endpoints asserted") {
    Fabox f = debate_store();
    f.add(FuzzyAssertion::role_assertion("att", arg(9), arg(1), 0.5));
    CHECK(has_rule(check_fabox_consistency(f), "relation-endpoint-asserted"));
}

TEST_CASE("textOf must be a bijection") {
    Fabox orphan_arg = debate_store();
    orphan_arg.add(FuzzyAssertion::concept_assertion("Arg", arg(4), 0.5));
    CHECK(has_rule(check_fabox_consistency(orphan_arg), "arg-without-text"));

    Fabox orphan_text = debate_store();
    orphan_text.add(FuzzyAssertion::concept_assertion("TArg", txt("stray")));
    CHECK(has_rule(check_fabox_consistency(orphan_text), "text-without-arg"));

    Fabox two_texts = debate_store();
    two_texts.add(FuzzyAssertion::concept_assertion("TArg", txt("extra")));
    two_texts.add(FuzzyAssertion::role_assertion("textOf", arg(1), txt("extra")));
    CHECK(has_rule(check_fabox_consistency(two_texts), "textof-functional"));

    Fabox shared_text = debate_store();
    shared_text.add(FuzzyAssertion::role_assertion("textOf", arg(2), txt("text 1")));
    CHECK(has_rule(check_fabox_consistency(shared_text), "textof-injective"));

    Fabox dangling = debate_store();
    dangling.add(FuzzyAssertion::role_assertion("textOf", arg(1), txt("nowhere")));
    FaboxReport report = check_fabox_consistency(dangling);
    CHECK(has_rule(report, "textof-needs-targ"));
}

TEST_CASE("self-loops and fuzzy entity facts are warnings, not violations") {
    Fabox f = debate_store();
    f.add(FuzzyAssertion::role_assertion("att", arg(2), arg(2), 0.3));
    f.add(FuzzyAssertion::concept_assertion("Controversial", IndividualName::plain("g"), 0.4));
    FaboxReport report = check_fabox_consistency(f);
    CHECK(report.ok());
    CHECK(report.warnings.size() == 2);
}

TEST_CASE("projection to the argumentation graph") {
    WeightedQbaf qbaf = underlying_qbaf(debate_store());
    CHECK(qbaf.size() == 3);
    CHECK(qbaf.arguments().at(ArgumentId{1}) == 0.7);
    CHECK(qbaf.arguments().at(ArgumentId{2}) == 0.6);
    CHECK(qbaf.arguments().at(ArgumentId{3}) == 0.8);
    CHECK(qbaf.attacks().at({ArgumentId{2}, ArgumentId{1}}) == 0.5);
    CHECK(qbaf.supports().at({ArgumentId{3}, ArgumentId{1}}) == 0.5);

    // entity degrees never reach the graph
    CHECK(qbaf.attacks().size() == 1);
    CHECK(qbaf.supports().size() == 1);

    Fabox empty;
    CHECK(underlying_qbaf(empty).empty());

    Fabox broken = debate_store();
    broken.add(FuzzyAssertion::concept_assertion("Arg", arg(1), 0.1));
    CHECK_THROWS_AS(underlying_qbaf(broken), Error);
}

TEST_CASE("strength update replaces exactly the argument degrees") {
    ModularSemantics sem = make_semantics("quadratic-energy");
    StrengthUpdate update = apply_strength_update_detailed(debate_store(), sem);

    auto degree_of = [&](const Fabox& f, const std::string& pred, const IndividualName& ind) {
        for (const auto& a : f.assertions())
            if (a.predicate == pred && a.args[0] == ind) return a.degree;
        FAIL("missing assertion");
        return -1.0;
    };
    CHECK(degree_of(update.updated, "Arg", arg(1)) == doctest::Approx(71.0 / 101.0).epsilon(1e-9));
    CHECK(degree_of(update.updated, "Arg", arg(2)) == 0.6);
    CHECK(degree_of(update.updated, "Arg", arg(3)) == 0.8);
    CHECK(update.assignment.converged);

    // relation weights and crisp facts are untouched
    for (const auto& a : update.updated.assertions()) {
        if (a.predicate == "att" || a.predicate == "sup") CHECK(a.degree == 0.5);
        if (a.predicate == "Left" || a.predicate == "saidBy") CHECK(a.degree == 1.0);
    }
    CHECK(check_fabox_consistency(update.updated).ok());

    // the updated store's graph carries the computed strengths as its taus
    WeightedQbaf after = underlying_qbaf(update.updated);
    for (const auto& [id, rho] : update.assignment.values)
        CHECK(after.arguments().at(id) == rho);
}

TEST_CASE("updating is not idempotent and is applied once by design") {
    ModularSemantics sem = make_semantics("quadratic-energy");
    Fabox once = apply_strength_update(debate_store(), sem);
    Fabox twice = apply_strength_update(once, sem);

    auto a1_degree = [&](const Fabox& f) {
        for (const auto& a : f.assertions())
            if (a.predicate == "Arg" && a.args[0] == arg(1)) return a.degree;
        return -1.0;
    };
    CHECK(a1_degree(once) == doctest::Approx(71.0 / 101.0).epsilon(1e-9));
    CHECK(a1_degree(twice) != a1_degree(once));
}

TEST_CASE("a relation-free store updates to itself") {
    ModularSemantics sem = make_semantics("quadratic-energy");
    Fabox f;
    f.add(FuzzyAssertion::concept_assertion("Arg", arg(1), 0.42));
    f.add(FuzzyAssertion::concept_assertion("TArg", txt("t")));
    f.add(FuzzyAssertion::role_assertion("textOf", arg(1), txt("t")));
    CHECK(serialize_fabox_text(apply_strength_update(f, sem)) == serialize_fabox_text(f));
}

TEST_CASE("non-convergence surfaces as an update error with partial values") {
    ModularSemantics sem = make_semantics("quadratic-energy");
    Fabox f;
    f.add(FuzzyAssertion::concept_assertion("Arg", arg(1), 0.5));
    f.add(FuzzyAssertion::concept_assertion("Arg", arg(2), 0.5));
    f.add(FuzzyAssertion::role_assertion("att", arg(1), arg(2), 1.0));
    f.add(FuzzyAssertion::role_assertion("att", arg(2), arg(1), 1.0));
    for (int i = 1; i <= 2; ++i) {
        std::string t = "t" + std::to_string(i);
        f.add(FuzzyAssertion::concept_assertion("TArg", txt(t)));
        f.add(FuzzyAssertion::role_assertion("textOf", arg(i), txt(t)));
    }
    try {
        apply_strength_update(f, sem, 1e-9, 1);
        FAIL("expected a non-convergence error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonConvergence);
        CHECK(std::string(e.what()).find("a1=") != std::string::npos);
    }
}

TEST_CASE("line format round trip is byte identical after canonicalization") {
    std::string canonical = serialize_fabox_text(debate_store());
    Fabox reparsed = parse_fabox_text(canonical);
    CHECK(serialize_fabox_text(reparsed) == canonical);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        Fabox f;
        std::uniform_int_distribution<int> n(1, 6);
        int k = n(rng);
        for (int i = 1; i <= k; ++i) {
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            f.add(FuzzyAssertion::concept_assertion("Arg", arg(i), unit(rng)));
            std::string t = "argument text \"quoted\" \\ " + std::to_string(i);
            f.add(FuzzyAssertion::concept_assertion("TArg", txt(t)));
            f.add(FuzzyAssertion::role_assertion("textOf", arg(i), txt(t)));
            if (i > 1) f.add(FuzzyAssertion::role_assertion("att", arg(i), arg(i - 1), unit(rng)));
            f.add(FuzzyAssertion::role_assertion("author", arg(i), IndividualName::plain("p" + std::to_string(i))));
        }
        std::string first = serialize_fabox_text(f);
        std::string second = serialize_fabox_text(parse_fabox_text(first));
        CHECK(first == second);
    }
}

TEST_CASE("json mirror round trip") {
    Fabox f = debate_store();
    std::string dumped = serialize_fabox_json(f);
    Fabox reparsed = parse_fabox_json(dumped);
    CHECK(serialize_fabox_json(reparsed) == dumped);
    // both formats agree on the content
    CHECK(serialize_fabox_text(reparsed) == serialize_fabox_text(f));
}

TEST_CASE("parser diagnostics") {
    CHECK_THROWS_AS(parse_fabox_text("concept Arg(a1) : 1.5\n"), Error);      // degree out of range
    CHECK_THROWS_AS(parse_fabox_text("role att(a2,a1) : -0.25\n"), Error);
    CHECK_THROWS_AS(parse_fabox_text("fact Left(g)\n"), Error);               // unknown kind
    CHECK_THROWS_AS(parse_fabox_text("concept Left(g\n"), Error);             // missing paren
    CHECK_THROWS_AS(parse_fabox_text("concept Left(g) : x\n"), Error);        // bad degree
    CHECK_THROWS_AS(parse_fabox_text("concept Left(g,h)\n"), Error);          // arity
    CHECK_THROWS_AS(parse_fabox_text("role textOf(a1,\"unterminated)\n"), Error);

    try {
        parse_fabox_text("concept Left(g)\nconcept Arg(a1) : 2\n");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }

    // comments and blank lines are fine, '#' inside quotes is content
    Fabox f = parse_fabox_text("# header\n\nconcept Left(g) # trailing\nconcept TArg(\"a # b\")\n");
    CHECK(f.size() == 2);
}

TEST_CASE("file loading sniffs the format from the extension") {
    std::string dir = FAKB_FIXTURE_DIR;
    Fabox text_form = load_fabox_file(dir + "/climate_source.fabox");
    CHECK(text_form.size() == 19);
    CHECK(check_fabox_consistency(text_form).ok());
    CHECK_THROWS_AS(load_fabox_file(dir + "/does_not_exist.fabox"), Error);
}

TEST_CASE("graph export lists typed nodes and edges") {
    std::string graph = export_graph_json(debate_store());
    CHECK(graph.find("\"argument\"") != std::string::npos);
    CHECK(graph.find("\"text\"") != std::string::npos);
    CHECK(graph.find("\"entity\"") != std::string::npos);
    CHECK(graph.find("\"concept\"") != std::string::npos);
    CHECK(graph.find("\"att\"") != std::string::npos);
    CHECK(graph.find("\"sup\"") != std::string::npos);
    CHECK(graph.find("\"instance\"") != std::string::npos);
    CHECK(graph.find("\"role\"") != std::string::npos);
}
