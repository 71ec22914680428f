// fabox.cpp : fact-store consistency and strength update
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

#include "fabox.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "error.hpp"

namespace fakb {

bool is_builtin_concept(const std::string& p) { return p == "Arg" || p == "TArg"; }
bool is_builtin_role(const std::string& p) { return p == "att" || p == "sup" || p == "textOf"; }
bool is_builtin_predicate(const std::string& p) { return is_builtin_concept(p) || is_builtin_role(p); }

bool is_concept_name(const std::string& p) {
    return !p.empty() && p[0] >= 'A' && p[0] <= 'Z';
}
bool is_role_name(const std::string& p) {
    return !p.empty() && ((p[0] >= 'a' && p[0] <= 'z') || p[0] == '_');
}

namespace {

void check_degree(double degree, const std::string& what) {
    if (!(degree >= 0.0 && degree <= 1.0))
        raise(ErrorCode::Domain, "degree of " + what + " must lie in [0,1], got " + std::to_string(degree));
}

void check_predicate_name(const std::string& p, AssertionKind kind) {
    if (p.empty()) raise(ErrorCode::Parse, "empty predicate name");
    if (kind == AssertionKind::Concept && !is_concept_name(p))
        raise(ErrorCode::Parse, "concept names start with an upper-case letter: '" + p + "'");
    if (kind == AssertionKind::Role && !is_role_name(p))
        raise(ErrorCode::Parse, "role names start with a lower-case letter: '" + p + "'");
}

void check_sorts(const FuzzyAssertion& a) {
    auto want = [&](std::size_t i, NameSort sort, const char* sort_name) {
        if (a.args[i].sort != sort)
            raise(ErrorCode::Domain, a.predicate + " takes a " + sort_name + "-sorted individual at position " +
                                         std::to_string(i + 1) + ", got '" + print_individual(a.args[i]) + "'");
    };
    if (a.predicate == "Arg") want(0, NameSort::Argument, "argument");
    if (a.predicate == "TArg") want(0, NameSort::Text, "text");
    if (a.predicate == "att" || a.predicate == "sup") {
        want(0, NameSort::Argument, "argument");
        want(1, NameSort::Argument, "argument");
    }
    if (a.predicate == "textOf") {
        want(0, NameSort::Argument, "argument");
        want(1, NameSort::Text, "text");
    }
    // Text individuals are confined to the TArg/textOf positions above.
    if (!is_builtin_predicate(a.predicate))
        for (std::size_t i = 0; i < a.args.size(); ++i)
            if (a.args[i].is_text())
                raise(ErrorCode::Domain,
                      "text individuals may only appear in TArg or textOf assertions, found one in " + a.predicate);
}

} // namespace

FuzzyAssertion FuzzyAssertion::concept_assertion(std::string predicate, IndividualName arg, double degree) {
    check_predicate_name(predicate, AssertionKind::Concept);
    FuzzyAssertion a{AssertionKind::Concept, std::move(predicate), {std::move(arg)}, degree};
    check_degree(degree, a.predicate);
    check_sorts(a);
    return a;
}

FuzzyAssertion FuzzyAssertion::role_assertion(std::string predicate, IndividualName x, IndividualName y,
                                              double degree) {
    check_predicate_name(predicate, AssertionKind::Role);
    FuzzyAssertion a{AssertionKind::Role, std::move(predicate), {std::move(x), std::move(y)}, degree};
    check_degree(degree, a.predicate);
    check_sorts(a);
    return a;
}

std::string FuzzyAssertion::crisp_key() const {
    std::string key = kind == AssertionKind::Concept ? "c|" : "r|";
    key += predicate;
    for (const auto& arg : args) {
        key += '|';
        key += std::to_string(static_cast<int>(arg.sort));
        key += ':';
        key += arg.label;
    }
    return key;
}

std::string FuzzyAssertion::str() const {
    std::ostringstream out;
    out << (kind == AssertionKind::Concept ? "concept " : "role ") << predicate << '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out << ',';
        out << print_individual(args[i]);
    }
    out << ')';
    if (degree != 1.0) out << " : " << format_degree(degree);
    return out.str();
}

std::string format_degree(double degree) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", degree);
    return buf;
}

bool FuzzyAssertion::operator==(const FuzzyAssertion& o) const {
    return kind == o.kind && predicate == o.predicate && args == o.args && degree == o.degree;
}

bool FuzzyAssertion::operator<(const FuzzyAssertion& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (predicate != o.predicate) return predicate < o.predicate;
    if (args != o.args) {
        return std::lexicographical_compare(args.begin(), args.end(), o.args.begin(), o.args.end());
    }
    return degree < o.degree;
}

void Fabox::add(FuzzyAssertion a) {
    for (const auto& existing : assertions_)
        if (existing == a) return; // set semantics on exact duplicates
    assertions_.push_back(std::move(a));
}

std::vector<FuzzyAssertion> Fabox::sorted() const {
    std::vector<FuzzyAssertion> copy = assertions_;
    std::sort(copy.begin(), copy.end());
    return copy;
}

std::string FaboxReport::str() const {
    std::ostringstream out;
    if (ok()) {
        out << "consistent";
    } else {
        out << violations.size() << " violation(s)";
        for (const auto& v : violations) out << "\n  [" << v.rule << "] " << v.message;
    }
    for (const auto& w : warnings) out << "\n  warning: " << w;
    return out.str();
}

FaboxReport check_fabox_consistency(const Fabox& fabox) {
    FaboxReport report;

    // Functional degrees on every crisp fact.
    std::unordered_map<std::string, const FuzzyAssertion*> by_key;
    for (const auto& a : fabox.assertions()) {
        auto [it, inserted] = by_key.emplace(a.crisp_key(), &a);
        if (!inserted && it->second->degree != a.degree) {
            const char* rule = a.predicate == "Arg" ? "arg-degree-functional" : "degree-functional";
            report.violations.push_back(
                {rule, "conflicting degrees for the same fact: " + it->second->str() + " vs " + a.str()});
        }
    }

    std::set<IndividualName> asserted_args;   // individuals with an Arg assertion
    std::set<IndividualName> asserted_texts;  // individuals with a TArg assertion
    for (const auto& a : fabox.assertions()) {
        if (a.predicate == "Arg") asserted_args.insert(a.args[0]);
        if (a.predicate == "TArg") asserted_texts.insert(a.args[0]);
    }

    // One relation per ordered argument pair, endpoints asserted.
    std::map<std::pair<IndividualName, IndividualName>, const FuzzyAssertion*> relation_on_pair;
    for (const auto& a : fabox.assertions()) {
        if (a.predicate != "att" && a.predicate != "sup") continue;
        std::pair<IndividualName, IndividualName> pair{a.args[0], a.args[1]};
        auto [it, inserted] = relation_on_pair.emplace(pair, &a);
        if (!inserted && !(*it->second == a))
            report.violations.push_back({"one-relation-per-pair",
                                         "ordered pair carries more than one relation: " + it->second->str() +
                                             " vs " + a.str()});
        for (const auto& endpoint : a.args)
            if (!asserted_args.count(endpoint))
                report.violations.push_back(
                    {"relation-endpoint-asserted",
                     a.str() + " mentions " + endpoint.label + " which has no Arg assertion"});
        if (a.args[0] == a.args[1])
            report.warnings.push_back("self-loop relation " + a.str());
    }

    // textOf: a bijection between asserted arguments and asserted texts.
    std::map<IndividualName, std::vector<const FuzzyAssertion*>> text_of_arg;
    std::map<IndividualName, std::vector<const FuzzyAssertion*>> arg_of_text;
    for (const auto& a : fabox.assertions()) {
        if (a.predicate != "textOf") continue;
        text_of_arg[a.args[0]].push_back(&a);
        arg_of_text[a.args[1]].push_back(&a);
        if (!asserted_args.count(a.args[0]))
            report.violations.push_back(
                {"textof-needs-arg", a.str() + " pairs " + a.args[0].label + " which has no Arg assertion"});
        if (!asserted_texts.count(a.args[1]))
            report.violations.push_back(
                {"textof-needs-targ", a.str() + " pairs a text with no TArg assertion"});
    }
    for (const auto& [arg, entries] : text_of_arg)
        if (entries.size() > 1)
            report.violations.push_back({"textof-functional", "argument " + arg.label + " is paired with " +
                                                                  std::to_string(entries.size()) + " texts"});
    for (const auto& [text, entries] : arg_of_text)
        if (entries.size() > 1)
            report.violations.push_back({"textof-injective", "text " + print_individual(text) + " is paired with " +
                                                                 std::to_string(entries.size()) + " arguments"});
    for (const auto& arg : asserted_args)
        if (!text_of_arg.count(arg))
            report.violations.push_back(
                {"arg-without-text", "argument " + arg.label + " has no textOf pairing"});
    for (const auto& text : asserted_texts)
        if (!arg_of_text.count(text))
            report.violations.push_back(
                {"text-without-arg", "text " + print_individual(text) + " has no textOf pairing"});

    // Fuzzy degrees are reserved for Arg/att/sup.
    for (const auto& a : fabox.assertions())
        if (a.degree != 1.0 && !(a.predicate == "Arg" || a.predicate == "att" || a.predicate == "sup"))
            report.warnings.push_back("non-argumentative assertion with degree below 1: " + a.str());

    return report;
}

WeightedQbaf underlying_qbaf(const Fabox& fabox) {
    FaboxReport report = check_fabox_consistency(fabox);
    if (!report.ok())
        raise(ErrorCode::Precondition, "the fact store is inconsistent: " + report.str());

    WeightedQbaf qbaf;
    for (const auto& a : fabox.assertions())
        if (a.predicate == "Arg") qbaf.add_argument(a.args[0].argument_id(), a.degree);
    for (const auto& a : fabox.assertions()) {
        if (a.predicate == "att")
            qbaf.add_attack(a.args[0].argument_id(), a.args[1].argument_id(), a.degree);
        else if (a.predicate == "sup")
            qbaf.add_support(a.args[0].argument_id(), a.args[1].argument_id(), a.degree);
    }
    return qbaf;
}

StrengthUpdate apply_strength_update_detailed(const Fabox& fabox, const ModularSemantics& sem,
                                              double epsilon, long max_iter) {
    WeightedQbaf qbaf = underlying_qbaf(fabox);

    StrengthAssignment rho;
    try {
        rho = evaluate_acyclic(qbaf, sem);
    } catch (const Error&) {
        rho = evaluate_iterative(qbaf, sem, epsilon, max_iter);
    }
    if (!rho.converged) {
        std::ostringstream out;
        out << "strength update did not converge after " << rho.iterations << " rounds; partial assignment:";
        for (const auto& [id, v] : rho.values) out << ' ' << id.str() << '=' << v;
        raise(ErrorCode::NonConvergence, out.str());
    }

    Fabox updated;
    for (const auto& a : fabox.assertions()) {
        if (a.predicate == "Arg") {
            FuzzyAssertion b = a;
            b.degree = rho.at(a.args[0].argument_id());
            updated.add(std::move(b));
        } else {
            updated.add(a);
        }
    }
    return {std::move(updated), std::move(rho)};
}

Fabox apply_strength_update(const Fabox& fabox, const ModularSemantics& sem, double epsilon, long max_iter) {
    return apply_strength_update_detailed(fabox, sem, epsilon, max_iter).updated;
}

} // namespace fakb
