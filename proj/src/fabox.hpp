// fabox.hpp : fuzzy argumentative fact store, consistency conditions,
//             projection to the underlying QBAF, strength update
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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "names.hpp"
#include "qbaf.hpp"

namespace fakb {

enum class AssertionKind { Concept, Role };

// Built-in vocabulary. Only Arg, att and sup may carry degrees below 1;
// everything else is crisp.
bool is_builtin_concept(const std::string& predicate); // Arg, TArg
bool is_builtin_role(const std::string& predicate);    // att, sup, textOf
bool is_builtin_predicate(const std::string& predicate);

// Concept names start with an upper-case letter, role names with a
// lower-case one; predicate kind and arity follow from the name.
bool is_concept_name(const std::string& predicate);
bool is_role_name(const std::string& predicate);

// Fixed 6-decimal rendering used by every textual output.
std::string format_degree(double degree);

struct FuzzyAssertion {
    AssertionKind kind;
    std::string predicate;
    std::vector<IndividualName> args; // size 1 (concept) or 2 (role)
    double degree = 1.0;

    // Validates arity, the case convention, built-in sort typing and the
    // degree range. Raises Domain / InvalidArgument on breach.
    static FuzzyAssertion concept_assertion(std::string predicate, IndividualName arg, double degree = 1.0);
    static FuzzyAssertion role_assertion(std::string predicate, IndividualName a, IndividualName b,
                                         double degree = 1.0);

    // (kind, predicate, args) without the degree.
    std::string crisp_key() const;
    std::string str() const; // line-format rendering, degree included

    bool operator==(const FuzzyAssertion& o) const;
    bool operator<(const FuzzyAssertion& o) const;
};

// A finite multiset of fuzzy assertions. Exact duplicates collapse; entries
// sharing the crisp part but not the degree are retained so the checker can
// report them.
class Fabox {
public:
    void add(FuzzyAssertion a);
    const std::vector<FuzzyAssertion>& assertions() const { return assertions_; }
    std::size_t size() const { return assertions_.size(); }
    bool empty() const { return assertions_.empty(); }

    std::vector<FuzzyAssertion> sorted() const;

private:
    std::vector<FuzzyAssertion> assertions_;
};

struct FaboxViolation {
    std::string rule;    // stable identifier, e.g. "arg-degree-functional"
    std::string message; // names the offending assertions
};

struct FaboxReport {
    std::vector<FaboxViolation> violations;
    std::vector<std::string> warnings;
    bool ok() const { return violations.empty(); }
    std::string str() const;
};

// Checks the three consistency conditions of argumentative fact stores:
// (1) one degree per asserted argument, (2) at most one relation per ordered
// argument pair with both endpoints asserted, (3) textOf is a bijection
// between asserted arguments and asserted texts. Degree conflicts on any
// other predicate are reported as well; self-loops and fuzzy degrees on
// non-argumentative predicates are surfaced as warnings.
FaboxReport check_fabox_consistency(const Fabox& fabox);

// Projection of a consistent store to its argumentation graph: Arg degrees
// become tau, att/sup degrees become phi. Raises Precondition when the
// store is inconsistent.
WeightedQbaf underlying_qbaf(const Fabox& fabox);

// Recomputes final strengths on the underlying graph and replaces every Arg
// degree by it; relation weights and crisp assertions are untouched. Acyclic
// graphs use the one-pass evaluator, cyclic ones the fixpoint iteration.
// Raises NonConvergence when the iteration exhausts max_iter (the message
// carries the partial assignment).
Fabox apply_strength_update(const Fabox& fabox, const ModularSemantics& sem,
                            double epsilon = 1e-6, long max_iter = 10000);

// As above but also reports how the evaluation went.
struct StrengthUpdate {
    Fabox updated;
    StrengthAssignment assignment;
};
StrengthUpdate apply_strength_update_detailed(const Fabox& fabox, const ModularSemantics& sem,
                                              double epsilon = 1e-6, long max_iter = 10000);

} // namespace fakb
