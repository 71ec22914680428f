// query.hpp : fuzzy conjunctive queries, TBox-driven rewriting, and
//             threshold-filtered evaluation over fact stores
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

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "dllite.hpp"
#include "fabox.hpp"

namespace fakb {

struct QueryVariable {
    std::string name; // without the leading '?'
    bool operator==(const QueryVariable& o) const { return name == o.name; }
    bool operator<(const QueryVariable& o) const { return name < o.name; }
};

using Term = std::variant<QueryVariable, IndividualName>;

bool is_variable(const Term& t);
std::string print_term(const Term& t);

struct QueryAtom {
    std::string predicate;
    std::vector<Term> args; // 1 (concept) or 2 (role)

    std::string str() const;
    bool operator==(const QueryAtom& o) const { return predicate == o.predicate && args == o.args; }
};

// One conjunct of a union query. The head holds one term per answer
// position; parsing produces distinct variables there, rewriting may
// specialize positions to constants or merge them.
struct FuzzyQuery {
    std::vector<Term> head;
    std::vector<QueryAtom> atoms;

    std::vector<QueryVariable> free_variables() const;
    std::string str() const; // q(<head>) := atom, atom, ...
};

struct UnionQuery {
    std::vector<FuzzyQuery> disjuncts;
};

enum class ThresholdCmp { Ge, Gt };

// query >= k with k in (0,1], or query > k with k in [0,1); a bare query
// reads as "> 0".
struct ThresholdedQuery {
    UnionQuery query;
    ThresholdCmp cmp = ThresholdCmp::Gt;
    double k = 0.0;

    bool passes(double degree) const {
        return cmp == ThresholdCmp::Ge ? degree >= k : degree > k;
    }
};

// Tuples with their (positive) answer degree.
struct FuzzyAnswerSet {
    std::map<std::vector<IndividualName>, double> rows;

    bool operator==(const FuzzyAnswerSet& o) const { return rows == o.rows; }
};

// Grammar:
//   query  := [ name "(" terms? ")" ":=" ] union [ (">="|">") number ]
//   union  := conj | "[" conj "]" { "|" "[" conj "]" }
//   conj   := atom { "," atom }
//   atom   := predicate "(" term { "," term } ")"
//   term   := "?"name | "?_" | individual
// Without a head every variable is free; with one, listed variables are
// free and each must occur in every disjunct. Errors carry byte positions.
ThresholdedQuery parse_query(const std::string& text);

// One disjunct per line in the input grammar, deterministic order.
std::string print_union_query(const UnionQuery& q);

// Rewrites the query against the positive inclusions so that evaluating the
// result over the fact store alone yields the certain answers. Atoms are
// rewritten right-to-left through applicable inclusions; pairs of atoms are
// unified (reduce) to unlock further rewriting. Output is duplicate-free
// modulo variable renaming; built-in atoms are never rewrite targets.
UnionQuery perfect_ref(const UnionQuery& q, const Tbox& tbox);

// Direct evaluation over the store: per homomorphism the degree is the
// minimum matched assertion degree, per tuple the maximum over
// homomorphisms and disjuncts; zero-degree tuples are dropped.
FuzzyAnswerSet fans(const UnionQuery& q, const Fabox& fabox);

// Certain answers: rewrite, evaluate, filter by the threshold. Degrees are
// the unfiltered evaluation degrees. Refuses inconsistent knowledge bases.
FuzzyAnswerSet fcert(const ThresholdedQuery& q, const Tbox& tbox, const Fabox& fabox);

// Test oracle realizing the model-theoretic answer definition: chases the
// positive inclusions into a canonical minimal fuzzy model (at most
// max_witnesses anonymous individuals) and evaluates the query on it with a
// plain backtracking evaluator. Raises OracleIncomplete when the witness
// budget is exhausted. Intended for validation only; exponential on large
// inputs.
FuzzyAnswerSet oracle_fcert_small(const ThresholdedQuery& q, const Tbox& tbox, const Fabox& fabox,
                                  long max_witnesses);

// Consistency decided on the same chased model (every negative inclusion
// checked semantically); the independent cross-check for the closure-based
// checker.
bool oracle_consistent_small(const Tbox& tbox, const Fabox& fabox, long max_witnesses);

} // namespace fakb
