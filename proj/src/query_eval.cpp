// query_eval.cpp : homomorphism search over indexed fact stores
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

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "error.hpp"
#include "query.hpp"

namespace fakb {

namespace {

std::string ind_key(const IndividualName& n) {
    return std::to_string(static_cast<int>(n.sort)) + ":" + n.label;
}

// Hash indexes keyed by (predicate, bound positions); the evaluator always
// expands the currently cheapest atom.
struct StoreIndex {
    struct RoleEdge {
        IndividualName from, to;
        double degree;
    };

    std::unordered_map<std::string, std::vector<std::pair<IndividualName, double>>> concepts;
    std::unordered_map<std::string, double> concept_at; // pred|ind
    std::unordered_map<std::string, std::vector<RoleEdge>> roles;
    std::unordered_map<std::string, std::vector<std::pair<IndividualName, double>>> role_from; // pred|from
    std::unordered_map<std::string, std::vector<std::pair<IndividualName, double>>> role_to;   // pred|to
    std::unordered_map<std::string, double> role_at; // pred|from|to

    explicit StoreIndex(const Fabox& fabox) {
        for (const auto& a : fabox.assertions()) {
            if (a.kind == AssertionKind::Concept) {
                std::string key = a.predicate + "|" + ind_key(a.args[0]);
                auto it = concept_at.find(key);
                if (it == concept_at.end()) {
                    concepts[a.predicate].push_back({a.args[0], a.degree});
                    concept_at.emplace(std::move(key), a.degree);
                } else {
                    it->second = std::max(it->second, a.degree);
                    for (auto& [ind, d] : concepts[a.predicate])
                        if (ind == a.args[0]) d = std::max(d, a.degree);
                }
            } else {
                std::string key = a.predicate + "|" + ind_key(a.args[0]) + "|" + ind_key(a.args[1]);
                auto it = role_at.find(key);
                if (it == role_at.end()) {
                    roles[a.predicate].push_back({a.args[0], a.args[1], a.degree});
                    role_from[a.predicate + "|" + ind_key(a.args[0])].push_back({a.args[1], a.degree});
                    role_to[a.predicate + "|" + ind_key(a.args[1])].push_back({a.args[0], a.degree});
                    role_at.emplace(std::move(key), a.degree);
                } else if (a.degree > it->second) {
                    it->second = a.degree;
                    for (auto& e : roles[a.predicate])
                        if (e.from == a.args[0] && e.to == a.args[1]) e.degree = a.degree;
                    for (auto& [ind, d] : role_from[a.predicate + "|" + ind_key(a.args[0])])
                        if (ind == a.args[1]) d = std::max(d, a.degree);
                    for (auto& [ind, d] : role_to[a.predicate + "|" + ind_key(a.args[1])])
                        if (ind == a.args[0]) d = std::max(d, a.degree);
                }
            }
        }
    }
};

using Binding = std::unordered_map<std::string, IndividualName>;

// The current value of a term: a constant, or its binding when bound.
const IndividualName* resolved(const Term& t, const Binding& bound) {
    if (const auto* c = std::get_if<IndividualName>(&t)) return c;
    auto it = bound.find(std::get<QueryVariable>(t).name);
    return it == bound.end() ? nullptr : &it->second;
}

std::size_t candidate_count(const QueryAtom& atom, const StoreIndex& index, const Binding& bound) {
    if (atom.args.size() == 1) {
        const IndividualName* x = resolved(atom.args[0], bound);
        if (x) return index.concept_at.count(atom.predicate + "|" + ind_key(*x)) ? 1 : 0;
        auto it = index.concepts.find(atom.predicate);
        return it == index.concepts.end() ? 0 : it->second.size();
    }
    const IndividualName* x = resolved(atom.args[0], bound);
    const IndividualName* y = resolved(atom.args[1], bound);
    if (x && y) return index.role_at.count(atom.predicate + "|" + ind_key(*x) + "|" + ind_key(*y)) ? 1 : 0;
    if (x) {
        auto it = index.role_from.find(atom.predicate + "|" + ind_key(*x));
        return it == index.role_from.end() ? 0 : it->second.size();
    }
    if (y) {
        auto it = index.role_to.find(atom.predicate + "|" + ind_key(*y));
        return it == index.role_to.end() ? 0 : it->second.size();
    }
    auto it = index.roles.find(atom.predicate);
    return it == index.roles.end() ? 0 : it->second.size();
}

struct Evaluator {
    const StoreIndex& index;
    const FuzzyQuery& disjunct;
    FuzzyAnswerSet& out;

    void record(const Binding& bound, double degree) {
        if (degree <= 0.0) return;
        std::vector<IndividualName> tuple;
        tuple.reserve(disjunct.head.size());
        for (const auto& t : disjunct.head) {
            const IndividualName* v = resolved(t, bound);
            if (!v) raise(ErrorCode::Internal, "unbound answer position for " + print_term(t));
            tuple.push_back(*v);
        }
        auto [it, inserted] = out.rows.emplace(std::move(tuple), degree);
        if (!inserted) it->second = std::max(it->second, degree);
    }

    // Binds `t` to `value` if compatible; returns the variable name when a
    // new binding was added so the caller can undo it.
    bool match(const Term& t, const IndividualName& value, Binding& bound, std::string& added) {
        if (const auto* c = std::get_if<IndividualName>(&t)) return *c == value;
        const auto& name = std::get<QueryVariable>(t).name;
        auto it = bound.find(name);
        if (it != bound.end()) return it->second == value;
        bound.emplace(name, value);
        added = name;
        return true;
    }

    void search(std::vector<const QueryAtom*>& pending, Binding& bound, double degree) {
        if (degree <= 0.0) return;
        if (pending.empty()) {
            record(bound, degree);
            return;
        }
        std::size_t best = 0;
        std::size_t best_count = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = 0; i < pending.size(); ++i) {
            std::size_t c = candidate_count(*pending[i], index, bound);
            if (c < best_count) {
                best_count = c;
                best = i;
            }
        }
        if (best_count == 0) return;

        const QueryAtom* atom = pending[best];
        pending.erase(pending.begin() + best);

        auto try_match = [&](const IndividualName& a, const IndividualName* b, double d) {
            std::string added1, added2;
            bool ok = match(atom->args[0], a, bound, added1);
            if (ok && b) ok = match(atom->args[1], *b, bound, added2);
            if (ok) search(pending, bound, std::min(degree, d));
            if (!added2.empty()) bound.erase(added2);
            if (!added1.empty()) bound.erase(added1);
        };

        if (atom->args.size() == 1) {
            const IndividualName* x = resolved(atom->args[0], bound);
            if (x) {
                auto it = index.concept_at.find(atom->predicate + "|" + ind_key(*x));
                if (it != index.concept_at.end()) try_match(*x, nullptr, it->second);
            } else {
                auto it = index.concepts.find(atom->predicate);
                if (it != index.concepts.end())
                    for (const auto& [ind, d] : it->second) try_match(ind, nullptr, d);
            }
        } else {
            const IndividualName* x = resolved(atom->args[0], bound);
            const IndividualName* y = resolved(atom->args[1], bound);
            if (x && y) {
                auto it = index.role_at.find(atom->predicate + "|" + ind_key(*x) + "|" + ind_key(*y));
                if (it != index.role_at.end()) try_match(*x, y, it->second);
            } else if (x) {
                auto it = index.role_from.find(atom->predicate + "|" + ind_key(*x));
                if (it != index.role_from.end())
                    for (const auto& [to, d] : it->second) try_match(*x, &to, d);
            } else if (y) {
                auto it = index.role_to.find(atom->predicate + "|" + ind_key(*y));
                if (it != index.role_to.end())
                    for (const auto& [from, d] : it->second) try_match(from, y, d);
            } else {
                auto it = index.roles.find(atom->predicate);
                if (it != index.roles.end())
                    for (const auto& e : it->second) try_match(e.from, &e.to, e.degree);
            }
        }
        pending.insert(pending.begin() + best, atom);
    }
};

} // namespace

FuzzyAnswerSet fans(const UnionQuery& q, const Fabox& fabox) {
    StoreIndex index(fabox);
    FuzzyAnswerSet answers;
    for (const auto& disjunct : q.disjuncts) {
        Evaluator eval{index, disjunct, answers};
        std::vector<const QueryAtom*> pending;
        pending.reserve(disjunct.atoms.size());
        for (const auto& atom : disjunct.atoms) pending.push_back(&atom);
        Binding bound;
        eval.search(pending, bound, 1.0);
    }
    return answers;
}

FuzzyAnswerSet fcert(const ThresholdedQuery& q, const Tbox& tbox, const Fabox& fabox) {
    {
        TboxReport t = validate_fakb_tbox(tbox);
        if (!t.ok()) raise(ErrorCode::Precondition, t.str());
        FaboxReport f = check_fabox_consistency(fabox);
        if (!f.ok())
            raise(ErrorCode::Inconsistent,
                  "certain answers are undefined on an inconsistent store: " + f.str());
        KbReport kb = check_kb_consistency(tbox, fabox);
        if (!kb.ok())
            raise(ErrorCode::Inconsistent,
                  "certain answers are undefined on an inconsistent knowledge base: " + kb.str());
    }

    FuzzyAnswerSet unfiltered = fans(perfect_ref(q.query, tbox), fabox);
    FuzzyAnswerSet result;
    for (const auto& [tuple, degree] : unfiltered.rows)
        if (q.passes(degree)) result.rows.emplace(tuple, degree);
    return result;
}

} // namespace fakb
