// query_oracle.cpp : model-theoretic reference answers on a chased
//                    canonical model; validation only
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
#include <map>
#include <set>

#include "error.hpp"
#include "query.hpp"

namespace fakb {

namespace {

// The canonical minimal fuzzy model. Elements 0..named-1 are the store's
// individuals, the rest are anonymous witnesses created by the chase.
// Degrees propagate through positive inclusions with equality, so the model
// is pointwise minimal and query degrees on it realize the infimum over all
// models.
struct ChaseModel {
    std::vector<IndividualName> named;
    long element_count = 0;
    std::map<std::pair<std::string, int>, double> concept_degrees;
    std::map<std::tuple<std::string, int, int>, double> role_degrees;

    int element_of(const IndividualName& n) const {
        for (std::size_t i = 0; i < named.size(); ++i)
            if (named[i] == n) return static_cast<int>(i);
        return -1;
    }

    double concept_at(const std::string& name, int x) const {
        auto it = concept_degrees.find({name, x});
        return it == concept_degrees.end() ? 0.0 : it->second;
    }
    double role_at(const std::string& name, int x, int y) const {
        auto it = role_degrees.find({name, x, y});
        return it == role_degrees.end() ? 0.0 : it->second;
    }
    double role_expr_at(const Role& q, int x, int y) const {
        return q.inverse ? role_at(q.name, y, x) : role_at(q.name, x, y);
    }
    double exists_at(const Role& q, int x) const {
        double best = 0.0;
        for (const auto& [key, d] : role_degrees) {
            const auto& [name, from, to] = key;
            if (name != q.name) continue;
            if ((q.inverse ? to : from) == x) best = std::max(best, d);
        }
        return best;
    }
    double basic_at(const BasicConcept& b, int x) const {
        return b.is_exists ? exists_at(b.role, x) : concept_at(b.atomic, x);
    }
};

ChaseModel build_chase(const Tbox& tbox, const Fabox& fabox, long max_witnesses) {
    ChaseModel model;
    {
        std::set<IndividualName> inds;
        for (const auto& a : fabox.assertions())
            for (const auto& arg : a.args) inds.insert(arg);
        model.named.assign(inds.begin(), inds.end());
        model.element_count = static_cast<long>(model.named.size());
    }
    auto bump_concept = [&](const std::string& name, int x, double d) {
        auto [it, inserted] = model.concept_degrees.emplace(std::make_pair(name, x), d);
        if (!inserted) {
            if (it->second >= d) return false;
            it->second = d;
        }
        return true;
    };
    auto bump_role = [&](const std::string& name, int x, int y, double d) {
        auto [it, inserted] = model.role_degrees.emplace(std::make_tuple(name, x, y), d);
        if (!inserted) {
            if (it->second >= d) return false;
            it->second = d;
        }
        return true;
    };

    for (const auto& a : fabox.assertions()) {
        if (a.kind == AssertionKind::Concept)
            bump_concept(a.predicate, model.element_of(a.args[0]), a.degree);
        else
            bump_role(a.predicate, model.element_of(a.args[0]), model.element_of(a.args[1]), a.degree);
    }

    // One designated witness per (element, exists-requirement); repeated
    // triggers raise its degree instead of spawning a sibling.
    std::map<std::pair<int, std::string>, int> witness_for;
    long witnesses_used = 0;

    auto satisfy_exists = [&](const Role& q, int x, double d) {
        if (model.exists_at(q, x) >= d) return false;
        auto key = std::make_pair(x, q.str());
        auto it = witness_for.find(key);
        int w;
        if (it != witness_for.end()) {
            w = it->second;
        } else {
            if (witnesses_used >= max_witnesses)
                raise(ErrorCode::OracleIncomplete,
                      "witness budget of " + std::to_string(max_witnesses) + " exhausted while chasing");
            w = static_cast<int>(model.element_count++);
            ++witnesses_used;
            witness_for.emplace(key, w);
        }
        return q.inverse ? bump_role(q.name, w, x, d) : bump_role(q.name, x, w, d);
    };

    bool changed = true;
    long rounds = 0;
    while (changed) {
        if (++rounds > 100000)
            raise(ErrorCode::OracleIncomplete, "chase did not reach a fixpoint within the round budget");
        changed = false;
        for (const auto& inc : tbox.inclusions()) {
            if (const auto* ci = std::get_if<ConceptInclusion>(&inc)) {
                if (ci->rhs_negated) continue;
                for (int x = 0; x < model.element_count; ++x) {
                    double d = model.basic_at(ci->lhs, x);
                    if (d <= 0.0) continue;
                    if (!ci->rhs.is_exists)
                        changed |= bump_concept(ci->rhs.atomic, x, d);
                    else
                        changed |= satisfy_exists(ci->rhs.role, x, d);
                }
            } else {
                const auto& ri = std::get<RoleInclusion>(inc);
                if (ri.rhs_negated) continue;
                // materialize the lhs edges first; bump_role mutates the map
                std::vector<std::tuple<int, int, double>> edges;
                for (const auto& [key, d] : model.role_degrees) {
                    const auto& [name, from, to] = key;
                    if (name != ri.lhs.name || d <= 0.0) continue;
                    int x = ri.lhs.inverse ? to : from;
                    int y = ri.lhs.inverse ? from : to;
                    edges.push_back({x, y, d});
                }
                for (const auto& [x, y, d] : edges) {
                    if (ri.rhs.inverse)
                        changed |= bump_role(ri.rhs.name, y, x, d);
                    else
                        changed |= bump_role(ri.rhs.name, x, y, d);
                }
            }
        }
    }
    return model;
}

// Plain backtracking over domain elements, no indexes: free variables range
// over named elements, existential ones over the whole domain.
struct NaiveEval {
    const ChaseModel& model;
    const FuzzyQuery& disjunct;
    FuzzyAnswerSet& out;
    std::map<std::string, int> assignment;
    std::set<std::string> free_names;

    double atom_degree(const QueryAtom& atom) const {
        if (atom.args.size() == 1) {
            int x = element(atom.args[0]);
            return x < 0 ? 0.0 : model.concept_at(atom.predicate, x);
        }
        int x = element(atom.args[0]);
        int y = element(atom.args[1]);
        return (x < 0 || y < 0) ? 0.0 : model.role_at(atom.predicate, x, y);
    }

    int element(const Term& t) const {
        if (const auto* c = std::get_if<IndividualName>(&t)) return model.element_of(*c);
        auto it = assignment.find(std::get<QueryVariable>(t).name);
        return it == assignment.end() ? -2 : it->second;
    }

    void run(const std::vector<std::string>& vars, std::size_t i) {
        if (i == vars.size()) {
            double degree = 1.0;
            for (const auto& atom : disjunct.atoms) degree = std::min(degree, atom_degree(atom));
            if (degree <= 0.0) return;
            std::vector<IndividualName> tuple;
            for (const auto& t : disjunct.head) {
                if (const auto* c = std::get_if<IndividualName>(&t)) {
                    tuple.push_back(*c);
                } else {
                    int e = assignment.at(std::get<QueryVariable>(t).name);
                    tuple.push_back(model.named.at(e));
                }
            }
            auto [it, inserted] = out.rows.emplace(std::move(tuple), degree);
            if (!inserted) it->second = std::max(it->second, degree);
            return;
        }
        long limit = free_names.count(vars[i]) ? static_cast<long>(model.named.size())
                                               : model.element_count;
        for (long e = 0; e < limit; ++e) {
            assignment[vars[i]] = static_cast<int>(e);
            run(vars, i + 1);
        }
        assignment.erase(vars[i]);
    }
};

} // namespace

FuzzyAnswerSet oracle_fcert_small(const ThresholdedQuery& q, const Tbox& tbox, const Fabox& fabox,
                                  long max_witnesses) {
    ChaseModel model = build_chase(tbox, fabox, max_witnesses);

    FuzzyAnswerSet all;
    for (const auto& disjunct : q.query.disjuncts) {
        NaiveEval eval{model, disjunct, all, {}, {}};
        std::set<std::string> vars;
        for (const auto& atom : disjunct.atoms)
            for (const auto& t : atom.args)
                if (const auto* v = std::get_if<QueryVariable>(&t)) vars.insert(v->name);
        for (const auto& v : disjunct.free_variables()) eval.free_names.insert(v.name);
        eval.run(std::vector<std::string>(vars.begin(), vars.end()), 0);
    }

    FuzzyAnswerSet result;
    for (const auto& [tuple, degree] : all.rows)
        if (q.passes(degree)) result.rows.emplace(tuple, degree);
    return result;
}

bool oracle_consistent_small(const Tbox& tbox, const Fabox& fabox, long max_witnesses) {
    ChaseModel model = build_chase(tbox, fabox, max_witnesses);
    for (const auto& inc : tbox.inclusions()) {
        if (const auto* ci = std::get_if<ConceptInclusion>(&inc)) {
            if (!ci->rhs_negated) continue;
            for (int x = 0; x < model.element_count; ++x)
                if (model.basic_at(ci->lhs, x) + model.basic_at(ci->rhs, x) > 1.0) return false;
        } else {
            const auto& ri = std::get<RoleInclusion>(inc);
            if (!ri.rhs_negated) continue;
            for (const auto& [key, d] : model.role_degrees) {
                const auto& [name, from, to] = key;
                if (name != ri.lhs.name || d <= 0.0) continue;
                int x = ri.lhs.inverse ? to : from;
                int y = ri.lhs.inverse ? from : to;
                if (d + model.role_expr_at(ri.rhs, x, y) > 1.0) return false;
            }
        }
    }
    return true;
}

} // namespace fakb
