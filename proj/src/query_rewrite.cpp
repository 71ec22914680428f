// query_rewrite.cpp : rewriting of union queries through the positive
//                     TBox inclusions (atom rewriting + reduce)
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
#include <deque>
#include <map>
#include <set>

#include "error.hpp"
#include "query.hpp"

namespace fakb {

namespace {

std::map<std::string, int> occurrence_counts(const FuzzyQuery& q) {
    std::map<std::string, int> occ;
    auto count = [&](const Term& t) {
        if (const auto* v = std::get_if<QueryVariable>(&t)) occ[v->name] += 1;
    };
    for (const auto& t : q.head) count(t);
    for (const auto& atom : q.atoms)
        for (const auto& t : atom.args) count(t);
    return occ;
}

// A term is unbound when it is a variable occurring exactly once in the
// whole disjunct (head included). Such positions may be traded for the
// anonymous partner of an exists-concept.
bool is_unbound(const Term& t, const std::map<std::string, int>& occ) {
    const auto* v = std::get_if<QueryVariable>(&t);
    return v && occ.at(v->name) == 1;
}

QueryAtom apply_basic_concept(const BasicConcept& b, const Term& t, long& fresh_counter) {
    if (!b.is_exists) return QueryAtom{b.atomic, {t}};
    Term fresh = QueryVariable{"_" + std::to_string(fresh_counter++)};
    if (b.role.inverse) return QueryAtom{b.role.name, {fresh, t}};
    return QueryAtom{b.role.name, {t, fresh}};
}

QueryAtom apply_role(const Role& lhs, const Term& from, const Term& to) {
    if (lhs.inverse) return QueryAtom{lhs.name, {to, from}};
    return QueryAtom{lhs.name, {from, to}};
}

// All single-atom replacements licensed by one positive inclusion.
std::vector<QueryAtom> rewrite_atom(const QueryAtom& atom, const Inclusion& inc,
                                    const std::map<std::string, int>& occ, long& fresh_counter) {
    std::vector<QueryAtom> out;
    if (const auto* ci = std::get_if<ConceptInclusion>(&inc)) {
        if (ci->rhs_negated) return out;
        if (atom.args.size() == 1) {
            if (!ci->rhs.is_exists && ci->rhs.atomic == atom.predicate)
                out.push_back(apply_basic_concept(ci->lhs, atom.args[0], fresh_counter));
        } else if (ci->rhs.is_exists && ci->rhs.role.name == atom.predicate) {
            // B <= exists r matches r(t1,_); B <= exists r- matches r(_,t2)
            if (!ci->rhs.role.inverse && is_unbound(atom.args[1], occ))
                out.push_back(apply_basic_concept(ci->lhs, atom.args[0], fresh_counter));
            if (ci->rhs.role.inverse && is_unbound(atom.args[0], occ))
                out.push_back(apply_basic_concept(ci->lhs, atom.args[1], fresh_counter));
        }
        return out;
    }
    const auto& ri = std::get<RoleInclusion>(inc);
    if (ri.rhs_negated || atom.args.size() != 2 || ri.rhs.name != atom.predicate) return out;
    if (!ri.rhs.inverse)
        out.push_back(apply_role(ri.lhs, atom.args[0], atom.args[1]));
    else
        out.push_back(apply_role(ri.lhs, atom.args[1], atom.args[0]));
    return out;
}

// --- unification -----------------------------------------------------------

struct Substitution {
    std::map<std::string, Term> binding;

    Term resolve(Term t) const {
        while (const auto* v = std::get_if<QueryVariable>(&t)) {
            auto it = binding.find(v->name);
            if (it == binding.end()) break;
            t = it->second;
        }
        return t;
    }

    bool unify(const Term& a, const Term& b) {
        Term x = resolve(a);
        Term y = resolve(b);
        if (x == y) return true;
        if (const auto* v = std::get_if<QueryVariable>(&x)) {
            binding[v->name] = y;
            return true;
        }
        if (const auto* v = std::get_if<QueryVariable>(&y)) {
            binding[v->name] = x;
            return true;
        }
        return false; // distinct constants
    }
};

bool unify_atoms(const QueryAtom& a, const QueryAtom& b, Substitution& subst) {
    if (a.predicate != b.predicate || a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!subst.unify(a.args[i], b.args[i])) return false;
    return true;
}

FuzzyQuery apply_substitution(const FuzzyQuery& q, const Substitution& subst) {
    FuzzyQuery out;
    for (const auto& t : q.head) out.head.push_back(subst.resolve(t));
    for (const auto& atom : q.atoms) {
        QueryAtom mapped{atom.predicate, {}};
        for (const auto& t : atom.args) mapped.args.push_back(subst.resolve(t));
        if (std::find(out.atoms.begin(), out.atoms.end(), mapped) == out.atoms.end())
            out.atoms.push_back(std::move(mapped));
    }
    return out;
}

// --- canonical form --------------------------------------------------------

// Canonical key modulo variable renaming: head variables are named by
// position, existential variables by first occurrence in the best atom
// ordering. Atoms are grouped by shape and only permutations within a group
// are tried; beyond a size guard a greedy refinement is used instead.
class Canonicalizer {
public:
    explicit Canonicalizer(const FuzzyQuery& q) : q_(q) {
        int next = 0;
        for (const auto& t : q.head)
            if (const auto* v = std::get_if<QueryVariable>(&t))
                if (!head_names_.count(v->name)) head_names_[v->name] = "h" + std::to_string(next++);
    }

    std::string key() const {
        std::vector<std::size_t> order(q_.atoms.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

        // group atoms by their renaming-independent shape
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return shape(a) < shape(b); });

        long combinations = 1;
        std::vector<std::pair<std::size_t, std::size_t>> groups; // [begin, end)
        for (std::size_t i = 0; i < order.size();) {
            std::size_t j = i + 1;
            while (j < order.size() && shape(order[j]) == shape(order[i])) ++j;
            groups.push_back({i, j});
            for (std::size_t n = 2; n <= j - i && combinations <= 5040; ++n) combinations *= n;
            i = j;
        }

        std::string best;
        if (combinations <= 5040) {
            enumerate(order, groups, 0, best);
        } else {
            best = render(refine(order));
        }
        return head_print() + " :- " + best;
    }

private:
    std::string shape(std::size_t idx) const {
        const QueryAtom& atom = q_.atoms[idx];
        std::string s = atom.predicate + "(";
        for (const auto& t : atom.args) {
            if (const auto* v = std::get_if<QueryVariable>(&t)) {
                auto it = head_names_.find(v->name);
                s += it == head_names_.end() ? std::string("?") : it->second;
            } else {
                s += "c:" + print_term(t);
            }
            s += ',';
        }
        return s + ")";
    }

    std::string render(const std::vector<std::size_t>& order) const {
        std::map<std::string, std::string> names = head_names_;
        int next = 0;
        std::string out;
        for (std::size_t idx : order) {
            const QueryAtom& atom = q_.atoms[idx];
            out += atom.predicate + "(";
            for (const auto& t : atom.args) {
                if (const auto* v = std::get_if<QueryVariable>(&t)) {
                    auto [it, inserted] = names.emplace(v->name, "e" + std::to_string(next));
                    if (inserted) ++next;
                    out += it->second;
                } else {
                    out += "c:" + print_term(t);
                }
                out += ',';
            }
            out += ");";
        }
        return out;
    }

    void enumerate(std::vector<std::size_t>& order,
                   const std::vector<std::pair<std::size_t, std::size_t>>& groups, std::size_t g,
                   std::string& best) const {
        if (g == groups.size()) {
            std::string s = render(order);
            if (best.empty() || s < best) best = s;
            return;
        }
        auto [b, e] = groups[g];
        std::sort(order.begin() + b, order.begin() + e);
        do {
            enumerate(order, groups, g + 1, best);
        } while (std::next_permutation(order.begin() + b, order.begin() + e));
    }

    std::vector<std::size_t> refine(std::vector<std::size_t> order) const {
        for (int round = 0; round < 3; ++round) {
            std::map<std::string, std::string> names = head_names_;
            int next = 0;
            auto rank = [&](std::size_t idx) {
                std::string out = q_.atoms[idx].predicate + "(";
                for (const auto& t : q_.atoms[idx].args) {
                    if (const auto* v = std::get_if<QueryVariable>(&t)) {
                        auto it = names.find(v->name);
                        out += it == names.end() ? std::string("?") : it->second;
                    } else {
                        out += "c:" + print_term(t);
                    }
                    out += ',';
                }
                return out + ")";
            };
            std::vector<std::string> keys;
            for (std::size_t idx : order) {
                keys.push_back(rank(idx));
                for (const auto& t : q_.atoms[idx].args)
                    if (const auto* v = std::get_if<QueryVariable>(&t))
                        if (!names.count(v->name)) names[v->name] = "e" + std::to_string(next++);
            }
            std::vector<std::size_t> next_order(order.size());
            for (std::size_t i = 0; i < order.size(); ++i) next_order[i] = i;
            std::stable_sort(next_order.begin(), next_order.end(),
                             [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
            std::vector<std::size_t> mapped;
            for (std::size_t i : next_order) mapped.push_back(order[i]);
            order = std::move(mapped);
        }
        return order;
    }

    std::string head_print() const {
        std::string out = "(";
        for (const auto& t : q_.head) {
            if (const auto* v = std::get_if<QueryVariable>(&t)) out += head_names_.at(v->name);
            else out += "c:" + print_term(t);
            out += ',';
        }
        return out + ")";
    }

    const FuzzyQuery& q_;
    std::map<std::string, std::string> head_names_;
};

std::string canonical_key(const FuzzyQuery& q) { return Canonicalizer(q).key(); }

long fresh_floor(const UnionQuery& q) {
    long floor = 0;
    for (const auto& d : q.disjuncts)
        for (const auto& atom : d.atoms)
            for (const auto& t : atom.args)
                if (const auto* v = std::get_if<QueryVariable>(&t))
                    if (v->name.size() > 1 && v->name[0] == '_') {
                        bool digits = true;
                        for (std::size_t i = 1; i < v->name.size(); ++i)
                            digits &= v->name[i] >= '0' && v->name[i] <= '9';
                        if (digits) floor = std::max(floor, std::stol(v->name.substr(1)) + 1);
                    }
    return floor;
}

} // namespace

UnionQuery perfect_ref(const UnionQuery& q, const Tbox& tbox) {
    {
        TboxReport report = validate_fakb_tbox(tbox);
        if (!report.ok()) raise(ErrorCode::Precondition, report.str());
    }
    if (q.disjuncts.empty()) raise(ErrorCode::InvalidArgument, "empty union query");

    long fresh_counter = fresh_floor(q);

    UnionQuery result;
    std::set<std::string> seen;
    std::deque<FuzzyQuery> frontier;
    for (const auto& d : q.disjuncts)
        if (seen.insert(canonical_key(d)).second) {
            result.disjuncts.push_back(d);
            frontier.push_back(d);
        }

    auto offer = [&](FuzzyQuery candidate) {
        if (seen.insert(canonical_key(candidate)).second) {
            result.disjuncts.push_back(candidate);
            frontier.push_back(std::move(candidate));
        }
    };

    while (!frontier.empty()) {
        FuzzyQuery current = std::move(frontier.front());
        frontier.pop_front();
        const std::map<std::string, int> occ = occurrence_counts(current);

        // (i) rewrite one atom through one applicable inclusion
        for (std::size_t i = 0; i < current.atoms.size(); ++i) {
            for (const auto& inc : tbox.inclusions()) {
                auto replacements = rewrite_atom(current.atoms[i], inc, occ, fresh_counter);
                for (QueryAtom& replacement : replacements) {
                    FuzzyQuery next = current;
                    next.atoms[i] = replacement;
                    // merging may create duplicate atoms; collapse them
                    std::vector<QueryAtom> dedup;
                    for (auto& a : next.atoms)
                        if (std::find(dedup.begin(), dedup.end(), a) == dedup.end()) dedup.push_back(a);
                    next.atoms = std::move(dedup);
                    offer(std::move(next));
                }
            }
        }

        // (ii) reduce: unify two atoms, then the merged disjunct re-enters
        // the loop so freed positions can be rewritten
        for (std::size_t i = 0; i < current.atoms.size(); ++i) {
            for (std::size_t j = i + 1; j < current.atoms.size(); ++j) {
                Substitution subst;
                if (!unify_atoms(current.atoms[i], current.atoms[j], subst)) continue;
                offer(apply_substitution(current, subst));
            }
        }
    }
    return result;
}

} // namespace fakb
