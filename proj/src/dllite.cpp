// dllite.cpp : TBox parsing, NI closure, consistency checking
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

#include "dllite.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "error.hpp"

namespace fakb {

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

Role parse_role_token(const std::string& token, int line_no) {
    std::string t = token;
    bool inverse = false;
    if (!t.empty() && t.back() == '-') {
        inverse = true;
        t.pop_back();
    }
    if (!valid_name(t) || !is_role_name(t))
        raise(ErrorCode::Parse, "line " + std::to_string(line_no) + ": '" + token + "' is not a role name");
    return Role{t, inverse};
}

// side := name | "exists" role | role
struct Side {
    bool is_role_side = false; // bare role (role-inclusion side)
    BasicConcept concept_side;
    Role role_side;
};

Side parse_side(const std::string& text, int line_no) {
    std::string t = strip(text);
    Side side;
    if (t.rfind("exists", 0) == 0 && t.size() > 6 && std::isspace(static_cast<unsigned char>(t[6]))) {
        side.concept_side = BasicConcept::exists(parse_role_token(strip(t.substr(6)), line_no));
        return side;
    }
    if (is_concept_name(t)) {
        if (!valid_name(t))
            raise(ErrorCode::Parse, "line " + std::to_string(line_no) + ": bad concept name '" + t + "'");
        side.concept_side = BasicConcept::named(t);
        return side;
    }
    side.is_role_side = true;
    side.role_side = parse_role_token(t, line_no);
    return side;
}

} // namespace

std::string inclusion_str(const Inclusion& inc) {
    if (const auto* ci = std::get_if<ConceptInclusion>(&inc))
        return ci->lhs.str() + " <= " + (ci->rhs_negated ? "not " : "") + ci->rhs.str();
    const auto& ri = std::get<RoleInclusion>(inc);
    return ri.lhs.str() + " <= " + (ri.rhs_negated ? "not " : "") + ri.rhs.str();
}

Tbox parse_tbox_text(const std::string& text) {
    Tbox tbox;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;

        std::size_t arrow = line.find("<=");
        if (arrow == std::string::npos)
            raise(ErrorCode::Parse, "line " + std::to_string(line_no) + ": missing '<='");
        std::string lhs_text = strip(line.substr(0, arrow));
        std::string rhs_text = strip(line.substr(arrow + 2));

        bool negated = false;
        if (rhs_text.rfind("not", 0) == 0 &&
            (rhs_text.size() == 3 || std::isspace(static_cast<unsigned char>(rhs_text[3])))) {
            negated = true;
            rhs_text = strip(rhs_text.substr(3));
        }
        Side lhs = parse_side(lhs_text, line_no);
        Side rhs = parse_side(rhs_text, line_no);

        if (lhs.is_role_side != rhs.is_role_side)
            raise(ErrorCode::Parse, "line " + std::to_string(line_no) +
                                        ": inclusion mixes a role side with a concept side");
        if (lhs.is_role_side) {
            if (lhs.role_side.inverse)
                raise(ErrorCode::Parse,
                      "line " + std::to_string(line_no) + ": inverse roles on the left-hand side of a role "
                      "inclusion are written on the right instead (r- <= s equals r <= s-)");
            tbox.add(RoleInclusion{lhs.role_side, rhs.role_side, negated});
        } else {
            tbox.add(ConceptInclusion{lhs.concept_side, rhs.concept_side, negated});
        }
    }
    return tbox;
}

std::string serialize_tbox_text(const Tbox& tbox) {
    std::ostringstream out;
    for (const auto& inc : tbox.inclusions()) out << inclusion_str(inc) << '\n';
    return out.str();
}

std::string TboxReport::str() const {
    if (ok()) return "valid";
    std::ostringstream out;
    out << violations.size() << " inclusion(s) with a built-in name on the positive right-hand side:";
    for (const auto& v : violations) out << "\n  " << v;
    return out.str();
}

TboxReport validate_fakb_tbox(const Tbox& tbox) {
    TboxReport report;
    for (const auto& inc : tbox.inclusions()) {
        bool bad = false;
        if (const auto* ci = std::get_if<ConceptInclusion>(&inc)) {
            if (!ci->rhs_negated)
                bad = ci->rhs.is_exists ? is_builtin_role(ci->rhs.role.name)
                                        : is_builtin_concept(ci->rhs.atomic);
        } else {
            const auto& ri = std::get<RoleInclusion>(inc);
            if (!ri.rhs_negated) bad = is_builtin_role(ri.rhs.name);
        }
        if (bad) report.violations.push_back(inclusion_str(inc));
    }
    return report;
}

std::string NegativeInclusion::str() const {
    if (is_role) return rlhs.str() + " <= not " + rrhs.str();
    return clhs.str() + " <= not " + crhs.str();
}

std::string NegativeInclusion::key() const {
    return (is_role ? "R|" : "C|") + str();
}

namespace {

NegativeInclusion concept_ni(BasicConcept lhs, BasicConcept rhs) {
    NegativeInclusion ni;
    ni.is_role = false;
    ni.clhs = std::move(lhs);
    ni.crhs = std::move(rhs);
    return ni;
}

NegativeInclusion role_ni(Role lhs, Role rhs) {
    NegativeInclusion ni;
    ni.is_role = true;
    ni.rlhs = std::move(lhs);
    ni.rrhs = std::move(rhs);
    return ni;
}

NegativeInclusion flipped(const NegativeInclusion& ni) {
    return ni.is_role ? role_ni(ni.rrhs, ni.rlhs) : concept_ni(ni.crhs, ni.clhs);
}

} // namespace

std::vector<NegativeInclusion> ni_closure(const Tbox& tbox) {
    // Positive inclusions drive the propagation. Role inclusions are used in
    // both orientations: r <= s also acts as r- <= s-.
    std::vector<ConceptInclusion> concept_pis;
    std::vector<RoleInclusion> role_pis;
    std::map<std::string, NegativeInclusion> closure;

    auto insert_symmetric = [&](const NegativeInclusion& ni) {
        bool added = closure.emplace(ni.key(), ni).second;
        added |= closure.emplace(flipped(ni).key(), flipped(ni)).second;
        return added;
    };

    for (const auto& inc : tbox.inclusions()) {
        if (const auto* ci = std::get_if<ConceptInclusion>(&inc)) {
            if (ci->rhs_negated)
                insert_symmetric(concept_ni(ci->lhs, ci->rhs));
            else
                concept_pis.push_back(*ci);
        } else {
            const auto& ri = std::get<RoleInclusion>(inc);
            if (ri.rhs_negated)
                insert_symmetric(role_ni(ri.lhs, ri.rhs));
            else {
                role_pis.push_back(ri);
                role_pis.push_back(RoleInclusion{ri.lhs.inverted(), ri.rhs.inverted(), false});
            }
        }
    }

    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<NegativeInclusion> snapshot;
        snapshot.reserve(closure.size());
        for (const auto& [key, ni] : closure) snapshot.push_back(ni);

        for (const auto& ni : snapshot) {
            if (!ni.is_role) {
                // (a) B1 <= B2, B2 <= not B3  gives  B1 <= not B3
                for (const auto& pi : concept_pis)
                    if (pi.rhs == ni.clhs) changed |= insert_symmetric(concept_ni(pi.lhs, ni.crhs));
                // (b) Q1 <= Q2, exists Q2 <= not B  gives  exists Q1 <= not B
                if (ni.clhs.is_exists)
                    for (const auto& pi : role_pis)
                        if (pi.rhs == ni.clhs.role)
                            changed |= insert_symmetric(concept_ni(BasicConcept::exists(pi.lhs), ni.crhs));
            } else {
                // (c) Q1 <= Q2, Q2 <= not Q3  gives  Q1 <= not Q3
                for (const auto& pi : role_pis)
                    if (pi.rhs == ni.rlhs) changed |= insert_symmetric(role_ni(pi.lhs, ni.rrhs));
            }

            // An empty role surfaces in three equivalent shapes; deriving one
            // of Q <= not Q, exists Q <= not exists Q, exists Q- <= not
            // exists Q- yields the whole family. Pointwise degrees <= 1/2 and
            // filler suprema <= 1/2 coincide, so this also holds for graded
            // stores.
            const Role* empty_role = nullptr;
            if (ni.is_role && ni.rlhs == ni.rrhs) empty_role = &ni.rlhs;
            if (!ni.is_role && ni.clhs == ni.crhs && ni.clhs.is_exists) empty_role = &ni.clhs.role;
            if (empty_role) {
                Role plain{empty_role->name, false};
                for (const Role& q : {plain, plain.inverted()}) {
                    changed |= insert_symmetric(role_ni(q, q));
                    changed |= insert_symmetric(
                        concept_ni(BasicConcept::exists(q), BasicConcept::exists(q)));
                }
            }
        }
    }

    std::vector<NegativeInclusion> result;
    result.reserve(closure.size());
    for (const auto& [key, ni] : closure) result.push_back(ni);
    return result;
}

namespace {

// Degrees read off the fact store: the best asserted degree per fact, with
// exists-concepts taking the best degree over fillers.
struct StoreIndex {
    std::map<std::pair<std::string, IndividualName>, double> concept_degree;
    std::map<std::string, std::vector<std::pair<std::pair<IndividualName, IndividualName>, double>>> role_edges;
    std::map<std::pair<std::string, IndividualName>, double> exists_fwd; // best outgoing degree
    std::map<std::pair<std::string, IndividualName>, double> exists_bwd; // best incoming degree

    explicit StoreIndex(const Fabox& fabox) {
        auto bump = [](auto& m, auto key, double v) {
            auto [it, inserted] = m.emplace(std::move(key), v);
            if (!inserted) it->second = std::max(it->second, v);
        };
        for (const auto& a : fabox.assertions()) {
            if (a.kind == AssertionKind::Concept) {
                bump(concept_degree, std::make_pair(a.predicate, a.args[0]), a.degree);
            } else {
                role_edges[a.predicate].push_back({{a.args[0], a.args[1]}, a.degree});
                bump(exists_fwd, std::make_pair(a.predicate, a.args[0]), a.degree);
                bump(exists_bwd, std::make_pair(a.predicate, a.args[1]), a.degree);
            }
        }
    }

    double concept_of(const BasicConcept& b, const IndividualName& x) const {
        if (!b.is_exists) {
            auto it = concept_degree.find({b.atomic, x});
            return it == concept_degree.end() ? 0.0 : it->second;
        }
        const auto& m = b.role.inverse ? exists_bwd : exists_fwd;
        auto it = m.find({b.role.name, x});
        return it == m.end() ? 0.0 : it->second;
    }

    // Candidates with a positive degree for a basic concept.
    std::vector<IndividualName> candidates(const BasicConcept& b) const {
        std::set<IndividualName> out;
        if (!b.is_exists) {
            for (const auto& [key, d] : concept_degree)
                if (key.first == b.atomic && d > 0.0) out.insert(key.second);
        } else {
            const auto& m = b.role.inverse ? exists_bwd : exists_fwd;
            for (const auto& [key, d] : m)
                if (key.first == b.role.name && d > 0.0) out.insert(key.second);
        }
        return {out.begin(), out.end()};
    }

    double role_of(const Role& q, const IndividualName& x, const IndividualName& y) const {
        const IndividualName& from = q.inverse ? y : x;
        const IndividualName& to = q.inverse ? x : y;
        auto it = role_edges.find(q.name);
        double best = 0.0;
        if (it != role_edges.end())
            for (const auto& [pair, d] : it->second)
                if (pair.first == from && pair.second == to) best = std::max(best, d);
        return best;
    }
};

} // namespace

std::string KbReport::str() const {
    if (ok()) return "consistent";
    std::ostringstream out;
    out << violations.size() << " negative inclusion(s) violated";
    for (const auto& v : violations) {
        out << "\n  " << v.ni.str() << ":";
        for (const auto& w : v.witnesses)
            out << " " << w.subject << " (" << format_degree(w.lhs_degree) << " > 1 - "
                << format_degree(w.rhs_degree) << ")";
    }
    return out.str();
}

KbReport check_kb_consistency(const Tbox& tbox, const Fabox& fabox) {
    {
        TboxReport t = validate_fakb_tbox(tbox);
        if (!t.ok()) raise(ErrorCode::Precondition, t.str());
        FaboxReport f = check_fabox_consistency(fabox);
        if (!f.ok()) raise(ErrorCode::Precondition, "the fact store is inconsistent: " + f.str());
    }

    StoreIndex index(fabox);
    KbReport report;
    std::set<std::string> seen; // symmetric entries fire identically; check one side

    for (const auto& ni : ni_closure(tbox)) {
        std::string a = ni.key(), b = flipped(ni).key();
        if (seen.count(a) || seen.count(b)) continue;
        seen.insert(a);

        NiViolation violation{ni, {}};
        if (!ni.is_role) {
            for (const auto& x : index.candidates(ni.clhs)) {
                double v1 = index.concept_of(ni.clhs, x);
                double v2 = index.concept_of(ni.crhs, x);
                if (v1 > 1.0 - v2) violation.witnesses.push_back({print_individual(x), v1, v2});
            }
        } else {
            std::set<std::pair<IndividualName, IndividualName>> pairs;
            auto it = index.role_edges.find(ni.rlhs.name);
            if (it != index.role_edges.end())
                for (const auto& [pair, d] : it->second)
                    pairs.insert(ni.rlhs.inverse ? std::make_pair(pair.second, pair.first) : pair);
            for (const auto& [x, y] : pairs) {
                double v1 = index.role_of(ni.rlhs, x, y);
                double v2 = index.role_of(ni.rrhs, x, y);
                if (v1 > 1.0 - v2)
                    violation.witnesses.push_back(
                        {"(" + print_individual(x) + "," + print_individual(y) + ")", v1, v2});
            }
        }
        if (!violation.witnesses.empty()) {
            std::sort(violation.witnesses.begin(), violation.witnesses.end(),
                      [](const NiWitness& l, const NiWitness& r) {
                          if (l.excess() != r.excess()) return l.excess() > r.excess();
                          return l.subject < r.subject;
                      });
            report.violations.push_back(std::move(violation));
        }
    }

    std::sort(report.violations.begin(), report.violations.end(),
              [](const NiViolation& l, const NiViolation& r) { return l.ni.key() < r.ni.key(); });
    return report;
}

} // namespace fakb
