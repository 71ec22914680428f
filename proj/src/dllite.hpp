// dllite.hpp : TBoxes of concept/role inclusions, the negative-inclusion
//              closure, and fuzzy knowledge-base consistency
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

#include <string>
#include <variant>
#include <vector>

#include "fabox.hpp"

namespace fakb {

struct Role {
    std::string name;
    bool inverse = false;

    Role inverted() const { return {name, !inverse}; }
    std::string str() const { return inverse ? name + "-" : name; }
    auto operator<=>(const Role&) const = default;
};

// B := A | exists Q
struct BasicConcept {
    bool is_exists = false;
    std::string atomic; // when !is_exists
    Role role;          // when is_exists

    static BasicConcept named(std::string name) { return {false, std::move(name), {}}; }
    static BasicConcept exists(Role role) { return {true, {}, std::move(role)}; }
    std::string str() const { return is_exists ? "exists " + role.str() : atomic; }
    auto operator<=>(const BasicConcept&) const = default;
};

struct ConceptInclusion {
    BasicConcept lhs;
    BasicConcept rhs;
    bool rhs_negated = false;
};

struct RoleInclusion {
    Role lhs;
    Role rhs;
    bool rhs_negated = false;
};

using Inclusion = std::variant<ConceptInclusion, RoleInclusion>;

std::string inclusion_str(const Inclusion& inc);

class Tbox {
public:
    void add(Inclusion inc) { inclusions_.push_back(std::move(inc)); }
    const std::vector<Inclusion>& inclusions() const { return inclusions_; }
    bool empty() const { return inclusions_.empty(); }

private:
    std::vector<Inclusion> inclusions_;
};

// One inclusion per line, '#' starts comments:
//   A <= B            A <= not B
//   exists r <= B     exists r- <= not exists s
//   r <= s            r <= not s
// Names follow the case convention (concepts capitalized, roles lower-case).
Tbox parse_tbox_text(const std::string& text);
std::string serialize_tbox_text(const Tbox& tbox);

// Inclusions whose positive right-hand side mentions a built-in name.
// Arguments, attacks, supports and texts are extensional only, so such
// axioms are rejected.
struct TboxReport {
    std::vector<std::string> violations; // rendered offending inclusions
    bool ok() const { return violations.empty(); }
    std::string str() const;
};
TboxReport validate_fakb_tbox(const Tbox& tbox);

// A negative inclusion lhs <= not rhs; both sides are basic concepts or
// both are roles.
struct NegativeInclusion {
    bool is_role = false;
    BasicConcept clhs, crhs;
    Role rlhs, rrhs;

    std::string str() const;
    std::string key() const;
};

// Closure of the negative inclusions under the positive ones:
//   (a) B1 <= B2 and B2 <= not B3   give B1 <= not B3
//   (b) Q1 <= Q2 and exists Q2 <= not B (or the inverse form) give
//       exists Q1 <= not B (resp. the inverse form)
//   (c) Q1 <= Q2 and Q2 <= not Q3 give Q1 <= not Q3
//   (d) entries are stored symmetrically (X <= not Y iff Y <= not X)
// Role inclusions act on both orientations (r <= s implies r- <= s-).
std::vector<NegativeInclusion> ni_closure(const Tbox& tbox);

struct NiWitness {
    std::string subject; // individual or "(a,b)" pair
    double lhs_degree = 0.0;
    double rhs_degree = 0.0;
    double excess() const { return lhs_degree + rhs_degree - 1.0; }
};

struct NiViolation {
    NegativeInclusion ni;
    std::vector<NiWitness> witnesses; // strongest violation first
};

struct KbReport {
    std::vector<NiViolation> violations;
    bool ok() const { return violations.empty(); }
    std::string str() const;
};

// Fires every closed negative inclusion X <= not Y against the fact store
// read as an interpretation: a witness violates it when
// d_X > 1 - d_Y, with exists-concepts evaluated as the best degree over
// role fillers. Requires a consistent store and a valid TBox.
KbReport check_kb_consistency(const Tbox& tbox, const Fabox& fabox);

} // namespace fakb
