// qbaf.hpp : weighted quantitative bipolar argumentation graphs and
//            final-strength computation under modular gradual semantics
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

#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "names.hpp"

namespace fakb {

// A directed argumentation graph: every argument carries an initial strength
// tau in [0,1], every attack/support edge a weight phi in [0,1]. A pair of
// arguments carries at most one relation. Unweighted graphs are modeled with
// all phi = 1.
class WeightedQbaf {
public:
    using Edge = std::pair<ArgumentId, ArgumentId>; // (source, target)

    void add_argument(ArgumentId id, double tau);
    void add_attack(ArgumentId source, ArgumentId target, double phi);
    void add_support(ArgumentId source, ArgumentId target, double phi);

    bool has_argument(ArgumentId id) const { return arguments_.count(id) > 0; }
    std::size_t size() const { return arguments_.size(); }
    bool empty() const { return arguments_.empty(); }

    const std::map<ArgumentId, double>& arguments() const { return arguments_; }
    const std::map<Edge, double>& attacks() const { return attacks_; }
    const std::map<Edge, double>& supports() const { return supports_; }

    struct InEdge {
        ArgumentId source;
        double weight;
        bool is_attack;
    };
    // Incoming edges of `target`, ordered by (source, attack-before-support);
    // the fixed order makes aggregation sums reproducible.
    std::vector<InEdge> incoming(ArgumentId target) const;

private:
    void check_endpoints(ArgumentId source, ArgumentId target) const;

    std::map<ArgumentId, double> arguments_;
    std::map<Edge, double> attacks_;
    std::map<Edge, double> supports_;
};

struct StrengthAssignment {
    std::map<ArgumentId, double> values;
    bool converged = false;
    long iterations = 0;

    double at(ArgumentId id) const;
};

// A modular semantics folds the incoming weighted strengths into an
// aggregate value, then maps (aggregate, initial strength) to the final
// strength. The influence function must stay inside [0,1] for any real
// aggregate and any tau in [0,1].
struct ModularSemantics {
    std::string name;
    std::function<double(std::span<const double> support_terms,
                         std::span<const double> attack_terms)>
        aggregation;
    std::function<double(double alpha, double tau)> influence;
};

// Weighted sum aggregation: sum of rho*phi over supporters minus the same
// sum over attackers.
double aggregate(const WeightedQbaf& qbaf, const StrengthAssignment& current, ArgumentId target);

// Quadratic-energy influence: with E = alpha^2 / (1 + alpha^2), returns
// (1-E)*tau for alpha <= 0 and E + (1-E)*tau otherwise.
double quadratic_energy_influence(double alpha, double tau);

// Registry of shipped semantics; currently only "quadratic-energy".
// Unknown names raise InvalidArgument.
ModularSemantics make_semantics(const std::string& name);

// Single pass in topological order; requires the attack+support digraph to
// be acyclic (self-edges count as cycles). Raises Domain on cycles,
// pointing the caller at evaluate_iterative.
StrengthAssignment evaluate_acyclic(const WeightedQbaf& qbaf, const ModularSemantics& sem);

// Synchronous fixpoint iteration from rho = tau. Stops when the largest
// per-argument change drops below epsilon, or after max_iter rounds with
// converged = false (the last iterate is still returned).
StrengthAssignment evaluate_iterative(const WeightedQbaf& qbaf, const ModularSemantics& sem,
                                      double epsilon, long max_iter);

} // namespace fakb
