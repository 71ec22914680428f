// qbaf.cpp : gradual-semantics evaluation
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

#include "qbaf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "error.hpp"

namespace fakb {

namespace {

void check_unit(double v, const std::string& what) {
    if (!(v >= 0.0 && v <= 1.0))
        raise(ErrorCode::Domain, what + " must lie in [0,1], got " + std::to_string(v));
}

} // namespace

void WeightedQbaf::add_argument(ArgumentId id, double tau) {
    if (id.index <= 0)
        raise(ErrorCode::Domain, "argument indices are positive, got " + std::to_string(id.index));
    check_unit(tau, "initial strength of " + id.str());
    auto [it, inserted] = arguments_.emplace(id, tau);
    if (!inserted && it->second != tau)
        raise(ErrorCode::Domain, "argument " + id.str() + " already present with a different initial strength");
}

void WeightedQbaf::check_endpoints(ArgumentId source, ArgumentId target) const {
    if (!has_argument(source))
        raise(ErrorCode::Domain, "edge source " + source.str() + " is not an argument of the graph");
    if (!has_argument(target))
        raise(ErrorCode::Domain, "edge target " + target.str() + " is not an argument of the graph");
}

void WeightedQbaf::add_attack(ArgumentId source, ArgumentId target, double phi) {
    check_endpoints(source, target);
    check_unit(phi, "attack weight (" + source.str() + "," + target.str() + ")");
    if (supports_.count({source, target}))
        raise(ErrorCode::Domain,
              "pair (" + source.str() + "," + target.str() + ") already carries a support relation");
    attacks_[{source, target}] = phi;
}

void WeightedQbaf::add_support(ArgumentId source, ArgumentId target, double phi) {
    check_endpoints(source, target);
    check_unit(phi, "support weight (" + source.str() + "," + target.str() + ")");
    if (attacks_.count({source, target}))
        raise(ErrorCode::Domain,
              "pair (" + source.str() + "," + target.str() + ") already carries an attack relation");
    supports_[{source, target}] = phi;
}

std::vector<WeightedQbaf::InEdge> WeightedQbaf::incoming(ArgumentId target) const {
    std::vector<InEdge> in;
    for (const auto& [edge, phi] : attacks_)
        if (edge.second == target) in.push_back({edge.first, phi, true});
    for (const auto& [edge, phi] : supports_)
        if (edge.second == target) in.push_back({edge.first, phi, false});
    std::sort(in.begin(), in.end(), [](const InEdge& a, const InEdge& b) {
        if (a.source != b.source) return a.source < b.source;
        return a.is_attack && !b.is_attack;
    });
    return in;
}

double StrengthAssignment::at(ArgumentId id) const {
    auto it = values.find(id);
    if (it == values.end())
        raise(ErrorCode::Domain, "no strength recorded for " + id.str());
    return it->second;
}

double aggregate(const WeightedQbaf& qbaf, const StrengthAssignment& current, ArgumentId target) {
    if (!qbaf.has_argument(target))
        raise(ErrorCode::Domain, "unknown aggregation target " + target.str());
    double support_sum = 0.0;
    double attack_sum = 0.0;
    for (const auto& e : qbaf.incoming(target)) {
        double term = current.at(e.source) * e.weight;
        (e.is_attack ? attack_sum : support_sum) += term;
    }
    return support_sum - attack_sum;
}

double quadratic_energy_influence(double alpha, double tau) {
    // 1/(1+1/alpha^2) is the overflow-safe form of alpha^2/(1+alpha^2).
    double energy;
    if (alpha == 0.0) {
        energy = 0.0;
    } else if (std::abs(alpha) > 1.0) {
        energy = 1.0 / (1.0 + 1.0 / (alpha * alpha));
    } else {
        double a2 = alpha * alpha;
        energy = a2 / (1.0 + a2);
    }
    if (alpha <= 0.0) return (1.0 - energy) * tau;
    return energy + (1.0 - energy) * tau;
}

ModularSemantics make_semantics(const std::string& name) {
    if (name == "quadratic-energy") {
        ModularSemantics sem;
        sem.name = name;
        sem.aggregation = [](std::span<const double> support_terms, std::span<const double> attack_terms) {
            double s = std::accumulate(support_terms.begin(), support_terms.end(), 0.0);
            double a = std::accumulate(attack_terms.begin(), attack_terms.end(), 0.0);
            return s - a;
        };
        sem.influence = quadratic_energy_influence;
        return sem;
    }
    raise(ErrorCode::InvalidArgument, "unknown semantics '" + name + "' (available: quadratic-energy)");
}

namespace {

double update_one(const WeightedQbaf& qbaf, const ModularSemantics& sem,
                  const std::map<ArgumentId, double>& rho, ArgumentId id, double tau) {
    std::vector<double> support_terms;
    std::vector<double> attack_terms;
    for (const auto& e : qbaf.incoming(id)) {
        double term = rho.at(e.source) * e.weight;
        (e.is_attack ? attack_terms : support_terms).push_back(term);
    }
    return sem.influence(sem.aggregation(support_terms, attack_terms), tau);
}

} // namespace

StrengthAssignment evaluate_acyclic(const WeightedQbaf& qbaf, const ModularSemantics& sem) {
    // Kahn's algorithm over the combined digraph; the smallest ready argument
    // is processed first, so the pass order is canonical.
    std::map<ArgumentId, int> indegree;
    std::map<ArgumentId, std::vector<ArgumentId>> out;
    for (const auto& [id, tau] : qbaf.arguments()) indegree[id] = 0;
    auto record = [&](const WeightedQbaf::Edge& e) {
        indegree[e.second] += 1;
        out[e.first].push_back(e.second);
    };
    for (const auto& [e, phi] : qbaf.attacks()) record(e);
    for (const auto& [e, phi] : qbaf.supports()) record(e);

    std::priority_queue<ArgumentId, std::vector<ArgumentId>, std::greater<>> ready;
    for (const auto& [id, deg] : indegree)
        if (deg == 0) ready.push(id);

    StrengthAssignment result;
    while (!ready.empty()) {
        ArgumentId id = ready.top();
        ready.pop();
        result.values[id] = update_one(qbaf, sem, result.values, id, qbaf.arguments().at(id));
        for (ArgumentId succ : out[id])
            if (--indegree[succ] == 0) ready.push(succ);
    }
    if (result.values.size() != qbaf.size())
        raise(ErrorCode::Domain,
              "the attack/support graph contains a cycle; use evaluate_iterative for cyclic graphs");
    result.converged = true;
    result.iterations = 1;
    return result;
}

StrengthAssignment evaluate_iterative(const WeightedQbaf& qbaf, const ModularSemantics& sem,
                                      double epsilon, long max_iter) {
    if (!(epsilon > 0.0))
        raise(ErrorCode::Domain, "epsilon must be positive");
    if (max_iter <= 0)
        raise(ErrorCode::Domain, "max_iter must be positive");

    StrengthAssignment result;
    result.values = qbaf.arguments();
    if (qbaf.empty()) {
        result.converged = true;
        return result;
    }

    for (long round = 1; round <= max_iter; ++round) {
        std::map<ArgumentId, double> next;
        double max_delta = 0.0;
        for (const auto& [id, tau] : qbaf.arguments()) {
            double v = update_one(qbaf, sem, result.values, id, tau);
            max_delta = std::max(max_delta, std::abs(v - result.values.at(id)));
            next.emplace(id, v);
        }
        result.values = std::move(next);
        result.iterations = round;
        if (max_delta < epsilon) {
            result.converged = true;
            return result;
        }
    }
    result.converged = false;
    return result;
}

} // namespace fakb
