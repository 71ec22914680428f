// capi.cpp : the exported C surface over the C++ core
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

#include "fakb/fakb.h"

#include <algorithm>
#include <cstring>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "dllite.hpp"
#include "error.hpp"
#include "extractor.hpp"
#include "fabox.hpp"
#include "fabox_io.hpp"
#include "mock_backend.hpp"
#include "query.hpp"

using nlohmann::json;

struct fakb_config {
    fakb::EngineConfig config;
};

struct fakb_fabox {
    fakb::Fabox fabox;
};

struct fakb_tbox {
    fakb::Tbox tbox;
};

namespace {

thread_local std::string g_last_error;

fakb_status status_of(fakb::ErrorCode code) {
    using fakb::ErrorCode;
    switch (code) {
        case ErrorCode::Parse: return FAKB_ERR_PARSE;
        case ErrorCode::Io: return FAKB_ERR_IO;
        case ErrorCode::Inconsistent: return FAKB_ERR_INCONSISTENT;
        case ErrorCode::Precondition: return FAKB_ERR_PRECONDITION;
        case ErrorCode::NonConvergence: return FAKB_ERR_NO_CONVERGENCE;
        case ErrorCode::Domain: return FAKB_ERR_DOMAIN;
        case ErrorCode::Extraction: return FAKB_ERR_EXTRACTION;
        case ErrorCode::InvalidArgument: return FAKB_ERR_INVALID_ARGUMENT;
        default: return FAKB_ERR_INTERNAL;
    }
}

template <typename F>
fakb_status guarded(F&& f) {
    try {
        f();
        return FAKB_OK;
    } catch (const fakb::Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return FAKB_ERR_INTERNAL;
    }
}

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

fakb_status require(bool ok, const char* message) {
    if (ok) return FAKB_OK;
    g_last_error = message;
    return FAKB_ERR_INVALID_ARGUMENT;
}

fakb::EngineConfig config_or_default(const fakb_config* config) {
    return config ? config->config : fakb::EngineConfig{};
}

json fabox_report_json(const fakb::FaboxReport& report) {
    json violations = json::array();
    for (const auto& v : report.violations) violations.push_back({{"rule", v.rule}, {"message", v.message}});
    return json{{"consistent", report.ok()}, {"violations", violations}, {"warnings", report.warnings}};
}

json individual_json(const fakb::IndividualName& n) {
    if (n.is_text()) return json{{"text", n.label}};
    return json(n.label);
}

} // namespace

extern "C" {

const char* fakb_version(void) { return "1.0.0"; }

const char* fakb_last_error(void) { return g_last_error.c_str(); }

void fakb_string_free(char* s) { delete[] s; }

fakb_config* fakb_config_new(void) { return new fakb_config{}; }

void fakb_config_free(fakb_config* config) { delete config; }

fakb_status fakb_config_set_epsilon(fakb_config* config, double epsilon) {
    if (fakb_status s = require(config != nullptr, "null config"); s != FAKB_OK) return s;
    return guarded([&] {
        fakb::EngineConfig next = config->config;
        next.epsilon = epsilon;
        next.validate();
        config->config = next;
    });
}

fakb_status fakb_config_set_max_iter(fakb_config* config, long max_iter) {
    if (fakb_status s = require(config != nullptr, "null config"); s != FAKB_OK) return s;
    return guarded([&] {
        fakb::EngineConfig next = config->config;
        next.max_iter = max_iter;
        next.validate();
        config->config = next;
    });
}

fakb_status fakb_config_set_theta(fakb_config* config, double theta) {
    if (fakb_status s = require(config != nullptr, "null config"); s != FAKB_OK) return s;
    return guarded([&] {
        fakb::EngineConfig next = config->config;
        next.theta = theta;
        next.validate();
        config->config = next;
    });
}

fakb_status fakb_config_set_semantics(fakb_config* config, const char* name) {
    if (fakb_status s = require(config && name, "null config or name"); s != FAKB_OK) return s;
    return guarded([&] {
        fakb::make_semantics(name); // rejects unknown names
        config->config.semantics = name;
    });
}

fakb_status fakb_fabox_parse_text(const char* text, fakb_fabox** out) {
    if (fakb_status s = require(text && out, "null argument"); s != FAKB_OK) return s;
    return guarded([&] { *out = new fakb_fabox{fakb::parse_fabox_text(text)}; });
}

fakb_status fakb_fabox_parse_json(const char* json_text, fakb_fabox** out) {
    if (fakb_status s = require(json_text && out, "null argument"); s != FAKB_OK) return s;
    return guarded([&] { *out = new fakb_fabox{fakb::parse_fabox_json(json_text)}; });
}

fakb_status fakb_fabox_load(const char* path, fakb_fabox** out) {
    if (fakb_status s = require(path && out, "null argument"); s != FAKB_OK) return s;
    return guarded([&] { *out = new fakb_fabox{fakb::load_fabox_file(path)}; });
}

void fakb_fabox_free(fakb_fabox* fabox) { delete fabox; }

fakb_status fakb_fabox_to_text(const fakb_fabox* fabox, char** out) {
    if (fakb_status s = require(fabox && out, "null argument"); s != FAKB_OK) return s;
    return guarded([&] { *out = copy_string(fakb::serialize_fabox_text(fabox->fabox)); });
}

fakb_status fakb_fabox_to_json(const fakb_fabox* fabox, char** out) {
    if (fakb_status s = require(fabox && out, "null argument"); s != FAKB_OK) return s;
    return guarded([&] { *out = copy_string(fakb::serialize_fabox_json(fabox->fabox)); });
}

fakb_status fakb_fabox_size(const fakb_fabox* fabox, size_t* out) {
    if (fakb_status s = require(fabox && out, "null argument"); s != FAKB_OK) return s;
    *out = fabox->fabox.size();
    return FAKB_OK;
}

fakb_status fakb_fabox_check(const fakb_fabox* fabox, int* consistent, char** report_json) {
    if (fakb_status s = require(fabox != nullptr, "null fact store"); s != FAKB_OK) return s;
    return guarded([&] {
        fakb::FaboxReport report = fakb::check_fabox_consistency(fabox->fabox);
        if (consistent) *consistent = report.ok() ? 1 : 0;
        if (report_json) *report_json = copy_string(fabox_report_json(report).dump(2) + "\n");
    });
}

fakb_status fakb_fabox_update_strengths(const fakb_fabox* fabox, const fakb_config* config,
                                        fakb_fabox** out) {
    if (fakb_status s = require(fabox && out, "null argument"); s != FAKB_OK) return s;
    return guarded([&] {
        fakb::EngineConfig c = config_or_default(config);
        c.validate();
        *out = new fakb_fabox{fakb::apply_strength_update(fabox->fabox, fakb::make_semantics(c.semantics),
                                                          c.epsilon, c.max_iter)};
    });
}

fakb_status fakb_fabox_strength_table(const fakb_fabox* fabox, const fakb_config* config,
                                      char** table_json) {
    if (fakb_status s = require(fabox && table_json, "null argument"); s != FAKB_OK) return s;
    return guarded([&] {
        fakb::EngineConfig c = config_or_default(config);
        c.validate();
        fakb::WeightedQbaf qbaf = fakb::underlying_qbaf(fabox->fabox);
        fakb::ModularSemantics sem = fakb::make_semantics(c.semantics);
        fakb::StrengthAssignment rho;
        try {
            rho = fakb::evaluate_acyclic(qbaf, sem);
        } catch (const fakb::Error&) {
            rho = fakb::evaluate_iterative(qbaf, sem, c.epsilon, c.max_iter);
        }
        json rows = json::array();
        for (const auto& [id, tau] : qbaf.arguments())
            rows.push_back({{"argument", id.str()}, {"initial", tau}, {"final", rho.at(id)}});
        json table{{"converged", rho.converged}, {"iterations", rho.iterations}, {"rows", rows}};
        *table_json = copy_string(table.dump(2) + "\n");
    });
}

fakb_status fakb_fabox_export_graph(const fakb_fabox* fabox, char** graph_json) {
    if (fakb_status s = require(fabox && graph_json, "null argument"); s != FAKB_OK) return s;
    return guarded([&] { *graph_json = copy_string(fakb::export_graph_json(fabox->fabox)); });
}

fakb_status fakb_tbox_parse_text(const char* text, fakb_tbox** out) {
    if (fakb_status s = require(text && out, "null argument"); s != FAKB_OK) return s;
    return guarded([&] { *out = new fakb_tbox{fakb::parse_tbox_text(text)}; });
}

fakb_status fakb_tbox_load(const char* path, fakb_tbox** out) {
    if (fakb_status s = require(path && out, "null argument"); s != FAKB_OK) return s;
    return guarded([&] { *out = new fakb_tbox{fakb::parse_tbox_text(fakb::read_file(path))}; });
}

void fakb_tbox_free(fakb_tbox* tbox) { delete tbox; }

fakb_status fakb_tbox_validate(const fakb_tbox* tbox, int* valid, char** report_json) {
    if (fakb_status s = require(tbox != nullptr, "null ontology"); s != FAKB_OK) return s;
    return guarded([&] {
        fakb::TboxReport report = fakb::validate_fakb_tbox(tbox->tbox);
        if (valid) *valid = report.ok() ? 1 : 0;
        if (report_json)
            *report_json =
                copy_string(json{{"valid", report.ok()}, {"violations", report.violations}}.dump(2) + "\n");
    });
}

fakb_status fakb_kb_check(const fakb_tbox* tbox, const fakb_fabox* fabox, int* consistent,
                          char** report_json) {
    if (fakb_status s = require(tbox && fabox, "null argument"); s != FAKB_OK) return s;
    return guarded([&] {
        fakb::KbReport report = fakb::check_kb_consistency(tbox->tbox, fabox->fabox);
        if (consistent) *consistent = report.ok() ? 1 : 0;
        if (report_json) {
            json violations = json::array();
            for (const auto& v : report.violations) {
                json witnesses = json::array();
                for (const auto& w : v.witnesses)
                    witnesses.push_back(
                        {{"subject", w.subject}, {"lhs_degree", w.lhs_degree}, {"rhs_degree", w.rhs_degree}});
                violations.push_back({{"negative_inclusion", v.ni.str()}, {"witnesses", witnesses}});
            }
            *report_json =
                copy_string(json{{"consistent", report.ok()}, {"violations", violations}}.dump(2) + "\n");
        }
    });
}

fakb_status fakb_rewrite(const fakb_tbox* tbox, const char* query, char** out_text) {
    if (fakb_status s = require(tbox && query && out_text, "null argument"); s != FAKB_OK) return s;
    return guarded([&] {
        fakb::ThresholdedQuery parsed = fakb::parse_query(query);
        fakb::UnionQuery rewritten = fakb::perfect_ref(parsed.query, tbox->tbox);
        *out_text = copy_string(fakb::print_union_query(rewritten));
    });
}

fakb_status fakb_query(const fakb_tbox* tbox, const fakb_fabox* fabox, const char* query,
                       const fakb_config* config, char** answers_json) {
    if (fakb_status s = require(tbox && fabox && query && answers_json, "null argument"); s != FAKB_OK)
        return s;
    return guarded([&] {
        (void)config_or_default(config);
        fakb::ThresholdedQuery parsed = fakb::parse_query(query);
        fakb::FuzzyAnswerSet answers = fakb::fcert(parsed, tbox->tbox, fabox->fabox);

        std::vector<std::pair<std::vector<fakb::IndividualName>, double>> rows(answers.rows.begin(),
                                                                               answers.rows.end());
        std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        json arr = json::array();
        for (const auto& [tuple, degree] : rows) {
            json t = json::array();
            for (const auto& ind : tuple) t.push_back(individual_json(ind));
            arr.push_back({{"tuple", t}, {"degree", degree}});
        }
        *answers_json = copy_string(arr.dump(2) + "\n");
    });
}

fakb_status fakb_extract(const char* fixture_json, const fakb_config* config, fakb_fabox** source,
                         fakb_fabox** updated, char** summary_json) {
    if (fakb_status s = require(fixture_json != nullptr, "null fixture"); s != FAKB_OK) return s;
    return guarded([&] {
        fakb::EngineConfig c = config_or_default(config);
        c.validate();
        fakb::MockBackend backend = fakb::MockBackend::from_json(fixture_json);
        fakb::Fabox src = fakb::extract_source_fabox(backend.document(), backend, c.theta);
        fakb::Fabox upd = fakb::apply_strength_update(src, fakb::make_semantics(c.semantics), c.epsilon,
                                                      c.max_iter);

        if (summary_json) {
            long arguments = 0, attacks = 0, supports = 0, entity_facts = 0;
            for (const auto& a : src.assertions()) {
                if (a.predicate == "Arg") ++arguments;
                else if (a.predicate == "att") ++attacks;
                else if (a.predicate == "sup") ++supports;
                else if (!fakb::is_builtin_predicate(a.predicate)) ++entity_facts;
            }
            json summary{{"arguments", arguments},
                         {"attacks", attacks},
                         {"supports", supports},
                         {"entity_facts", entity_facts}};
            *summary_json = copy_string(summary.dump(2) + "\n");
        }
        if (source) *source = new fakb_fabox{std::move(src)};
        if (updated) *updated = new fakb_fabox{std::move(upd)};
    });
}

} // extern "C"
