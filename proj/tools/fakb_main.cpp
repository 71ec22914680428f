// fakb_main.cpp : command-line front end over the C API
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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fakb/fakb.h"

namespace {

using nlohmann::json;

// Exit codes: 0 success, 1 semantic failure (inconsistency, non-convergence),
// 2 usage or IO error.
constexpr int kExitOk = 0;
constexpr int kExitSemantic = 1;
constexpr int kExitUsage = 2;

struct StringOut {
    char* value = nullptr;
    ~StringOut() { fakb_string_free(value); }
    std::string str() const { return value ? value : ""; }
};

int exit_code_for(fakb_status status) {
    switch (status) {
        case FAKB_OK: return kExitOk;
        case FAKB_ERR_INCONSISTENT:
        case FAKB_ERR_NO_CONVERGENCE: return kExitSemantic;
        default: return kExitUsage;
    }
}

int fail(fakb_status status) {
    std::cerr << "error: " << fakb_last_error() << "\n";
    return exit_code_for(status);
}

std::string format_degree(double degree) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", degree);
    return buf;
}

struct Options {
    double epsilon = 1e-6;
    long max_iter = 10000;
    double theta = 0.0;
    std::string semantics = "quadratic-energy";
    std::string format = "text";
    std::string export_graph_path;
};

using ConfigPtr = std::unique_ptr<fakb_config, decltype(&fakb_config_free)>;

ConfigPtr build_config(const Options& opts, fakb_status& status) {
    ConfigPtr config(fakb_config_new(), &fakb_config_free);
    status = fakb_config_set_epsilon(config.get(), opts.epsilon);
    if (status == FAKB_OK) status = fakb_config_set_max_iter(config.get(), opts.max_iter);
    if (status == FAKB_OK) status = fakb_config_set_theta(config.get(), opts.theta);
    if (status == FAKB_OK) status = fakb_config_set_semantics(config.get(), opts.semantics.c_str());
    return config;
}

bool write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << content;
    return static_cast<bool>(out);
}

std::string tuple_entry_to_text(const json& entry) {
    if (entry.is_string()) return entry.get<std::string>();
    if (entry.is_object() && entry.contains("text")) return entry["text"].get<std::string>();
    return entry.dump();
}

// Tabs and newlines inside argument texts would break the row format.
std::string tsv_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '\t') out += "\\t";
        else if (c == '\n') out += "\\n";
        else out += c;
    }
    return out;
}

int maybe_export_graph(const fakb_fabox* fabox, const std::string& path) {
    if (path.empty()) return kExitOk;
    StringOut graph;
    if (fakb_status s = fakb_fabox_export_graph(fabox, &graph.value); s != FAKB_OK) return fail(s);
    if (!write_text_file(path, graph.str())) {
        std::cerr << "error: cannot write graph to '" << path << "'\n";
        return kExitUsage;
    }
    return kExitOk;
}

using FaboxPtr = std::unique_ptr<fakb_fabox, decltype(&fakb_fabox_free)>;
using TboxPtr = std::unique_ptr<fakb_tbox, decltype(&fakb_tbox_free)>;

FaboxPtr load_fabox(const std::string& path, fakb_status& status) {
    fakb_fabox* raw = nullptr;
    status = fakb_fabox_load(path.c_str(), &raw);
    return FaboxPtr(raw, &fakb_fabox_free);
}

TboxPtr load_tbox(const std::string& path, fakb_status& status) {
    fakb_tbox* raw = nullptr;
    status = fakb_tbox_load(path.c_str(), &raw);
    return TboxPtr(raw, &fakb_tbox_free);
}

int run_extract(const std::string& fixture_path, const Options& opts, const std::string& out_source,
                const std::string& out_updated) {
    std::ifstream in(fixture_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open '" << fixture_path << "'\n";
        return kExitUsage;
    }
    std::string fixture((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    fakb_status status;
    ConfigPtr config = build_config(opts, status);
    if (status != FAKB_OK) return fail(status);

    fakb_fabox* source_raw = nullptr;
    fakb_fabox* updated_raw = nullptr;
    StringOut summary;
    status = fakb_extract(fixture.c_str(), config.get(), &source_raw, &updated_raw, &summary.value);
    if (status != FAKB_OK) return fail(status);
    FaboxPtr source(source_raw, &fakb_fabox_free);
    FaboxPtr updated(updated_raw, &fakb_fabox_free);

    bool as_json = opts.format == "json";
    auto serialize = [&](const fakb_fabox* fabox, StringOut& text) {
        return as_json ? fakb_fabox_to_json(fabox, &text.value) : fakb_fabox_to_text(fabox, &text.value);
    };
    std::string stem = fixture_path;
    if (std::size_t dot = stem.rfind(".json"); dot != std::string::npos) stem = stem.substr(0, dot);
    std::string source_path = out_source.empty() ? stem + (as_json ? ".source.json" : ".source.fabox") : out_source;
    std::string updated_path =
        out_updated.empty() ? stem + (as_json ? ".updated.json" : ".updated.fabox") : out_updated;

    StringOut source_text, updated_text;
    if (fakb_status s = serialize(source.get(), source_text); s != FAKB_OK) return fail(s);
    if (fakb_status s = serialize(updated.get(), updated_text); s != FAKB_OK) return fail(s);
    if (!write_text_file(source_path, source_text.str()) || !write_text_file(updated_path, updated_text.str())) {
        std::cerr << "error: cannot write output files\n";
        return kExitUsage;
    }

    json s = json::parse(summary.str());
    std::cout << "arguments: " << s["arguments"] << "\n"
              << "attacks:   " << s["attacks"] << "\n"
              << "supports:  " << s["supports"] << "\n"
              << "entity facts: " << s["entity_facts"] << "\n"
              << "source:  " << source_path << "\n"
              << "updated: " << updated_path << "\n";
    return maybe_export_graph(updated.get(), opts.export_graph_path);
}

int run_check(const std::string& fabox_path, const std::string& tbox_path, const Options& opts) {
    fakb_status status;
    FaboxPtr fabox = load_fabox(fabox_path, status);
    if (status != FAKB_OK) return fail(status);
    TboxPtr tbox = load_tbox(tbox_path, status);
    if (status != FAKB_OK) return fail(status);

    int store_ok = 0;
    StringOut store_report;
    if (fakb_status s = fakb_fabox_check(fabox.get(), &store_ok, &store_report.value); s != FAKB_OK)
        return fail(s);

    int tbox_ok = 0;
    StringOut tbox_report;
    if (fakb_status s = fakb_tbox_validate(tbox.get(), &tbox_ok, &tbox_report.value); s != FAKB_OK)
        return fail(s);

    int kb_ok = 0;
    StringOut kb_report;
    if (store_ok && tbox_ok) {
        if (fakb_status s = fakb_kb_check(tbox.get(), fabox.get(), &kb_ok, &kb_report.value); s != FAKB_OK)
            return fail(s);
    }

    if (opts.format == "json") {
        json out{{"fabox", json::parse(store_report.str())}, {"tbox", json::parse(tbox_report.str())}};
        out["kb"] = (store_ok && tbox_ok) ? json::parse(kb_report.str()) : json(nullptr);
        out["consistent"] = store_ok && tbox_ok && kb_ok;
        std::cout << out.dump(2) << "\n";
    } else {
        json store = json::parse(store_report.str());
        if (store_ok) std::cout << "fact store: consistent\n";
        else {
            std::cout << "fact store: " << store["violations"].size() << " violation(s)\n";
            for (const auto& v : store["violations"])
                std::cout << "  [" << v["rule"].get<std::string>() << "] " << v["message"].get<std::string>()
                          << "\n";
        }
        for (const auto& w : store["warnings"]) std::cout << "  warning: " << w.get<std::string>() << "\n";
        json tb = json::parse(tbox_report.str());
        if (tbox_ok) std::cout << "ontology: valid\n";
        else {
            std::cout << "ontology: built-in names on positive right-hand sides\n";
            for (const auto& v : tb["violations"]) std::cout << "  " << v.get<std::string>() << "\n";
        }
        if (store_ok && tbox_ok) {
            json kb = json::parse(kb_report.str());
            if (kb_ok) std::cout << "knowledge base: consistent\n";
            else {
                std::cout << "knowledge base: negative inclusions violated\n";
                for (const auto& v : kb["violations"]) {
                    std::cout << "  " << v["negative_inclusion"].get<std::string>() << ":";
                    for (const auto& w : v["witnesses"])
                        std::cout << " " << w["subject"].get<std::string>() << " ("
                                  << format_degree(w["lhs_degree"].get<double>()) << " vs "
                                  << format_degree(w["rhs_degree"].get<double>()) << ")";
                    std::cout << "\n";
                }
            }
        }
    }
    int code = (store_ok && tbox_ok && kb_ok) ? kExitOk : kExitSemantic;
    if (int g = maybe_export_graph(fabox.get(), opts.export_graph_path); g != kExitOk) return g;
    return code;
}

int run_strengths(const std::string& fabox_path, const Options& opts) {
    fakb_status status;
    FaboxPtr fabox = load_fabox(fabox_path, status);
    if (status != FAKB_OK) return fail(status);

    ConfigPtr config = build_config(opts, status);
    if (status != FAKB_OK) return fail(status);

    StringOut table;
    if (fakb_status s = fakb_fabox_strength_table(fabox.get(), config.get(), &table.value); s != FAKB_OK)
        return fail(s);

    json t = json::parse(table.str());
    bool converged = t["converged"].get<bool>();
    if (opts.format == "json") {
        std::cout << t.dump(2) << "\n";
    } else if (opts.format == "tsv") {
        for (const auto& row : t["rows"])
            std::cout << row["argument"].get<std::string>() << "\t"
                      << format_degree(row["initial"].get<double>()) << "\t"
                      << format_degree(row["final"].get<double>()) << "\n";
    } else {
        std::cout << "argument\tinitial\tfinal\n";
        for (const auto& row : t["rows"])
            std::cout << row["argument"].get<std::string>() << "\t"
                      << format_degree(row["initial"].get<double>()) << "\t"
                      << format_degree(row["final"].get<double>()) << "\n";
        std::cout << (converged ? "converged" : "NOT converged") << " after "
                  << t["iterations"].get<long>() << " iteration(s)\n";
    }
    if (int g = maybe_export_graph(fabox.get(), opts.export_graph_path); g != kExitOk) return g;
    if (!converged) {
        std::cerr << "error: strength computation did not converge; values above are partial\n";
        return kExitSemantic;
    }
    return kExitOk;
}

int run_query(const std::string& fabox_path, const std::string& tbox_path, const std::string& query,
              const Options& opts) {
    fakb_status status;
    FaboxPtr fabox = load_fabox(fabox_path, status);
    if (status != FAKB_OK) return fail(status);
    TboxPtr tbox = load_tbox(tbox_path, status);
    if (status != FAKB_OK) return fail(status);

    ConfigPtr config = build_config(opts, status);
    if (status != FAKB_OK) return fail(status);

    StringOut answers;
    status = fakb_query(tbox.get(), fabox.get(), query.c_str(), config.get(), &answers.value);
    if (status != FAKB_OK) return fail(status);

    if (opts.format == "json") {
        std::cout << answers.str();
        return kExitOk;
    }
    json rows = json::parse(answers.str());
    for (const auto& row : rows) {
        std::string line;
        for (const auto& entry : row["tuple"]) {
            line += tsv_escape(tuple_entry_to_text(entry));
            line += "\t";
        }
        line += format_degree(row["degree"].get<double>());
        std::cout << line << "\n";
    }
    return kExitOk;
}

int run_rewrite(const std::string& tbox_path, const std::string& query) {
    fakb_status status;
    TboxPtr tbox = load_tbox(tbox_path, status);
    if (status != FAKB_OK) return fail(status);

    StringOut out;
    status = fakb_rewrite(tbox.get(), query.c_str(), &out.value);
    if (status != FAKB_OK) return fail(status);
    std::cout << out.str();
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fuzzy argumentative knowledge-base engine"};
    app.require_subcommand(1);

    Options opts;
    app.add_option("--epsilon", opts.epsilon, "fixpoint stop threshold")
        ->envname("FAKB_EPSILON")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-iter", opts.max_iter, "fixpoint round budget")
        ->envname("FAKB_MAX_ITER")
        ->check(CLI::PositiveNumber);
    app.add_option("--theta", opts.theta, "relation-emission threshold")
        ->envname("FAKB_THETA")
        ->check(CLI::Range(0.0, 1.0));
    app.add_option("--semantics", opts.semantics, "gradual semantics name")->envname("FAKB_SEMANTICS");
    app.add_option("--format", opts.format, "output format")
        ->envname("FAKB_FORMAT")
        ->check(CLI::IsMember({"text", "json", "tsv"}));
    app.add_option("--export-graph", opts.export_graph_path, "write a node/edge JSON graph dump");

    std::string fixture_path, fabox_path, tbox_path, query_text, out_source, out_updated;

    CLI::App* extract = app.add_subcommand("extract", "run the extraction pipeline on a fixture");
    extract->fallthrough();
    extract->add_option("fixture", fixture_path, "fixture JSON file")->required();
    extract->add_option("--out-source", out_source, "source fact-store path");
    extract->add_option("--out-updated", out_updated, "updated fact-store path");

    CLI::App* check = app.add_subcommand("check", "check store and knowledge-base consistency");
    check->fallthrough();
    check->add_option("fabox", fabox_path, "fact-store file")->required();
    check->add_option("tbox", tbox_path, "ontology file")->required();

    CLI::App* strengths = app.add_subcommand("strengths", "initial and final strengths per argument");
    strengths->fallthrough();
    strengths->add_option("fabox", fabox_path, "fact-store file")->required();

    CLI::App* query = app.add_subcommand("query", "certain answers with degrees");
    query->fallthrough();
    query->add_option("fabox", fabox_path, "fact-store file")->required();
    query->add_option("tbox", tbox_path, "ontology file")->required();
    query->add_option("query", query_text, "query text")->required();

    CLI::App* rewrite = app.add_subcommand("rewrite", "dump the rewriting of a query");
    rewrite->fallthrough();
    rewrite->add_option("tbox", tbox_path, "ontology file")->required();
    rewrite->add_option("query", query_text, "query text")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (extract->parsed()) return run_extract(fixture_path, opts, out_source, out_updated);
        if (check->parsed()) return run_check(fabox_path, tbox_path, opts);
        if (strengths->parsed()) return run_strengths(fabox_path, opts);
        if (query->parsed()) return run_query(fabox_path, tbox_path, query_text, opts);
        if (rewrite->parsed()) return run_rewrite(tbox_path, query_text);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
