// fabox_io.cpp : fact-store parsing and serialization
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

#include "fabox_io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace fakb {

namespace {

using nlohmann::json;

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Splits an argument list on top-level commas, honoring quoted strings.
std::vector<std::string> split_args(const std::string& body, int line_no) {
    std::vector<std::string> parts;
    std::string current;
    bool in_quotes = false;
    for (std::size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (in_quotes) {
            current += c;
            if (c == '\\' && i + 1 < body.size()) current += body[++i];
            else if (c == '"') in_quotes = false;
        } else if (c == '"') {
            in_quotes = true;
            current += c;
        } else if (c == ',') {
            parts.push_back(strip(current));
            current.clear();
        } else {
            current += c;
        }
    }
    if (in_quotes)
        raise(ErrorCode::Parse, "line " + std::to_string(line_no) + ": unterminated quoted string");
    parts.push_back(strip(current));
    return parts;
}

IndividualName parse_individual(const std::string& token, int line_no) {
    if (token.empty())
        raise(ErrorCode::Parse, "line " + std::to_string(line_no) + ": empty individual");
    if (token.front() == '"') return IndividualName::text(unquote_text(token));
    if (looks_like_argument_name(token)) return IndividualName::argument(parse_argument_name(token));
    for (char c : token)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'))
            raise(ErrorCode::Parse,
                  "line " + std::to_string(line_no) + ": invalid individual name '" + token + "'");
    return IndividualName::plain(token);
}

double parse_degree(const std::string& token, int line_no) {
    try {
        std::size_t used = 0;
        double v = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        raise(ErrorCode::Parse, "line " + std::to_string(line_no) + ": bad degree '" + token + "'");
    }
}

FuzzyAssertion parse_line(const std::string& line, int line_no) {
    std::size_t sp = line.find_first_of(" \t");
    if (sp == std::string::npos)
        raise(ErrorCode::Parse, "line " + std::to_string(line_no) + ": expected 'concept' or 'role'");
    std::string kind_word = line.substr(0, sp);
    if (kind_word != "concept" && kind_word != "role")
        raise(ErrorCode::Parse,
              "line " + std::to_string(line_no) + ": unknown assertion kind '" + kind_word + "'");
    bool is_concept = kind_word == "concept";

    std::string rest = strip(line.substr(sp));
    std::size_t open = rest.find('(');
    if (open == std::string::npos)
        raise(ErrorCode::Parse, "line " + std::to_string(line_no) + ": missing '('");
    std::string predicate = strip(rest.substr(0, open));

    // The matching ')' is the last one before an optional ': degree' suffix.
    std::size_t close = rest.rfind(')');
    if (close == std::string::npos || close < open)
        raise(ErrorCode::Parse, "line " + std::to_string(line_no) + ": missing ')'");
    std::vector<std::string> arg_tokens = split_args(rest.substr(open + 1, close - open - 1), line_no);

    double degree = 1.0;
    std::string suffix = strip(rest.substr(close + 1));
    if (!suffix.empty()) {
        if (suffix[0] != ':')
            raise(ErrorCode::Parse, "line " + std::to_string(line_no) + ": unexpected trailing '" + suffix + "'");
        degree = parse_degree(strip(suffix.substr(1)), line_no);
    }

    try {
        if (is_concept) {
            if (arg_tokens.size() != 1)
                raise(ErrorCode::Parse, "concept assertions take exactly one individual");
            return FuzzyAssertion::concept_assertion(predicate, parse_individual(arg_tokens[0], line_no), degree);
        }
        if (arg_tokens.size() != 2)
            raise(ErrorCode::Parse, "role assertions take exactly two individuals");
        return FuzzyAssertion::role_assertion(predicate, parse_individual(arg_tokens[0], line_no),
                                              parse_individual(arg_tokens[1], line_no), degree);
    } catch (const Error& e) {
        raise(e.code(), "line " + std::to_string(line_no) + ": " + e.what());
    }
}

} // namespace

Fabox parse_fabox_text(const std::string& text) {
    Fabox fabox;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        // comments start at a '#' outside quotes
        bool in_quotes = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            char c = line[i];
            if (in_quotes && c == '\\') ++i;
            else if (c == '"') in_quotes = !in_quotes;
            else if (c == '#' && !in_quotes) {
                line = line.substr(0, i);
                break;
            }
        }
        line = strip(line);
        if (line.empty()) continue;
        fabox.add(parse_line(line, line_no));
    }
    return fabox;
}

std::string serialize_fabox_text(const Fabox& fabox) {
    std::ostringstream out;
    for (const auto& a : fabox.sorted()) out << a.str() << '\n';
    return out.str();
}

namespace {

json individual_to_json(const IndividualName& n) {
    if (n.is_text()) return json{{"text", n.label}};
    return json(n.label);
}

IndividualName individual_from_json(const json& j, const std::string& where) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s.empty()) raise(ErrorCode::Parse, where + ": empty individual");
        if (looks_like_argument_name(s)) return IndividualName::argument(parse_argument_name(s));
        return IndividualName::plain(s);
    }
    if (j.is_object() && j.contains("text") && j["text"].is_string())
        return IndividualName::text(j["text"].get<std::string>());
    raise(ErrorCode::Parse, where + ": individuals are strings or {\"text\": ...} objects");
}

} // namespace

Fabox parse_fabox_json(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        raise(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_array()) raise(ErrorCode::Parse, "expected a top-level array of assertions");

    Fabox fabox;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const json& entry = doc[i];
        std::string where = "assertions[" + std::to_string(i) + "]";
        if (!entry.is_object()) raise(ErrorCode::Parse, where + ": expected an object");
        for (const char* field : {"kind", "predicate", "args"})
            if (!entry.contains(field))
                raise(ErrorCode::Parse, where + ": missing field '" + std::string(field) + "'");
        std::string kind = entry["kind"].get<std::string>();
        std::string predicate = entry["predicate"].get<std::string>();
        double degree = entry.value("degree", 1.0);
        const json& args = entry["args"];
        if (!args.is_array()) raise(ErrorCode::Parse, where + ".args: expected an array");

        try {
            if (kind == "concept") {
                if (args.size() != 1) raise(ErrorCode::Parse, "concept assertions take one individual");
                fabox.add(FuzzyAssertion::concept_assertion(
                    predicate, individual_from_json(args[0], where + ".args[0]"), degree));
            } else if (kind == "role") {
                if (args.size() != 2) raise(ErrorCode::Parse, "role assertions take two individuals");
                fabox.add(FuzzyAssertion::role_assertion(predicate,
                                                         individual_from_json(args[0], where + ".args[0]"),
                                                         individual_from_json(args[1], where + ".args[1]"),
                                                         degree));
            } else {
                raise(ErrorCode::Parse, "kind must be 'concept' or 'role', got '" + kind + "'");
            }
        } catch (const Error& e) {
            raise(e.code(), where + ": " + e.what());
        }
    }
    return fabox;
}

std::string serialize_fabox_json(const Fabox& fabox) {
    json arr = json::array();
    for (const auto& a : fabox.sorted()) {
        json entry;
        entry["kind"] = a.kind == AssertionKind::Concept ? "concept" : "role";
        entry["predicate"] = a.predicate;
        json args = json::array();
        for (const auto& arg : a.args) args.push_back(individual_to_json(arg));
        entry["args"] = std::move(args);
        entry["degree"] = a.degree;
        arr.push_back(std::move(entry));
    }
    return arr.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::Io, "cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorCode::Io, "cannot open '" + path + "' for writing");
    out << content;
    if (!out) raise(ErrorCode::Io, "short write to '" + path + "'");
}

Fabox load_fabox_file(const std::string& path) {
    std::string content = read_file(path);
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json") return parse_fabox_json(content);
    return parse_fabox_text(content);
}

std::string export_graph_json(const Fabox& fabox) {
    // node id -> type; edges as (from, to, type, label, weight)
    std::map<std::string, std::string> nodes;
    json edges = json::array();

    auto node_for = [&](const IndividualName& n) {
        std::string id = n.is_text() ? "text:" + n.label
                                     : (n.is_argument() ? "argument:" + n.label : "entity:" + n.label);
        std::string type = n.is_text() ? "text" : (n.is_argument() ? "argument" : "entity");
        nodes.emplace(id, type);
        return id;
    };

    for (const auto& a : fabox.sorted()) {
        if (a.kind == AssertionKind::Concept) {
            std::string ind = node_for(a.args[0]);
            if (a.predicate == "Arg" || a.predicate == "TArg") continue; // sorts carry the typing
            std::string concept_id = "concept:" + a.predicate;
            nodes.emplace(concept_id, "concept");
            edges.push_back({{"from", ind}, {"to", concept_id}, {"type", "instance"}, {"label", a.predicate}});
        } else if (a.predicate == "att" || a.predicate == "sup") {
            edges.push_back({{"from", node_for(a.args[0])},
                             {"to", node_for(a.args[1])},
                             {"type", a.predicate},
                             {"weight", a.degree}});
        } else {
            edges.push_back({{"from", node_for(a.args[0])},
                             {"to", node_for(a.args[1])},
                             {"type", "role"},
                             {"label", a.predicate}});
        }
    }

    // Arg degrees annotate argument nodes.
    std::map<std::string, double> strengths;
    for (const auto& a : fabox.assertions())
        if (a.predicate == "Arg") strengths["argument:" + a.args[0].label] = a.degree;

    json node_arr = json::array();
    for (const auto& [id, type] : nodes) {
        json n{{"id", id}, {"type", type}};
        auto it = strengths.find(id);
        if (it != strengths.end()) n["strength"] = it->second;
        node_arr.push_back(std::move(n));
    }
    return json{{"nodes", node_arr}, {"edges", edges}}.dump(2) + "\n";
}

} // namespace fakb
