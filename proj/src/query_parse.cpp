// query_parse.cpp : query text parsing and printing
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

#include <cctype>
#include <set>
#include <sstream>

#include "error.hpp"
#include "query.hpp"

namespace fakb {

bool is_variable(const Term& t) { return std::holds_alternative<QueryVariable>(t); }

std::string print_term(const Term& t) {
    if (const auto* v = std::get_if<QueryVariable>(&t)) return "?" + v->name;
    return print_individual(std::get<IndividualName>(t));
}

std::string QueryAtom::str() const {
    std::string out = predicate + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ",";
        out += print_term(args[i]);
    }
    return out + ")";
}

std::vector<QueryVariable> FuzzyQuery::free_variables() const {
    std::vector<QueryVariable> vars;
    for (const auto& t : head)
        if (const auto* v = std::get_if<QueryVariable>(&t)) vars.push_back(*v);
    return vars;
}

std::string FuzzyQuery::str() const {
    std::string out = "q(";
    for (std::size_t i = 0; i < head.size(); ++i) {
        if (i) out += ",";
        out += print_term(head[i]);
    }
    out += ") := ";
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) out += ", ";
        out += atoms[i].str();
    }
    return out;
}

std::string print_union_query(const UnionQuery& q) {
    std::string out;
    for (const auto& d : q.disjuncts) out += d.str() + "\n";
    return out;
}

namespace {

struct Token {
    enum Type { Name, Variable, Quoted, Number, Symbol, End } type;
    std::string text;
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& input) : input_(&input) {}

    Token next() {
        skip_ws();
        std::size_t p = pos_;
        if (pos_ >= input_->size()) return {Token::End, "", p};
        char c = (*input_)[pos_];

        if (c == '?') {
            ++pos_;
            std::string name;
            while (pos_ < input_->size() && (std::isalnum(static_cast<unsigned char>((*input_)[pos_])) ||
                                            (*input_)[pos_] == '_'))
                name += (*input_)[pos_++];
            if (name.empty()) fail(p, "expected a variable name after '?'");
            return {Token::Variable, name, p};
        }
        if (c == '"') {
            std::size_t start = pos_++;
            while (pos_ < input_->size() && (*input_)[pos_] != '"') {
                if ((*input_)[pos_] == '\\') ++pos_;
                ++pos_;
            }
            if (pos_ >= input_->size()) fail(start, "unterminated quoted string");
            ++pos_;
            return {Token::Quoted, input_->substr(start, pos_ - start), p};
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < input_->size() && std::isdigit(static_cast<unsigned char>((*input_)[pos_ + 1])))) {
            std::size_t start = pos_;
            while (pos_ < input_->size() && (std::isdigit(static_cast<unsigned char>((*input_)[pos_])) ||
                                            (*input_)[pos_] == '.' || (*input_)[pos_] == 'e' || (*input_)[pos_] == 'E' ||
                                            (*input_)[pos_] == '+' || (*input_)[pos_] == '-'))
                ++pos_;
            return {Token::Number, input_->substr(start, pos_ - start), p};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < input_->size() && (std::isalnum(static_cast<unsigned char>((*input_)[pos_])) ||
                                            (*input_)[pos_] == '_'))
                ++pos_;
            std::string name = input_->substr(start, pos_ - start);
            // a<k> names are numbers-in-disguise: argument individuals
            return {Token::Name, name, p};
        }
        if (c == '>' && pos_ + 1 < input_->size() && (*input_)[pos_ + 1] == '=') {
            pos_ += 2;
            return {Token::Symbol, ">=", p};
        }
        if (c == ':' && pos_ + 1 < input_->size() && (*input_)[pos_ + 1] == '=') {
            pos_ += 2;
            return {Token::Symbol, ":=", p};
        }
        static const std::string singles = "(),[]|>";
        if (singles.find(c) != std::string::npos) {
            ++pos_;
            return {Token::Symbol, std::string(1, c), p};
        }
        fail(p, std::string("unexpected character '") + c + "'");
    }

    [[noreturn]] void fail(std::size_t pos, const std::string& message) const {
        raise(ErrorCode::Parse, "query syntax error at position " + std::to_string(pos) + ": " + message);
    }

private:
    void skip_ws() {
        while (pos_ < input_->size() && std::isspace(static_cast<unsigned char>((*input_)[pos_]))) ++pos_;
    }

    const std::string* input_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    explicit Parser(const std::string& input) : lexer_(input) { advance(); }

    ThresholdedQuery parse() {
        ThresholdedQuery result;

        // optional head: name '(' terms ')' ':='
        std::vector<Term> head;
        bool has_head = false;
        {
            Parser probe = *this;
            if (probe.current_.type == Token::Name && probe.try_parse_head(head)) {
                *this = probe;
                has_head = true;
            }
        }

        std::vector<FuzzyQuery> disjuncts;
        if (current_.type == Token::Symbol && current_.text == "[") {
            while (true) {
                expect_symbol("[");
                disjuncts.push_back({{}, parse_conjunction()});
                expect_symbol("]");
                if (current_.type == Token::Symbol && current_.text == "|") advance();
                else break;
            }
        } else {
            disjuncts.push_back({{}, parse_conjunction()});
        }

        // optional threshold
        if (current_.type == Token::Symbol && (current_.text == ">" || current_.text == ">=")) {
            result.cmp = current_.text == ">" ? ThresholdCmp::Gt : ThresholdCmp::Ge;
            advance();
            if (current_.type != Token::Number)
                lexer_.fail(current_.pos, "expected a threshold value after '" +
                                              (result.cmp == ThresholdCmp::Gt ? std::string(">") : std::string(">=")) +
                                              "'");
            result.k = std::stod(current_.text);
            advance();
            if (result.cmp == ThresholdCmp::Ge && !(result.k > 0.0 && result.k <= 1.0))
                raise(ErrorCode::Parse, "threshold for '>=' must lie in (0,1], got " + std::to_string(result.k));
            if (result.cmp == ThresholdCmp::Gt && !(result.k >= 0.0 && result.k < 1.0))
                raise(ErrorCode::Parse, "threshold for '>' must lie in [0,1), got " + std::to_string(result.k));
        }
        if (current_.type != Token::End) lexer_.fail(current_.pos, "trailing input after the query");

        finalize_heads(has_head, head, disjuncts);
        result.query.disjuncts = std::move(disjuncts);
        return result;
    }

private:
    bool try_parse_head(std::vector<Term>& head) {
        // consume: name '(' [term {',' term}] ')' ':='
        advance(); // name
        if (!(current_.type == Token::Symbol && current_.text == "(")) return false;
        advance();
        if (!(current_.type == Token::Symbol && current_.text == ")")) {
            while (true) {
                head.push_back(parse_term());
                if (current_.type == Token::Symbol && current_.text == ",") {
                    advance();
                    continue;
                }
                break;
            }
        }
        if (!(current_.type == Token::Symbol && current_.text == ")")) return false;
        advance();
        if (!(current_.type == Token::Symbol && current_.text == ":=")) return false;
        advance();
        return true;
    }

    std::vector<QueryAtom> parse_conjunction() {
        std::vector<QueryAtom> atoms;
        while (true) {
            atoms.push_back(parse_atom());
            if (current_.type == Token::Symbol && current_.text == ",") {
                advance();
                continue;
            }
            break;
        }
        return atoms;
    }

    QueryAtom parse_atom() {
        if (current_.type != Token::Name)
            lexer_.fail(current_.pos, "expected a predicate name");
        QueryAtom atom;
        atom.predicate = current_.text;
        std::size_t pred_pos = current_.pos;
        advance();
        expect_symbol("(");
        while (true) {
            atom.args.push_back(parse_term());
            if (current_.type == Token::Symbol && current_.text == ",") {
                advance();
                continue;
            }
            break;
        }
        expect_symbol(")");

        std::size_t want = 0;
        if (is_concept_name(atom.predicate)) want = 1;
        else if (is_role_name(atom.predicate)) want = 2;
        else lexer_.fail(pred_pos, "predicate '" + atom.predicate + "' has no recognizable kind");
        if (atom.args.size() != want)
            raise(ErrorCode::Parse, "predicate '" + atom.predicate + "' takes " + std::to_string(want) +
                                        " argument(s), got " + std::to_string(atom.args.size()));
        return atom;
    }

    Term parse_term() {
        if (current_.type == Token::Variable) {
            std::string name = current_.text;
            advance();
            if (name == "_" || name.rfind("_", 0) == 0) {
                if (name == "_") name = "_anon" + std::to_string(anon_counter_++);
            }
            return QueryVariable{name};
        }
        if (current_.type == Token::Quoted) {
            std::string text = unquote_text(current_.text);
            advance();
            return IndividualName::text(std::move(text));
        }
        if (current_.type == Token::Name) {
            std::string name = current_.text;
            advance();
            if (looks_like_argument_name(name)) return IndividualName::argument(parse_argument_name(name));
            return IndividualName::plain(name);
        }
        lexer_.fail(current_.pos, "expected a term");
    }

    void finalize_heads(bool has_head, const std::vector<Term>& head, std::vector<FuzzyQuery>& disjuncts) {
        if (has_head) {
            std::set<std::string> seen;
            for (const auto& t : head)
                if (const auto* v = std::get_if<QueryVariable>(&t))
                    if (!seen.insert(v->name).second)
                        raise(ErrorCode::Parse, "free variable ?" + v->name + " listed twice in the head");
            for (auto& d : disjuncts) {
                d.head = head;
                for (const auto& t : head) {
                    const auto* v = std::get_if<QueryVariable>(&t);
                    if (!v) continue;
                    bool found = false;
                    for (const auto& atom : d.atoms)
                        for (const auto& arg : atom.args)
                            if (const auto* av = std::get_if<QueryVariable>(&arg); av && av->name == v->name)
                                found = true;
                    if (!found)
                        raise(ErrorCode::Parse,
                              "free variable ?" + v->name + " does not occur in disjunct: " + d.str());
                }
            }
        } else {
            // headless: all variables are free, and the disjuncts must agree
            std::set<std::string> names;
            for (const auto& d : disjuncts)
                for (const auto& atom : d.atoms)
                    for (const auto& arg : atom.args)
                        if (const auto* v = std::get_if<QueryVariable>(&arg)) names.insert(v->name);
            for (auto& d : disjuncts) {
                std::set<std::string> here;
                for (const auto& atom : d.atoms)
                    for (const auto& arg : atom.args)
                        if (const auto* v = std::get_if<QueryVariable>(&arg)) here.insert(v->name);
                if (here != names)
                    raise(ErrorCode::Parse,
                          "headless unions need the same variables in every disjunct; "
                          "declare the free ones with a head like q(?x) := ...");
                d.head.clear();
                for (const auto& n : names) d.head.push_back(QueryVariable{n});
            }
        }
    }

    void advance() { current_ = lexer_.next(); }

    void expect_symbol(const std::string& s) {
        if (!(current_.type == Token::Symbol && current_.text == s))
            lexer_.fail(current_.pos, "expected '" + s + "'");
        advance();
    }

    Lexer lexer_;
    Token current_{Token::End, "", 0};
    int anon_counter_ = 0;
};

} // namespace

ThresholdedQuery parse_query(const std::string& text) {
    Parser parser(text);
    ThresholdedQuery q = parser.parse();
    if (q.query.disjuncts.empty())
        raise(ErrorCode::Parse, "a query needs at least one conjunct");
    return q;
}

} // namespace fakb
