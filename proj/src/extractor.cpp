// extractor.cpp : plausibility scoring and fact-store assembly
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

#include "extractor.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "error.hpp"

namespace fakb {

namespace {

bool parse_tag(const std::string& token, bool& closing, long& index) {
    // <AC7> or </AC7>
    if (token.size() < 5 || token.front() != '<' || token.back() != '>') return false;
    std::size_t p = 1;
    closing = token[p] == '/';
    if (closing) ++p;
    if (token.compare(p, 2, "AC") != 0) return false;
    p += 2;
    if (p >= token.size() - 1) return false; // no digits
    long value = 0;
    for (; p + 1 < token.size(); ++p) {
        char c = token[p];
        if (c < '0' || c > '9') return false;
        value = value * 10 + (c - '0');
    }
    if (value <= 0) return false;
    index = value;
    return true;
}

// Splits on whitespace but keeps <ACk> / </ACk> markers as separate tokens
// even when they hug a word.
std::vector<std::string> tokenize_tagged(const std::string& tagged) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            tokens.push_back(current);
            current.clear();
        }
    };
    for (std::size_t i = 0; i < tagged.size(); ++i) {
        char c = tagged[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            flush();
            continue;
        }
        if (c == '<') {
            std::size_t close = tagged.find('>', i);
            if (close != std::string::npos) {
                std::string candidate = tagged.substr(i, close - i + 1);
                bool closing;
                long index;
                if (parse_tag(candidate, closing, index)) {
                    flush();
                    tokens.push_back(candidate);
                    i = close;
                    continue;
                }
            }
        }
        current += c;
    }
    flush();
    return tokens;
}

} // namespace

TaggedDocument parse_tagged_text(const std::string& tagged) {
    TaggedDocument doc;
    long open_index = 0; // 0 = outside a span
    std::size_t span_begin = 0;
    long next_expected = 1;

    for (const auto& token : tokenize_tagged(tagged)) {
        bool closing;
        long index;
        if (parse_tag(token, closing, index)) {
            if (!closing) {
                if (open_index != 0)
                    raise(ErrorCode::Parse, "tag <AC" + std::to_string(index) + "> opens inside <AC" +
                                                std::to_string(open_index) + ">");
                if (index != next_expected)
                    raise(ErrorCode::Parse, "argument tags must be sequential: expected <AC" +
                                                std::to_string(next_expected) + ">, found <AC" +
                                                std::to_string(index) + ">");
                open_index = index;
                span_begin = doc.words.size() + 1;
            } else {
                if (open_index != index)
                    raise(ErrorCode::Parse, "mismatched closing tag </AC" + std::to_string(index) + ">");
                if (doc.words.size() + 1 == span_begin)
                    raise(ErrorCode::Parse, "argument span " + std::to_string(index) + " is empty");
                doc.spans.push_back({span_begin, doc.words.size()});
                open_index = 0;
                ++next_expected;
            }
        } else {
            doc.words.push_back(token);
        }
    }
    if (open_index != 0)
        raise(ErrorCode::Parse, "unclosed tag <AC" + std::to_string(open_index) + ">");
    return doc;
}

std::string strip_tags(const std::string& tagged) {
    std::string out;
    for (const auto& token : tokenize_tagged(tagged)) {
        bool closing;
        long index;
        if (parse_tag(token, closing, index)) continue;
        if (!out.empty()) out += ' ';
        out += token;
    }
    return out;
}

std::string TaggedDocument::span_text(std::size_t arg_index) const {
    if (arg_index == 0 || arg_index > spans.size())
        raise(ErrorCode::Domain, "no argument " + std::to_string(arg_index) + " in the document");
    const ArgumentSpan& span = spans[arg_index - 1];
    std::string out;
    for (std::size_t w = span.begin; w <= span.end; ++w) {
        if (w != span.begin) out += ' ';
        out += words[w - 1];
    }
    return out;
}

double plausibility_mean(const LogProbRow& row) {
    if (row.empty()) raise(ErrorCode::Domain, "cannot score an empty argument span");
    for (double v : row)
        if (!(v <= 0.0))
            raise(ErrorCode::Domain, "log-probabilities are non-positive, got " + std::to_string(v));
    return std::accumulate(row.begin(), row.end(), 0.0) / static_cast<double>(row.size());
}

std::vector<double> normalize_plausibility(const std::vector<double>& mu) {
    if (mu.empty()) raise(ErrorCode::Domain, "nothing to normalize");
    auto [lo, hi] = std::minmax_element(mu.begin(), mu.end());
    if (*lo == *hi) return std::vector<double>(mu.size(), 0.5);
    std::vector<double> out;
    out.reserve(mu.size());
    for (double v : mu) out.push_back((v - *lo) / (*hi - *lo));
    return out;
}

double initial_strength(double tau_prompted, double mu_bar, double mu_bar_avg) {
    for (auto [v, what] : {std::pair{tau_prompted, "prompted strength"}, {mu_bar, "normalized plausibility"},
                           {mu_bar_avg, "average plausibility"}})
        if (!(v >= 0.0 && v <= 1.0))
            raise(ErrorCode::Domain, std::string(what) + " must lie in [0,1], got " + std::to_string(v));
    double tau = tau_prompted * (1.0 + mu_bar - mu_bar_avg);
    return std::max(0.0, std::min(1.0, tau));
}

std::array<double, 3> softmax3(const std::array<double, 3>& raw) {
    double m = std::max({raw[0], raw[1], raw[2]});
    std::array<double, 3> e{std::exp(raw[0] - m), std::exp(raw[1] - m), std::exp(raw[2] - m)};
    double sum = e[0] + e[1] + e[2];
    return {e[0] / sum, e[1] / sum, e[2] / sum};
}

RelationJudgement classify_relation(ArgumentId source, ArgumentId target,
                                    const std::array<double, 3>& raw_logprobs, double theta) {
    for (double v : raw_logprobs)
        if (!std::isfinite(v))
            raise(ErrorCode::Domain, "relation log-probabilities must be finite");
    if (!(theta >= 0.0 && theta <= 1.0))
        raise(ErrorCode::Domain, "theta must lie in [0,1], got " + std::to_string(theta));

    auto p = softmax3(raw_logprobs);
    RelationJudgement j;
    j.source = source;
    j.target = target;
    j.p_attack = p[0];
    j.p_support = p[1];
    j.p_unrelated = p[2];

    // margin of x against the other two; at most one of attack/support can
    // clear a non-negative threshold
    double attack_margin = p[0] - (p[1] + p[2]);
    double support_margin = p[1] - (p[0] + p[2]);
    if (attack_margin > theta) {
        j.label = RelationLabel::Attack;
        j.margin = attack_margin;
        j.strength = attack_margin;
    } else if (support_margin > theta) {
        j.label = RelationLabel::Support;
        j.margin = support_margin;
        j.strength = support_margin;
    } else {
        j.label = RelationLabel::Unrelated;
        j.margin = p[2] - (p[0] + p[1]);
    }
    return j;
}

namespace {

template <typename F>
auto backend_task(const char* task, F&& f) {
    try {
        return f();
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        raise(ErrorCode::Extraction, std::string("backend task '") + task + "' failed: " + e.what());
    }
}

} // namespace

Fabox extract_source_fabox(const std::string& document, ExtractionBackend& backend, double theta) {
    TaggedDocument doc = backend_task("argument tagging", [&] { return backend.tag(document); });
    const std::size_t k = doc.argument_count();

    std::vector<FuzzyAssertion> entity_facts =
        backend_task("entity extraction", [&] { return backend.entities(doc); });
    for (const auto& a : entity_facts)
        if (a.degree != 1.0)
            raise(ErrorCode::Extraction, "entity facts are crisp, got " + a.str());

    // authorship, used as relation-classification context
    std::map<std::size_t, std::string> author_of;
    for (const auto& a : entity_facts)
        if (a.kind == AssertionKind::Role && a.predicate == "author" && a.args[0].is_argument())
            author_of.emplace(a.args[0].argument_id().index, a.args[1].label);
    auto author = [&](std::size_t i) {
        auto it = author_of.find(i);
        return it == author_of.end() ? std::string(kUnknownAuthor) : it->second;
    };

    Fabox fabox;

    if (k > 0) {
        std::vector<double> mu;
        mu.reserve(k);
        for (std::size_t i = 1; i <= k; ++i) {
            LogProbRow row =
                backend_task("argument scoring", [&] { return backend.argument_logprobs(doc, i); });
            if (row.size() != doc.spans[i - 1].word_count())
                raise(ErrorCode::Extraction, "argument " + std::to_string(i) + " has " +
                                                 std::to_string(doc.spans[i - 1].word_count()) +
                                                 " words but " + std::to_string(row.size()) +
                                                 " log-probabilities");
            mu.push_back(plausibility_mean(row));
        }
        std::vector<double> mu_bar = normalize_plausibility(mu);
        double mu_bar_avg =
            std::accumulate(mu_bar.begin(), mu_bar.end(), 0.0) / static_cast<double>(mu_bar.size());

        for (std::size_t i = 1; i <= k; ++i) {
            double tau_p =
                backend_task("strength prompting", [&] { return backend.prompted_strength(doc, i); });
            if (!(tau_p >= 0.0 && tau_p <= 1.0))
                raise(ErrorCode::Extraction,
                      "prompted strength of argument " + std::to_string(i) + " is outside [0,1]");
            double tau = initial_strength(tau_p, mu_bar[i - 1], mu_bar_avg);

            IndividualName arg = IndividualName::argument(static_cast<std::int64_t>(i));
            IndividualName text = IndividualName::text(doc.span_text(i));
            fabox.add(FuzzyAssertion::concept_assertion("Arg", arg, tau));
            fabox.add(FuzzyAssertion::concept_assertion("TArg", text));
            fabox.add(FuzzyAssertion::role_assertion("textOf", arg, text));
        }

        // every ordered pair looking back at an earlier argument
        for (std::size_t i = 2; i <= k; ++i) {
            for (std::size_t j = 1; j < i; ++j) {
                std::array<double, 3> raw = backend_task("relation classification", [&] {
                    return backend.relation_logprobs(doc, i, j, author(i), author(j));
                });
                RelationJudgement judgement = classify_relation(
                    ArgumentId{static_cast<std::int64_t>(i)}, ArgumentId{static_cast<std::int64_t>(j)},
                    raw, theta);
                if (!judgement.strength) continue;
                const char* predicate = judgement.label == RelationLabel::Attack ? "att" : "sup";
                fabox.add(FuzzyAssertion::role_assertion(
                    predicate, IndividualName::argument(static_cast<std::int64_t>(i)),
                    IndividualName::argument(static_cast<std::int64_t>(j)), *judgement.strength));
            }
        }
    }

    for (const auto& a : entity_facts) fabox.add(a);

    FaboxReport report = check_fabox_consistency(fabox);
    if (!report.ok())
        raise(ErrorCode::Internal, "assembled an inconsistent store, which indicates a pairing bug: " +
                                       report.str());
    return fabox;
}

Fabox extract_updated_fabox(const std::string& document, ExtractionBackend& backend, double theta,
                            const ModularSemantics& sem, double epsilon, long max_iter) {
    Fabox source = extract_source_fabox(document, backend, theta);
    return apply_strength_update(source, sem, epsilon, max_iter);
}

} // namespace fakb
