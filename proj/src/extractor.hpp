// extractor.hpp : numeric core of the knowledge extractor — plausibility
//                 scoring, relation classification, fact-store assembly —
//                 over an abstract extraction backend
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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fabox.hpp"
#include "qbaf.hpp"

namespace fakb {

// 1-based inclusive word offsets of one argument inside the document.
struct ArgumentSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t word_count() const { return end - begin + 1; }
};

// A document whose argumentative spans were marked inline with
// <AC1> ... </AC1> tag pairs. Spans are disjoint, in document order and
// numbered sequentially from 1.
struct TaggedDocument {
    std::vector<std::string> words;
    std::vector<ArgumentSpan> spans;

    std::size_t argument_count() const { return spans.size(); }
    std::string span_text(std::size_t arg_index) const; // 1-based, words joined by ' '
};

// Parses the inline tag convention; raises Parse on overlapping, unordered
// or non-sequential tags.
TaggedDocument parse_tagged_text(const std::string& tagged);

// Strips the tags, keeping the plain word sequence.
std::string strip_tags(const std::string& tagged);

using LogProbRow = std::vector<double>; // one log-probability per word, all <= 0

enum class RelationLabel { Attack, Support, Unrelated };

struct RelationJudgement {
    ArgumentId source; // source index > target index: arguments only relate back
    ArgumentId target;
    RelationLabel label = RelationLabel::Unrelated;
    double p_attack = 0.0;
    double p_support = 0.0;
    double p_unrelated = 0.0;
    double margin = 0.0;                 // p[label] minus the sum of the other two
    std::optional<double> strength;      // phi, present iff label != Unrelated
};

inline constexpr const char* kUnknownAuthor = "unknown";

// The engine drives any backend through this contract; the shipped mock is
// deterministic, real model adapters live elsewhere.
class ExtractionBackend {
public:
    virtual ~ExtractionBackend() = default;

    virtual TaggedDocument tag(const std::string& document) = 0;
    // Crisp concept/role facts about the debate, including authorship roles
    // author(a_i, <entity>).
    virtual std::vector<FuzzyAssertion> entities(const TaggedDocument& doc) = 0;
    virtual double prompted_strength(const TaggedDocument& doc, std::size_t arg_index) = 0;
    virtual LogProbRow argument_logprobs(const TaggedDocument& doc, std::size_t arg_index) = 0;
    // Raw log-probabilities over (attack, support, unrelated) for the pair
    // (source, target), conditioned on the document prefix up to the source
    // argument and both authors ("unknown" when unattributed).
    virtual std::array<double, 3> relation_logprobs(const TaggedDocument& doc, std::size_t source_index,
                                                    std::size_t target_index,
                                                    const std::string& source_author,
                                                    const std::string& target_author) = 0;
};

// Mean log-probability of one span; the higher, the more expected the text
// was at its position. Raises Domain on an empty row.
double plausibility_mean(const LogProbRow& row);

// Min-max normalization into [0,1]. When every value is equal (including
// the single-argument case) all entries become 0.5, which keeps the
// strength blend neutral.
std::vector<double> normalize_plausibility(const std::vector<double>& mu);

// tau = clamp_[0,1]( tau_prompted * (1 + mu_bar - mu_bar_avg) ): prompted
// strength rewarded or penalized by how the argument's plausibility sits
// against the document average.
double initial_strength(double tau_prompted, double mu_bar, double mu_bar_avg);

std::array<double, 3> softmax3(const std::array<double, 3>& raw);

// Softmax the raw scores, then emit the label whose probability beats the
// other two combined by strictly more than theta; the margin becomes the
// relation strength. Ties under the threshold stay Unrelated.
RelationJudgement classify_relation(ArgumentId source, ArgumentId target,
                                    const std::array<double, 3>& raw_logprobs, double theta);

// Full assembly: tag, score every argument, classify every ordered pair
// (source after target), merge the crisp entity facts. The result always
// satisfies the store consistency conditions.
Fabox extract_source_fabox(const std::string& document, ExtractionBackend& backend, double theta);

// extract_source_fabox followed by the strength update on the underlying
// argumentation graph.
Fabox extract_updated_fabox(const std::string& document, ExtractionBackend& backend, double theta,
                            const ModularSemantics& sem, double epsilon = 1e-6, long max_iter = 10000);

} // namespace fakb
