// mock_backend.cpp : fixture loading and playback
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

#include "mock_backend.hpp"

#include <json.hpp>

#include "error.hpp"
#include "fabox_io.hpp"

namespace fakb {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& field, const std::string& why) {
    raise(ErrorCode::Parse, "fixture field '" + field + "': " + why);
}

} // namespace

MockBackend MockBackend::from_file(const std::string& path) {
    return from_json(read_file(path));
}

MockBackend MockBackend::from_json(const std::string& fixture_json) {
    json doc;
    try {
        doc = json::parse(fixture_json);
    } catch (const json::exception& e) {
        raise(ErrorCode::Parse, std::string("fixture is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) raise(ErrorCode::Parse, "fixture must be a JSON object");

    MockBackend mock;

    if (!doc.contains("tagged_text") || !doc["tagged_text"].is_string())
        schema_error("tagged_text", "required string");
    std::string tagged = doc["tagged_text"].get<std::string>();
    mock.doc_ = parse_tagged_text(tagged);
    mock.document_ = strip_tags(tagged);

    const std::size_t k = mock.doc_.argument_count();

    if (doc.contains("spans")) {
        if (!doc["spans"].is_array() || doc["spans"].size() != k)
            schema_error("spans", "expected one [begin, end] pair per tagged argument");
        for (std::size_t i = 0; i < k; ++i) {
            const json& pair = doc["spans"][i];
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer())
                schema_error("spans[" + std::to_string(i) + "]", "expected [begin, end]");
            ArgumentSpan expected{pair[0].get<std::size_t>(), pair[1].get<std::size_t>()};
            const ArgumentSpan& actual = mock.doc_.spans[i];
            if (expected.begin != actual.begin || expected.end != actual.end)
                schema_error("spans[" + std::to_string(i) + "]",
                             "disagrees with the tagged text (tags give [" + std::to_string(actual.begin) +
                                 "," + std::to_string(actual.end) + "])");
        }
    }

    if (!doc.contains("logprobs") || !doc["logprobs"].is_array() || doc["logprobs"].size() != k)
        schema_error("logprobs", "expected one row per tagged argument (" + std::to_string(k) + ")");
    for (std::size_t i = 0; i < k; ++i) {
        const json& row = doc["logprobs"][i];
        if (!row.is_array() || row.size() != mock.doc_.spans[i].word_count())
            schema_error("logprobs[" + std::to_string(i) + "]",
                         "expected " + std::to_string(mock.doc_.spans[i].word_count()) +
                             " values, one per word of the span");
        LogProbRow values;
        for (const json& v : row) {
            if (!v.is_number()) schema_error("logprobs[" + std::to_string(i) + "]", "numeric values only");
            double d = v.get<double>();
            if (d > 0.0)
                schema_error("logprobs[" + std::to_string(i) + "]", "log-probabilities are non-positive");
            values.push_back(d);
        }
        mock.logprobs_.push_back(std::move(values));
    }

    if (!doc.contains("prompted_strengths") || !doc["prompted_strengths"].is_array() ||
        doc["prompted_strengths"].size() != k)
        schema_error("prompted_strengths", "expected one value per tagged argument");
    for (std::size_t i = 0; i < k; ++i) {
        const json& v = doc["prompted_strengths"][i];
        if (!v.is_number()) schema_error("prompted_strengths[" + std::to_string(i) + "]", "numeric value");
        double d = v.get<double>();
        if (!(d >= 0.0 && d <= 1.0))
            schema_error("prompted_strengths[" + std::to_string(i) + "]", "values lie in [0,1]");
        mock.prompted_.push_back(d);
    }

    if (doc.contains("entities")) {
        if (!doc["entities"].is_array()) schema_error("entities", "expected an array of assertions");
        try {
            Fabox parsed = parse_fabox_json(doc["entities"].dump());
            mock.entities_ = parsed.assertions();
        } catch (const Error& e) {
            schema_error("entities", e.what());
        }
    }

    if (doc.contains("relations_raw")) {
        if (!doc["relations_raw"].is_array()) schema_error("relations_raw", "expected an array");
        for (std::size_t i = 0; i < doc["relations_raw"].size(); ++i) {
            const json& entry = doc["relations_raw"][i];
            std::string where = "relations_raw[" + std::to_string(i) + "]";
            if (!entry.is_object() || !entry.contains("source") || !entry.contains("target") ||
                !entry.contains("logprobs"))
                schema_error(where, "expected {source, target, logprobs}");
            long source = entry["source"].get<long>();
            long target = entry["target"].get<long>();
            if (source <= target || target < 1 || source > static_cast<long>(k))
                schema_error(where, "pairs look back: 1 <= target < source <= " + std::to_string(k));
            const json& lp = entry["logprobs"];
            if (!lp.is_array() || lp.size() != 3) schema_error(where + ".logprobs", "expected three values");
            std::array<double, 3> raw{lp[0].get<double>(), lp[1].get<double>(), lp[2].get<double>()};
            if (!mock.relations_.emplace(std::make_pair(source, target), raw).second)
                schema_error(where, "duplicate pair");
        }
    }
    return mock;
}

TaggedDocument MockBackend::tag(const std::string&) {
    ++tag_calls;
    return doc_;
}

std::vector<FuzzyAssertion> MockBackend::entities(const TaggedDocument&) {
    ++entity_calls;
    return entities_;
}

double MockBackend::prompted_strength(const TaggedDocument&, std::size_t arg_index) {
    ++prompt_calls;
    if (arg_index == 0 || arg_index > prompted_.size())
        raise(ErrorCode::Domain, "no prompted strength for argument " + std::to_string(arg_index));
    return prompted_[arg_index - 1];
}

LogProbRow MockBackend::argument_logprobs(const TaggedDocument&, std::size_t arg_index) {
    ++logprob_calls;
    if (arg_index == 0 || arg_index > logprobs_.size())
        raise(ErrorCode::Domain, "no log-probabilities for argument " + std::to_string(arg_index));
    return logprobs_[arg_index - 1];
}

std::array<double, 3> MockBackend::relation_logprobs(const TaggedDocument&, std::size_t source_index,
                                                     std::size_t target_index, const std::string&,
                                                     const std::string&) {
    ++relation_calls;
    auto it = relations_.find({static_cast<long>(source_index), static_cast<long>(target_index)});
    if (it != relations_.end()) return it->second;
    return {0.0, 0.0, 0.0}; // evenly split: unrelated
}

} // namespace fakb
