// mock_backend.hpp : deterministic extraction backend driven by a fixture
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

#include <map>
#include <string>

#include "extractor.hpp"

namespace fakb {

// Serves everything a real model would produce from one JSON fixture:
//
// {
//   "tagged_text": "... <AC1> ... </AC1> ...",
//   "spans": [[b, e], ...],                       // optional cross-check
//   "logprobs": [[...], ...],                     // one row per argument
//   "prompted_strengths": [t1, ...],
//   "entities": [{kind, predicate, args, degree?}, ...],
//   "relations_raw": [{"source": i, "target": j, "logprobs": [a, s, u]}, ...]
// }
//
// Pairs missing from relations_raw score as evenly split, i.e. unrelated.
// Calls are counted so tests can assert how often each task ran.
class MockBackend : public ExtractionBackend {
public:
    static MockBackend from_json(const std::string& fixture_json);
    static MockBackend from_file(const std::string& path);

    // The raw document the fixture binds (tagged text without the markers).
    const std::string& document() const { return document_; }

    TaggedDocument tag(const std::string& document) override;
    std::vector<FuzzyAssertion> entities(const TaggedDocument& doc) override;
    double prompted_strength(const TaggedDocument& doc, std::size_t arg_index) override;
    LogProbRow argument_logprobs(const TaggedDocument& doc, std::size_t arg_index) override;
    std::array<double, 3> relation_logprobs(const TaggedDocument& doc, std::size_t source_index,
                                            std::size_t target_index, const std::string& source_author,
                                            const std::string& target_author) override;

    long tag_calls = 0;
    long entity_calls = 0;
    long prompt_calls = 0;
    long logprob_calls = 0;
    long relation_calls = 0;

private:
    std::string document_;
    TaggedDocument doc_;
    std::vector<LogProbRow> logprobs_;
    std::vector<double> prompted_;
    std::vector<FuzzyAssertion> entities_;
    std::map<std::pair<long, long>, std::array<double, 3>> relations_;
};

} // namespace fakb
