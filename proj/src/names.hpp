// names.hpp : sorted individual names and argument identifiers
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

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <tuple>

namespace fakb {

// Argument identifiers form an enumerable, linearly ordered name space
// ("a1" < "a2" < ...). The index is 1-based.
struct ArgumentId {
    std::int64_t index = 0;

    auto operator<=>(const ArgumentId&) const = default;
    std::string str() const { return "a" + std::to_string(index); }
};

// The individual name space is partitioned into three sorts: plain entities,
// argument identifiers, and full argument texts.
enum class NameSort { Plain, Argument, Text };

struct IndividualName {
    NameSort sort = NameSort::Plain;
    std::string label; // for Argument the canonical form "a<k>"

    static IndividualName plain(std::string name);
    static IndividualName argument(std::int64_t index);
    static IndividualName argument(const ArgumentId& id) { return argument(id.index); }
    static IndividualName text(std::string content);

    bool is_argument() const { return sort == NameSort::Argument; }
    bool is_text() const { return sort == NameSort::Text; }

    // Valid only for argument-sorted names.
    ArgumentId argument_id() const;

    bool operator==(const IndividualName& o) const {
        return sort == o.sort && label == o.label;
    }
    bool operator<(const IndividualName& o) const;
};

// `a<k>` with k a positive integer, no leading zeros.
bool looks_like_argument_name(const std::string& s);

// Parses `a<k>`; raises Parse on malformed or out-of-range indices.
ArgumentId parse_argument_name(const std::string& s);

// Surface syntax used by the line-oriented format and by queries:
// plain names bare, arguments as a<k>, texts double-quoted with backslash
// escapes. parse_individual_token inverts print_individual.
std::string print_individual(const IndividualName& n);
std::string quote_text(const std::string& s);
std::string unquote_text(const std::string& quoted); // throws Error on bad escapes

struct IndividualNameHash {
    std::size_t operator()(const IndividualName& n) const {
        return std::hash<std::string>()(n.label) * 3 + static_cast<std::size_t>(n.sort);
    }
};

} // namespace fakb
