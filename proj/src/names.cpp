// names.cpp : individual name parsing and printing
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

#include "names.hpp"

#include <cerrno>
#include <cstdlib>

#include "error.hpp"

namespace fakb {

IndividualName IndividualName::plain(std::string name) {
    if (looks_like_argument_name(name))
        raise(ErrorCode::InvalidArgument,
              "plain individual '" + name + "' collides with the reserved argument name space a<k>");
    return IndividualName{NameSort::Plain, std::move(name)};
}

IndividualName IndividualName::argument(std::int64_t index) {
    if (index <= 0)
        raise(ErrorCode::InvalidArgument, "argument indices are positive, got " + std::to_string(index));
    return IndividualName{NameSort::Argument, "a" + std::to_string(index)};
}

// Argument texts are stored inline and compared byte-wise; inputs are
// expected to be NFC-normalized already.
IndividualName IndividualName::text(std::string content) {
    return IndividualName{NameSort::Text, std::move(content)};
}

ArgumentId IndividualName::argument_id() const {
    if (sort != NameSort::Argument)
        raise(ErrorCode::InvalidArgument, "individual '" + label + "' is not argument-sorted");
    return ArgumentId{std::strtoll(label.c_str() + 1, nullptr, 10)};
}

bool IndividualName::operator<(const IndividualName& o) const {
    if (sort != o.sort) return sort < o.sort;
    if (sort == NameSort::Argument) {
        // numeric order, a2 < a10
        return argument_id() < o.argument_id();
    }
    return label < o.label;
}

ArgumentId parse_argument_name(const std::string& s) {
    if (!looks_like_argument_name(s))
        raise(ErrorCode::Parse, "'" + s + "' is not an argument name of the form a<k>");
    errno = 0;
    long long index = std::strtoll(s.c_str() + 1, nullptr, 10);
    if (errno != 0 || index <= 0)
        raise(ErrorCode::Parse, "argument index out of range in '" + s + "'");
    return ArgumentId{index};
}

bool looks_like_argument_name(const std::string& s) {
    if (s.size() < 2 || s[0] != 'a') return false;
    if (s[1] == '0') return false;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

std::string quote_text(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

std::string unquote_text(const std::string& quoted) {
    if (quoted.size() < 2 || quoted.front() != '"' || quoted.back() != '"')
        raise(ErrorCode::Parse, "text individual is not a quoted string: " + quoted);
    std::string out;
    for (std::size_t i = 1; i + 1 < quoted.size(); ++i) {
        char c = quoted[i];
        if (c != '\\') {
            out += c;
            continue;
        }
        if (i + 2 >= quoted.size())
            raise(ErrorCode::Parse, "dangling backslash in quoted string: " + quoted);
        char e = quoted[++i];
        switch (e) {
            case '"': out += '"'; break;
            case '\\': out += '\\'; break;
            case 'n': out += '\n'; break;
            case 't': out += '\t'; break;
            default: raise(ErrorCode::Parse, std::string("unknown escape '\\") + e + "' in quoted string");
        }
    }
    return out;
}

std::string print_individual(const IndividualName& n) {
    switch (n.sort) {
        case NameSort::Text: return quote_text(n.label);
        default: return n.label;
    }
}

} // namespace fakb
