// fabox_io.hpp : line-oriented and JSON serialization of fact stores
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

#include <string>

#include "fabox.hpp"

namespace fakb {

// Line format, one assertion per line:
//   concept <Pred>(<ind>) [: <degree>]
//   role <Pred>(<ind>,<ind>) [: <degree>]
// Argument individuals are written a<k>, texts as double-quoted strings with
// backslash escapes, everything else bare. A missing degree means 1.
// '#' starts a comment; blank lines are skipped.
Fabox parse_fabox_text(const std::string& text);
std::string serialize_fabox_text(const Fabox& fabox); // canonical: sorted, 6-decimal degrees

// JSON mirror: an array of {kind, predicate, args, degree}. Plain and
// argument individuals are strings, text individuals objects {"text": ...};
// a missing degree means 1.
Fabox parse_fabox_json(const std::string& json_text);
std::string serialize_fabox_json(const Fabox& fabox);

// Sniffs the format from the file extension (.json selects the mirror).
Fabox load_fabox_file(const std::string& path);

// Plain node/edge dump of the knowledge graph. Node types: argument, text,
// entity, concept; edge types: att, sup, role, instance.
std::string export_graph_json(const Fabox& fabox);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace fakb
