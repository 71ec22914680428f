// error.hpp : engine-wide error type with stable category codes
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

#include <stdexcept>
#include <string>

namespace fakb {

enum class ErrorCode {
    Parse,            // malformed input text / JSON / query
    Io,               // file system failure
    Inconsistent,     // data fails a consistency requirement
    Precondition,     // operation called on data violating its contract
    NonConvergence,   // fixpoint iteration exhausted its budget
    Domain,           // argument outside the operation's domain
    Extraction,       // a backend task failed
    OracleIncomplete, // test oracle ran out of witness budget
    InvalidArgument,  // bad configuration or API usage
    Internal,         // invariant breach inside the engine
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace fakb
