// config.hpp : engine-wide tunables
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

#include "error.hpp"

namespace fakb {

struct EngineConfig {
    double epsilon = 1e-6;   // fixpoint stop threshold
    long max_iter = 10000;   // fixpoint round budget
    double theta = 0.0;      // relation-emission threshold
    std::string semantics = "quadratic-energy";

    void validate() const {
        if (!(epsilon > 0.0)) raise(ErrorCode::InvalidArgument, "epsilon must be positive");
        if (max_iter <= 0) raise(ErrorCode::InvalidArgument, "max-iter must be positive");
        if (!(theta >= 0.0 && theta <= 1.0)) raise(ErrorCode::InvalidArgument, "theta must lie in [0,1]");
    }
};

} // namespace fakb
