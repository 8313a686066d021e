// Copyright 2026 The gctk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace gctk {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define GCTK_DEFINE_ERROR(Name)                                            \
    class Name : public Error {                                            \
      public:                                                              \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

GCTK_DEFINE_ERROR(MalformedInput);
GCTK_DEFINE_ERROR(InvalidParameter);
GCTK_DEFINE_ERROR(PreconditionViolation);
GCTK_DEFINE_ERROR(DimensionMismatch);
GCTK_DEFINE_ERROR(NumericalFailure);
GCTK_DEFINE_ERROR(ResourceLimit);
GCTK_DEFINE_ERROR(ParseError);
GCTK_DEFINE_ERROR(MissingVariable);
GCTK_DEFINE_ERROR(InconsistentWarmStart);
GCTK_DEFINE_ERROR(InfeasibleSolution);
GCTK_DEFINE_ERROR(UnverifiedInput);

#undef GCTK_DEFINE_ERROR

}  // namespace gctk
