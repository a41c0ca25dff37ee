// SPDX-License-Identifier: Apache-2.0
//
// risopt: RIS phase configuration and transmit time-switching power allocation
// Copyright (C) 2026 The risopt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace risopt {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define RISOPT_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

RISOPT_DEFINE_ERROR(NotPositiveDefinite);
RISOPT_DEFINE_ERROR(ConvergenceFailure);
RISOPT_DEFINE_ERROR(DimensionMismatch);
RISOPT_DEFINE_ERROR(DomainError);
RISOPT_DEFINE_ERROR(InvalidGeometry);
RISOPT_DEFINE_ERROR(InvalidScenario);
RISOPT_DEFINE_ERROR(RankDeficient);
RISOPT_DEFINE_ERROR(DegenerateAnchor);
RISOPT_DEFINE_ERROR(InfeasibleStart);
RISOPT_DEFINE_ERROR(ConfigError);

#undef RISOPT_DEFINE_ERROR

}  // namespace risopt
