// Copyright 2026 The entbreak Authors
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

namespace entbreak {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown or duplicated subsystem label.
class LabelError : public Error {
 public:
  using Error::Error;
};

/// An input violates a documented invariant (not Hermitian, not PSD, not a
/// valid Choi state, inconsistent marginals, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// The requested test is only decidable in dimensions not matching the input.
class UnsupportedDimensionError : public Error {
 public:
  using Error::Error;
};

}  // namespace entbreak
