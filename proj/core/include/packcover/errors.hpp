// Copyright 2026 The packcover Authors
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

namespace packcover {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The instance violates a structural requirement (non-positive capacity,
// negative entry, dimension mismatch, ...).
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

// A column with no nonzero entries: the packing LP is unbounded and the
// covering LP infeasible.
class EmptyColumnError : public InvalidInstance {
 public:
  using InvalidInstance::InvalidInstance;
};

// Malformed input text (MatrixMarket, vector sidecars, solution JSON).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A caller-side precondition failed (epsilon out of range, oversize oracle
// input, underpowered statistical test, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A library invariant was violated. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace packcover
