// Copyright 2026 The fadecap Authors.
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

namespace fadecap {

// Base of every error thrown by the library. The CLI maps SpecError to exit
// code 2 and everything else to 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

// Bracket expansion gave up before the target was straddled.
class BracketFailure : public Error {
 public:
  using Error::Error;
};

// On-off activation probability underflowed; the budget is far outside the
// low-power regime the scheme is meant for.
class DegenerateActivation : public Error {
 public:
  using Error::Error;
};

// A power policy returned a negative or non-finite power.
class PolicyError : public Error {
 public:
  using Error::Error;
};

// Malformed user input: channel specs, budgets, grids.
class SpecError : public Error {
 public:
  using Error::Error;
};

}  // namespace fadecap
