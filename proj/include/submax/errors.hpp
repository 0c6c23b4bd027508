// Copyright 2026 The Authors.
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

namespace submax {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A caller broke an API precondition (dimension mismatch, overlapping pins,
// index out of range).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration, parameters or sizes.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed instance or config text.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace submax
