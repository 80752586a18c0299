// Copyright 2026 The sliceprof Authors.
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

namespace sliceprof {

/// Malformed serialized input. The message names the offending document path.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, const std::string& what)
      : std::runtime_error("parse error at '" + path + "': " + what), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// A value violates a domain invariant (coordinate range, non-negativity, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scenario or run configuration cannot be executed as given.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sliceprof
