// Copyright 2026 The Lintcc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LINTCC_ERRORS_HPP_
#define LINTCC_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lintcc {

// Root of all lintcc exceptions. The CLI maps anything derived from this
// to exit code 1 unless a subcommand defines a more specific mapping.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

// Malformed input data; `field` names the offending field when known.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& what, std::string field)
      : Error(what + " (field: " + field + ")"), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class DuplicateIdError : public Error {
 public:
  explicit DuplicateIdError(const std::string& id)
      : Error("duplicate id: " + id), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

}  // namespace lintcc

#endif  // LINTCC_ERRORS_HPP_
