// Copyright 2026 The octodeg Authors
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

#ifndef OCT_ERRORS_HPP
#define OCT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace oct {

// Bad parameters or malformed specifications supplied by the caller
// (unknown field name, non-positive radius, malformed literal, ...).
// The CLI maps this to exit code 2.
class usage_error : public std::invalid_argument {
  public:
    explicit usage_error(const std::string& what) : std::invalid_argument(what) {}
};

// A runtime contract of an operation is violated: a zero or a-point sits on
// an integration surface, a point is too close to the kernel singularity, or
// a tube would self-intersect. The CLI maps this to exit code 3.
class contract_violation : public std::runtime_error {
  public:
    explicit contract_violation(const std::string& what) : std::runtime_error(what) {}
};

// An internal consistency check failed (table mismatch, mixed orientation
// flips on one surface). Indicates a bug, not bad input.
class internal_error : public std::logic_error {
  public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace oct

#endif  // OCT_ERRORS_HPP
