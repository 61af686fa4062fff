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

#ifndef OCT_CLI_HPP_
#define OCT_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "oct/degree.hpp"
#include "oct/fields.hpp"
#include "oct/octonion.hpp"
#include "oct/surfaces.hpp"

namespace oct::cli {

// Exit codes: 0 success / verdict pass; 1 verdict fail (e.g. hypothesis
// fails, oracle inconclusive); 2 usage or specification error; 3 contract
// violation (zero on surface, tube self-intersection, broken internal
// invariant).
inline constexpr int kExitPass = 0;
inline constexpr int kExitVerdictFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitContract = 3;

// Runs one CLI invocation in-process. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Mini-format parsers (shared between the CLI and the test suite).
//
// Octonion literal: either 8 comma-separated reals "x0,x1,...,x7", or a
// signed sum of terms "1.5", "e3", "2*e1", "-0.5*e7" joined by + or -.
// The unit factor always requires the explicit '*' (so "2e3" stays a
// floating-point literal, 2000).
Octonion parse_octonion(const std::string& text);

// Field spec "name" or "name(p1,p2,...)"; constant(...) accepts one scalar,
// one octonion literal in shorthand form, or 8 comma-separated components.
OctonionField parse_field(const std::string& text);

// Surface spec:
//   sphere(c0,...,c7;r)
//   tube(circle;AX1,AX2;R;eps)     e.g. tube(circle;e1,e2;1.0;0.2)
//   tube(ksphere;k;R;eps)
//   tube(segment;a0,...,a7;b0,...,b7;eps)
ParamSurface parse_surface(const std::string& text);

// Zero spec for the argument principle:
//   point(c0,...,c7;eps)           isolated a-point enclosure
//   tube(...;eps)                  variety enclosure (same as surfaces)
// Either may append ";nodes=n1,...,n7" to override node counts locally.
ZeroSpec parse_zero(const std::string& text);

}  // namespace oct::cli

#endif  // OCT_CLI_HPP_
