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

#ifndef OCT_DEGREE_HPP_
#define OCT_DEGREE_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "oct/fields.hpp"
#include "oct/octonion.hpp"
#include "oct/surfaces.hpp"

namespace oct {

struct Tolerances {
    // |raw - rounded| below which the rounded integer is meaningful.
    double integer_tolerance = 0.1;
    // Distance below which a kernel argument counts as singular.
    double kernel_floor = 1e-12;
    // |f - a| below which a node counts as an a-point on the surface.
    double zero_floor = 1e-9;
};

// Normalization of all degree integrals: (3/pi^4) * integral. 3/pi^4 is the
// reciprocal unit 7-sphere area; the test suite asserts their product is 1.
double degree_normalization();

struct DegreeResult {
    Octonion raw;          // (3/pi^4) * integral, before rounding
    double scalar = 0.0;   // real part of raw
    long long rounded = 0; // nearest integer to scalar
    double residual = 0.0; // |raw - rounded| (octonionic norm)
    std::size_t node_count = 0;
    std::string method;

    bool integer_ok(const Tolerances& tol) const { return residual < tol.integer_tolerance; }
};

// Fundamental kernel q0(z) = conj(z)/|z|^8. Throws contract_violation when
// |z| < kernel_floor.
Octonion cauchy_kernel(const Octonion& z, double kernel_floor = 1e-12);

// Winding number of a 7-cycle around z:
//   left : (3/pi^4) * integral of q0(w - z) dsigma(w)
//   right: (3/pi^4) * integral of dsigma(w) q0(w - z)
DegreeResult winding_number(const ParamSurface& surface, const Octonion& z,
                            Side side, const QuadratureSpec& spec,
                            const Tolerances& tol = {}, unsigned threads = 0);

enum class OrderMethod { pullback, image };

const char* to_string(OrderMethod m);

// Order of the isolated a-point of f at c:
//   pullback: (3/pi^4) * integral over S7(c,eps) of
//             q0(f(z) - a) * (cof(Jf)(z) applied to dsigma(z))
//   image   : push nodes and tangents through f and integrate
//             q0(w - a) dsigma(w) over the image surface.
DegreeResult order_isolated(const OctonionField& f, const Octonion& c,
                            const Octonion& a, double eps,
                            const QuadratureSpec& spec,
                            OrderMethod method = OrderMethod::pullback,
                            const Tolerances& tol = {}, unsigned threads = 0);

// Order of a non-isolated zero variety: the pullback integral over the
// tube of thickness eps around the core.
DegreeResult order_variety(const OctonionField& f, const CoreManifold& core,
                           double eps, const QuadratureSpec& spec,
                           const Tolerances& tol = {}, unsigned threads = 0);

// One enclosed zero for the argument principle: an isolated point with its
// enclosing sphere radius, or a variety with its tube thickness. A zero may
// carry its own node counts (steep local kernels); otherwise the caller's
// spec applies.
struct ZeroSpec {
    enum class Kind { isolated_point, variety };

    Kind kind = Kind::isolated_point;
    Octonion location{};   // isolated_point
    CoreManifold core;     // variety
    double eps = 0.3;
    std::optional<std::array<int, 7>> nodes_override;

    static ZeroSpec isolated(const Octonion& location, double eps);
    static ZeroSpec variety(const CoreManifold& core, double eps);
};

struct ArgumentReport {
    DegreeResult lhs;                     // boundary integral, pullback form
    std::vector<DegreeResult> rhs_terms;  // one order per enclosed zero
    double rhs_sum = 0.0;                 // sum of rhs raw scalars
    long long rhs_rounded_sum = 0;
    double delta = 0.0;                   // |lhs.raw - rhs_sum|
};

// lhs = boundary order integral of f - a; rhs = sum of orders of the listed
// zeros. Enclosures must lie inside the boundary and be pairwise disjoint
// (checked; contract_violation otherwise).
ArgumentReport argument_principle(const OctonionField& f,
                                  const ParamSurface& boundary,
                                  const std::vector<ZeroSpec>& zeros,
                                  const Octonion& a, const QuadratureSpec& spec,
                                  const Tolerances& tol = {},
                                  unsigned threads = 0);

struct RoucheReport {
    bool hypothesis_ok = false;
    double min_f = 0.0;       // min |f| over boundary nodes
    double max_diff = 0.0;    // max |f - g| over boundary nodes
    double margin = 0.0;      // min_f - max_diff
    Octonion violating_node{};  // meaningful when !hypothesis_ok
    std::optional<DegreeResult> sum_f;  // boundary order integrals,
    std::optional<DegreeResult> sum_g;  // computed when hypothesis holds
    bool sums_equal = false;
};

// Verifies |f - g| < |f| on the boundary; when it holds, compares the
// boundary order sums of f and g. A failed hypothesis is a result, not an
// exception.
RoucheReport rouche_check(const OctonionField& f, const OctonionField& g,
                          const ParamSurface& boundary,
                          const QuadratureSpec& spec, const Tolerances& tol = {},
                          unsigned threads = 0);

struct HurwitzReport {
    // "identically_zero", "order_sum_zero", or "hypothesis_fails".
    std::string branch;
    double grid_max = 0.0;   // max |f_limit| over the sample grid
    double grid_min = 0.0;   // min |f_limit| over the sample grid
    std::optional<DegreeResult> order_sum;  // order_sum_zero branch
    std::optional<Octonion> violating_point;  // hypothesis_fails
    long long violating_index = 0;
};

// Classifies the limit of an indexed field family over the ball
// B(center, radius): spot-checks that each f_n (n along a geometric ladder
// up to n_max) is nonvanishing on a seeded sample grid, then either detects
// an identically vanishing limit (max |f_{n_max}| < zero_floor on the grid)
// or evaluates the boundary order sum of the limit proxy f_{n_max}.
HurwitzReport hurwitz_check(
    const std::function<OctonionField(std::int64_t)>& family,
    std::int64_t n_max, const Octonion& center, double radius,
    int grid_samples, std::uint64_t seed, const QuadratureSpec& spec,
    const Tolerances& tol = {}, unsigned threads = 0);

struct OracleResult {
    bool conclusive = false;
    long long degree = 0;
    int preimage_count = 0;
    int nonconverged_starts = 0;
    Octonion effective_a{};  // equals a unless a was perturbed
    bool perturbed = false;
    std::string note;
    std::vector<Octonion> preimages;
};

// Independent Brouwer-degree computation: multi-start damped Newton on
// f(x) = a inside B(c, eps), deduplicated at radius 1e-6; degree is the sum
// of sign(det Jf) over distinct preimages. If a is a critical value (some
// preimage has |det Jf| <= 1e-8), a random regular value within
// perturbation_radius (default 0.1*eps) is substituted and reported.
// Inconclusive when no start converges yet a coarse boundary winding is
// nonzero.
OracleResult degree_oracle(const OctonionField& f, const Octonion& c,
                           double eps, const Octonion& a, int starts,
                           std::uint64_t seed, const Tolerances& tol = {},
                           double perturbation_radius = 0.0 /* 0 => 0.1*eps */,
                           unsigned threads = 0);

}  // namespace oct

#endif  // OCT_DEGREE_HPP_
