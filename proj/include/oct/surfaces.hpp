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

#ifndef OCT_SURFACES_HPP_
#define OCT_SURFACES_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "oct/octonion.hpp"

namespace oct {

// 8x7 matrix of tangent vectors (columns), row-major over 8 rows.
struct Tangents {
    std::array<double, 56> t{};

    double& operator()(int i, int j) { return t[static_cast<std::size_t>(i) * 7 + j]; }
    double operator()(int i, int j) const { return t[static_cast<std::size_t>(i) * 7 + j]; }
};

// Vector surface element of a tangent parallelotope:
// component i = (-1)^i * det(tangents with row i deleted).
// Orthogonal to every column; length = 7-volume of the parallelotope.
Octonion surface_element(const Tangents& tangents);

struct QuadratureSpec {
    enum class Rule { gauss_legendre_tensor, monte_carlo };

    Rule rule = Rule::gauss_legendre_tensor;
    // Per-axis tensor node counts. A uniform resolution n is the common
    // case; strongly anisotropic integrands (thin tubes, steep kernels)
    // need more nodes on specific angles only, which keeps the tensor
    // budget affordable.
    std::array<int, 7> nodes_per_dim = {8, 8, 8, 8, 8, 8, 8};
    std::int64_t total_samples = 100000;  // monte_carlo only
    std::uint64_t seed = 0;

    static QuadratureSpec tensor(int n);
    static QuadratureSpec tensor(const std::array<int, 7>& n);
    static QuadratureSpec monte_carlo(std::int64_t samples, std::uint64_t seed);

    void validate() const;  // throws usage_error
};

// Compact core manifolds for tubular surfaces.
struct CoreManifold {
    enum class Kind { point, segment, circle, k_sphere };

    Kind kind = Kind::point;
    Octonion a{};      // point location / segment start
    Octonion b{};      // segment end
    double radius = 0.0;  // circle & k_sphere
    int axis1 = 1, axis2 = 2;  // circle: plane span(e_axis1, e_axis2)
    int k = 2;  // k_sphere: core = (k-1)-sphere in span(e_1..e_k), 2<=k<=7

    int dimension() const;  // 0, 1, or k-1
    // Closest core point to z (used by orientation and distance checks).
    Octonion nearest_point(const Octonion& z) const;
    double distance(const Octonion& z) const;
    // Radius of a ball around the origin containing the whole core.
    double bounding_radius() const;

    static CoreManifold point(const Octonion& a);
    static CoreManifold segment(const Octonion& a, const Octonion& b);
    static CoreManifold circle(int axis1, int axis2, double radius);
    static CoreManifold k_sphere(int k, double radius);
};

// One smooth parameter patch: a 7-box mapped into R^8.
class Chart {
public:
    virtual ~Chart() = default;
    virtual std::array<double, 2> interval(int axis) const = 0;
    virtual Octonion point(const std::array<double, 7>& params) const = 0;
    virtual Tangents tangents(const std::array<double, 7>& params) const = 0;
    // Oriented element BEFORE the outwardness correction. The default
    // computes minors of tangents(); built-in overrides use closed forms
    // that must reproduce those minors exactly, sign included.
    virtual Octonion element(const std::array<double, 7>& params) const;
};

// Oriented 7-surface: one or more charts plus the outwardness anchor.
class ParamSurface {
public:
    enum class Kind { sphere, tube };

    Kind kind() const { return kind_; }
    const CoreManifold& core() const { return core_; }
    const std::vector<std::shared_ptr<const Chart>>& charts() const { return charts_; }
    const std::string& description() const { return description_; }

    // Factory: 7-sphere of radius r around center, outward oriented.
    static ParamSurface sphere(const Octonion& center, double r);
    // Factory: points at distance exactly eps from the core. Oriented away
    // from the nearest core point. eps must be below the core's reach
    // (circle / k-sphere: eps < radius), else contract_violation
    // "tube self-intersects". tube(point c, eps) == sphere(c, eps).
    static ParamSurface tube(const CoreManifold& core, double eps);

    double eps() const { return eps_; }

private:
    ParamSurface() = default;
    Kind kind_ = Kind::sphere;
    CoreManifold core_;
    double eps_ = 0.0;
    std::vector<std::shared_ptr<const Chart>> charts_;
    std::string description_;
};

// One quadrature node: position and the discretized vector element
// n(z) dS including the quadrature weight and outwardness sign.
struct SurfaceSample {
    Octonion point;
    Octonion weighted_normal;
    // Positive quadrature weight; weighted_normal equals
    // orientation_sign * weight * (raw chart element).
    double weight = 0.0;
    // +1 if the raw chart element already pointed outward, -1 if it was
    // flipped. Constant on each chart (the element vanishes only on the
    // parameter-box boundary); charts of one surface may differ, e.g. the
    // caps and the cylinder of a segment tube.
    int orientation_sign = 1;
    // Which chart of the surface produced this node.
    int chart_index = 0;
};

// Records which orientation signs appear on which chart. A sign change
// inside a single chart means the parametrization degenerated somewhere
// between the nodes; the integrators reject that as an internal error.
struct OrientationTally {
    std::uint32_t plus = 0;   // bit c: chart c produced a +1 sample
    std::uint32_t minus = 0;  // bit c: chart c produced a -1 sample

    void add(const SurfaceSample& s) {
        const std::uint32_t bit = 1u << (static_cast<unsigned>(s.chart_index) & 31u);
        (s.orientation_sign > 0 ? plus : minus) |= bit;
    }
    void combine(const OrientationTally& o) {
        plus |= o.plus;
        minus |= o.minus;
    }
    void check() const;  // throws internal_error on a mid-chart sign change
};

// Immutable node plan for (surface, spec): per-axis Gauss-Legendre nodes
// and weights (or the Monte Carlo counter layout) resolved once, then
// sampled by flat index from any thread.
class QuadraturePlan {
public:
    QuadraturePlan(const ParamSurface& surface, const QuadratureSpec& spec);

    std::size_t size() const { return total_; }
    SurfaceSample at(std::size_t i) const;
    // Same node plus the tangent matrix (image-surface integrals).
    SurfaceSample at(std::size_t i, Tangents* tangents_out) const;

    const ParamSurface& surface() const { return *surface_; }

private:
    struct ChartPlan {
        std::shared_ptr<const Chart> chart;
        int index = 0;
        std::array<std::vector<double>, 7> nodes;    // tensor rule
        std::array<std::vector<double>, 7> weights;  // tensor rule
        std::array<std::uint64_t, 7> stride{};
        std::uint64_t count = 0;
        double box_volume = 0.0;                     // monte carlo
        std::int64_t samples = 0;                    // monte carlo
    };

    std::array<double, 7> params_for(std::size_t i, const ChartPlan** chart,
                                     double* weight) const;

    const ParamSurface* surface_;
    QuadratureSpec spec_;
    std::vector<ChartPlan> chart_plans_;
    std::size_t total_ = 0;
};

// Gauss-Legendre nodes/weights on [-1, 1] (Newton on the Legendre
// recurrence; n up to a few hundred).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Surface area via |weighted_normal| summation.
double surface_area(const ParamSurface& surface, const QuadratureSpec& spec,
                    unsigned threads = 0);

// Monte Carlo area with its standard error (for cross-checking the tensor
// rule on the same parametrization).
struct McEstimate {
    double value = 0.0;
    double standard_error = 0.0;
};
McEstimate surface_area_mc(const ParamSurface& surface, std::int64_t samples,
                           std::uint64_t seed, unsigned threads = 0);

}  // namespace oct

#endif  // OCT_SURFACES_HPP_
