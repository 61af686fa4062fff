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

#include "oct/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "oct/errors.hpp"
#include "oct/mat8.hpp"
#include "oct/reduce.hpp"
#include "oct/rng.hpp"

namespace oct {
namespace {

constexpr double kPi = std::numbers::pi;

// Hyperspherical helpers for S^m embedded in R^{m+1}, parametrized by m
// angles (all but the last in [0,pi], the last in [0,2pi)):
//   u_i = (prod_{t<i} sin a_t) * cos a_i   for i < m,   u_m = prod_{t<m} sin a_t.
// The area density is prod_{i<m-1} sin^{m-1-i}(a_i).
void hs_coords(const double* a, int m, double* u) {
    double cum = 1.0;
    for (int i = 0; i < m; ++i) {
        u[i] = cum * std::cos(a[i]);
        cum *= std::sin(a[i]);
    }
    u[m] = cum;
}

double hs_density(const double* a, int m) {
    double d = 1.0;
    for (int i = 0; i + 1 < m; ++i) {
        d *= std::pow(std::sin(a[i]), m - 1 - i);
    }
    return d;
}

// Column q of the (m+1) x m tangent matrix du_i/da_q, written through
// set(i, value).
template <typename Set>
void hs_tangent_col(const double* a, int m, int q, Set set) {
    double pq = 1.0;  // prod_{t<q} sin a_t
    for (int t = 0; t < q; ++t) pq *= std::sin(a[t]);
    set(q, -pq * std::sin(a[q]));
    double d = pq * std::cos(a[q]);
    for (int i = q + 1; i < m; ++i) {
        set(i, d * std::cos(a[i]));
        d *= std::sin(a[i]);
    }
    set(m, d);
}

// The closed-form elements below are exact up to the overall handedness of
// the parametrization, which depends on how the chart's frame sits in the
// standard basis (an odd permutation or reflection negates every minor).
// Rather than tracking that parity case by case, each chart fixes its sign
// once against the raw minors at the middle of the parameter box, where the
// angular density is bounded away from zero; the interior sign is constant
// because the element only vanishes on the box boundary. Called from the
// final chart constructors with orient_ still at +1, so element() returns
// the uncorrected closed form.
int orientation_against_minors(const Chart& chart) {
    std::array<double, 7> mid;
    for (int axis = 0; axis < 7; ++axis) {
        const std::array<double, 2> iv = chart.interval(axis);
        mid[axis] = 0.5 * (iv[0] + iv[1]);
    }
    const double side =
        scalar_product(chart.element(mid), surface_element(chart.tangents(mid)));
    if (!std::isfinite(side) || side == 0.0)
        throw internal_error("chart orientation calibration degenerated");
    return side > 0.0 ? 1 : -1;
}

// S7(center, r) with the standard 7-angle parametrization; the natural
// orientation of these minors is exactly outward.
class SphereChart final : public Chart {
public:
    SphereChart(const Octonion& center, double r) : center_(center), r_(r) {
        orient_ = orientation_against_minors(*this);
    }

    std::array<double, 2> interval(int axis) const override {
        return axis == 6 ? std::array<double, 2>{0.0, 2.0 * kPi}
                         : std::array<double, 2>{0.0, kPi};
    }

    Octonion point(const std::array<double, 7>& p) const override {
        double u[8];
        hs_coords(p.data(), 7, u);
        Octonion z = center_;
        for (int i = 0; i < 8; ++i) z.x[i] += r_ * u[i];
        return z;
    }

    Tangents tangents(const std::array<double, 7>& p) const override {
        Tangents t;
        for (int q = 0; q < 7; ++q) {
            hs_tangent_col(p.data(), 7, q,
                           [&](int i, double v) { t(i, q) = r_ * v; });
        }
        return t;
    }

    Octonion element(const std::array<double, 7>& p) const override {
        double u[8];
        hs_coords(p.data(), 7, u);
        const double scale = orient_ * std::pow(r_, 7) * hs_density(p.data(), 7);
        Octonion e;
        for (int i = 0; i < 8; ++i) e.x[i] = scale * u[i];
        return e;
    }

private:
    Octonion center_;
    double r_;
    int orient_ = 1;
};

// Tube around a (k-1)-sphere core of radius R lying in the span of the
// coordinate axes sub[0..k-1] (k=2 covers circles in any coordinate plane).
// Parameters: k-1 core angles, then 8-k normal-sphere angles. A point is
//   z = (R + eps*w0) * Omega + eps * sum_t w_t e_{comp[t-1]}
// with Omega in S^{k-1} (core) and w in S^{8-k} (normal sphere; w0 is the
// radial share). The metric splits, so
//   dS = (R + eps*w0)^{k-1} dens_core * eps^{8-k} dens_norm,
// and the outward direction is w0*Omega + sum_t w_t e_{comp[t-1]}.
class TubeSphereChart final : public Chart {
public:
    TubeSphereChart(std::vector<int> sub, double R, double eps)
        : sub_(std::move(sub)), R_(R), eps_(eps) {
        const int k = static_cast<int>(sub_.size());
        mc_ = k - 1;      // core angle count
        mn_ = 8 - k;      // normal angle count
        bool used[8] = {};
        for (int s : sub_) used[s] = true;
        for (int i = 0; i < 8; ++i)
            if (!used[i]) comp_.push_back(i);
        orient_ = orientation_against_minors(*this);
    }

    std::array<double, 2> interval(int axis) const override {
        // Core angles first (last one full), then normal angles (last full).
        const bool full = (axis == mc_ - 1) || (axis == 6);
        return full ? std::array<double, 2>{0.0, 2.0 * kPi}
                    : std::array<double, 2>{0.0, kPi};
    }

    Octonion point(const std::array<double, 7>& p) const override {
        double omega[8], w[8];
        hs_coords(p.data(), mc_, omega);
        hs_coords(p.data() + mc_, mn_, w);
        const double rho = R_ + eps_ * w[0];
        Octonion z;
        for (int i = 0; i <= mc_; ++i) z.x[sub_[i]] = rho * omega[i];
        for (int t = 1; t <= mn_; ++t) z.x[comp_[t - 1]] = eps_ * w[t];
        return z;
    }

    Octonion element(const std::array<double, 7>& p) const override {
        double omega[8], w[8];
        hs_coords(p.data(), mc_, omega);
        hs_coords(p.data() + mc_, mn_, w);
        const double rho = R_ + eps_ * w[0];
        const double scale = orient_ * std::pow(rho, mc_) *
                             hs_density(p.data(), mc_) * std::pow(eps_, mn_) *
                             hs_density(p.data() + mc_, mn_);
        Octonion e;
        for (int i = 0; i <= mc_; ++i) e.x[sub_[i]] = scale * w[0] * omega[i];
        for (int t = 1; t <= mn_; ++t) e.x[comp_[t - 1]] = scale * w[t];
        return e;
    }

    Tangents tangents(const std::array<double, 7>& p) const override {
        double omega[8], w[8];
        hs_coords(p.data(), mc_, omega);
        hs_coords(p.data() + mc_, mn_, w);
        const double rho = R_ + eps_ * w[0];
        Tangents t;
        for (int q = 0; q < mc_; ++q) {  // core angles move rho * Omega
            hs_tangent_col(p.data(), mc_, q,
                           [&](int i, double v) { t(sub_[i], q) = rho * v; });
        }
        for (int q = 0; q < mn_; ++q) {  // normal angles move w
            hs_tangent_col(p.data() + mc_, mn_, q, [&](int i, double v) {
                if (i == 0) {
                    for (int s = 0; s <= mc_; ++s)
                        t(sub_[s], mc_ + q) += eps_ * v * omega[s];
                } else {
                    t(comp_[i - 1], mc_ + q) += eps_ * v;
                }
            });
        }
        return t;
    }

private:
    std::vector<int> sub_;
    std::vector<int> comp_;
    double R_, eps_;
    int mc_ = 0, mn_ = 0;
    int orient_ = 1;
};

// Orthonormal frame {dir, n[0..6]} completing a unit vector, built by
// Gram-Schmidt over the coordinate axes (the axis most parallel to dir is
// skipped). Deterministic for a given dir.
struct SegmentFrame {
    Octonion dir;
    std::array<Octonion, 7> n;

    explicit SegmentFrame(const Octonion& d) : dir(d) {
        int skip = 0;
        double best = 0.0;
        for (int i = 0; i < 8; ++i) {
            if (std::abs(d.x[i]) > best) {
                best = std::abs(d.x[i]);
                skip = i;
            }
        }
        int cnt = 0;
        for (int i = 0; i < 8 && cnt < 7; ++i) {
            if (i == skip) continue;
            Octonion v = Octonion::e(i);
            v -= scalar_product(v, dir) * dir;
            for (int j = 0; j < cnt; ++j) v -= scalar_product(v, n[j]) * n[j];
            const double len = norm(v);
            if (len < 1e-12)
                throw internal_error("segment frame construction degenerated");
            n[cnt++] = v / len;
        }
    }
};

// Cylindrical part of a segment tube: parameter 0 is the arc coordinate
// t in [0, L], parameters 1..6 are S^6 angles over the normal frame.
class SegmentCylinderChart final : public Chart {
public:
    SegmentCylinderChart(const Octonion& a, const Octonion& dir, double length,
                         const SegmentFrame& frame, double eps)
        : a_(a), dir_(dir), length_(length), frame_(frame), eps_(eps) {
        orient_ = orientation_against_minors(*this);
    }

    std::array<double, 2> interval(int axis) const override {
        if (axis == 0) return {0.0, length_};
        return axis == 6 ? std::array<double, 2>{0.0, 2.0 * kPi}
                         : std::array<double, 2>{0.0, kPi};
    }

    Octonion point(const std::array<double, 7>& p) const override {
        double w[7];
        hs_coords(p.data() + 1, 6, w);
        Octonion z = a_ + p[0] * dir_;
        for (int t = 0; t < 7; ++t) z += (eps_ * w[t]) * frame_.n[t];
        return z;
    }

    Octonion element(const std::array<double, 7>& p) const override {
        double w[7];
        hs_coords(p.data() + 1, 6, w);
        const double scale =
            orient_ * std::pow(eps_, 6) * hs_density(p.data() + 1, 6);
        Octonion e;
        for (int t = 0; t < 7; ++t) e += (scale * w[t]) * frame_.n[t];
        return e;
    }

    Tangents tangents(const std::array<double, 7>& p) const override {
        Tangents t;
        for (int i = 0; i < 8; ++i) t(i, 0) = dir_.x[i];
        for (int q = 0; q < 6; ++q) {
            hs_tangent_col(p.data() + 1, 6, q, [&](int i, double v) {
                for (int r = 0; r < 8; ++r)
                    t(r, 1 + q) += eps_ * v * frame_.n[i].x[r];
            });
        }
        return t;
    }

private:
    Octonion a_, dir_;
    double length_;
    SegmentFrame frame_;
    double eps_;
    int orient_ = 1;
};

// Hemispherical cap of a segment tube around one endpoint. Hyperspherical
// S^7 angles over the rotated frame {dir, n[0..6]}; the polar angle is
// restricted to [pi/2, pi] at the start (points behind the segment) and
// [0, pi/2] at the end.
class SegmentCapChart final : public Chart {
public:
    SegmentCapChart(const Octonion& end_point, const SegmentFrame& frame,
                    double eps, bool start_cap)
        : p_(end_point), frame_(frame), eps_(eps), start_(start_cap) {
        orient_ = orientation_against_minors(*this);
    }

    std::array<double, 2> interval(int axis) const override {
        if (axis == 0)
            return start_ ? std::array<double, 2>{kPi / 2.0, kPi}
                          : std::array<double, 2>{0.0, kPi / 2.0};
        return axis == 6 ? std::array<double, 2>{0.0, 2.0 * kPi}
                         : std::array<double, 2>{0.0, kPi};
    }

    Octonion point(const std::array<double, 7>& p) const override {
        return p_ + eps_ * direction(p);
    }

    Octonion element(const std::array<double, 7>& p) const override {
        const double scale =
            orient_ * std::pow(eps_, 7) * hs_density(p.data(), 7);
        return scale * direction(p);
    }

    Tangents tangents(const std::array<double, 7>& p) const override {
        Tangents t;
        for (int q = 0; q < 7; ++q) {
            hs_tangent_col(p.data(), 7, q, [&](int i, double v) {
                const Octonion& basis = (i == 0) ? frame_.dir : frame_.n[i - 1];
                for (int r = 0; r < 8; ++r) t(r, q) += eps_ * v * basis.x[r];
            });
        }
        return t;
    }

private:
    Octonion direction(const std::array<double, 7>& p) const {
        double u[8];
        hs_coords(p.data(), 7, u);
        Octonion v = u[0] * frame_.dir;
        for (int i = 0; i < 7; ++i) v += u[i + 1] * frame_.n[i];
        return v;
    }

    Octonion p_;
    SegmentFrame frame_;
    double eps_;
    bool start_;
    int orient_ = 1;
};

}  // namespace

Octonion surface_element(const Tangents& tangents) {
    Octonion out;
    std::array<double, 49> minor;
    for (int drop = 0; drop < 8; ++drop) {
        int idx = 0;
        for (int r = 0; r < 8; ++r) {
            if (r == drop) continue;
            for (int c = 0; c < 7; ++c) minor[idx++] = tangents(r, c);
        }
        const double d = det7(minor);
        out.x[drop] = (drop % 2 == 0) ? d : -d;
    }
    return out;
}

Octonion Chart::element(const std::array<double, 7>& params) const {
    return surface_element(tangents(params));
}

QuadratureSpec QuadratureSpec::tensor(int n) {
    QuadratureSpec s;
    s.rule = Rule::gauss_legendre_tensor;
    s.nodes_per_dim.fill(n);
    return s;
}

QuadratureSpec QuadratureSpec::tensor(const std::array<int, 7>& n) {
    QuadratureSpec s;
    s.rule = Rule::gauss_legendre_tensor;
    s.nodes_per_dim = n;
    return s;
}

QuadratureSpec QuadratureSpec::monte_carlo(std::int64_t samples,
                                           std::uint64_t seed) {
    QuadratureSpec s;
    s.rule = Rule::monte_carlo;
    s.total_samples = samples;
    s.seed = seed;
    return s;
}

void QuadratureSpec::validate() const {
    if (rule == Rule::gauss_legendre_tensor) {
        for (int n : nodes_per_dim) {
            if (n < 2)
                throw usage_error("tensor rule needs at least 2 nodes per axis");
            if (n > 512) throw usage_error("more than 512 nodes per axis");
        }
    } else {
        if (total_samples < 1000)
            throw usage_error("monte carlo needs at least 1000 samples");
    }
}

int CoreManifold::dimension() const {
    switch (kind) {
        case Kind::point: return 0;
        case Kind::segment: return 1;
        case Kind::circle: return 1;
        case Kind::k_sphere: return k - 1;
    }
    return 0;
}

Octonion CoreManifold::nearest_point(const Octonion& z) const {
    switch (kind) {
        case Kind::point:
            return a;
        case Kind::segment: {
            const Octonion d = b - a;
            const double len2 = norm_sq(d);
            double t = scalar_product(z - a, d) / len2;
            t = std::clamp(t, 0.0, 1.0);
            return a + t * d;
        }
        case Kind::circle: {
            Octonion p;
            p.x[axis1] = z.x[axis1];
            p.x[axis2] = z.x[axis2];
            const double len = norm(p);
            if (len == 0.0) {
                p = Octonion::e(static_cast<std::size_t>(axis1));
                return radius * p;
            }
            return (radius / len) * p;
        }
        case Kind::k_sphere: {
            Octonion p;
            for (int i = 1; i <= k; ++i) p.x[i] = z.x[i];
            const double len = norm(p);
            if (len == 0.0) return radius * Octonion::e(1);
            return (radius / len) * p;
        }
    }
    return a;
}

double CoreManifold::distance(const Octonion& z) const {
    return norm(z - nearest_point(z));
}

double CoreManifold::bounding_radius() const {
    switch (kind) {
        case Kind::point: return norm(a);
        case Kind::segment: return std::max(norm(a), norm(b));
        case Kind::circle:
        case Kind::k_sphere: return radius;
    }
    return 0.0;
}

CoreManifold CoreManifold::point(const Octonion& a) {
    CoreManifold c;
    c.kind = Kind::point;
    c.a = a;
    return c;
}

CoreManifold CoreManifold::segment(const Octonion& a, const Octonion& b) {
    if (norm(b - a) == 0.0)
        throw usage_error("segment endpoints coincide; use a point core");
    CoreManifold c;
    c.kind = Kind::segment;
    c.a = a;
    c.b = b;
    return c;
}

CoreManifold CoreManifold::circle(int axis1, int axis2, double radius) {
    if (axis1 < 1 || axis1 > 7 || axis2 < 1 || axis2 > 7 || axis1 == axis2)
        throw usage_error("circle axes must be distinct indices in 1..7");
    if (!(radius > 0.0)) throw usage_error("circle radius must be positive");
    CoreManifold c;
    c.kind = Kind::circle;
    c.axis1 = std::min(axis1, axis2);
    c.axis2 = std::max(axis1, axis2);
    c.radius = radius;
    return c;
}

CoreManifold CoreManifold::k_sphere(int k, double radius) {
    if (k < 2 || k > 7)
        throw usage_error("k-sphere subspace dimension must be in 2..7");
    if (!(radius > 0.0)) throw usage_error("k-sphere radius must be positive");
    CoreManifold c;
    c.kind = Kind::k_sphere;
    c.k = k;
    c.radius = radius;
    return c;
}

ParamSurface ParamSurface::sphere(const Octonion& center, double r) {
    if (!(r > 0.0)) throw usage_error("sphere radius must be positive");
    ParamSurface s;
    s.kind_ = Kind::sphere;
    s.core_ = CoreManifold::point(center);
    s.eps_ = r;
    s.charts_.push_back(std::make_shared<SphereChart>(center, r));
    std::ostringstream os;
    os << "sphere(" << center << "; " << r << ")";
    s.description_ = os.str();
    return s;
}

ParamSurface ParamSurface::tube(const CoreManifold& core, double eps) {
    if (!(eps > 0.0)) throw usage_error("tube thickness must be positive");
    ParamSurface s;
    s.kind_ = Kind::tube;
    s.core_ = core;
    s.eps_ = eps;
    switch (core.kind) {
        case CoreManifold::Kind::point:
            // Degenerate tube: exactly the sphere around the core point.
            s.charts_.push_back(std::make_shared<SphereChart>(core.a, eps));
            s.description_ = "tube(point; " + std::to_string(eps) + ")";
            break;
        case CoreManifold::Kind::circle: {
            if (eps >= core.radius)
                throw contract_violation("tube self-intersects: eps >= reach");
            std::vector<int> sub = {core.axis1, core.axis2};
            s.charts_.push_back(
                std::make_shared<TubeSphereChart>(sub, core.radius, eps));
            s.description_ = "tube(circle)";
            break;
        }
        case CoreManifold::Kind::k_sphere: {
            if (eps >= core.radius)
                throw contract_violation("tube self-intersects: eps >= reach");
            std::vector<int> sub;
            for (int i = 1; i <= core.k; ++i) sub.push_back(i);
            s.charts_.push_back(
                std::make_shared<TubeSphereChart>(sub, core.radius, eps));
            s.description_ = "tube(ksphere)";
            break;
        }
        case CoreManifold::Kind::segment: {
            const Octonion d = core.b - core.a;
            const double len = norm(d);
            const Octonion dir = d / len;
            SegmentFrame frame(dir);
            s.charts_.push_back(std::make_shared<SegmentCylinderChart>(
                core.a, dir, len, frame, eps));
            s.charts_.push_back(
                std::make_shared<SegmentCapChart>(core.a, frame, eps, true));
            s.charts_.push_back(
                std::make_shared<SegmentCapChart>(core.b, frame, eps, false));
            s.description_ = "tube(segment)";
            break;
        }
    }
    return s;
}

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int k = 0; k < (n + 1) / 2; ++k) {
        double x = std::cos(kPi * (k + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence for P_n(x) and P'_n(x).
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[k] = -x;
        nodes[n - 1 - k] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[k] = w;
        weights[n - 1 - k] = w;
    }
}

QuadraturePlan::QuadraturePlan(const ParamSurface& surface,
                               const QuadratureSpec& spec)
    : surface_(&surface), spec_(spec) {
    spec_.validate();
    for (const auto& chart : surface.charts()) {
        ChartPlan cp;
        cp.chart = chart;
        cp.index = static_cast<int>(chart_plans_.size());
        if (spec_.rule == QuadratureSpec::Rule::gauss_legendre_tensor) {
            cp.count = 1;
            for (int axis = 0; axis < 7; ++axis) {
                const auto [lo, hi] = chart->interval(axis);
                std::vector<double> xs, ws;
                gauss_legendre(spec_.nodes_per_dim[axis], xs, ws);
                const double mid = 0.5 * (lo + hi);
                const double half = 0.5 * (hi - lo);
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    xs[i] = mid + half * xs[i];
                    ws[i] *= half;
                }
                cp.nodes[axis] = std::move(xs);
                cp.weights[axis] = std::move(ws);
                cp.count *= static_cast<std::uint64_t>(spec_.nodes_per_dim[axis]);
            }
            std::uint64_t stride = 1;
            for (int axis = 6; axis >= 0; --axis) {
                cp.stride[axis] = stride;
                stride *= static_cast<std::uint64_t>(spec_.nodes_per_dim[axis]);
            }
        } else {
            double vol = 1.0;
            for (int axis = 0; axis < 7; ++axis) {
                const auto [lo, hi] = chart->interval(axis);
                vol *= (hi - lo);
            }
            cp.box_volume = vol;
        }
        chart_plans_.push_back(std::move(cp));
    }
    if (spec_.rule == QuadratureSpec::Rule::monte_carlo) {
        double total_vol = 0.0;
        for (const auto& cp : chart_plans_) total_vol += cp.box_volume;
        std::int64_t assigned = 0;
        for (std::size_t c = 0; c < chart_plans_.size(); ++c) {
            auto& cp = chart_plans_[c];
            if (c + 1 == chart_plans_.size()) {
                cp.samples = spec_.total_samples - assigned;
            } else {
                cp.samples = static_cast<std::int64_t>(
                    std::llround(spec_.total_samples * cp.box_volume / total_vol));
            }
            assigned += cp.samples;
            cp.count = static_cast<std::uint64_t>(std::max<std::int64_t>(cp.samples, 0));
        }
    }
    total_ = 0;
    for (const auto& cp : chart_plans_) total_ += cp.count;
}

std::array<double, 7> QuadraturePlan::params_for(std::size_t i,
                                                 const ChartPlan** chart,
                                                 double* weight) const {
    std::size_t local = i;
    const ChartPlan* cp = nullptr;
    std::size_t chart_base = 0;
    for (const auto& c : chart_plans_) {
        if (local < c.count) {
            cp = &c;
            break;
        }
        local -= c.count;
        chart_base += c.count;
    }
    if (cp == nullptr) throw internal_error("quadrature node index out of range");
    *chart = cp;

    std::array<double, 7> params;
    if (spec_.rule == QuadratureSpec::Rule::gauss_legendre_tensor) {
        double w = 1.0;
        for (int axis = 0; axis < 7; ++axis) {
            const std::size_t idx = (local / cp->stride[axis]) %
                                    cp->nodes[axis].size();
            params[axis] = cp->nodes[axis][idx];
            w *= cp->weights[axis][idx];
        }
        *weight = w;
    } else {
        // Counter-based stream: global sample index fixes all 7 coordinates,
        // independent of threading or chart iteration order.
        const std::uint64_t sample_index =
            static_cast<std::uint64_t>(chart_base) + local;
        for (int axis = 0; axis < 7; ++axis) {
            const auto [lo, hi] = cp->chart->interval(axis);
            params[axis] =
                lo + (hi - lo) * uniform01_at(spec_.seed, sample_index * 7 + axis);
        }
        *weight = cp->box_volume / static_cast<double>(cp->samples);
    }
    return params;
}

SurfaceSample QuadraturePlan::at(std::size_t i) const {
    return at(i, nullptr);
}

SurfaceSample QuadraturePlan::at(std::size_t i, Tangents* tangents_out) const {
    const ChartPlan* cp = nullptr;
    double weight = 0.0;
    const std::array<double, 7> params = params_for(i, &cp, &weight);

    SurfaceSample s;
    s.point = cp->chart->point(params);
    Octonion elem = cp->chart->element(params);

    if (tangents_out != nullptr) {
        *tangents_out = cp->chart->tangents(params);
        // The flip that makes the raw tangent minors outward; image-surface
        // integrals push these tangents and must inherit the same sign.
        elem = surface_element(*tangents_out);
    }

    const Octonion outward = s.point - surface_->core().nearest_point(s.point);
    const double side = scalar_product(elem, outward);
    if (side == 0.0)
        throw internal_error("orientation test degenerate at a quadrature node");
    s.orientation_sign = side > 0.0 ? 1 : -1;
    s.chart_index = cp->index;
    s.weight = weight;
    s.weighted_normal = (s.orientation_sign * weight) * elem;
    return s;
}

void OrientationTally::check() const {
    if ((plus & minus) != 0)
        throw internal_error(
            "orientation sign changed inside one chart (parametrization bug)");
}

namespace {

struct AreaAccum {
    double area = 0.0;
    OrientationTally tally;
    void combine(const AreaAccum& o) {
        area += o.area;
        tally.combine(o.tally);
    }
};

}  // namespace

double surface_area(const ParamSurface& surface, const QuadratureSpec& spec,
                    unsigned threads) {
    if (threads == 0) threads = default_thread_count();
    const QuadraturePlan plan(surface, spec);
    auto acc = chunked_reduce<AreaAccum>(
        plan.size(),
        [&](std::size_t i, AreaAccum& a) {
            const SurfaceSample s = plan.at(i);
            a.area += norm(s.weighted_normal);
            a.tally.add(s);
        },
        threads);
    acc.tally.check();
    return acc.area;
}

McEstimate surface_area_mc(const ParamSurface& surface, std::int64_t samples,
                           std::uint64_t seed, unsigned threads) {
    if (threads == 0) threads = default_thread_count();
    QuadratureSpec spec = QuadratureSpec::monte_carlo(samples, seed);
    const QuadraturePlan plan(surface, spec);

    struct McAccum {
        double sum = 0.0;
        double sum_sq = 0.0;  // of per-sample contributions, for the variance
        std::size_t count = 0;
        OrientationTally tally;
        void combine(const McAccum& o) {
            sum += o.sum;
            sum_sq += o.sum_sq;
            count += o.count;
            tally.combine(o.tally);
        }
    };
    auto acc = chunked_reduce<McAccum>(
        plan.size(),
        [&](std::size_t i, McAccum& a) {
            const SurfaceSample s = plan.at(i);
            // Per-sample estimate of the total area (weight already 1/N).
            const double v = norm(s.weighted_normal) * static_cast<double>(plan.size());
            a.sum += v;
            a.sum_sq += v * v;
            a.count += 1;
            a.tally.add(s);
        },
        threads);
    acc.tally.check();

    const double n = static_cast<double>(acc.count);
    const double mean = acc.sum / n;
    const double var = std::max(0.0, acc.sum_sq / n - mean * mean);
    McEstimate e;
    e.value = mean;
    e.standard_error = std::sqrt(var / n);
    return e;
}

}  // namespace oct
