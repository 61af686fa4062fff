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

#include "oct/degree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "oct/errors.hpp"
#include "oct/mat8.hpp"
#include "oct/reduce.hpp"
#include "oct/rng.hpp"

namespace oct {
namespace {

constexpr double kPi = std::numbers::pi;

Octonion kernel_unchecked(const Octonion& v) {
    const double n2 = norm_sq(v);
    const double n8 = n2 * n2 * n2 * n2;
    return conjugate(v) / n8;
}

struct OctAccum {
    Octonion sum{};
    std::size_t count = 0;
    OrientationTally tally;
    void combine(const OctAccum& o) {
        sum += o.sum;
        count += o.count;
        tally.combine(o.tally);
    }
};

DegreeResult finish(const Octonion& sum, std::size_t nodes,
                    const char* method) {
    DegreeResult r;
    r.raw = degree_normalization() * sum;
    r.scalar = r.raw.x[0];
    r.rounded = std::llround(r.scalar);
    r.residual = norm(r.raw - Octonion(static_cast<double>(r.rounded)));
    r.node_count = nodes;
    r.method = method;
    return r;
}

// Boundary order integral in pullback form: (3/pi^4) * integral over the
// surface of q0(f(z) - a) * (cof(Jf)(z) applied to the surface element).
// Shared by order_isolated, order_variety, the argument-principle sides,
// the Rouche sums and the Hurwitz order sum.
DegreeResult pullback_order(const OctonionField& f, const Octonion& a,
                            const ParamSurface& surface,
                            const QuadratureSpec& spec, const Tolerances& tol,
                            unsigned threads) {
    if (threads == 0) threads = default_thread_count();
    const QuadraturePlan plan(surface, spec);
    auto acc = chunked_reduce<OctAccum>(
        plan.size(),
        [&](std::size_t i, OctAccum& acc) {
            const SurfaceSample s = plan.at(i);
            const Octonion v = f.evaluate(s.point) - a;
            if (norm(v) < tol.zero_floor)
                throw contract_violation(
                    "an a-point of the field lies on the integration surface");
            const Mat8 cof = cofactor_matrix(jacobian(f, s.point));
            const Octonion pulled = apply(cof, s.weighted_normal);
            acc.sum += cauchy_kernel(v, tol.kernel_floor) * pulled;
            acc.count += 1;
            acc.tally.add(s);
        },
        threads);
    acc.tally.check();
    return finish(acc.sum, acc.count, "pullback");
}

// Push one start into the ball B(center, radius): gaussian direction from
// Box-Muller, radius u^(1/8) for a uniform volume density.
Octonion ball_point(SplitMix64& rng, const Octonion& center, double radius) {
    double g[8];
    for (int i = 0; i < 8; i += 2) {
        double u1 = rng.uniform();
        if (u1 <= 0.0) u1 = 0x1p-53;
        const double u2 = rng.uniform();
        const double m = std::sqrt(-2.0 * std::log(u1));
        g[i] = m * std::cos(2.0 * kPi * u2);
        g[i + 1] = m * std::sin(2.0 * kPi * u2);
    }
    double len = 0.0;
    for (double v : g) len += v * v;
    len = std::sqrt(len);
    if (len == 0.0) return center;
    const double r = radius * std::pow(rng.uniform(), 1.0 / 8.0);
    Octonion out = center;
    for (int i = 0; i < 8; ++i) out.x[i] += r * g[i] / len;
    return out;
}

// Deterministic sample points of a core manifold, for the approximate
// containment / disjointness tests of the argument principle.
std::vector<Octonion> core_samples(const CoreManifold& core, int n) {
    std::vector<Octonion> out;
    switch (core.kind) {
        case CoreManifold::Kind::point:
            out.push_back(core.a);
            break;
        case CoreManifold::Kind::segment:
            for (int j = 0; j < n; ++j) {
                const double t = n == 1 ? 0.0 : static_cast<double>(j) / (n - 1);
                out.push_back(core.a + t * (core.b - core.a));
            }
            break;
        case CoreManifold::Kind::circle:
            for (int j = 0; j < n; ++j) {
                const double t = 2.0 * kPi * j / n;
                Octonion p;
                p.x[core.axis1] = core.radius * std::cos(t);
                p.x[core.axis2] = core.radius * std::sin(t);
                out.push_back(p);
            }
            break;
        case CoreManifold::Kind::k_sphere: {
            SplitMix64 rng(0xC0FFEE);
            for (int j = 0; j < n; ++j) {
                Octonion dir = ball_point(rng, Octonion{}, 1.0);
                for (int i = core.k + 1; i < 8; ++i) dir.x[i] = 0.0;
                dir.x[0] = 0.0;
                const double len = norm(dir);
                if (len == 0.0) continue;
                out.push_back((core.radius / len) * dir);
            }
            break;
        }
    }
    return out;
}

std::vector<Octonion> zero_samples(const ZeroSpec& z, int n) {
    if (z.kind == ZeroSpec::Kind::isolated_point) return {z.location};
    return core_samples(z.core, n);
}

QuadratureSpec spec_for_zero(const ZeroSpec& z, const QuadratureSpec& base) {
    if (!z.nodes_override) return base;
    QuadratureSpec s = base;
    s.nodes_per_dim = *z.nodes_override;
    return s;
}

}  // namespace

double degree_normalization() {
    // Reciprocal of the unit 7-sphere area pi^4 / 3.
    const double pi2 = kPi * kPi;
    return 3.0 / (pi2 * pi2);
}

Octonion cauchy_kernel(const Octonion& z, double kernel_floor) {
    if (norm(z) < kernel_floor)
        throw contract_violation("kernel argument inside the singular floor");
    return kernel_unchecked(z);
}

const char* to_string(OrderMethod m) {
    return m == OrderMethod::pullback ? "pullback" : "image";
}

DegreeResult winding_number(const ParamSurface& surface, const Octonion& z,
                            Side side, const QuadratureSpec& spec,
                            const Tolerances& tol, unsigned threads) {
    if (threads == 0) threads = default_thread_count();
    const QuadraturePlan plan(surface, spec);
    auto acc = chunked_reduce<OctAccum>(
        plan.size(),
        [&](std::size_t i, OctAccum& acc) {
            const SurfaceSample s = plan.at(i);
            const Octonion v = s.point - z;
            if (norm(v) < tol.kernel_floor)
                throw contract_violation(
                    "evaluation point lies on the integration surface");
            const Octonion q = kernel_unchecked(v);
            acc.sum += side == Side::left ? q * s.weighted_normal
                                          : s.weighted_normal * q;
            acc.count += 1;
            acc.tally.add(s);
        },
        threads);
    acc.tally.check();
    return finish(acc.sum, acc.count,
                  side == Side::left ? "winding-left" : "winding-right");
}

DegreeResult order_isolated(const OctonionField& f, const Octonion& c,
                            const Octonion& a, double eps,
                            const QuadratureSpec& spec, OrderMethod method,
                            const Tolerances& tol, unsigned threads) {
    if (!(eps > 0.0)) throw usage_error("enclosure radius must be positive");
    const ParamSurface surface = ParamSurface::sphere(c, eps);
    if (method == OrderMethod::pullback)
        return pullback_order(f, a, surface, spec, tol, threads);

    // Image form: push nodes and tangents through f, then integrate the
    // plain winding integrand over the image surface. The outwardness sign
    // of the base tangent minors transfers to the pushed element.
    if (threads == 0) threads = default_thread_count();
    const QuadraturePlan plan(surface, spec);
    auto acc = chunked_reduce<OctAccum>(
        plan.size(),
        [&](std::size_t i, OctAccum& acc) {
            Tangents t;
            const SurfaceSample s = plan.at(i, &t);
            const Octonion v = f.evaluate(s.point) - a;
            if (norm(v) < tol.zero_floor)
                throw contract_violation(
                    "an a-point of the field lies on the integration surface");
            const Mat8 jf = jacobian(f, s.point);
            Tangents pushed;
            for (int r = 0; r < 8; ++r) {
                for (int col = 0; col < 7; ++col) {
                    double sum = 0.0;
                    for (int k = 0; k < 8; ++k) sum += jf(r, k) * t(k, col);
                    pushed(r, col) = sum;
                }
            }
            const Octonion elem = surface_element(pushed);
            acc.sum += kernel_unchecked(v) *
                       ((s.orientation_sign * s.weight) * elem);
            acc.count += 1;
            acc.tally.add(s);
        },
        threads);
    acc.tally.check();
    return finish(acc.sum, acc.count, "image");
}

DegreeResult order_variety(const OctonionField& f, const CoreManifold& core,
                           double eps, const QuadratureSpec& spec,
                           const Tolerances& tol, unsigned threads) {
    const ParamSurface surface = ParamSurface::tube(core, eps);
    return pullback_order(f, Octonion{}, surface, spec, tol, threads);
}

ZeroSpec ZeroSpec::isolated(const Octonion& location, double eps) {
    ZeroSpec z;
    z.kind = Kind::isolated_point;
    z.location = location;
    z.eps = eps;
    return z;
}

ZeroSpec ZeroSpec::variety(const CoreManifold& core, double eps) {
    ZeroSpec z;
    z.kind = Kind::variety;
    z.core = core;
    z.eps = eps;
    return z;
}

ArgumentReport argument_principle(const OctonionField& f,
                                  const ParamSurface& boundary,
                                  const std::vector<ZeroSpec>& zeros,
                                  const Octonion& a, const QuadratureSpec& spec,
                                  const Tolerances& tol, unsigned threads) {
    constexpr int kCoreSamples = 256;

    // Containment: every enclosure must stay strictly inside the region the
    // boundary bounds. The boundary region is { z : dist(z, core) < eps },
    // and dist is 1-Lipschitz, so dist(y, core) + enclosure_eps < eps over
    // the (sampled) enclosure core is sufficient.
    const CoreManifold& bcore = boundary.core();
    const double beps = boundary.eps();
    for (const ZeroSpec& z : zeros) {
        for (const Octonion& y : zero_samples(z, kCoreSamples)) {
            if (bcore.distance(y) + z.eps >= beps)
                throw contract_violation(
                    "zero enclosure reaches or crosses the boundary");
        }
    }
    // Pairwise disjointness of the enclosures (sampled cores).
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        const auto si = zero_samples(zeros[i], kCoreSamples);
        for (std::size_t j = i + 1; j < zeros.size(); ++j) {
            const auto sj = zero_samples(zeros[j], kCoreSamples);
            for (const Octonion& yi : si) {
                for (const Octonion& yj : sj) {
                    if (norm(yi - yj) <= zeros[i].eps + zeros[j].eps)
                        throw contract_violation(
                            "zero enclosures overlap");
                }
            }
        }
    }

    ArgumentReport rep;
    rep.lhs = pullback_order(f, a, boundary, spec, tol, threads);
    for (const ZeroSpec& z : zeros) {
        const QuadratureSpec zspec = spec_for_zero(z, spec);
        DegreeResult term;
        if (z.kind == ZeroSpec::Kind::isolated_point) {
            term = order_isolated(f, z.location, a, z.eps, zspec,
                                  OrderMethod::pullback, tol, threads);
        } else {
            // Variety enclosures integrate the shifted field so the same
            // tube-order form applies to a-points.
            OctonionField shifted = f;
            const Octonion offset = a;
            const auto base_eval = f.evaluate;
            shifted.evaluate = [base_eval, offset](const Octonion& z2) {
                return base_eval(z2) - offset;
            };
            term = order_variety(shifted, z.core, z.eps, zspec, tol, threads);
        }
        rep.rhs_terms.push_back(term);
        rep.rhs_sum += term.scalar;
        rep.rhs_rounded_sum += term.rounded;
    }
    rep.delta = norm(rep.lhs.raw - Octonion(rep.rhs_sum));
    return rep;
}

RoucheReport rouche_check(const OctonionField& f, const OctonionField& g,
                          const ParamSurface& boundary,
                          const QuadratureSpec& spec, const Tolerances& tol,
                          unsigned threads) {
    if (threads == 0) threads = default_thread_count();
    const QuadraturePlan plan(boundary, spec);

    struct ScanAccum {
        double min_f = std::numeric_limits<double>::infinity();
        double max_diff = 0.0;
        double min_margin = std::numeric_limits<double>::infinity();
        Octonion argmin{};
        void combine(const ScanAccum& o) {
            min_f = std::min(min_f, o.min_f);
            max_diff = std::max(max_diff, o.max_diff);
            if (o.min_margin < min_margin) {  // strict: earlier chunk wins ties
                min_margin = o.min_margin;
                argmin = o.argmin;
            }
        }
    };
    auto scan = chunked_reduce<ScanAccum>(
        plan.size(),
        [&](std::size_t i, ScanAccum& acc) {
            const Octonion z = plan.at(i).point;
            const double nf = norm(f.evaluate(z));
            const double nd = norm(f.evaluate(z) - g.evaluate(z));
            acc.min_f = std::min(acc.min_f, nf);
            acc.max_diff = std::max(acc.max_diff, nd);
            if (nf - nd < acc.min_margin) {
                acc.min_margin = nf - nd;
                acc.argmin = z;
            }
        },
        threads);

    RoucheReport rep;
    rep.min_f = scan.min_f;
    rep.max_diff = scan.max_diff;
    rep.margin = scan.min_f - scan.max_diff;
    rep.hypothesis_ok = scan.min_margin > 0.0;
    if (!rep.hypothesis_ok) {
        rep.violating_node = scan.argmin;
        return rep;
    }
    rep.sum_f = pullback_order(f, Octonion{}, boundary, spec, tol, threads);
    rep.sum_g = pullback_order(g, Octonion{}, boundary, spec, tol, threads);
    rep.sums_equal = rep.sum_f->rounded == rep.sum_g->rounded &&
                     rep.sum_f->integer_ok(tol) && rep.sum_g->integer_ok(tol);
    return rep;
}

HurwitzReport hurwitz_check(
    const std::function<OctonionField(std::int64_t)>& family,
    std::int64_t n_max, const Octonion& center, double radius,
    int grid_samples, std::uint64_t seed, const QuadratureSpec& spec,
    const Tolerances& tol, unsigned threads) {
    if (n_max < 1) throw usage_error("the family index bound must be >= 1");
    if (grid_samples < 1) throw usage_error("need at least one grid sample");
    if (!(radius > 0.0)) throw usage_error("region radius must be positive");

    SplitMix64 rng(seed);
    std::vector<Octonion> grid;
    grid.reserve(static_cast<std::size_t>(grid_samples));
    for (int i = 0; i < grid_samples; ++i)
        grid.push_back(ball_point(rng, center, radius));

    HurwitzReport rep;

    // Spot-check the nonvanishing hypothesis along a geometric ladder of
    // indices. Literal zeros are violations; a member that merely becomes
    // uniformly tiny is the signature of a vanishing limit, which is the
    // limit classifier's job, not a hypothesis failure.
    std::vector<std::int64_t> ladder;
    for (std::int64_t n = 1; n < n_max; n *= 2) ladder.push_back(n);
    ladder.push_back(n_max);
    for (std::int64_t n : ladder) {
        const OctonionField fn = family(n);
        for (const Octonion& z : grid) {
            if (norm(fn.evaluate(z)) == 0.0) {
                rep.branch = "hypothesis_fails";
                rep.violating_point = z;
                rep.violating_index = n;
                return rep;
            }
        }
    }

    const OctonionField limit = family(n_max);
    double gmax = 0.0, gmin = std::numeric_limits<double>::infinity();
    for (const Octonion& z : grid) {
        const double v = norm(limit.evaluate(z));
        gmax = std::max(gmax, v);
        gmin = std::min(gmin, v);
    }
    rep.grid_max = gmax;
    rep.grid_min = gmin;

    if (gmax < tol.zero_floor) {
        rep.branch = "identically_zero";
        return rep;
    }

    const ParamSurface boundary = ParamSurface::sphere(center, radius);
    rep.order_sum =
        pullback_order(limit, Octonion{}, boundary, spec, tol, threads);
    if (rep.order_sum->rounded == 0 && rep.order_sum->integer_ok(tol)) {
        rep.branch = "order_sum_zero";
    } else {
        // A nonzero interior order contradicts a nonvanishing limit: some
        // hypothesis (convergence or nonvanishing) failed off-grid.
        rep.branch = "hypothesis_fails";
        rep.violating_index = n_max;
    }
    return rep;
}

namespace {

struct NewtonOutcome {
    bool converged = false;
    Octonion x{};
};

NewtonOutcome newton_solve(const OctonionField& f, const Octonion& a,
                           Octonion x) {
    constexpr int kMaxIters = 200;
    constexpr int kMaxHalvings = 30;
    NewtonOutcome out;
    double rn = norm(f.evaluate(x) - a);
    for (int iter = 0; iter < kMaxIters; ++iter) {
        if (rn < 1e-12 * std::max(1.0, norm(a))) {
            out.converged = true;
            out.x = x;
            return out;
        }
        const Mat8 jf = jacobian(f, x);
        const Octonion r = f.evaluate(x) - a;
        Octonion delta;
        if (!solve_linear(jf, r, delta)) return out;  // singular step
        double lambda = 1.0;
        bool improved = false;
        for (int h = 0; h < kMaxHalvings; ++h) {
            Octonion cand = x;
            cand -= lambda * delta;
            const double cn = norm(f.evaluate(cand) - a);
            if (cn < rn) {
                x = cand;
                rn = cn;
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!improved) return out;
    }
    return out;
}

}  // namespace

OracleResult degree_oracle(const OctonionField& f, const Octonion& c,
                           double eps, const Octonion& a, int starts,
                           std::uint64_t seed, const Tolerances& tol,
                           double perturbation_radius, unsigned threads) {
    if (!(eps > 0.0)) throw usage_error("enclosure radius must be positive");
    if (starts < 1) throw usage_error("need at least one start");
    if (perturbation_radius <= 0.0) perturbation_radius = 0.1 * eps;

    constexpr double kDedup = 1e-6;
    constexpr double kRegularFloor = 1e-8;
    constexpr double kBoundaryMargin = 0.05;
    constexpr int kMaxPerturbations = 5;

    OracleResult res;
    res.effective_a = a;

    SplitMix64 rng(seed);
    for (int attempt = 0; attempt <= kMaxPerturbations; ++attempt) {
        res.preimages.clear();
        res.preimage_count = 0;
        res.nonconverged_starts = 0;
        res.degree = 0;
        bool critical = false;

        for (int s = 0; s < starts; ++s) {
            const Octonion x0 = ball_point(rng, c, 0.95 * eps);
            const NewtonOutcome n = newton_solve(f, res.effective_a, x0);
            if (!n.converged) {
                ++res.nonconverged_starts;
                continue;
            }
            const double d = norm(n.x - c);
            if (d >= (1.0 + kBoundaryMargin) * eps) continue;  // exterior root
            if (d > (1.0 - kBoundaryMargin) * eps)
                throw contract_violation(
                    "a preimage sits within the boundary margin of the "
                    "enclosure sphere");
            bool duplicate = false;
            for (const Octonion& p : res.preimages) {
                if (norm(p - n.x) < kDedup) {
                    duplicate = true;
                    break;
                }
            }
            if (duplicate) continue;
            const double det = determinant(jacobian(f, n.x));
            if (std::abs(det) <= kRegularFloor) {
                critical = true;
                break;
            }
            res.preimages.push_back(n.x);
            res.degree += det > 0.0 ? 1 : -1;
        }

        if (!critical) {
            res.preimage_count = static_cast<int>(res.preimages.size());
            break;
        }
        if (attempt == kMaxPerturbations) {
            res.conclusive = false;
            res.note = "target stayed a critical value after perturbation";
            return res;
        }
        // a hit a critical value: retry against a nearby random target.
        res.effective_a = ball_point(rng, a, perturbation_radius);
        res.perturbed = true;
    }

    if (res.preimage_count > 0) {
        res.conclusive = true;
        std::ostringstream os;
        os << "degree from " << res.preimage_count << " regular preimages";
        res.note = os.str();
        return res;
    }

    // Nothing converged into the region. Cross-check with a coarse boundary
    // integral before concluding the degree vanishes.
    try {
        const DegreeResult coarse =
            pullback_order(f, res.effective_a, ParamSurface::sphere(c, eps),
                           QuadratureSpec::tensor(4), tol, threads);
        if (std::abs(coarse.scalar) < 0.5) {
            res.conclusive = true;
            res.degree = 0;
            res.note = "no preimage found; coarse boundary winding agrees with 0";
        } else {
            res.conclusive = false;
            res.note = "no preimage found but coarse boundary winding is nonzero";
        }
    } catch (const contract_violation&) {
        res.conclusive = false;
        res.note = "no preimage found and the coarse boundary check hit a "
                   "singular node";
    }
    return res;
}

}  // namespace oct
