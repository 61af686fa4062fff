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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "oct/errors.hpp"
#include "oct/fields.hpp"
#include "oct/mat8.hpp"
#include "oct/octonion.hpp"
#include "oct/rng.hpp"

using namespace oct;

namespace {

Octonion random_octonion(SplitMix64& rng, double lo = -1.0, double hi = 1.0) {
    Octonion z;
    for (int i = 0; i < 8; ++i) z.x[i] = rng.uniform(lo, hi);
    return z;
}

double max_abs_diff(const Octonion& a, const Octonion& b) {
    double m = 0.0;
    for (int i = 0; i < 8; ++i) m = std::max(m, std::abs(a.x[i] - b.x[i]));
    return m;
}

double max_abs_diff(const Mat8& a, const Mat8& b) {
    double m = 0.0;
    for (int i = 0; i < 64; ++i) m = std::max(m, std::abs(a.a[i] - b.a[i]));
    return m;
}

const Octonion kHempflingZero{1, 1, 1, 1, 1, 1, 1, 1};

// Enumerates all multi-indices over seven directions with total degree <= 3.
std::vector<MultiIndex> indices_up_to_degree_three() {
    std::vector<MultiIndex> out;
    out.push_back(MultiIndex{});
    for (int i = 1; i <= 7; ++i)
        for (int j = i; j <= 8; ++j)
            for (int k = j; k <= 8; ++k) {
                // j == 8 or k == 8 means "no further factor".
                MultiIndex n;
                n.n[i - 1] += 1;
                if (j <= 7) n.n[j - 1] += 1;
                if (k <= 7 && j <= 7) n.n[k - 1] += 1;
                out.push_back(n);
            }
    return out;
}

}  // namespace

TEST_CASE("fueter variables and low-degree symmetrized polynomials") {
    SplitMix64 rng(21);
    for (int t = 0; t < 50; ++t) {
        const Octonion z = random_octonion(rng);

        // Z_i(z) = x_i - x_0 e_i componentwise.
        for (int i = 1; i <= 7; ++i) {
            Octonion want;
            want.x[0] = z.x[i];
            want.x[i] = -z.x[0];
            CHECK(max_abs_diff(fueter_Z(i, z), want) == 0.0);
        }

        // Degree-zero polynomial is the constant 1.
        CHECK(max_abs_diff(fueter_V(MultiIndex{}, z), Octonion(1.0)) == 0.0);

        // Pure power: V_{2 tau_1} = Z_1 Z_1.
        MultiIndex two1;
        two1.n[0] = 2;
        const Octonion z1 = fueter_Z(1, z);
        CHECK(max_abs_diff(fueter_V(two1, z), z1 * z1) < 1e-14);

        // Mixed pair: V_{tau_1 + tau_2} = (Z_1 Z_2 + Z_2 Z_1) / 2.
        MultiIndex mix;
        mix.n[0] = 1;
        mix.n[1] = 1;
        const Octonion z2 = fueter_Z(2, z);
        CHECK(max_abs_diff(fueter_V(mix, z), (z1 * z2 + z2 * z1) * 0.5) <
              1e-14);
    }
}

TEST_CASE("symmetrized polynomials are two-sided monogenic through degree 3") {
    const std::vector<MultiIndex> all = indices_up_to_degree_three();
    // 1 + 7 + 28 + 84 distinguishable multi-indices.
    CHECK(all.size() == 120);

    SplitMix64 rng(22);
    for (const MultiIndex& n : all) {
        OctonionField f;
        f.evaluate = [n](const Octonion& z) { return fueter_V(n, z); };
        for (int t = 0; t < 2; ++t) {
            const Octonion z = random_octonion(rng);
            CHECK(norm(cr_residual(f, z, Side::left)) < 1e-7);
            CHECK(norm(cr_residual(f, z, Side::right)) < 1e-7);
        }
    }
}

TEST_CASE("symmetrized polynomial Jacobians match finite differences") {
    SplitMix64 rng(23);
    std::vector<MultiIndex> probes;
    {
        MultiIndex a;
        a.n[0] = 2;
        probes.push_back(a);
        MultiIndex b;
        b.n[1] = 1;
        b.n[4] = 2;
        probes.push_back(b);
        MultiIndex c;
        c.n[0] = 1;
        c.n[2] = 1;
        c.n[6] = 1;
        probes.push_back(c);
    }
    for (const MultiIndex& n : probes) {
        for (int t = 0; t < 3; ++t) {
            const Octonion z = random_octonion(rng);
            const Mat8 analytic = fueter_V_jacobian(n, z);
            const Mat8 fd = fd_jacobian(
                [n](const Octonion& w) { return fueter_V(n, w); }, z, 1e-5);
            CHECK(max_abs_diff(analytic, fd) < 1e-8);
        }
    }
}

TEST_CASE("left-module structure: right unit factors break one-sided regularity") {
    SplitMix64 rng(24);

    // Parent field x_1 - x_2 e_4, realized as Z_1 - Z_2 * e_4: annihilated by
    // the left operator but not the right one.
    FieldBuilder parent_builder;
    parent_builder.add_term(1.0, MultiIndex::tau(1));
    parent_builder.add_term(-1.0, MultiIndex::tau(2), Octonion::e(4));
    const OctonionField parent = parent_builder.build("parent");

    // The same combination right-multiplied by e_3 loses regularity on both
    // sides: left and right residuals become +/- 2 e_5.
    FieldBuilder child_builder;
    child_builder.add_term(1.0, MultiIndex::tau(1));
    child_builder.add_term(-1.0, MultiIndex::tau(2), Octonion::e(4));
    child_builder.right_multiply(Octonion::e(3));
    const OctonionField child = child_builder.build("child");

    const OctonionField catalog = catalog_get("module_counterexample", {});
    const Octonion two_e5 = Octonion::e(5) * 2.0;

    for (int t = 0; t < 20; ++t) {
        const Octonion z = random_octonion(rng, -2.0, 2.0);

        // The e_2 e_4 = e_1 cancellation collapses the parent to x_1 - x_2 e_4.
        Octonion want;
        want.x[0] = z.x[1];
        want.x[4] = -z.x[2];
        CHECK(max_abs_diff(parent.evaluate(z), want) < 1e-14);

        CHECK(norm(cr_residual(parent, z, Side::left)) < 1e-8);
        CHECK(max_abs_diff(cr_residual(parent, z, Side::right),
                           Octonion::e(1) * 2.0) < 1e-6);

        CHECK(max_abs_diff(child.evaluate(z), catalog.evaluate(z)) < 1e-14);
        CHECK(max_abs_diff(cr_residual(child, z, Side::left), two_e5) < 1e-6);
        CHECK(max_abs_diff(cr_residual(child, z, Side::right), -two_e5) <
              1e-6);
    }
}

TEST_CASE("degree-six product field: zero location and Jacobian determinant") {
    const OctonionField f = catalog_get("hempfling", {});
    CHECK(norm(f.evaluate(kHempflingZero)) < 1e-12);

    const double det_analytic = determinant(jacobian(f, kHempflingZero));
    CHECK(det_analytic == doctest::Approx(7.0).epsilon(1e-12));

    const Mat8 fd = fd_jacobian(f.evaluate, kHempflingZero, 1e-5);
    CHECK(determinant(fd) == doctest::Approx(7.0).epsilon(1e-4));
}

TEST_CASE("variety fields vanish exactly where advertised") {
    const OctonionField f = catalog_get("circle_variety", {});

    // Unit circle in the (x_1, x_2) plane.
    for (int t = 0; t < 16; ++t) {
        const double phi = 2.0 * M_PI * t / 16.0;
        Octonion z;
        z.x[1] = std::cos(phi);
        z.x[2] = std::sin(phi);
        CHECK(norm(f.evaluate(z)) < 1e-14);
    }

    // Two isolated real-axis zeroes at x_0 = (5 +/- sqrt(17)) / 4.
    for (const double sign : {+1.0, -1.0}) {
        Octonion z;
        z.x[0] = (5.0 + sign * std::sqrt(17.0)) / 4.0;
        CHECK(norm(f.evaluate(z)) < 1e-14);
    }

    // circle_variety is the k=2, R=1 member of the sphere family.
    const OctonionField g = catalog_get("sphere_variety", {2.0, 1.0});
    SplitMix64 rng(25);
    for (int t = 0; t < 20; ++t) {
        const Octonion z = random_octonion(rng, -2.0, 2.0);
        CHECK(max_abs_diff(f.evaluate(z), g.evaluate(z)) == 0.0);
    }
}

TEST_CASE("catalog regularity claims hold at random points") {
    struct Probe {
        std::string name;
        std::vector<double> params;
    };
    const std::vector<Probe> probes = {
        {"sum_squares", {3.0}},
        {"sum_squares", {7.0}},
        {"hempfling", {}},
        {"circle_variety", {}},
        {"sphere_variety", {4.0, 1.5}},
        {"module_counterexample", {}},
        {"identity", {}},
        {"constant", {2.5}},
    };

    SplitMix64 rng(26);
    for (const Probe& p : probes) {
        const OctonionField f = catalog_get(p.name, p.params);
        double worst_left = 0.0, worst_right = 0.0;
        for (int t = 0; t < 100; ++t) {
            const Octonion z = random_octonion(rng, -2.0, 2.0);
            const double scale = std::max(1.0, norm(f.evaluate(z)));
            worst_left = std::max(
                worst_left, norm(cr_residual(f, z, Side::left)) / scale);
            worst_right = std::max(
                worst_right, norm(cr_residual(f, z, Side::right)) / scale);
        }
        const bool left_ok = worst_left < 1e-6;
        const bool right_ok = worst_right < 1e-6;
        INFO(f.name, ": left ", worst_left, " right ", worst_right);
        switch (f.regularity_claim) {
            case Regularity::both:
                CHECK(left_ok);
                CHECK(right_ok);
                break;
            case Regularity::left:
                CHECK(left_ok);
                CHECK_FALSE(right_ok);
                break;
            case Regularity::right:
                CHECK(right_ok);
                CHECK_FALSE(left_ok);
                break;
            case Regularity::none:
                CHECK_FALSE(left_ok);
                CHECK_FALSE(right_ok);
                break;
        }
    }
}

TEST_CASE("analytic Jacobians agree with finite differences") {
    struct Probe {
        std::string name;
        std::vector<double> params;
    };
    const std::vector<Probe> probes = {
        {"sum_squares", {5.0}},
        {"hempfling", {}},
        {"circle_variety", {}},
        {"sphere_variety", {3.0, 2.0}},
        {"module_counterexample", {}},
        {"identity", {}},
    };

    SplitMix64 rng(27);
    for (const Probe& p : probes) {
        const OctonionField f = catalog_get(p.name, p.params);
        REQUIRE(bool(f.jacobian_analytic));
        for (int t = 0; t < 5; ++t) {
            const Octonion z = random_octonion(rng);
            const Mat8 analytic = f.jacobian_analytic(z);
            const Mat8 fd = fd_jacobian(f.evaluate, z, 1e-5);
            INFO(f.name);
            CHECK(max_abs_diff(analytic, fd) < 1e-7);
        }
    }
}

TEST_CASE("catalog rejects unknown names and bad parameters") {
    CHECK_THROWS_AS(catalog_get("bogus", {}), usage_error);
    try {
        catalog_get("bogus", {1.0});
    } catch (const usage_error& e) {
        const std::string msg = e.what();
        for (const std::string& name : catalog_names())
            CHECK(msg.find(name) != std::string::npos);
    }
    CHECK_THROWS_AS(catalog_get("sum_squares", {}), usage_error);
    CHECK_THROWS_AS(catalog_get("sum_squares", {0.0}), usage_error);
    CHECK_THROWS_AS(catalog_get("sum_squares", {8.0}), usage_error);
    CHECK_THROWS_AS(catalog_get("sum_squares", {2.5}), usage_error);
    CHECK_THROWS_AS(catalog_get("sphere_variety", {1.0, 1.0}), usage_error);
    CHECK_THROWS_AS(catalog_get("sphere_variety", {2.0, 0.0}), usage_error);
    CHECK_THROWS_AS(catalog_get("sphere_variety", {2.0}), usage_error);
    CHECK_THROWS_AS(catalog_get("hempfling", {1.0}), usage_error);
    CHECK_THROWS_AS(catalog_get("constant", {1.0, 2.0}), usage_error);
}

TEST_CASE("default finite-difference step scales with the point") {
    const double eps3 = std::cbrt(std::numeric_limits<double>::epsilon());
    CHECK(default_cr_step(Octonion{}) == doctest::Approx(eps3));
    CHECK(default_cr_step(Octonion(10.0)) == doctest::Approx(10.0 * eps3));
}

TEST_CASE("matrix helpers: adjugate, solver, multiplication operators") {
    SplitMix64 rng(28);

    // Known determinant: diagonal matrix.
    Mat8 diag;
    double want_det = 1.0;
    for (int i = 0; i < 8; ++i) {
        diag(i, i) = 1.0 + i;
        want_det *= 1.0 + i;
    }
    CHECK(determinant(diag) == doctest::Approx(want_det).epsilon(1e-13));

    for (int t = 0; t < 10; ++t) {
        Mat8 m;
        for (int i = 0; i < 64; ++i) m.a[i] = rng.uniform(-1.0, 1.0);
        const double det = determinant(m);

        // adjugate(M) * M = det(M) * I.
        const Mat8 prod = multiply(adjugate(m), m);
        Mat8 want = Mat8::identity();
        want *= det;
        CHECK(max_abs_diff(prod, want) < 1e-12);

        // The cofactor matrix is the transposed adjugate.
        CHECK(max_abs_diff(cofactor_matrix(m), transpose(adjugate(m))) <
              1e-13);

        // Solver round-trip.
        const Octonion xe = random_octonion(rng);
        const Octonion b = apply(m, xe);
        Octonion xs;
        REQUIRE(solve_linear(m, b, xs));
        CHECK(max_abs_diff(xs, xe) < 1e-9);
    }

    // Singular matrix: solver reports failure.
    Mat8 singular;
    for (int j = 0; j < 8; ++j) {
        singular(0, j) = 1.0;
        singular(1, j) = 2.0;  // row 1 = 2 * row 0
    }
    Octonion dummy;
    CHECK_FALSE(solve_linear(singular, Octonion(1.0), dummy));

    // Multiplication operators realize the algebra product.
    for (int t = 0; t < 20; ++t) {
        const Octonion u = random_octonion(rng);
        const Octonion v = random_octonion(rng);
        CHECK(max_abs_diff(apply(left_mult_matrix(u), v), u * v) < 1e-14);
        CHECK(max_abs_diff(apply(right_mult_matrix(u), v), v * u) < 1e-14);
    }
}
