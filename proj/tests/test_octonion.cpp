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

#include "oct/errors.hpp"
#include "oct/octonion.hpp"
#include "oct/rng.hpp"

using namespace oct;

namespace {

Octonion random_octonion(SplitMix64& rng, double lo = -2.0, double hi = 2.0) {
    Octonion z;
    for (int i = 0; i < 8; ++i) z.x[i] = rng.uniform(lo, hi);
    return z;
}

double max_abs_diff(const Octonion& a, const Octonion& b) {
    double m = 0.0;
    for (int i = 0; i < 8; ++i) m = std::max(m, std::abs(a.x[i] - b.x[i]));
    return m;
}

}  // namespace

TEST_CASE("self verification covers the full 8x8 table") {
    CHECK(verify_multiplication_table() == 64);
}

TEST_CASE("authoritative table agrees with the reference transcription") {
    for (int i = 1; i <= 7; ++i) {
        for (int j = 1; j <= 7; ++j) {
            const TableEntry got = table_entry(i, j);
            const TableEntry ref = reference_table_entry(i, j);
            CHECK(got.sign == ref.sign);
            CHECK(got.index == ref.index);
            // The product function realizes exactly this entry.
            const Octonion prod = Octonion::e(i) * Octonion::e(j);
            Octonion expect = Octonion::e(ref.index) * double(ref.sign);
            CHECK(max_abs_diff(prod, expect) == 0.0);
        }
    }
}

TEST_CASE("defining relations of the basis") {
    const Octonion e1 = Octonion::e(1), e2 = Octonion::e(2),
                   e3 = Octonion::e(3);
    CHECK(e1 * e2 == Octonion::e(4));
    CHECK(e1 * e3 == Octonion::e(5));
    CHECK(e2 * e3 == Octonion::e(6));
    CHECK((e1 * e2) * e3 == Octonion::e(7));
    for (int i = 1; i <= 7; ++i) {
        CHECK(Octonion::e(i) * Octonion::e(i) == -Octonion(1.0));
        for (int j = 1; j <= 7; ++j) {
            if (i == j) continue;
            CHECK(Octonion::e(i) * Octonion::e(j) ==
                  -(Octonion::e(j) * Octonion::e(i)));
        }
        // The real unit is neutral on both sides.
        CHECK(Octonion(1.0) * Octonion::e(i) == Octonion::e(i));
        CHECK(Octonion::e(i) * Octonion(1.0) == Octonion::e(i));
    }
}

TEST_CASE("worked product and inverse examples") {
    const Octonion a = Octonion(1.0) + Octonion::e(1);
    const Octonion b = Octonion(1.0) + Octonion::e(2);
    const Octonion ab = a * b;
    CHECK(ab == Octonion(1, 1, 1, 0, 1, 0, 0, 0));
    CHECK(norm(ab) == doctest::Approx(2.0).epsilon(1e-15));

    CHECK(inverse(Octonion::e(1)) == -Octonion::e(1));
    CHECK(inverse(Octonion(2.0)) == Octonion(0.5));
    const Octonion inv = inverse(a);
    CHECK(max_abs_diff(inv, (Octonion(1.0) - Octonion::e(1)) / 2.0) < 1e-15);
    CHECK_THROWS_AS(inverse(Octonion{}), usage_error);
}

TEST_CASE("associator examples") {
    const Octonion e1 = Octonion::e(1), e2 = Octonion::e(2),
                   e3 = Octonion::e(3);
    CHECK(associator(e1, e2, e3) == Octonion::e(7) * 2.0);

    SplitMix64 rng(11);
    for (int t = 0; t < 100; ++t) {
        const Octonion a = random_octonion(rng);
        const Octonion b = random_octonion(rng);
        // Alternativity: the associator vanishes with a repeated argument.
        CHECK(max_abs_diff(associator(a, a, b), Octonion{}) < 1e-13);
        CHECK(max_abs_diff(associator(a, b, b), Octonion{}) < 1e-13);
        CHECK(max_abs_diff(associator(Octonion(1.0), a, b), Octonion{}) == 0.0);
    }
}

TEST_CASE("conjugation and scalar product") {
    SplitMix64 rng(12);
    for (int t = 0; t < 200; ++t) {
        const Octonion a = random_octonion(rng);
        const Octonion b = random_octonion(rng);
        // Anti-automorphism.
        CHECK(max_abs_diff(conjugate(a * b), conjugate(b) * conjugate(a)) <
              1e-13);
        // <a, b> = Re(a * conj(b)).
        CHECK(scalar_product(a, b) ==
              doctest::Approx((a * conjugate(b)).real()).epsilon(1e-12));
        CHECK(norm_sq(a) == doctest::Approx(scalar_product(a, a)).epsilon(1e-14));
    }
}

TEST_CASE("algebraic identities on random tuples") {
    SplitMix64 rng(13);
    for (int t = 0; t < 2000; ++t) {
        const Octonion a = random_octonion(rng);
        const Octonion b = random_octonion(rng);
        const Octonion c = random_octonion(rng);
        const double na = norm(a), nb = norm(b), nc = norm(c);

        // Moufang: (ab)(ca) = a((bc)a).
        CHECK(max_abs_diff((a * b) * (c * a), a * ((b * c) * a)) <=
              1e-12 * na * nb * nc * na);
        // Flexibility: (ab)a = a(ba).
        CHECK(max_abs_diff((a * b) * a, a * (b * a)) <= 1e-12 * na * na * nb);
        // Norm composition.
        CHECK(std::abs(norm(a * b) - na * nb) <= 1e-12 * na * nb);
        // (a conj(b)) b = a (conj(b) b).
        CHECK(max_abs_diff((a * conjugate(b)) * b, a * (conjugate(b) * b)) <=
              1e-12 * na * nb * nb);
        // Re{b (conj(a) a) c} = Re{(b conj(a)) (a c)}.
        CHECK(std::abs((b * ((conjugate(a) * a) * c)).real() -
                       ((b * conjugate(a)) * (a * c)).real()) <=
              1e-12 * na * na * nb * nc);
        // Two-sided inverse.
        if (na > 1e-6) {
            CHECK(max_abs_diff(a * inverse(a), Octonion(1.0)) <= 1e-12);
            CHECK(max_abs_diff(inverse(a) * a, Octonion(1.0)) <= 1e-12);
        }
    }
}
