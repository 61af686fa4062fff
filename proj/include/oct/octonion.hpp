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

#ifndef OCT_OCTONION_HPP
#define OCT_OCTONION_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <iosfwd>

namespace oct {

// An octonion z = x0 + x1 e1 + ... + x7 e7 as eight double components.
// Values are immutable in spirit: every operation returns a new value and
// never aliases its inputs. The basis satisfies e4 = e1 e2, e5 = e1 e3,
// e6 = e2 e3, e7 = (e1 e2) e3, ei^2 = -1, and ei ej = -ej ei for i != j.
struct Octonion {
    std::array<double, 8> x{};

    constexpr Octonion() = default;
    constexpr explicit Octonion(double real) : x{real, 0, 0, 0, 0, 0, 0, 0} {}
    constexpr Octonion(double x0, double x1, double x2, double x3,
                       double x4, double x5, double x6, double x7)
        : x{x0, x1, x2, x3, x4, x5, x6, x7} {}

    double& operator[](std::size_t i) { return x[i]; }
    const double& operator[](std::size_t i) const { return x[i]; }

    // Basis unit e_i; e(0) is the real unit 1.
    static Octonion e(std::size_t i);

    double real() const { return x[0]; }

    Octonion& operator+=(const Octonion& r) {
        for (int i = 0; i < 8; ++i) x[i] += r.x[i];
        return *this;
    }
    Octonion& operator-=(const Octonion& r) {
        for (int i = 0; i < 8; ++i) x[i] -= r.x[i];
        return *this;
    }
    Octonion& operator*=(double s) {
        for (double& c : x) c *= s;
        return *this;
    }

    friend Octonion operator+(Octonion a, const Octonion& b) { return a += b; }
    friend Octonion operator-(Octonion a, const Octonion& b) { return a -= b; }
    friend Octonion operator-(const Octonion& a) {
        Octonion r;
        for (int i = 0; i < 8; ++i) r.x[i] = -a.x[i];
        return r;
    }
    friend Octonion operator*(Octonion a, double s) { return a *= s; }
    friend Octonion operator*(double s, Octonion a) { return a *= s; }
    friend Octonion operator/(Octonion a, double s) { return a *= (1.0 / s); }
    friend bool operator==(const Octonion& a, const Octonion& b) { return a.x == b.x; }
    friend bool operator!=(const Octonion& a, const Octonion& b) { return !(a == b); }
};

// Octonionic product per the multiplication table (see octonion.cpp).
Octonion multiply(const Octonion& a, const Octonion& b);
inline Octonion operator*(const Octonion& a, const Octonion& b) { return multiply(a, b); }

// Conjugation: fixes x0, negates x1..x7.
Octonion conjugate(const Octonion& a);

double norm_sq(const Octonion& a);
double norm(const Octonion& a);

// Euclidean scalar product sum a_i b_i = Re(a * conjugate(b)).
double scalar_product(const Octonion& a, const Octonion& b);

// Multiplicative inverse conjugate(a)/|a|^2. Throws usage_error on zero input.
Octonion inverse(const Octonion& a);

// Associator [a,b,c] = (ab)c - a(bc); the obstruction to associativity.
Octonion associator(const Octonion& a, const Octonion& b, const Octonion& c);

// Signed-index form of a single table entry: e_i * e_j = sign * e_index.
struct TableEntry {
    int sign;
    int index;
};

// Authoritative table used by multiply().
TableEntry table_entry(int i, int j);

// Independent transcription of the published 7x7 table (plus the unit row and
// column), kept separate from the constant that multiply() uses.
TableEntry reference_table_entry(int i, int j);

// Cross-check the authoritative table against the reference transcription and
// against the defining relations (unit element, ei^2 = -1, anticommutation,
// e4 = e1e2, e5 = e1e3, e6 = e2e3, e7 = (e1e2)e3). Throws internal_error on
// any mismatch; returns the number of entries checked.
int verify_multiplication_table();

std::ostream& operator<<(std::ostream& os, const Octonion& a);

}  // namespace oct

#endif  // OCT_OCTONION_HPP
