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

#include "oct/octonion.hpp"

#include <cstdlib>
#include <ostream>
#include <sstream>

#include "oct/errors.hpp"

namespace oct {
namespace {

// e_i * e_j = kSign[i][j] * e_{kIndex[i][j]}. This is the single authoritative
// multiplication table; all octonion arithmetic routes through it.
constexpr int kSign[8][8] = {
    {+1, +1, +1, +1, +1, +1, +1, +1},
    {+1, -1, +1, +1, -1, -1, -1, +1},
    {+1, -1, -1, +1, +1, +1, -1, -1},
    {+1, -1, -1, -1, -1, +1, +1, +1},
    {+1, +1, -1, +1, -1, -1, +1, -1},
    {+1, +1, -1, -1, +1, -1, -1, +1},
    {+1, +1, +1, -1, -1, +1, -1, -1},
    {+1, -1, +1, -1, +1, -1, +1, -1},
};

constexpr int kIndex[8][8] = {
    {0, 1, 2, 3, 4, 5, 6, 7},
    {1, 0, 4, 5, 2, 3, 7, 6},
    {2, 4, 0, 6, 1, 7, 3, 5},
    {3, 5, 6, 0, 7, 1, 2, 4},
    {4, 2, 1, 7, 0, 6, 5, 3},
    {5, 3, 7, 1, 6, 0, 4, 2},
    {6, 7, 3, 2, 5, 4, 0, 1},
    {7, 6, 5, 4, 3, 2, 1, 0},
};

// Independent transcription of the published table (imaginary block only),
// used solely to cross-check kSign/kIndex. Stored as signed indices, e.g.
// -4 means -e4; 0 never appears because ei * ei = -1 is stored as -8 here
// (sign -1, index 0) to keep the literal table readable.
struct SignedUnit {
    int sign;
    int index;
};

constexpr SignedUnit kReference[7][7] = {
    // e1 row:   e1       e2       e3       e4       e5       e6       e7
    {{-1, 0}, {+1, 4}, {+1, 5}, {-1, 2}, {-1, 3}, {-1, 7}, {+1, 6}},
    // e2 row
    {{-1, 4}, {-1, 0}, {+1, 6}, {+1, 1}, {+1, 7}, {-1, 3}, {-1, 5}},
    // e3 row
    {{-1, 5}, {-1, 6}, {-1, 0}, {-1, 7}, {+1, 1}, {+1, 2}, {+1, 4}},
    // e4 row
    {{+1, 2}, {-1, 1}, {+1, 7}, {-1, 0}, {-1, 6}, {+1, 5}, {-1, 3}},
    // e5 row
    {{+1, 3}, {-1, 7}, {-1, 1}, {+1, 6}, {-1, 0}, {-1, 4}, {+1, 2}},
    // e6 row
    {{+1, 7}, {+1, 3}, {-1, 2}, {-1, 5}, {+1, 4}, {-1, 0}, {-1, 1}},
    // e7 row
    {{-1, 6}, {+1, 5}, {-1, 4}, {+1, 3}, {-1, 2}, {+1, 1}, {-1, 0}},
};

}  // namespace

Octonion Octonion::e(std::size_t i) {
    Octonion r;
    r.x[i] = 1.0;
    return r;
}

TableEntry table_entry(int i, int j) {
    return {kSign[i][j], kIndex[i][j]};
}

TableEntry reference_table_entry(int i, int j) {
    if (i == 0) return {1, j};
    if (j == 0) return {1, i};
    const SignedUnit& u = kReference[i - 1][j - 1];
    return {u.sign, u.index};
}

Octonion multiply(const Octonion& a, const Octonion& b) {
    Octonion r;
    for (int i = 0; i < 8; ++i) {
        const double ai = a.x[i];
        if (ai == 0.0) continue;
        for (int j = 0; j < 8; ++j) {
            r.x[kIndex[i][j]] += kSign[i][j] * ai * b.x[j];
        }
    }
    return r;
}

Octonion conjugate(const Octonion& a) {
    Octonion r = a;
    for (int i = 1; i < 8; ++i) r.x[i] = -r.x[i];
    return r;
}

double norm_sq(const Octonion& a) {
    double s = 0.0;
    for (double c : a.x) s += c * c;
    return s;
}

double norm(const Octonion& a) { return std::sqrt(norm_sq(a)); }

double scalar_product(const Octonion& a, const Octonion& b) {
    double s = 0.0;
    for (int i = 0; i < 8; ++i) s += a.x[i] * b.x[i];
    return s;
}

Octonion inverse(const Octonion& a) {
    const double n2 = norm_sq(a);
    if (n2 == 0.0) throw usage_error("zero has no inverse");
    return conjugate(a) / n2;
}

Octonion associator(const Octonion& a, const Octonion& b, const Octonion& c) {
    return (a * b) * c - a * (b * c);
}

int verify_multiplication_table() {
    int checked = 0;
    auto fail = [](int i, int j, const char* why) {
        std::ostringstream os;
        os << "multiplication table mismatch at e" << i << "*e" << j << ": " << why;
        throw internal_error(os.str());
    };

    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            const TableEntry got = table_entry(i, j);
            const TableEntry want = reference_table_entry(i, j);
            if (got.sign != want.sign || got.index != want.index)
                fail(i, j, "differs from the reference transcription");
            ++checked;
        }
    }

    // Defining relations, checked on the table itself.
    for (int i = 0; i < 8; ++i) {
        if (table_entry(0, i).index != i || table_entry(i, 0).index != i ||
            table_entry(0, i).sign != 1 || table_entry(i, 0).sign != 1)
            fail(0, i, "unit element is not neutral");
    }
    for (int i = 1; i < 8; ++i) {
        const TableEntry sq = table_entry(i, i);
        if (sq.sign != -1 || sq.index != 0) fail(i, i, "ei^2 != -1");
        for (int j = 1; j < 8; ++j) {
            if (i == j) continue;
            const TableEntry ij = table_entry(i, j);
            const TableEntry ji = table_entry(j, i);
            if (ij.index != ji.index || ij.sign != -ji.sign)
                fail(i, j, "anticommutation violated");
            if (ij.index == 0 || ij.index == i || ij.index == j)
                fail(i, j, "product of distinct units must be a third unit");
        }
    }

    const Octonion e1 = Octonion::e(1), e2 = Octonion::e(2), e3 = Octonion::e(3);
    if (e1 * e2 != Octonion::e(4)) fail(1, 2, "e1e2 != e4");
    if (e1 * e3 != Octonion::e(5)) fail(1, 3, "e1e3 != e5");
    if (e2 * e3 != Octonion::e(6)) fail(2, 3, "e2e3 != e6");
    if ((e1 * e2) * e3 != Octonion::e(7)) fail(4, 3, "(e1e2)e3 != e7");
    return checked;
}

std::ostream& operator<<(std::ostream& os, const Octonion& a) {
    os << a.x[0];
    for (int i = 1; i < 8; ++i) {
        os << (a.x[i] < 0 ? " - " : " + ") << std::abs(a.x[i]) << "*e" << i;
    }
    return os;
}

}  // namespace oct
