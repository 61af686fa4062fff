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

#include "oct/mat8.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <utility>

namespace oct {
namespace {

// LU with partial pivoting on an n x n row-major matrix, in place.
// Returns the permutation sign, or 0 when a pivot column is exactly zero
// (matrix singular; elimination stops there).
template <int N>
int lu_decompose(double* m, int* perm) {
    int sign = 1;
    for (int i = 0; i < N; ++i) perm[i] = i;
    for (int col = 0; col < N; ++col) {
        int pivot = col;
        double best = std::abs(m[perm[col] * N + col]);
        for (int r = col + 1; r < N; ++r) {
            const double v = std::abs(m[perm[r] * N + col]);
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best == 0.0) return 0;
        if (pivot != col) {
            std::swap(perm[pivot], perm[col]);
            sign = -sign;
        }
        const double d = m[perm[col] * N + col];
        for (int r = col + 1; r < N; ++r) {
            double* row = m + perm[r] * N;
            const double factor = row[col] / d;
            row[col] = factor;
            const double* prow = m + perm[col] * N;
            for (int c = col + 1; c < N; ++c) row[c] -= factor * prow[c];
        }
    }
    return sign;
}

template <int N>
double lu_determinant_only(const double* src) {
    double m[N * N];
    int perm[N];
    for (int i = 0; i < N * N; ++i) m[i] = src[i];
    const int sign = lu_decompose<N>(m, perm);
    if (sign == 0) return 0.0;
    double det = sign;
    for (int i = 0; i < N; ++i) det *= m[perm[i] * N + i];
    return det;
}

// Cofactor entry (i,j) of an 8x8 matrix by direct 7x7 minor expansion.
// Slow path, used only when the LU route is numerically untrustworthy.
double cofactor_entry(const Mat8& m, int i, int j) {
    std::array<double, 49> minor;
    int idx = 0;
    for (int r = 0; r < 8; ++r) {
        if (r == i) continue;
        for (int c = 0; c < 8; ++c) {
            if (c == j) continue;
            minor[idx++] = m(r, c);
        }
    }
    const double d = det7(minor);
    return ((i + j) % 2 == 0) ? d : -d;
}

Mat8 cofactor_by_minors(const Mat8& m) {
    Mat8 out;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) out(i, j) = cofactor_entry(m, i, j);
    return out;
}

}  // namespace

Mat8 Mat8::identity() {
    Mat8 r;
    for (int i = 0; i < 8; ++i) r(i, i) = 1.0;
    return r;
}

Mat8& Mat8::operator+=(const Mat8& o) {
    for (int i = 0; i < 64; ++i) a[i] += o.a[i];
    return *this;
}

Mat8& Mat8::operator-=(const Mat8& o) {
    for (int i = 0; i < 64; ++i) a[i] -= o.a[i];
    return *this;
}

Mat8& Mat8::operator*=(double s) {
    for (double& v : a) v *= s;
    return *this;
}

Mat8 multiply(const Mat8& l, const Mat8& r) {
    Mat8 out;
    for (int i = 0; i < 8; ++i) {
        for (int k = 0; k < 8; ++k) {
            const double v = l(i, k);
            if (v == 0.0) continue;
            for (int j = 0; j < 8; ++j) out(i, j) += v * r(k, j);
        }
    }
    return out;
}

Mat8 transpose(const Mat8& m) {
    Mat8 out;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) out(i, j) = m(j, i);
    return out;
}

Octonion apply(const Mat8& m, const Octonion& v) {
    Octonion out;
    for (int i = 0; i < 8; ++i) {
        double s = 0.0;
        for (int j = 0; j < 8; ++j) s += m(i, j) * v.x[j];
        out.x[i] = s;
    }
    return out;
}

double determinant(const Mat8& m) { return lu_determinant_only<8>(m.a.data()); }

double det7(const std::array<double, 49>& m) {
    return lu_determinant_only<7>(m.data());
}

bool solve_linear(const Mat8& m, const Octonion& b, Octonion& x) {
    double lu[64];
    int perm[8];
    for (int i = 0; i < 64; ++i) lu[i] = m.a[i];
    if (lu_decompose<8>(lu, perm) == 0) return false;
    double y[8];
    for (int i = 0; i < 8; ++i) y[i] = b.x[perm[i]];
    for (int i = 1; i < 8; ++i) {
        const double* row = lu + perm[i] * 8;
        double s = y[i];
        for (int j = 0; j < i; ++j) s -= row[j] * y[j];
        y[i] = s;
    }
    for (int i = 7; i >= 0; --i) {
        const double* row = lu + perm[i] * 8;
        double s = y[i];
        for (int j = i + 1; j < 8; ++j) s -= row[j] * y[j];
        y[i] = s / row[i];
    }
    for (int i = 0; i < 8; ++i) x.x[i] = y[i];
    return true;
}

Mat8 cofactor_matrix(const Mat8& m) {
    // Fast path: cof(M) = det(M) * inv(M)^T via one LU factorization.
    double lu[64];
    int perm[8];
    for (int i = 0; i < 64; ++i) lu[i] = m.a[i];
    const int sign = lu_decompose<8>(lu, perm);
    if (sign != 0) {
        double det = sign;
        double pmin = std::abs(lu[perm[0] * 8 + 0]);
        double pmax = pmin;
        for (int i = 0; i < 8; ++i) {
            const double p = std::abs(lu[perm[i] * 8 + i]);
            det *= lu[perm[i] * 8 + i];
            pmin = std::min(pmin, p);
            pmax = std::max(pmax, p);
        }
        // det * inv loses accuracy on near-singular input; fall back to
        // direct minors there (the minors stay polynomial-exact).
        if (pmin > 1e-10 * pmax) {
            Mat8 out;
            for (int col = 0; col < 8; ++col) {
                // Solve M y = e_col, record det * y into cof row col
                // (inverse transposed: cof(i,j) = det * inv(j,i)).
                double y[8];
                for (int i = 0; i < 8; ++i) y[i] = (perm[i] == col) ? 1.0 : 0.0;
                for (int i = 1; i < 8; ++i) {
                    const double* row = lu + perm[i] * 8;
                    double s = y[i];
                    for (int j = 0; j < i; ++j) s -= row[j] * y[j];
                    y[i] = s;
                }
                for (int i = 7; i >= 0; --i) {
                    const double* row = lu + perm[i] * 8;
                    double s = y[i];
                    for (int j = i + 1; j < 8; ++j) s -= row[j] * y[j];
                    y[i] = s / row[i];
                }
                for (int i = 0; i < 8; ++i) out(col, i) = det * y[i];
            }
            return out;
        }
    }
    return cofactor_by_minors(m);
}

Mat8 adjugate(const Mat8& m) { return transpose(cofactor_matrix(m)); }

Mat8 left_mult_matrix(const Octonion& u) {
    Mat8 out;
    for (int j = 0; j < 8; ++j) {
        const Octonion col = u * Octonion::e(j);
        for (int i = 0; i < 8; ++i) out(i, j) = col.x[i];
    }
    return out;
}

Mat8 right_mult_matrix(const Octonion& u) {
    Mat8 out;
    for (int j = 0; j < 8; ++j) {
        const Octonion col = Octonion::e(j) * u;
        for (int i = 0; i < 8; ++i) out(i, j) = col.x[i];
    }
    return out;
}

}  // namespace oct
