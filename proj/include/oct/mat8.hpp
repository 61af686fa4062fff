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

#ifndef OCT_MAT8_HPP_
#define OCT_MAT8_HPP_

#include <array>
#include <cstddef>

#include "oct/octonion.hpp"

namespace oct {

// Dense real 8x8 matrix, row-major. Used for Jacobians of octonion fields
// and for the left/right multiplication operators of the algebra.
struct Mat8 {
    std::array<double, 64> a{};

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * 8 + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * 8 + j]; }

    static Mat8 identity();
    static Mat8 zero() { return Mat8{}; }

    Mat8& operator+=(const Mat8& o);
    Mat8& operator-=(const Mat8& o);
    Mat8& operator*=(double s);
    friend Mat8 operator+(Mat8 l, const Mat8& r) { return l += r; }
    friend Mat8 operator-(Mat8 l, const Mat8& r) { return l -= r; }
    friend Mat8 operator*(Mat8 l, double s) { return l *= s; }
    friend Mat8 operator*(double s, Mat8 r) { return r *= s; }
};

Mat8 multiply(const Mat8& l, const Mat8& r);
Mat8 transpose(const Mat8& m);

// Matrix-vector product M*v with octonions read as coordinate vectors.
Octonion apply(const Mat8& m, const Octonion& v);

double determinant(const Mat8& m);

// Classical adjugate: transposed cofactor matrix, adjugate(M)*M = det(M)*I.
// Well-defined (and returned exactly as a polynomial in the entries) for
// singular M as well.
Mat8 adjugate(const Mat8& m);

// Untransposed cofactor matrix, cof(M)(i,j) = (-1)^{i+j} * minor(i,j).
// This is the operator that maps surface elements through a linear change
// of variables: N(M*T) = cof(M)*N(T) for any 8x7 tangent matrix T.
Mat8 cofactor_matrix(const Mat8& m);

// Determinant of a 7x7 matrix stored row-major.
double det7(const std::array<double, 49>& m);

// Solves M*x = b by LU with partial pivoting. Returns false (and leaves x
// untouched) when M is numerically singular.
bool solve_linear(const Mat8& m, const Octonion& b, Octonion& x);

// Left/right multiplication operators: left_mult(u)*v == u*v and
// right_mult(u)*v == v*u componentwise. Used by product-rule Jacobians.
Mat8 left_mult_matrix(const Octonion& u);
Mat8 right_mult_matrix(const Octonion& u);

}  // namespace oct

#endif  // OCT_MAT8_HPP_
