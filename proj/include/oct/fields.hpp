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

#ifndef OCT_FIELDS_HPP_
#define OCT_FIELDS_HPP_

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "oct/mat8.hpp"
#include "oct/octonion.hpp"

namespace oct {

// Multi-index over the seven imaginary directions; tau(i) is the unit
// multi-index in direction i.
struct MultiIndex {
    std::array<int, 7> n{};  // n[0] corresponds to direction 1, etc.

    int degree() const;
    static MultiIndex tau(int i);  // 1 <= i <= 7
};

enum class Regularity { left, right, both, none };

const char* to_string(Regularity r);

// An evaluatable map O -> O, optionally with a hand-coded analytic Jacobian.
// regularity_claim is the catalog's stance on which Cauchy-Riemann operator
// annihilates the field; cr_residual is the arbiter.
struct OctonionField {
    std::string name;
    std::function<Octonion(const Octonion&)> evaluate;
    std::function<Mat8(const Octonion&)> jacobian_analytic;  // may be empty
    Regularity regularity_claim = Regularity::none;
};

enum class Side { left, right };

// Fueter variable Z_i(z) = x_i - x_0 e_i, 1 <= i <= 7.
Octonion fueter_Z(int i, const Octonion& z);

// Symmetrized Fueter polynomial V_n: the average over all |n|! permutations
// of the index sequence of the nested product Z_{p1}(Z_{p2}(...(Z Z)...)),
// innermost pair rightmost. Equal permutations are not re-evaluated: each
// distinguishable ordering is weighted by (prod n_i!)/|n|!.
// V of the zero multi-index is 1 (empty product).
Octonion fueter_V(const MultiIndex& n, const Octonion& z);

// Analytic Jacobian of V_n, via the product rule on the nested factors.
Mat8 fueter_V_jacobian(const MultiIndex& n, const Octonion& z);

// Default finite-difference step: cbrt(machine epsilon) * max(1, |z|).
double default_cr_step(const Octonion& z);

// Central-difference Cauchy-Riemann residual.
//   side=left :  Df  = df/dx0 + sum_i e_i * df/dx_i
//   side=right:  fD  = df/dx0 + sum_i (df/dx_i) * e_i
Octonion cr_residual(const OctonionField& f, const Octonion& z, Side side,
                     double h = 0.0 /* 0 => default step */);

// Analytic Jacobian when the field carries one, else central differences
// with step h (0 => 1e-5 * max(1, |z|)). Entry (i,j) = d f_i / d x_j.
Mat8 jacobian(const OctonionField& f, const Octonion& z, double h = 0.0);

// Central-difference Jacobian of an arbitrary evaluator.
Mat8 fd_jacobian(const std::function<Octonion(const Octonion&)>& evaluate,
                 const Octonion& z, double h);

// Example-field catalog. Valid names (parameters in parentheses):
//   sum_squares(k)        k = 1..7        Z_1^2 + ... + Z_k^2
//   hempfling                             degree-6 product field
//   circle_variety                        zero set: unit circle + 2 points
//   sphere_variety(k,R)   k = 2..6, R > 0 zero set: (k-1)-sphere + points
//   module_counterexample                 (x_1 - x_2 e_4) * e_3
//   identity                              f(z) = z
//   constant(a)                           a = scalar or 8 components
// Throws usage_error listing the valid names for anything else.
OctonionField catalog_get(const std::string& name,
                          const std::vector<double>& params);

std::vector<std::string> catalog_names();

// User-composed fields: real-linear combinations of Fueter polynomials
// (each optionally right-multiplied by a fixed octonion), plus constants,
// with optional right multiplication of the whole sum by fixed octonions
// (applied in call order). No monogenicity promise — run cr_residual.
class FieldBuilder {
public:
    FieldBuilder& add_term(double coeff, const MultiIndex& n,
                           const Octonion& unit = Octonion{1.0});
    FieldBuilder& add_constant(const Octonion& a);
    FieldBuilder& right_multiply(const Octonion& u);

    OctonionField build(const std::string& name,
                        Regularity claim = Regularity::none) const;

private:
    struct Term {
        double coeff;
        MultiIndex n;
        Octonion unit;
    };
    std::vector<Term> terms_;
    Octonion constant_{};
    std::vector<Octonion> outer_right_;
};

}  // namespace oct

#endif  // OCT_FIELDS_HPP_
