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

#include "oct/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "oct/errors.hpp"

namespace oct {
namespace {

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// Value and Jacobian of the nested product Z_{seq[0]}(Z_{seq[1]}(...)),
// innermost pair rightmost, via J(u*v) = L_u J(v) + R_v J(u).
std::pair<Octonion, Mat8> nested_product(const std::vector<int>& seq,
                                         const Octonion& z) {
    auto z_jac = [](int i) {
        // Z_i = x_i - x_0 e_i: d/dx_i = 1 (component 0), d/dx_0 = -e_i.
        Mat8 j;
        j(0, i) = 1.0;
        j(i, 0) = -1.0;
        return j;
    };
    int last = seq.back();
    Octonion value = fueter_Z(last, z);
    Mat8 jac = z_jac(last);
    for (int pos = static_cast<int>(seq.size()) - 2; pos >= 0; --pos) {
        const int i = seq[pos];
        const Octonion zi = fueter_Z(i, z);
        jac = multiply(left_mult_matrix(zi), jac) +
              multiply(right_mult_matrix(value), z_jac(i));
        value = zi * value;
    }
    return {value, jac};
}

// Shared enumeration for fueter_V value/Jacobian: calls visit(seq, weight)
// for every distinguishable ordering of the multi-index.
template <typename Visit>
void for_each_ordering(const MultiIndex& n, Visit visit) {
    std::vector<int> seq;
    double perm_count = 1.0;
    for (int i = 0; i < 7; ++i) {
        if (n.n[i] < 0) throw usage_error("multi-index entries must be >= 0");
        perm_count *= factorial(n.n[i]);
        for (int c = 0; c < n.n[i]; ++c) seq.push_back(i + 1);
    }
    if (seq.empty()) return;
    const double weight = perm_count / factorial(static_cast<int>(seq.size()));
    std::sort(seq.begin(), seq.end());
    do {
        visit(seq, weight);
    } while (std::next_permutation(seq.begin(), seq.end()));
}

// hempfling: f(z) = (x1 x2 ... x7 - 1) - sum_j (prod_{i != j, i in 0..7} x_i - 1) e_j.
Octonion hempfling_eval(const Octonion& z) {
    // prefix[i] = x_0 .. x_{i-1}, suffix[i] = x_i .. x_7.
    double prefix[9], suffix[9];
    prefix[0] = 1.0;
    for (int i = 0; i < 8; ++i) prefix[i + 1] = prefix[i] * z.x[i];
    suffix[8] = 1.0;
    for (int i = 7; i >= 0; --i) suffix[i] = suffix[i + 1] * z.x[i];

    Octonion f;
    f.x[0] = suffix[1] - 1.0;  // x1..x7 - 1
    for (int j = 1; j < 8; ++j) {
        f.x[j] = -(prefix[j] * suffix[j + 1] - 1.0);  // all but x_j
    }
    return f;
}

Mat8 hempfling_jacobian(const Octonion& z) {
    // For each excluded index j, partials of prod_{i != j} x_i need the
    // products with two indices removed; prefix/suffix over the 7 kept
    // coordinates give them without divisions (safe at zero coordinates).
    Mat8 jac;
    for (int j = 0; j < 8; ++j) {
        int kept[7];
        int cnt = 0;
        for (int i = 0; i < 8; ++i)
            if (i != j) kept[cnt++] = i;
        double pre[8], suf[8];
        pre[0] = 1.0;
        for (int t = 0; t < 7; ++t) pre[t + 1] = pre[t] * z.x[kept[t]];
        suf[7] = 1.0;
        for (int t = 6; t >= 0; --t) suf[t] = suf[t + 1] * z.x[kept[t]];
        // d/dx_{kept[t]} of prod_{i != j} x_i = pre[t] * suf[t+1].
        const double row_sign = (j == 0) ? 1.0 : -1.0;
        for (int t = 0; t < 7; ++t) {
            jac(j, kept[t]) = row_sign * pre[t] * suf[t + 1];
        }
    }
    return jac;
}

// sum_squares(k): closed form (sum_{i<=k} x_i^2 - k x_0^2) - 2 x_0 sum_{i<=k} x_i e_i.
OctonionField make_sum_squares(int k) {
    OctonionField f;
    f.name = "sum_squares(" + std::to_string(k) + ")";
    f.regularity_claim = Regularity::both;
    f.evaluate = [k](const Octonion& z) {
        Octonion out;
        double s = 0.0;
        for (int i = 1; i <= k; ++i) {
            s += z.x[i] * z.x[i];
            out.x[i] = -2.0 * z.x[0] * z.x[i];
        }
        out.x[0] = s - k * z.x[0] * z.x[0];
        return out;
    };
    f.jacobian_analytic = [k](const Octonion& z) {
        Mat8 jac;
        jac(0, 0) = -2.0 * k * z.x[0];
        for (int i = 1; i <= k; ++i) {
            jac(0, i) = 2.0 * z.x[i];
            jac(i, 0) = -2.0 * z.x[i];
            jac(i, i) = -2.0 * z.x[0];
        }
        return jac;
    };
    return f;
}

// Zero-variety family: Z_1^2 + ... + Z_k^2 + sum_{j>k} Z_j e_j - R^2.
// Closed form: scalar  sum_{i<=k} x_i^2 - k x_0^2 + (7-k) x_0 - R^2,
//              e_i     -2 x_0 x_i            (i <= k),
//              e_j     x_j                   (j > k).
OctonionField make_variety(int k, double R, std::string name) {
    OctonionField f;
    f.name = std::move(name);
    f.regularity_claim = Regularity::both;
    const double R2 = R * R;
    f.evaluate = [k, R2](const Octonion& z) {
        Octonion out;
        double s = 0.0;
        for (int i = 1; i <= k; ++i) {
            s += z.x[i] * z.x[i];
            out.x[i] = -2.0 * z.x[0] * z.x[i];
        }
        out.x[0] = s - k * z.x[0] * z.x[0] + (7 - k) * z.x[0] - R2;
        for (int j = k + 1; j < 8; ++j) out.x[j] = z.x[j];
        return out;
    };
    f.jacobian_analytic = [k](const Octonion& z) {
        Mat8 jac;
        jac(0, 0) = -2.0 * k * z.x[0] + (7 - k);
        for (int i = 1; i <= k; ++i) {
            jac(0, i) = 2.0 * z.x[i];
            jac(i, 0) = -2.0 * z.x[i];
            jac(i, i) = -2.0 * z.x[0];
        }
        for (int j = k + 1; j < 8; ++j) jac(j, j) = 1.0;
        return jac;
    };
    return f;
}

}  // namespace

int MultiIndex::degree() const {
    int d = 0;
    for (int v : n) d += v;
    return d;
}

MultiIndex MultiIndex::tau(int i) {
    if (i < 1 || i > 7) throw usage_error("tau index must be in 1..7");
    MultiIndex m;
    m.n[i - 1] = 1;
    return m;
}

const char* to_string(Regularity r) {
    switch (r) {
        case Regularity::left: return "left";
        case Regularity::right: return "right";
        case Regularity::both: return "both";
        case Regularity::none: return "none";
    }
    return "none";
}

Octonion fueter_Z(int i, const Octonion& z) {
    if (i < 1 || i > 7) throw usage_error("Fueter index must be in 1..7");
    Octonion out;
    out.x[0] = z.x[i];
    out.x[i] = -z.x[0];
    return out;
}

Octonion fueter_V(const MultiIndex& n, const Octonion& z) {
    Octonion sum;
    bool any = false;
    for_each_ordering(n, [&](const std::vector<int>& seq, double weight) {
        any = true;
        Octonion value = fueter_Z(seq.back(), z);
        for (int pos = static_cast<int>(seq.size()) - 2; pos >= 0; --pos) {
            value = fueter_Z(seq[pos], z) * value;
        }
        sum += weight * value;
    });
    if (!any) return Octonion{1.0};  // empty product
    return sum;
}

Mat8 fueter_V_jacobian(const MultiIndex& n, const Octonion& z) {
    Mat8 sum;
    for_each_ordering(n, [&](const std::vector<int>& seq, double weight) {
        sum += weight * nested_product(seq, z).second;
    });
    return sum;
}

double default_cr_step(const Octonion& z) {
    return std::cbrt(std::numeric_limits<double>::epsilon()) *
           std::max(1.0, norm(z));
}

Octonion cr_residual(const OctonionField& f, const Octonion& z, Side side,
                     double h) {
    if (h == 0.0) h = default_cr_step(z);
    if (h <= 0.0) throw usage_error("finite-difference step must be positive");
    Octonion res;
    for (int i = 0; i < 8; ++i) {
        Octonion zp = z, zm = z;
        zp.x[i] += h;
        zm.x[i] -= h;
        const Octonion di = (f.evaluate(zp) - f.evaluate(zm)) / (2.0 * h);
        if (i == 0) {
            res += di;
        } else if (side == Side::left) {
            res += Octonion::e(i) * di;
        } else {
            res += di * Octonion::e(i);
        }
    }
    return res;
}

Mat8 fd_jacobian(const std::function<Octonion(const Octonion&)>& evaluate,
                 const Octonion& z, double h) {
    if (h <= 0.0) throw usage_error("finite-difference step must be positive");
    Mat8 jac;
    for (int j = 0; j < 8; ++j) {
        Octonion zp = z, zm = z;
        zp.x[j] += h;
        zm.x[j] -= h;
        const Octonion col = (evaluate(zp) - evaluate(zm)) / (2.0 * h);
        for (int i = 0; i < 8; ++i) jac(i, j) = col.x[i];
    }
    return jac;
}

Mat8 jacobian(const OctonionField& f, const Octonion& z, double h) {
    if (f.jacobian_analytic) return f.jacobian_analytic(z);
    if (h == 0.0) h = 1e-5 * std::max(1.0, norm(z));
    return fd_jacobian(f.evaluate, z, h);
}

std::vector<std::string> catalog_names() {
    return {"sum_squares(k)",      "hempfling",
            "circle_variety",      "sphere_variety(k,R)",
            "module_counterexample", "identity",
            "constant(a)"};
}

OctonionField catalog_get(const std::string& name,
                          const std::vector<double>& params) {
    auto bad = [&](const std::string& why) -> usage_error {
        std::ostringstream os;
        os << why << "; valid fields:";
        for (const auto& n : catalog_names()) os << " " << n;
        return usage_error(os.str());
    };

    if (name == "sum_squares") {
        if (params.size() != 1) throw bad("sum_squares takes one parameter k");
        const double kf = params[0];
        const int k = static_cast<int>(kf);
        if (kf != k || k < 1 || k > 7)
            throw bad("sum_squares parameter k must be an integer in 1..7");
        return make_sum_squares(k);
    }
    if (name == "hempfling") {
        if (!params.empty()) throw bad("hempfling takes no parameters");
        OctonionField f;
        f.name = "hempfling";
        f.regularity_claim = Regularity::both;
        f.evaluate = hempfling_eval;
        f.jacobian_analytic = hempfling_jacobian;
        return f;
    }
    if (name == "circle_variety") {
        if (!params.empty()) throw bad("circle_variety takes no parameters");
        return make_variety(2, 1.0, "circle_variety");
    }
    if (name == "sphere_variety") {
        if (params.size() != 2)
            throw bad("sphere_variety takes two parameters (k, R)");
        const int k = static_cast<int>(params[0]);
        const double R = params[1];
        if (params[0] != k || k < 2 || k > 6)
            throw bad("sphere_variety parameter k must be an integer in 2..6");
        if (!(R > 0.0)) throw bad("sphere_variety radius R must be positive");
        std::ostringstream nm;
        nm << "sphere_variety(" << k << "," << R << ")";
        return make_variety(k, R, nm.str());
    }
    if (name == "module_counterexample") {
        if (!params.empty())
            throw bad("module_counterexample takes no parameters");
        OctonionField f;
        f.name = "module_counterexample";
        f.regularity_claim = Regularity::none;
        // (x1 - x2 e4) * e3 = x1 e3 - x2 e7 (e4 e3 = e7).
        f.evaluate = [](const Octonion& z) {
            Octonion out;
            out.x[3] = z.x[1];
            out.x[7] = -z.x[2];
            return out;
        };
        f.jacobian_analytic = [](const Octonion&) {
            Mat8 jac;
            jac(3, 1) = 1.0;
            jac(7, 2) = -1.0;
            return jac;
        };
        return f;
    }
    if (name == "identity") {
        if (!params.empty()) throw bad("identity takes no parameters");
        OctonionField f;
        f.name = "identity";
        f.regularity_claim = Regularity::none;  // Dz = 1 - 7 = -6
        f.evaluate = [](const Octonion& z) { return z; };
        f.jacobian_analytic = [](const Octonion&) { return Mat8::identity(); };
        return f;
    }
    if (name == "constant") {
        Octonion a;
        if (params.size() == 1) {
            a.x[0] = params[0];
        } else if (params.size() == 8) {
            for (int i = 0; i < 8; ++i) a.x[i] = params[i];
        } else {
            throw bad("constant takes one scalar or 8 components");
        }
        OctonionField f;
        std::ostringstream nm;
        nm << "constant(" << a << ")";
        f.name = nm.str();
        f.regularity_claim = Regularity::both;
        f.evaluate = [a](const Octonion&) { return a; };
        f.jacobian_analytic = [](const Octonion&) { return Mat8{}; };
        return f;
    }
    throw bad("unknown field '" + name + "'");
}

FieldBuilder& FieldBuilder::add_term(double coeff, const MultiIndex& n,
                                     const Octonion& unit) {
    terms_.push_back(Term{coeff, n, unit});
    return *this;
}

FieldBuilder& FieldBuilder::add_constant(const Octonion& a) {
    constant_ += a;
    return *this;
}

FieldBuilder& FieldBuilder::right_multiply(const Octonion& u) {
    outer_right_.push_back(u);
    return *this;
}

OctonionField FieldBuilder::build(const std::string& name,
                                  Regularity claim) const {
    auto terms = terms_;
    auto constant = constant_;
    auto outer = outer_right_;

    OctonionField f;
    f.name = name;
    f.regularity_claim = claim;
    f.evaluate = [terms, constant, outer](const Octonion& z) {
        Octonion sum = constant;
        for (const auto& t : terms) {
            sum += t.coeff * (fueter_V(t.n, z) * t.unit);
        }
        for (const auto& u : outer) sum = sum * u;
        return sum;
    };
    f.jacobian_analytic = [terms, outer](const Octonion& z) {
        Mat8 jac;
        for (const auto& t : terms) {
            jac += t.coeff *
                   multiply(right_mult_matrix(t.unit), fueter_V_jacobian(t.n, z));
        }
        for (const auto& u : outer) jac = multiply(right_mult_matrix(u), jac);
        return jac;
    };
    return f;
}

}  // namespace oct
