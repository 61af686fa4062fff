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

#include "oct/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oct/errors.hpp"
#include "oct/rng.hpp"

namespace oct::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Small string helpers.

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

// Splits on sep, but only outside parentheses.
std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(strip(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(strip(cur));
    return out;
}

double parse_double(const std::string& s) {
    const std::string t = strip(s);
    double v = 0.0;
    const char* begin = t.data();
    const char* end = begin + t.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end)
        throw usage_error("not a real number: '" + t + "'");
    return v;
}

long long parse_int(const std::string& s) {
    const std::string t = strip(s);
    long long v = 0;
    const char* begin = t.data();
    const char* end = begin + t.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end)
        throw usage_error("not an integer: '" + t + "'");
    return v;
}

// "name(inner)" -> {name, inner}; plain "name" -> {name, ""}.
std::pair<std::string, std::string> split_call(const std::string& text) {
    const std::string t = strip(text);
    const auto open = t.find('(');
    if (open == std::string::npos) return {t, ""};
    if (t.back() != ')')
        throw usage_error("unbalanced parentheses in '" + t + "'");
    return {strip(t.substr(0, open)), t.substr(open + 1, t.size() - open - 2)};
}

int parse_axis(const std::string& s) {
    std::string t = strip(s);
    if (!t.empty() && (t[0] == 'e' || t[0] == 'E')) t = t.substr(1);
    const long long v = parse_int(t);
    if (v < 1 || v > 7)
        throw usage_error("axis must name an imaginary unit e1..e7");
    return static_cast<int>(v);
}

}  // namespace

Octonion parse_octonion(const std::string& text) {
    std::string t;
    for (char c : text)
        if (c != ' ' && c != '\t') t.push_back(c);
    if (t.empty()) throw usage_error("empty octonion literal");

    if (t.find(',') != std::string::npos) {
        const auto parts = split_top(t, ',');
        if (parts.size() != 8)
            throw usage_error("component form needs exactly 8 reals");
        Octonion o;
        for (int i = 0; i < 8; ++i) o.x[i] = parse_double(parts[i]);
        return o;
    }

    // Signed sum of terms, left to right: NUMBER, e<i>, or NUMBER*e<i>.
    // The '*' is mandatory in the last form, so "2e3" is the float 2000.
    Octonion o;
    std::size_t pos = 0;
    while (pos < t.size()) {
        double sign = 1.0;
        if (t[pos] == '+' || t[pos] == '-') {
            sign = (t[pos] == '-') ? -1.0 : 1.0;
            ++pos;
            if (pos >= t.size())
                throw usage_error("dangling sign in octonion literal");
        }
        double coeff = 1.0;
        bool have_coeff = false;
        if (t[pos] != 'e' && t[pos] != 'E') {
            const char* begin = t.data() + pos;
            const char* end = t.data() + t.size();
            const auto res = std::from_chars(begin, end, coeff);
            if (res.ec != std::errc{})
                throw usage_error("bad number in octonion literal at '" +
                                  t.substr(pos) + "'");
            pos = static_cast<std::size_t>(res.ptr - t.data());
            have_coeff = true;
        }
        if (pos < t.size() && t[pos] == '*') {
            if (!have_coeff)
                throw usage_error("'*' without a coefficient in octonion literal");
            ++pos;
            if (pos >= t.size() || (t[pos] != 'e' && t[pos] != 'E'))
                throw usage_error("expected a unit e1..e7 after '*'");
        }
        if (pos < t.size() && (t[pos] == 'e' || t[pos] == 'E') &&
            (!have_coeff || t[pos - 1] == '*')) {
            ++pos;
            if (pos >= t.size() || t[pos] < '1' || t[pos] > '7')
                throw usage_error("unit index must be 1..7");
            const int idx = t[pos] - '0';
            ++pos;
            o.x[idx] += sign * coeff;
        } else {
            if (!have_coeff)
                throw usage_error("unparsable octonion literal '" + text + "'");
            o.x[0] += sign * coeff;
        }
        if (pos < t.size() && t[pos] != '+' && t[pos] != '-')
            throw usage_error("expected + or - in octonion literal at '" +
                              t.substr(pos) + "'");
    }
    return o;
}

OctonionField parse_field(const std::string& text) {
    const auto [name, inner] = split_call(text);
    std::vector<double> params;
    if (name == "constant") {
        if (inner.empty())
            throw usage_error("constant(...) needs a value");
        const Octonion a = parse_octonion(inner);
        params.assign(a.x.begin(), a.x.end());
    } else if (!inner.empty()) {
        for (const auto& p : split_top(inner, ','))
            params.push_back(parse_double(p));
    }
    return catalog_get(name, params);
}

namespace {

CoreManifold parse_core_inner(const std::string& kind,
                              const std::vector<std::string>& parts) {
    if (kind == "point") {
        if (parts.size() != 1)
            throw usage_error("point core: point(c0,...,c7)");
        return CoreManifold::point(parse_octonion(parts[0]));
    }
    if (kind == "circle") {
        if (parts.size() != 2)
            throw usage_error("circle core: circle(AX1,AX2;R)");
        const auto axes = split_top(parts[0], ',');
        if (axes.size() != 2)
            throw usage_error("circle core needs two axes, e.g. e1,e2");
        return CoreManifold::circle(parse_axis(axes[0]), parse_axis(axes[1]),
                                    parse_double(parts[1]));
    }
    if (kind == "ksphere") {
        if (parts.size() != 2)
            throw usage_error("k-sphere core: ksphere(k;R)");
        return CoreManifold::k_sphere(static_cast<int>(parse_int(parts[0])),
                                      parse_double(parts[1]));
    }
    if (kind == "segment") {
        if (parts.size() != 2)
            throw usage_error("segment core: segment(a0,...,a7;b0,...,b7)");
        return CoreManifold::segment(parse_octonion(parts[0]),
                                     parse_octonion(parts[1]));
    }
    throw usage_error("unknown core kind '" + kind +
                      "' (point, circle, ksphere, segment)");
}

CoreManifold parse_core(const std::string& text) {
    const auto [kind, inner] = split_call(text);
    return parse_core_inner(kind, split_top(inner, ';'));
}

}  // namespace

ParamSurface parse_surface(const std::string& text) {
    const auto [name, inner] = split_call(text);
    const auto parts = split_top(inner, ';');
    if (name == "sphere") {
        if (parts.size() != 2)
            throw usage_error("sphere surface: sphere(c0,...,c7;r)");
        return ParamSurface::sphere(parse_octonion(parts[0]),
                                    parse_double(parts[1]));
    }
    if (name == "tube") {
        if (parts.size() < 2)
            throw usage_error(
                "tube surface: tube(circle;AX1,AX2;R;eps), tube(ksphere;k;R;eps), "
                "tube(segment;a...;b...;eps), tube(point;c...;eps)");
        const std::string kind = strip(parts[0]);
        const std::vector<std::string> core_parts(parts.begin() + 1,
                                                  parts.end() - 1);
        const CoreManifold core = parse_core_inner(kind, core_parts);
        return ParamSurface::tube(core, parse_double(parts.back()));
    }
    throw usage_error("unknown surface '" + name + "' (sphere, tube)");
}

ZeroSpec parse_zero(const std::string& text) {
    const auto [name, inner] = split_call(text);
    auto parts = split_top(inner, ';');

    std::optional<std::array<int, 7>> nodes_override;
    if (!parts.empty() && parts.back().rfind("nodes=", 0) == 0) {
        const auto counts = split_top(parts.back().substr(6), ',');
        if (counts.size() != 7)
            throw usage_error("nodes= override needs 7 comma-separated counts");
        std::array<int, 7> n{};
        for (int i = 0; i < 7; ++i) n[i] = static_cast<int>(parse_int(counts[i]));
        nodes_override = n;
        parts.pop_back();
    }

    ZeroSpec z;
    if (name == "point") {
        if (parts.size() != 2)
            throw usage_error("zero enclosure: point(c0,...,c7;eps)");
        z = ZeroSpec::isolated(parse_octonion(parts[0]),
                               parse_double(parts[1]));
    } else if (name == "tube") {
        if (parts.size() < 2)
            throw usage_error("zero enclosure: tube(<core>;eps)");
        const std::string kind = strip(parts[0]);
        const std::vector<std::string> core_parts(parts.begin() + 1,
                                                  parts.end() - 1);
        z = ZeroSpec::variety(parse_core_inner(kind, core_parts),
                              parse_double(parts.back()));
    } else {
        throw usage_error("unknown zero enclosure '" + name +
                          "' (point, tube)");
    }
    z.nodes_override = nodes_override;
    return z;
}

namespace {

// ---------------------------------------------------------------------------
// Shared output plumbing.

struct GlobalOpts {
    std::string nodes = "8";
    std::string rule = "gl";
    std::int64_t samples = 100000;
    double tolerance = 0.1;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string output = "json";
};

QuadratureSpec make_spec(const GlobalOpts& g) {
    QuadratureSpec spec;
    if (g.rule == "mc") {
        spec = QuadratureSpec::monte_carlo(g.samples, g.seed);
    } else if (g.rule == "gl") {
        const auto parts = split_top(g.nodes, ',');
        if (parts.size() == 1) {
            spec = QuadratureSpec::tensor(static_cast<int>(parse_int(parts[0])));
        } else if (parts.size() == 7) {
            std::array<int, 7> n{};
            for (int i = 0; i < 7; ++i)
                n[i] = static_cast<int>(parse_int(parts[i]));
            spec = QuadratureSpec::tensor(n);
        } else {
            throw usage_error("--nodes takes one count or 7 comma-separated");
        }
    } else {
        throw usage_error("--rule must be gl or mc");
    }
    spec.seed = g.seed;
    return spec;
}

Tolerances make_tol(const GlobalOpts& g) {
    Tolerances t;
    t.integer_tolerance = g.tolerance;
    return t;
}

ordered_json spec_json(const QuadratureSpec& spec) {
    ordered_json j;
    if (spec.rule == QuadratureSpec::Rule::gauss_legendre_tensor) {
        j["rule"] = "gl";
        j["nodes"] = spec.nodes_per_dim;
    } else {
        j["rule"] = "mc";
        j["samples"] = spec.total_samples;
    }
    j["seed"] = spec.seed;
    return j;
}

ordered_json oct_json(const Octonion& o) {
    return ordered_json(o.x);
}

// The uniform output record. Every command funnels through here so the JSON
// key set and order stay fixed.
struct Outcome {
    std::string command;
    ordered_json inputs = ordered_json::object();
    Octonion raw{};
    double scalar = 0.0;
    long long rounded = 0;
    double residual = 0.0;
    std::uint64_t node_count = 0;
    bool pass = true;
    ordered_json report;  // optional command-specific extras

    void take(const DegreeResult& r, const Tolerances& tol) {
        raw = r.raw;
        scalar = r.scalar;
        rounded = r.rounded;
        residual = r.residual;
        node_count = r.node_count;
        pass = r.integer_ok(tol);
    }
};

ordered_json degree_json(const DegreeResult& r) {
    ordered_json j;
    j["method"] = r.method;
    j["raw"] = oct_json(r.raw);
    j["scalar"] = r.scalar;
    j["rounded"] = r.rounded;
    j["residual"] = r.residual;
    j["node_count"] = r.node_count;
    return j;
}

int emit(const Outcome& oc, const GlobalOpts& g, double runtime_ms,
         std::ostream& out) {
    if (g.output == "text") {
        out << "command: " << oc.command << "\n";
        out << "raw:";
        for (double v : oc.raw.x) out << " " << v;
        out << "\n";
        out << "scalar: " << oc.scalar << "\n";
        out << "rounded: " << oc.rounded << "\n";
        out << "residual: " << oc.residual << "\n";
        out << "node_count: " << oc.node_count << "\n";
        out << "verdict: " << (oc.pass ? "pass" : "fail") << "\n";
        if (!oc.report.is_null()) out << "report: " << oc.report.dump() << "\n";
    } else {
        ordered_json j;
        j["schema"] = 1;
        j["command"] = oc.command;
        j["inputs"] = oc.inputs;
        j["raw"] = oct_json(oc.raw);
        j["scalar"] = oc.scalar;
        j["rounded"] = oc.rounded;
        j["residual"] = oc.residual;
        j["node_count"] = oc.node_count;
        j["runtime_ms"] = runtime_ms;
        j["verdict"] = oc.pass ? "pass" : "fail";
        if (!oc.report.is_null()) j["report"] = oc.report;
        out << j.dump(2) << "\n";
    }
    return oc.pass ? kExitPass : kExitVerdictFail;
}

// ---------------------------------------------------------------------------
// Command bodies.

Outcome run_table() {
    Outcome oc;
    oc.command = "table";
    oc.node_count = verify_multiplication_table();
    ordered_json entries = ordered_json::array();
    for (int i = 1; i <= 7; ++i) {
        for (int j = 1; j <= 7; ++j) {
            const TableEntry e = table_entry(i, j);
            ordered_json row;
            row["i"] = i;
            row["j"] = j;
            std::string prod;
            if (e.index == 0) {
                prod = e.sign < 0 ? "-1" : "1";
            } else {
                prod = (e.sign < 0 ? "-e" : "e") + std::to_string(e.index);
            }
            row["product"] = prod;
            entries.push_back(row);
        }
    }
    oc.report["entries"] = entries;
    oc.pass = true;
    return oc;
}

Outcome run_check_cr(const std::string& field_str,
                     const std::string& side_str, int points,
                     const GlobalOpts& g) {
    if (points < 1) throw usage_error("--points must be >= 1");
    const OctonionField f = parse_field(field_str);

    // Residuals are judged relative to max(1, |f(z)|): the finite-difference
    // truncation error grows with the field's local scale, so an absolute
    // threshold would misgrade large-degree fields far from the origin.
    constexpr double kRegular = 1e-6;
    SplitMix64 rng(g.seed);
    double max_left = 0.0, max_right = 0.0;
    for (int i = 0; i < points; ++i) {
        Octonion z;
        for (int c = 0; c < 8; ++c) z.x[c] = rng.uniform(-2.0, 2.0);
        const double scale = std::max(1.0, norm(f.evaluate(z)));
        max_left = std::max(max_left, norm(cr_residual(f, z, Side::left)) / scale);
        max_right =
            std::max(max_right, norm(cr_residual(f, z, Side::right)) / scale);
    }
    const bool left_ok = max_left < kRegular;
    const bool right_ok = max_right < kRegular;
    Regularity observed = Regularity::none;
    if (left_ok && right_ok) observed = Regularity::both;
    else if (left_ok) observed = Regularity::left;
    else if (right_ok) observed = Regularity::right;

    Outcome oc;
    oc.command = "check-cr";
    oc.inputs["field"] = field_str;
    oc.inputs["side"] = side_str.empty() ? "both" : side_str;
    oc.inputs["points"] = points;
    oc.inputs["seed"] = g.seed;
    oc.report["max_left_residual"] = max_left;
    oc.report["max_right_residual"] = max_right;
    oc.report["claimed"] = to_string(f.regularity_claim);
    oc.report["observed"] = to_string(observed);
    oc.node_count = static_cast<std::uint64_t>(points);
    if (side_str == "left") {
        oc.scalar = max_left;
        oc.pass = left_ok == (f.regularity_claim == Regularity::left ||
                              f.regularity_claim == Regularity::both);
    } else if (side_str == "right") {
        oc.scalar = max_right;
        oc.pass = right_ok == (f.regularity_claim == Regularity::right ||
                               f.regularity_claim == Regularity::both);
    } else {
        oc.scalar = std::max(max_left, max_right);
        oc.pass = observed == f.regularity_claim;
    }
    oc.residual = oc.scalar;
    return oc;
}

Outcome run_winding(const std::string& surface_str,
                    const std::string& point_str, const std::string& side_str,
                    const GlobalOpts& g) {
    const ParamSurface surface = parse_surface(surface_str);
    const Octonion z = parse_octonion(point_str);
    const Side side = side_str == "right" ? Side::right : Side::left;
    const QuadratureSpec spec = make_spec(g);
    const DegreeResult r =
        winding_number(surface, z, side, spec, make_tol(g), g.threads);

    Outcome oc;
    oc.command = "winding";
    oc.inputs["surface"] = surface_str;
    oc.inputs["point"] = oct_json(z);
    oc.inputs["side"] = side == Side::right ? "right" : "left";
    oc.inputs["quadrature"] = spec_json(spec);
    oc.take(r, make_tol(g));
    return oc;
}

Outcome run_order(const std::string& field_str, const std::string& center_str,
                  double radius, const std::string& a_str,
                  const std::string& method_str, const GlobalOpts& g) {
    const OctonionField f = parse_field(field_str);
    const Octonion c = parse_octonion(center_str);
    const Octonion a = parse_octonion(a_str);
    OrderMethod method = OrderMethod::pullback;
    if (method_str == "image") method = OrderMethod::image;
    else if (method_str != "pullback")
        throw usage_error("--method must be pullback or image");
    const QuadratureSpec spec = make_spec(g);
    const DegreeResult r = order_isolated(f, c, a, radius, spec, method,
                                          make_tol(g), g.threads);

    Outcome oc;
    oc.command = "order";
    oc.inputs["field"] = field_str;
    oc.inputs["center"] = oct_json(c);
    oc.inputs["radius"] = radius;
    oc.inputs["a"] = oct_json(a);
    oc.inputs["method"] = method_str;
    oc.inputs["quadrature"] = spec_json(spec);
    oc.take(r, make_tol(g));
    return oc;
}

Outcome run_tube_order(const std::string& field_str,
                       const std::string& core_str, double eps,
                       const GlobalOpts& g) {
    const OctonionField f = parse_field(field_str);
    const CoreManifold core = parse_core(core_str);
    const QuadratureSpec spec = make_spec(g);
    const DegreeResult r =
        order_variety(f, core, eps, spec, make_tol(g), g.threads);

    Outcome oc;
    oc.command = "tube-order";
    oc.inputs["field"] = field_str;
    oc.inputs["core"] = core_str;
    oc.inputs["eps"] = eps;
    oc.inputs["quadrature"] = spec_json(spec);
    oc.take(r, make_tol(g));
    return oc;
}

Outcome run_argument(const std::string& field_str,
                     const std::string& boundary_str,
                     const std::string& zeros_str, const std::string& a_str,
                     const GlobalOpts& g) {
    const OctonionField f = parse_field(field_str);
    const ParamSurface boundary = parse_surface(boundary_str);
    const Octonion a = parse_octonion(a_str);
    std::vector<ZeroSpec> zeros;
    for (const auto& part : split_top(zeros_str, ','))
        zeros.push_back(parse_zero(part));
    const QuadratureSpec spec = make_spec(g);
    const Tolerances tol = make_tol(g);
    const ArgumentReport rep =
        argument_principle(f, boundary, zeros, a, spec, tol, g.threads);

    Outcome oc;
    oc.command = "argument";
    oc.inputs["field"] = field_str;
    oc.inputs["boundary"] = boundary_str;
    oc.inputs["zeros"] = zeros_str;
    oc.inputs["a"] = oct_json(a);
    oc.inputs["quadrature"] = spec_json(spec);
    oc.take(rep.lhs, tol);
    oc.residual = rep.delta;
    ordered_json terms = ordered_json::array();
    for (const auto& t : rep.rhs_terms) terms.push_back(degree_json(t));
    oc.report["lhs"] = degree_json(rep.lhs);
    oc.report["rhs_terms"] = terms;
    oc.report["rhs_sum"] = rep.rhs_sum;
    oc.report["rhs_rounded_sum"] = rep.rhs_rounded_sum;
    oc.report["delta"] = rep.delta;
    oc.pass = rep.delta < tol.integer_tolerance &&
              rep.lhs.rounded == rep.rhs_rounded_sum;
    return oc;
}

Outcome run_rouche(const std::string& field_str,
                   const std::string& perturbed_str,
                   const std::string& boundary_str, const GlobalOpts& g) {
    const OctonionField f = parse_field(field_str);
    const OctonionField gfield = parse_field(perturbed_str);
    const ParamSurface boundary = parse_surface(boundary_str);
    const QuadratureSpec spec = make_spec(g);
    const Tolerances tol = make_tol(g);
    const RoucheReport rep =
        rouche_check(f, gfield, boundary, spec, tol, g.threads);

    Outcome oc;
    oc.command = "rouche";
    oc.inputs["field"] = field_str;
    oc.inputs["perturbed"] = perturbed_str;
    oc.inputs["boundary"] = boundary_str;
    oc.inputs["quadrature"] = spec_json(spec);
    oc.report["hypothesis_ok"] = rep.hypothesis_ok;
    oc.report["min_f"] = rep.min_f;
    oc.report["max_diff"] = rep.max_diff;
    oc.report["margin"] = rep.margin;
    if (rep.hypothesis_ok) {
        oc.take(*rep.sum_f, tol);
        oc.report["sum_f"] = degree_json(*rep.sum_f);
        oc.report["sum_g"] = degree_json(*rep.sum_g);
        oc.report["sums_equal"] = rep.sums_equal;
        oc.pass = rep.sums_equal;
    } else {
        oc.report["violating_node"] = oct_json(rep.violating_node);
        oc.pass = false;
    }
    return oc;
}

Outcome run_hurwitz(const std::string& family_str, std::int64_t n_max,
                    const std::string& region_str, double shift,
                    int grid_samples, const GlobalOpts& g) {
    // Region format: ball(<octonion literal>;radius).
    const auto [rname, rinner] = split_call(region_str);
    if (rname != "ball")
        throw usage_error("region format: ball(c0,...,c7;r) or ball(<literal>;r)");
    const auto rparts = split_top(rinner, ';');
    if (rparts.size() != 2)
        throw usage_error("region format: ball(<center>;<radius>)");
    const Octonion center = parse_octonion(rparts[0]);
    const double radius = parse_double(rparts[1]);

    std::function<OctonionField(std::int64_t)> family;
    if (family_str == "constant_inverse_n") {
        family = [](std::int64_t n) {
            std::vector<double> p(8, 0.0);
            p[0] = 1.0 / static_cast<double>(n);
            return catalog_get("constant", p);
        };
    } else if (family_str == "constant_one_plus_inverse_n") {
        family = [](std::int64_t n) {
            std::vector<double> p(8, 0.0);
            p[0] = 1.0 + 1.0 / static_cast<double>(n);
            return catalog_get("constant", p);
        };
    } else if (family_str == "hempfling_shifted") {
        family = [shift](std::int64_t n) {
            OctonionField base = catalog_get("hempfling", {});
            const double offset = shift + 1.0 / static_cast<double>(n);
            const auto eval = base.evaluate;
            base.evaluate = [eval, offset](const Octonion& z) {
                Octonion v = eval(z);
                v.x[0] += offset;
                return v;
            };
            base.name = "hempfling_shifted";
            base.regularity_claim = Regularity::none;
            return base;
        };
    } else {
        throw usage_error(
            "unknown family '" + family_str +
            "' (constant_inverse_n, constant_one_plus_inverse_n, "
            "hempfling_shifted)");
    }

    const QuadratureSpec spec = make_spec(g);
    const Tolerances tol = make_tol(g);
    const HurwitzReport rep = hurwitz_check(family, n_max, center, radius,
                                            grid_samples, g.seed, spec, tol,
                                            g.threads);

    Outcome oc;
    oc.command = "hurwitz";
    oc.inputs["family"] = family_str;
    oc.inputs["nmax"] = n_max;
    oc.inputs["region"] = region_str;
    oc.inputs["shift"] = shift;
    oc.inputs["grid"] = grid_samples;
    oc.inputs["seed"] = g.seed;
    oc.inputs["quadrature"] = spec_json(spec);
    oc.report["branch"] = rep.branch;
    oc.report["grid_max"] = rep.grid_max;
    oc.report["grid_min"] = rep.grid_min;
    if (rep.order_sum) {
        oc.take(*rep.order_sum, tol);
        oc.report["order_sum"] = degree_json(*rep.order_sum);
    }
    if (rep.violating_point)
        oc.report["violating_point"] = oct_json(*rep.violating_point);
    if (rep.violating_index != 0)
        oc.report["violating_index"] = rep.violating_index;
    oc.pass = rep.branch != "hypothesis_fails";
    return oc;
}

Outcome run_oracle(const std::string& field_str, const std::string& center_str,
                   double radius, const std::string& a_str, int starts,
                   const GlobalOpts& g) {
    const OctonionField f = parse_field(field_str);
    const Octonion c = parse_octonion(center_str);
    const Octonion a = parse_octonion(a_str);
    const OracleResult res =
        degree_oracle(f, c, radius, a, starts, g.seed, make_tol(g));

    Outcome oc;
    oc.command = "oracle";
    oc.inputs["field"] = field_str;
    oc.inputs["center"] = oct_json(c);
    oc.inputs["radius"] = radius;
    oc.inputs["a"] = oct_json(a);
    oc.inputs["starts"] = starts;
    oc.inputs["seed"] = g.seed;
    oc.scalar = static_cast<double>(res.degree);
    oc.rounded = res.degree;
    oc.raw = Octonion(static_cast<double>(res.degree));
    oc.node_count = static_cast<std::uint64_t>(starts);
    oc.report["conclusive"] = res.conclusive;
    oc.report["degree"] = res.degree;
    oc.report["preimage_count"] = res.preimage_count;
    oc.report["nonconverged_starts"] = res.nonconverged_starts;
    oc.report["perturbed"] = res.perturbed;
    oc.report["effective_a"] = oct_json(res.effective_a);
    oc.report["note"] = res.note;
    ordered_json pres = ordered_json::array();
    for (const auto& p : res.preimages) pres.push_back(oct_json(p));
    oc.report["preimages"] = pres;
    oc.pass = res.conclusive;
    return oc;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
    CLI::App app{
        "octodeg: octonion algebra, Cauchy-Riemann residuals, and "
        "topological-degree integrals on 7-dimensional surfaces"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--nodes", g.nodes,
                   "Tensor nodes per axis: one count or 7 comma-separated")
        ->capture_default_str();
    app.add_option("--rule", g.rule, "Quadrature rule: gl or mc")
        ->capture_default_str();
    app.add_option("--samples", g.samples, "Monte Carlo sample count")
        ->capture_default_str();
    app.add_option("--tolerance", g.tolerance,
                   "Residual below which a rounded integer is accepted")
        ->capture_default_str();
    app.add_option("--seed", g.seed, "Seed for all randomized pieces")
        ->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads (0 = hardware)")
        ->capture_default_str();
    app.add_option("--output", g.output, "Output format: json or text")
        ->capture_default_str();

    std::function<Outcome()> action;

    auto* table = app.add_subcommand(
        "table", "Print and self-verify the unit multiplication table");
    table->fallthrough();
    table->callback([&] { action = [] { return run_table(); }; });

    auto* check = app.add_subcommand(
        "check-cr",
        "Sample Cauchy-Riemann residuals of a field at random points.\n"
        "Example: octodeg check-cr --field sum_squares(3) --points 50");
    check->fallthrough();
    auto cc_field = std::make_shared<std::string>();
    auto cc_side = std::make_shared<std::string>();
    auto cc_points = std::make_shared<int>(100);
    check->add_option("--field", *cc_field, "Field spec, e.g. sum_squares(7)")
        ->required();
    check->add_option("--side", *cc_side, "left or right (default: judge both)");
    check->add_option("--points", *cc_points, "Sample count")
        ->capture_default_str();
    check->callback([&, cc_field, cc_side, cc_points] {
        action = [&, cc_field, cc_side, cc_points] {
            return run_check_cr(*cc_field, *cc_side, *cc_points, g);
        };
    });

    auto* winding = app.add_subcommand(
        "winding",
        "Winding number of a surface around a point.\n"
        "Example: octodeg winding --surface \"sphere(0,0,0,0,0,0,0,0;1)\" "
        "--point 0");
    winding->fallthrough();
    auto w_surface = std::make_shared<std::string>();
    auto w_point = std::make_shared<std::string>("0");
    auto w_side = std::make_shared<std::string>("left");
    winding->add_option("--surface", *w_surface, "Surface spec")->required();
    winding->add_option("--point", *w_point, "Octonion literal")
        ->capture_default_str();
    winding->add_option("--side", *w_side, "left or right")
        ->capture_default_str();
    winding->callback([&, w_surface, w_point, w_side] {
        action = [&, w_surface, w_point, w_side] {
            return run_winding(*w_surface, *w_point, *w_side, g);
        };
    });

    auto* order = app.add_subcommand(
        "order",
        "Order of the isolated a-point of a field at a center.\n"
        "Example: octodeg order --field identity --center 0 --radius 0.5");
    order->fallthrough();
    auto o_field = std::make_shared<std::string>();
    auto o_center = std::make_shared<std::string>("0");
    auto o_radius = std::make_shared<double>(0.3);
    auto o_a = std::make_shared<std::string>("0");
    auto o_method = std::make_shared<std::string>("pullback");
    order->add_option("--field", *o_field, "Field spec")->required();
    order->add_option("--center", *o_center, "Octonion literal")
        ->capture_default_str();
    order->add_option("--radius", *o_radius, "Enclosure sphere radius")
        ->capture_default_str();
    order->add_option("--a", *o_a, "Target value (octonion literal)")
        ->capture_default_str();
    order->add_option("--method", *o_method, "pullback or image")
        ->capture_default_str();
    order->callback([&, o_field, o_center, o_radius, o_a, o_method] {
        action = [&, o_field, o_center, o_radius, o_a, o_method] {
            return run_order(*o_field, *o_center, *o_radius, *o_a, *o_method, g);
        };
    });

    auto* tube_order = app.add_subcommand(
        "tube-order",
        "Order of a zero variety via the tube integral.\n"
        "Example: octodeg tube-order --field circle_variety "
        "--core \"circle(e1,e2;1)\" --eps 0.2 --nodes 4,16,16,4,4,4,4");
    tube_order->fallthrough();
    auto t_field = std::make_shared<std::string>();
    auto t_core = std::make_shared<std::string>();
    auto t_eps = std::make_shared<double>(0.2);
    tube_order->add_option("--field", *t_field, "Field spec")->required();
    tube_order->add_option("--core", *t_core,
                           "Core spec: point(c), circle(AX1,AX2;R), "
                           "ksphere(k;R), segment(a;b)")
        ->required();
    tube_order->add_option("--eps", *t_eps, "Tube thickness")
        ->capture_default_str();
    tube_order->callback([&, t_field, t_core, t_eps] {
        action = [&, t_field, t_core, t_eps] {
            return run_tube_order(*t_field, *t_core, *t_eps, g);
        };
    });

    auto* argument = app.add_subcommand(
        "argument",
        "Boundary order integral vs. sum of enclosed zero orders.\n"
        "Example: octodeg argument --field hempfling "
        "--boundary \"sphere(1,1,1,1,1,1,1,1;0.5)\" "
        "--zeros \"point(1,1,1,1,1,1,1,1;0.3;nodes=8,8,8,8,8,8,8)\" "
        "--nodes 16,8,8,8,8,8,8");
    argument->fallthrough();
    auto a_field = std::make_shared<std::string>();
    auto a_boundary = std::make_shared<std::string>();
    auto a_zeros = std::make_shared<std::string>();
    auto a_target = std::make_shared<std::string>("0");
    argument->add_option("--field", *a_field, "Field spec")->required();
    argument->add_option("--boundary", *a_boundary, "Surface spec")->required();
    argument->add_option("--zeros", *a_zeros,
                         "Comma-separated zero enclosures")
        ->required();
    argument->add_option("--a", *a_target, "Target value")
        ->capture_default_str();
    argument->callback([&, a_field, a_boundary, a_zeros, a_target] {
        action = [&, a_field, a_boundary, a_zeros, a_target] {
            return run_argument(*a_field, *a_boundary, *a_zeros, *a_target, g);
        };
    });

    auto* rouche = app.add_subcommand(
        "rouche",
        "Perturbation stability of boundary order sums.\n"
        "Example: octodeg rouche --field \"constant(3)\" "
        "--perturbed \"constant(3.01)\" "
        "--boundary \"sphere(0,0,0,0,0,0,0,0;1)\" --nodes 4");
    rouche->fallthrough();
    auto r_field = std::make_shared<std::string>();
    auto r_perturbed = std::make_shared<std::string>();
    auto r_boundary = std::make_shared<std::string>();
    rouche->add_option("--field", *r_field, "Reference field spec")->required();
    rouche->add_option("--perturbed", *r_perturbed, "Perturbed field spec")
        ->required();
    rouche->add_option("--boundary", *r_boundary, "Surface spec")->required();
    rouche->callback([&, r_field, r_perturbed, r_boundary] {
        action = [&, r_field, r_perturbed, r_boundary] {
            return run_rouche(*r_field, *r_perturbed, *r_boundary, g);
        };
    });

    auto* hurwitz = app.add_subcommand(
        "hurwitz",
        "Classify the limit of a nonvanishing field family on a ball.\n"
        "Example: octodeg hurwitz --family constant_inverse_n "
        "--nmax 10000000000 --region \"ball(0;0.5)\" --nodes 4");
    hurwitz->fallthrough();
    auto h_family = std::make_shared<std::string>();
    auto h_nmax = std::make_shared<std::int64_t>(10000000000LL);
    auto h_region = std::make_shared<std::string>("ball(0;0.5)");
    auto h_shift = std::make_shared<double>(2.0);
    auto h_grid = std::make_shared<int>(64);
    hurwitz->add_option("--family", *h_family,
                        "constant_inverse_n, constant_one_plus_inverse_n, "
                        "hempfling_shifted")
        ->required();
    hurwitz->add_option("--nmax", *h_nmax, "Largest family index")
        ->capture_default_str();
    hurwitz->add_option("--region", *h_region, "ball(<center>;<radius>)")
        ->capture_default_str();
    hurwitz->add_option("--shift", *h_shift,
                        "Offset for hempfling_shifted")
        ->capture_default_str();
    hurwitz->add_option("--grid", *h_grid, "Sample grid size")
        ->capture_default_str();
    hurwitz->callback([&, h_family, h_nmax, h_region, h_shift, h_grid] {
        action = [&, h_family, h_nmax, h_region, h_shift, h_grid] {
            return run_hurwitz(*h_family, *h_nmax, *h_region, *h_shift, *h_grid,
                               g);
        };
    });

    auto* oracle = app.add_subcommand(
        "oracle",
        "Brute-force degree via multi-start Newton preimage counting.\n"
        "Example: octodeg oracle --field identity --center 0 --radius 0.5 "
        "--starts 32");
    oracle->fallthrough();
    auto x_field = std::make_shared<std::string>();
    auto x_center = std::make_shared<std::string>("0");
    auto x_radius = std::make_shared<double>(0.5);
    auto x_a = std::make_shared<std::string>("0");
    auto x_starts = std::make_shared<int>(64);
    oracle->add_option("--field", *x_field, "Field spec")->required();
    oracle->add_option("--center", *x_center, "Octonion literal")
        ->capture_default_str();
    oracle->add_option("--radius", *x_radius, "Enclosure sphere radius")
        ->capture_default_str();
    oracle->add_option("--a", *x_a, "Target value")->capture_default_str();
    oracle->add_option("--starts", *x_starts, "Newton start count")
        ->capture_default_str();
    oracle->callback([&, x_field, x_center, x_radius, x_a, x_starts] {
        action = [&, x_field, x_center, x_radius, x_a, x_starts] {
            return run_oracle(*x_field, *x_center, *x_radius, *x_a, *x_starts,
                              g);
        };
    });

    std::vector<std::string> argv_strings;
    argv_strings.push_back("octodeg");
    argv_strings.insert(argv_strings.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(argv_strings.size());
    for (const auto& s : argv_strings) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (!action) {
            err << "no subcommand selected\n";
            return kExitUsage;
        }
        const auto t0 = std::chrono::steady_clock::now();
        Outcome oc = action();
        const auto t1 = std::chrono::steady_clock::now();
        const double ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();
        return emit(oc, g, ms, out);
    } catch (const CLI::CallForHelp&) {
        const auto parsed = app.get_subcommands();
        out << (parsed.empty() ? app.help() : parsed.front()->help());
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const usage_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const contract_violation& e) {
        err << "contract violation: " << e.what() << "\n";
        return kExitContract;
    } catch (const internal_error& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitContract;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitContract;
    }
}

}  // namespace oct::cli
