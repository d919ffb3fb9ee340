#pragma once

// Named nonautonomous planar systems in Lie–Scheffers form X_t = Σ b_i(t) X_i.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lhp/catalog.hpp"
#include "lhp/charts.hpp"
#include "lhp/errors.hpp"
#include "lhp/geometry.hpp"
#include "lhp/signal.hpp"

namespace lhp {

enum class SystemStatus { lie_hamilton, lie_not_lh, not_lh };

inline std::string to_string(SystemStatus s) {
    switch (s) {
        case SystemStatus::lie_hamilton: return "Lie-Hamilton";
        case SystemStatus::lie_not_lh: return "Lie, not LH";
        case SystemStatus::not_lh: return "not LH";
    }
    return "?";
}

/// Chart to a catalog class and the constant matrix expressing the pushed-forward algebra fields in its basis.
struct Canonical {
    ClassId cls;
    Chart chart;
    std::vector<std::vector<double>> mixing;
};

struct LHSystem {
    std::string name;
    nlohmann::json params = nlohmann::json::object();
    std::vector<VectorField> fields;
    std::vector<Signal> coeffs;
    /// User-facing coefficient names, with the signals as supplied.
    std::map<std::string, Signal> inputs;
    std::optional<ClassId> class_hint;
    std::string class_note;
    SystemStatus status = SystemStatus::lie_hamilton;
    std::optional<Canonical> canonical;
    /// Indices of the fields spanning the algebra the hint refers to.
    std::vector<int> algebra;
    /// Brackets of `fields` as given by the source equations.
    StructureConstants structure;
    /// Symplectic density and Hamiltonians of the algebra fields, when known in the system's own coordinates.
    ScalarField omega_density;
    std::vector<ScalarField> hamiltonians;
    Domain domain;
    SampleRegion region;

    std::vector<double> coefficients(double t) const {
        std::vector<double> b(coeffs.size());
        for (std::size_t i = 0; i < coeffs.size(); ++i) b[i] = coeffs[i](t);
        return b;
    }

    /// X_t(p). Fields whose coefficient is structurally zero are skipped.
    Point rhs(double t, const Point& p) const {
        Point v{0.0, 0.0};
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (coeffs[i].is_zero()) continue;
            v = v + coeffs[i](t) * fields[i](p);
        }
        return v;
    }

    bool contains(const Point& p) const { return in_domain(domain, p); }

    std::vector<VectorField> algebra_fields() const {
        std::vector<VectorField> out;
        for (int i : algebra) out.push_back(fields[static_cast<std::size_t>(i)]);
        return out;
    }

    nlohmann::json to_json() const {
        nlohmann::json c = nlohmann::json::object();
        for (const auto& [k, s] : inputs) c[k] = s.to_json();
        return {{"system", name}, {"params", params}, {"coeffs", c}};
    }
};

using CoeffMap = std::map<std::string, Signal>;

namespace detail {

inline double required_param(const nlohmann::json& params, const std::string& key) {
    if (!params.contains(key)) throw ConfigError("missing parameter '" + key + "'");
    if (!params.at(key).is_number()) throw ConfigError("parameter '" + key + "' must be a number");
    return params.at(key).get<double>();
}

inline double optional_param(const nlohmann::json& params, const std::string& key, double fallback) {
    return params.contains(key) ? required_param(params, key) : fallback;
}

inline void check_param_names(const nlohmann::json& params, const std::set<std::string>& allowed) {
    for (auto it = params.begin(); it != params.end(); ++it)
        if (!allowed.count(it.key())) throw ConfigError("unknown parameter '" + it.key() + "'");
}

/// Resolves the named coefficients; unknown names are rejected and missing ones default to zero.
inline std::map<std::string, Signal> resolve_coeffs(const CoeffMap& given, const std::vector<std::string>& names,
                                                    const std::set<std::string>& ignored = {}) {
    for (const auto& [k, s] : given)
        if (std::find(names.begin(), names.end(), k) == names.end() && !ignored.count(k))
            throw ConfigError("unknown coefficient '" + k + "'");
    std::map<std::string, Signal> out;
    for (const auto& k : names) {
        auto it = given.find(k);
        out[k] = it == given.end() ? Signal::constant(0.0) : it->second;
    }
    return out;
}

inline Signal negated(const Signal& s) { return Signal::scaled(-1.0, s); }

inline LHSystem build_complex_bernoulli(const nlohmann::json& params, const CoeffMap& given) {
    check_param_names(params, {"n"});
    const double n = required_param(params, "n");
    if (n == 0.0 || n == 1.0) throw ConfigError("complex_bernoulli needs n not in {0, 1}");
    const double m = n - 1.0;
    LHSystem s;
    s.name = "complex_bernoulli";
    s.params = params;
    s.inputs = resolve_coeffs(given, {"a1R", "a1I", "a2R", "a2I"});
    s.domain = [](const Point& p) { return p.x > 0.0; };
    s.fields = {
        VectorField("r d/dr", [](auto r, auto) { return vec(r, 0.0); }, s.domain),
        VectorField("d/dtheta", [](auto, auto) { return vec(0.0, 1.0); }, s.domain),
        VectorField("r^n cos(phi) d/dr + r^(n-1) sin(phi) d/dtheta",
                    [n, m](auto r, auto th) { return vec(pow(r, n) * cos(m * th), pow(r, m) * sin(m * th)); },
                    s.domain),
        VectorField("-r^n sin(phi) d/dr + r^(n-1) cos(phi) d/dtheta",
                    [n, m](auto r, auto th) { return vec(-pow(r, n) * sin(m * th), pow(r, m) * cos(m * th)); },
                    s.domain)};
    s.coeffs = {s.inputs["a1R"], s.inputs["a1I"], s.inputs["a2R"], s.inputs["a2I"]};
    s.region = {{0.5, 2.0, -3.0, 3.0}, s.domain};
    s.structure = StructureConstants(4);
    s.structure.set(0, 2, 2, m);
    s.structure.set(0, 3, 3, m);
    s.structure.set(1, 2, 3, m);
    s.structure.set(1, 3, 2, -m);
    s.omega_density = ScalarField("r^(1-2n)", [n](auto r, auto) { return pow(r, 1.0 - 2.0 * n); }, s.domain);
    s.hamiltonians = {
        ScalarField("1/((2n-2) r^(2n-2))", [n, m](auto r, auto) { return 1.0 / ((2.0 * m) * pow(r, 2.0 * m)); },
                    s.domain),
        ScalarField("sin(phi)/((n-1) r^(n-1))", [m](auto r, auto th) { return sin(m * th) / (m * pow(r, m)); },
                    s.domain),
        ScalarField("cos(phi)/((n-1) r^(n-1))", [m](auto r, auto th) { return cos(m * th) / (m * pow(r, m)); },
                    s.domain)};
    if (s.inputs["a1R"].is_zero()) {
        s.algebra = {1, 2, 3};
        s.class_hint = ClassId{ClassKind::P1, 0, {}};
        s.class_note = "a1R = 0: Hamiltonian for the bivector r^(2n-1) d/dr ^ d/dtheta; P1 after relabeling";
    } else if (s.inputs["a1I"].is_zero() && s.inputs["a2I"].is_zero()) {
        s.algebra = {0, 2};
        s.hamiltonians.clear();
        s.omega_density = ScalarField();
        const ClassId target = parse_class_id("I14A:r=1:eta=exp(1x)");
        s.class_hint = target;
        s.canonical = Canonical{target, bernoulli_chart(n), {{m, 0.0}, {0.0, 1.0}}};
        s.class_note = "real coefficients: h2 algebra, I14A with r = 1 via the bernoulli_h2 chart";
    } else {
        s.algebra = {0, 1, 2, 3};
        s.hamiltonians.clear();
        s.omega_density = ScalarField();
        s.status = SystemStatus::not_lh;
        s.class_note = "a1R != 0: the four-dimensional algebra is not Hamiltonian for any Poisson structure";
    }
    return s;
}

inline LHSystem sl2_system(const std::string& name, const nlohmann::json& params, std::vector<VectorField> fields) {
    LHSystem s;
    s.name = name;
    s.params = params;
    s.fields = std::move(fields);
    s.algebra = {0, 1, 2};
    s.structure = sl2_constants();
    return s;
}

inline LHSystem build_cayley_klein(const nlohmann::json& params, const CoeffMap& given) {
    check_param_names(params, {"iota2"});
    const double i2 = required_param(params, "iota2");
    if (i2 != -1.0 && i2 != 0.0 && i2 != 1.0) throw ConfigError("cayley_klein needs iota2 in {-1, 0, 1}");
    LHSystem s = sl2_system(
        "cayley_klein", params,
        {VectorField("d/du", [](auto, auto) { return vec(1.0, 0.0); }),
         VectorField("u d/du + v d/dv", [](auto u, auto v) { return vec(u, v); }),
         VectorField("(u^2 + iota2 v^2) d/du + 2uv d/dv",
                     [i2](auto u, auto v) { return vec(u * u + i2 * v * v, 2.0 * u * v); })});
    s.inputs = resolve_coeffs(given, {"a0", "a1", "a2"});
    s.coeffs = {s.inputs["a0"], s.inputs["a1"], s.inputs["a2"]};
    s.region = {{-3.0, 3.0, 0.2, 3.0}, {}};
    if (i2 < 0.0) {
        s.domain = [](const Point& p) { return p.y != 0.0; };
        s.class_hint = ClassId{ClassKind::P2, 0, {}};
        s.canonical = Canonical{*s.class_hint, Chart::identity(), identity_mixing(3)};
        s.class_note = "complex Riccati: P2 in (u, v)";
    } else if (i2 > 0.0) {
        s.domain = [](const Point& p) { return p.y != 0.0; };
        s.class_hint = ClassId{ClassKind::I4, 0, {}};
        s.canonical = Canonical{*s.class_hint, split_complex_chart(), identity_mixing(3)};
        s.class_note = "split-complex Riccati: I4 via x = u+v, y = u-v";
    } else {
        s.domain = [](const Point& p) { return p.y > 0.0; };
        s.class_hint = ClassId{ClassKind::I5, 0, {}};
        s.canonical = Canonical{*s.class_hint, dual_chart(), identity_mixing(3)};
        s.class_note = "dual Riccati: I5 via x = u, y = sqrt(v)";
    }
    s.region.accept = s.domain;
    return s;
}

inline LHSystem build_coupled_riccati(const nlohmann::json& params, const CoeffMap& given) {
    check_param_names(params, {});
    const ClassRecord c = get_class(ClassKind::I4);
    LHSystem s = sl2_system("coupled_riccati", params, c.basis);
    s.inputs = resolve_coeffs(given, {"a0", "a1", "a2"});
    s.coeffs = {s.inputs["a0"], s.inputs["a1"], s.inputs["a2"]};
    s.domain = c.domain;
    s.region = c.region;
    s.class_hint = c.id;
    s.canonical = Canonical{c.id, Chart::identity(), identity_mixing(3)};
    s.omega_density = c.omega_density;
    s.hamiltonians = c.hamiltonians;
    s.class_note = "coupled Riccati: I4 in its own coordinates";
    return s;
}

/// P2, I4 or I5 from the sign of the invariant, which has the sign of c.
inline void hint_by_sign(LHSystem& s, double c) {
    const ClassKind k = c > 0.0 ? ClassKind::P2 : (c < 0.0 ? ClassKind::I4 : ClassKind::I5);
    s.class_hint = ClassId{k, 0, {}};
    s.class_note = std::string("sign of c selects ") + to_string(k);
}

inline LHSystem build_milne_pinney(const nlohmann::json& params, const CoeffMap& given) {
    check_param_names(params, {"c"});
    const double c = required_param(params, "c");
    LHSystem s = sl2_system("milne_pinney", params,
                            {VectorField("-x d/dy", [](auto x, auto) { return vec(0.0, -x); }),
                             VectorField("(y d/dy - x d/dx)/2", [](auto x, auto y) { return vec(-0.5 * x, 0.5 * y); }),
                             VectorField("y d/dx + c/x^3 d/dy",
                                         [c](auto x, auto y) { return vec(y, c / (x * x * x)); })});
    s.inputs = resolve_coeffs(given, {"omega2"});
    s.coeffs = {s.inputs["omega2"], Signal::constant(0.0), Signal::constant(1.0)};
    s.domain = [](const Point& p) { return p.x != 0.0; };
    s.region = {{0.2, 3.0, -3.0, 3.0}, s.domain};
    hint_by_sign(s, c);
    return s;
}

inline LHSystem build_kummer_schwarz(const nlohmann::json& params, const CoeffMap& given) {
    check_param_names(params, {"c"});
    const double c = required_param(params, "c");
    LHSystem s = sl2_system(
        "kummer_schwarz", params,
        {VectorField("2x d/dy", [](auto x, auto) { return vec(0.0, 2.0 * x); }),
         VectorField("x d/dx + 2y d/dy", [](auto x, auto y) { return vec(x, 2.0 * y); }),
         VectorField("y d/dx + (3y^2/(2x) - 2c x^3) d/dy",
                     [c](auto x, auto y) { return vec(y, 3.0 * y * y / (2.0 * x) - 2.0 * c * x * x * x); })});
    s.inputs = resolve_coeffs(given, {"eta"});
    s.coeffs = {s.inputs["eta"], Signal::constant(0.0), Signal::constant(1.0)};
    s.domain = [](const Point& p) { return p.x != 0.0; };
    s.region = {{0.2, 3.0, -3.0, 3.0}, s.domain};
    hint_by_sign(s, c);
    return s;
}

inline LHSystem build_diffusion_riccati(const nlohmann::json& params, const CoeffMap& given) {
    check_param_names(params, {"c0"});
    const double c0 = required_param(params, "c0");
    if (c0 != 0.0 && c0 != 1.0) throw ConfigError("diffusion_riccati needs c0 in {0, 1}");
    LHSystem s;
    s.name = "diffusion_riccati";
    s.params = params;
    s.fields = {VectorField("d/dx", [](auto, auto) { return vec(1.0, 0.0); }),
                VectorField("2x d/dx + y d/dy", [](auto x, auto y) { return vec(2.0 * x, y); }),
                VectorField("(4x^2 + c0 y^4) d/dx + 4xy d/dy",
                            [c0](auto x, auto y) { return vec(4.0 * x * x + c0 * y * y * y * y, 4.0 * x * y); })};
    s.inputs = resolve_coeffs(given, {"a", "b", "c"});
    s.coeffs = {negated(s.inputs["b"]), s.inputs["c"], s.inputs["a"]};
    s.algebra = {0, 1, 2};
    s.structure = StructureConstants(3);
    s.structure.set(0, 1, 0, 2.0);
    s.structure.set(0, 2, 1, 4.0);
    s.structure.set(1, 2, 2, 2.0);
    s.domain = [](const Point& p) { return p.y > 0.0; };
    s.region = {{-3.0, 3.0, 0.2, 3.0}, s.domain};
    s.omega_density = ScalarField("-1/y^3", [](auto, auto y) { return -1.0 / (y * y * y); }, s.domain);
    s.hamiltonians = {ScalarField("1/(2y^2)", [](auto, auto y) { return 0.5 / (y * y); }),
                      ScalarField("x/y^2", [](auto x, auto y) { return x / (y * y); }),
                      ScalarField("2x^2/y^2 - c0 y^2/2",
                                  [c0](auto x, auto y) { return 2.0 * x * x / (y * y) - 0.5 * c0 * y * y; })};
    if (c0 == 1.0) {
        s.class_hint = ClassId{ClassKind::I4, 0, {}};
        s.canonical = Canonical{*s.class_hint, diffusion_chart(), identity_mixing(3, 2.0)};
        s.class_note = "c0 = 1: I4 via u = 2x+y^2, v = 2x-y^2";
    } else {
        s.class_hint = ClassId{ClassKind::I5, 0, {}};
        s.canonical = Canonical{*s.class_hint, Chart::identity(), {{1, 0, 0}, {0, 2, 0}, {0, 0, 4}}};
        s.class_note = "c0 = 0: I5 up to rescaling of the basis";
    }
    return s;
}

inline LHSystem build_quadratic_hamiltonian(const nlohmann::json& params, const CoeffMap& given) {
    check_param_names(params, {});
    const ClassRecord c = get_class(ClassKind::P5);
    LHSystem s;
    s.name = "quadratic_hamiltonian";
    s.params = params;
    s.fields = c.basis;
    s.inputs = resolve_coeffs(given, {"alpha", "beta", "gamma", "delta", "epsilon"}, {"phi"});
    s.coeffs = {s.inputs["delta"], negated(s.inputs["epsilon"]), Signal::scaled(0.5, s.inputs["beta"]),
                s.inputs["alpha"], negated(s.inputs["gamma"])};
    s.algebra = {0, 1, 2, 3, 4};
    s.structure = c.structure;
    s.region = c.region;
    s.class_hint = c.id;
    s.canonical = Canonical{c.id, Chart::identity(), identity_mixing(5)};
    s.omega_density = c.omega_density;
    s.hamiltonians = c.hamiltonians;
    s.class_note = "two-photon LH algebra: P5 in its own coordinates";
    return s;
}

inline LHSystem build_second_order_riccati(const nlohmann::json& params, const CoeffMap& given) {
    check_param_names(params, {});
    LHSystem s;
    s.name = "second_order_riccati";
    s.params = params;
    s.domain = [](const Point& p) { return p.y < 0.0; };
    s.fields = {
        VectorField("1/sqrt(-p) d/dx", [](auto, auto p) { return vec(1.0 / sqrt(-p), 0.0); }, s.domain),
        VectorField("d/dx", [](auto, auto) { return vec(1.0, 0.0); }),
        VectorField("x d/dx - p d/dp", [](auto x, auto p) { return vec(x, -p); }),
        VectorField("x^2 d/dx - 2xp d/dp", [](auto x, auto p) { return vec(x * x, -2.0 * x * p); }),
        VectorField("x/sqrt(-p) d/dx + 2 sqrt(-p) d/dp",
                    [](auto x, auto p) {
                        const auto r = sqrt(-p);
                        return vec(x / r, 2.0 * r);
                    },
                    s.domain)};
    s.inputs = resolve_coeffs(given, {"a0", "a1", "a2"});
    s.coeffs = {Signal::constant(1.0), negated(s.inputs["a0"]), negated(s.inputs["a1"]), negated(s.inputs["a2"]),
                Signal::constant(0.0)};
    s.algebra = {0, 1, 2, 3, 4};
    s.structure = StructureConstants(5);
    s.structure.set(0, 2, 0, 0.5);
    s.structure.set(0, 3, 4, 1.0);
    s.structure.set(1, 2, 1, 1.0);
    s.structure.set(1, 3, 2, 2.0);
    s.structure.set(1, 4, 0, 1.0);
    s.structure.set(2, 3, 3, 1.0);
    s.structure.set(2, 4, 4, 0.5);
    s.region = {{-3.0, 3.0, -3.0, -0.2}, s.domain};
    s.class_hint = ClassId{ClassKind::P5, 0, {}};
    s.class_note = "two-photon algebra: P5";
    return s;
}

inline LHSystem build_projective_schrodinger(const nlohmann::json& params, const CoeffMap& given) {
    check_param_names(params, {});
    const ClassRecord c = get_class(ClassKind::P3);
    LHSystem s;
    s.name = "projective_schrodinger";
    s.params = params;
    s.fields = c.basis;
    s.inputs = resolve_coeffs(given, {"beta_x", "beta_y", "lambda1", "lambda2"});
    s.coeffs = {Signal::sum({s.inputs["lambda1"], negated(s.inputs["lambda2"])}), s.inputs["beta_y"],
                negated(s.inputs["beta_x"])};
    s.algebra = {0, 1, 2};
    s.structure = c.structure;
    s.region = c.region;
    s.class_hint = c.id;
    s.canonical = Canonical{c.id, Chart::identity(), identity_mixing(3)};
    s.omega_density = c.omega_density;
    s.hamiltonians = c.hamiltonians;
    s.class_note = "so(3): P3 in its own coordinates";
    return s;
}

inline LHSystem build_buchdahl(const nlohmann::json& params, const CoeffMap& given) {
    check_param_names(params, {"a"});
    if (!params.contains("a") || !params.at("a").is_array()) throw ConfigError("buchdahl needs 'a' as a coefficient list");
    const std::vector<double> a = params.at("a").get<std::vector<double>>();
    if (a.empty() || a.size() > 7) throw ConfigError("buchdahl a(x) must have degree between 0 and 6");
    LHSystem s;
    s.name = "buchdahl";
    s.params = params;
    s.fields = {VectorField("y d/dy", [](auto, auto y) { return vec(0.0, y); }),
                VectorField("y d/dx + a(x) y^2 d/dy", [a](auto x, auto y) {
                    decltype(x + y) ax = 0.0;
                    for (auto it = a.rbegin(); it != a.rend(); ++it) ax = ax * x + *it;
                    return vec(y, ax * y * y);
                })};
    s.inputs = resolve_coeffs(given, {"b"});
    s.coeffs = {s.inputs["b"], Signal::constant(1.0)};
    s.algebra = {0, 1};
    s.structure = StructureConstants(2);
    s.structure.set(0, 1, 1, 1.0);
    s.region = {{-3.0, 3.0, 0.2, 3.0}, {}};
    s.class_hint = parse_class_id("I14A:r=1:eta=exp(1x)");
    s.class_note = "h2 algebra: I14A with r = 1 (chart not constructed)";
    return s;
}

inline LHSystem build_lotka_volterra(const nlohmann::json& params, const CoeffMap& given) {
    check_param_names(params, {"a", "b"});
    const double a = required_param(params, "a");
    const double b = required_param(params, "b");
    if (a == 0.0) throw ConfigError("lotka_volterra needs a != 0");
    LHSystem s;
    s.name = "lotka_volterra";
    s.params = params;
    s.fields = {VectorField("a(x d/dx + y d/dy)", [a](auto x, auto y) { return vec(a * x, a * y); }),
                VectorField("-(x - ay)x d/dx - (bx - y)y d/dy",
                            [a, b](auto x, auto y) { return vec(-(x - a * y) * x, -(b * x - y) * y); })};
    s.inputs = resolve_coeffs(given, {"g"});
    s.coeffs = {Signal::constant(1.0), s.inputs["g"]};
    s.algebra = {0, 1};
    s.structure = StructureConstants(2);
    s.structure.set(0, 1, 1, a);
    s.region = {{0.2, 3.0, 0.2, 3.0}, {}};
    if (a == 1.0 && b == 1.0) {
        s.status = SystemStatus::lie_not_lh;
        s.class_note = "a = b = 1: the fields are everywhere parallel, so the system is Lie but not Lie-Hamilton";
    } else {
        s.class_hint = parse_class_id("I14A:r=1:eta=exp(1x)");
        s.class_note = "h2 algebra: I14A with r = 1 (chart not constructed)";
    }
    return s;
}

/// Canonical system of a catalog class: X_t = Σ b_i(t) X_i with coefficients b1..bd.
inline LHSystem build_lh_class(const nlohmann::json& params, const CoeffMap& given) {
    check_param_names(params, {"class"});
    if (!params.contains("class") || !params.at("class").is_string())
        throw ConfigError("lh_class needs 'class' as a class id string");
    const ClassRecord c = get_class(params.at("class").get<std::string>());
    LHSystem s;
    s.name = "lh_class";
    s.params = params;
    s.fields = c.basis;
    std::vector<std::string> names;
    for (int i = 1; i <= c.dim(); ++i) names.push_back("b" + std::to_string(i));
    s.inputs = resolve_coeffs(given, names);
    for (const auto& k : names) s.coeffs.push_back(s.inputs[k]);
    for (int i = 0; i < c.dim(); ++i) s.algebra.push_back(i);
    s.structure = c.structure;
    s.domain = c.domain;
    s.region = c.region;
    s.class_hint = c.id;
    s.canonical = Canonical{c.id, Chart::identity(), identity_mixing(static_cast<std::size_t>(c.dim()))};
    s.omega_density = c.omega_density;
    s.hamiltonians = c.hamiltonians;
    s.class_note = "canonical system of " + c.id.str();
    return s;
}

}  // namespace detail

inline const std::vector<std::string>& system_names() {
    static const std::vector<std::string> names{
        "complex_bernoulli",     "cayley_klein",          "coupled_riccati", "milne_pinney",
        "kummer_schwarz",        "diffusion_riccati",     "quadratic_hamiltonian",
        "second_order_riccati",  "projective_schrodinger", "buchdahl",       "lotka_volterra", "lh_class"};
    return names;
}

inline LHSystem build_system(const std::string& name, const nlohmann::json& params = nlohmann::json::object(),
                             const CoeffMap& coeffs = {}) {
    const nlohmann::json p = params.is_null() ? nlohmann::json::object() : params;
    if (!p.is_object()) throw ConfigError("params must be an object");
    if (name == "complex_bernoulli") return detail::build_complex_bernoulli(p, coeffs);
    if (name == "cayley_klein") return detail::build_cayley_klein(p, coeffs);
    if (name == "coupled_riccati") return detail::build_coupled_riccati(p, coeffs);
    if (name == "milne_pinney") return detail::build_milne_pinney(p, coeffs);
    if (name == "kummer_schwarz") return detail::build_kummer_schwarz(p, coeffs);
    if (name == "diffusion_riccati") return detail::build_diffusion_riccati(p, coeffs);
    if (name == "quadratic_hamiltonian") return detail::build_quadratic_hamiltonian(p, coeffs);
    if (name == "second_order_riccati") return detail::build_second_order_riccati(p, coeffs);
    if (name == "projective_schrodinger") return detail::build_projective_schrodinger(p, coeffs);
    if (name == "buchdahl") return detail::build_buchdahl(p, coeffs);
    if (name == "lotka_volterra") return detail::build_lotka_volterra(p, coeffs);
    if (name == "lh_class") return detail::build_lh_class(p, coeffs);
    throw ConfigError("unknown system '" + name + "'");
}

/// {"system": name, "params": {...}, "coeffs": {name: signal, ...}}
inline LHSystem build_system_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("system") || !j.at("system").is_string())
        throw ConfigError("system config needs a string field 'system'");
    CoeffMap coeffs;
    if (j.contains("coeffs")) {
        if (!j.at("coeffs").is_object()) throw ConfigError("'coeffs' must be an object");
        for (auto it = j.at("coeffs").begin(); it != j.at("coeffs").end(); ++it)
            coeffs[it.key()] = Signal::from_json(it.value());
    }
    return build_system(j.at("system").get<std::string>(), j.value("params", nlohmann::json::object()), coeffs);
}

}  // namespace lhp
