#pragma once

// The twelve classes of finite-dimensional Lie algebras of Hamiltonian planar vector fields.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lhp/errors.hpp"
#include "lhp/geometry.hpp"

namespace lhp {

enum class ClassKind { P1, P2, P3, P5, I1, I4, I5, I8, I12, I14A, I14B, I16 };

inline const std::vector<ClassKind>& all_class_kinds() {
    static const std::vector<ClassKind> kinds{ClassKind::P1,  ClassKind::P2,   ClassKind::P3,
                                              ClassKind::P5,  ClassKind::I1,   ClassKind::I4,
                                              ClassKind::I5,  ClassKind::I8,   ClassKind::I12,
                                              ClassKind::I14A, ClassKind::I14B, ClassKind::I16};
    return kinds;
}

inline std::string to_string(ClassKind k) {
    switch (k) {
        case ClassKind::P1: return "P1";
        case ClassKind::P2: return "P2";
        case ClassKind::P3: return "P3";
        case ClassKind::P5: return "P5";
        case ClassKind::I1: return "I1";
        case ClassKind::I4: return "I4";
        case ClassKind::I5: return "I5";
        case ClassKind::I8: return "I8";
        case ClassKind::I12: return "I12";
        case ClassKind::I14A: return "I14A";
        case ClassKind::I14B: return "I14B";
        case ClassKind::I16: return "I16";
    }
    return "?";
}

inline bool is_parametric(ClassKind k) {
    return k == ClassKind::I12 || k == ClassKind::I14A || k == ClassKind::I14B || k == ClassKind::I16;
}

/// Coefficient function of ∂y in the imprimitive families: e^{a x} or x^n.
struct Eta {
    enum class Kind { exponential, power };
    Kind kind = Kind::exponential;
    double param = 1.0;

    static Eta exp_of(double a) { return {Kind::exponential, a}; }
    static Eta power_of(int n) { return {Kind::power, static_cast<double>(n)}; }

    int degree() const { return static_cast<int>(param); }

    template <class T>
    T operator()(const T& x) const {
        if (kind == Kind::exponential) return exp(param * x);
        return pow(x, degree());
    }

    /// An antiderivative: e^{ax}/a or x^{n+1}/(n+1).
    template <class T>
    T primitive(const T& x) const {
        if (kind == Kind::exponential) return exp(param * x) / param;
        return pow(x, degree() + 1) / (param + 1.0);
    }

    std::string str() const {
        std::ostringstream os;
        if (kind == Kind::exponential)
            os << "exp(" << param << "x)";
        else
            os << "x^" << degree();
        return os.str();
    }

    bool operator==(const Eta& o) const { return kind == o.kind && param == o.param; }
};

/// Class tag plus rank and η/ξ family for the parametric classes. r = 0 selects the default.
struct ClassId {
    ClassKind kind = ClassKind::P1;
    int r = 0;
    std::vector<Eta> eta;

    bool operator==(const ClassId& o) const { return kind == o.kind && r == o.r && eta == o.eta; }

    std::string str() const {
        std::string s = to_string(kind);
        if (!is_parametric(kind)) return s;
        std::ostringstream os;
        os << s << ":r=" << r;
        if (!eta.empty()) {
            os << ":eta=";
            for (std::size_t i = 0; i < eta.size(); ++i) os << (i ? "," : "") << eta[i].str();
        }
        return os.str();
    }
};

namespace detail {

inline std::string upper(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

inline Eta parse_eta(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    try {
        if (t.rfind("exp(", 0) == 0 && t.back() == ')') {
            std::string inner = t.substr(4, t.size() - 5);
            if (!inner.empty() && inner.back() == 'x') inner.pop_back();
            if (inner.empty() || inner == "+") return Eta::exp_of(1.0);
            if (inner == "-") return Eta::exp_of(-1.0);
            if (inner.back() == '*') inner.pop_back();
            return Eta::exp_of(std::stod(inner));
        }
        if (t == "x") return Eta::power_of(1);
        if (t.rfind("x^", 0) == 0) return Eta::power_of(std::stoi(t.substr(2)));
    } catch (const std::exception&) {
    }
    throw ConfigError("cannot parse eta function '" + text + "' (use exp(a*x) or x^n)");
}

}  // namespace detail

/// Parses "P2", "I16:r=3", "I14A:r=2:eta=exp(x),exp(-x)" (case-insensitive tag).
inline ClassId parse_class_id(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.empty()) throw ConfigError("empty class id");
    const std::string tag = detail::upper(parts[0]);
    ClassId id;
    bool found = false;
    for (ClassKind k : all_class_kinds())
        if (to_string(k) == tag) {
            id.kind = k;
            found = true;
        }
    if (!found) throw ConfigError("unknown class '" + parts[0] + "'");
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const auto eq = parts[i].find('=');
        if (eq == std::string::npos) throw ConfigError("malformed class parameter '" + parts[i] + "'");
        const std::string key = parts[i].substr(0, eq);
        const std::string val = parts[i].substr(eq + 1);
        if (key == "r") {
            try {
                id.r = std::stoi(val);
            } catch (const std::exception&) {
                throw ConfigError("bad rank '" + val + "'");
            }
        } else if (key == "eta" || key == "xi") {
            std::stringstream es(val);
            for (std::string e; std::getline(es, e, ',');) id.eta.push_back(detail::parse_eta(e));
        } else {
            throw ConfigError("unknown class parameter '" + key + "'");
        }
    }
    return id;
}

/// {h_i,h_j} = Σ_k b_ijk h_k + b_ij0 h0 for i<j; column `dim` holds the h0 coefficient.
class BracketTable {
public:
    BracketTable() = default;
    explicit BracketTable(int dim)
        : dim_(dim), b_(static_cast<std::size_t>(dim * (dim - 1) / 2 * (dim + 1)), 0.0) {}

    int dim() const { return dim_; }

    double operator()(int i, int j, int k) const {
        if (i == j) return 0.0;
        return i < j ? b_[offset(i, j) + static_cast<std::size_t>(k)]
                     : -b_[offset(j, i) + static_cast<std::size_t>(k)];
    }
    double central(int i, int j) const { return (*this)(i, j, dim_); }

    /// Sets the coefficient; k = -1 addresses h0.
    BracketTable& set(int i, int j, int k, double v) {
        const int col = k < 0 ? dim_ : k;
        if (i < j)
            b_[offset(i, j) + static_cast<std::size_t>(col)] = v;
        else
            b_[offset(j, i) + static_cast<std::size_t>(col)] = -v;
        return *this;
    }

    bool uses_central() const {
        for (int i = 0; i < dim_; ++i)
            for (int j = i + 1; j < dim_; ++j)
                if (central(i, j) != 0.0) return true;
        return false;
    }

    std::string describe() const {
        std::ostringstream os;
        for (int i = 0; i < dim_; ++i)
            for (int j = i + 1; j < dim_; ++j) {
                bool first = true;
                for (int k = 0; k <= dim_; ++k) {
                    const double v = (*this)(i, j, k);
                    if (v == 0.0) continue;
                    if (first) os << "{h" << i + 1 << ",h" << j + 1 << "} =";
                    os << ' ' << (v < 0 ? "- " : (first ? "" : "+ ")) << std::abs(v) << "*h"
                       << (k == dim_ ? 0 : k + 1);
                    first = false;
                }
                if (!first) os << '\n';
            }
        return os.str();
    }

private:
    std::size_t offset(int i, int j) const {
        const int row = i * (2 * dim_ - i - 1) / 2 + (j - i - 1);
        return static_cast<std::size_t>(row * (dim_ + 1));
    }

    int dim_ = 0;
    std::vector<double> b_;
};

/// One row of the classification table.
struct ClassRecord {
    ClassId id;
    std::string algebra_name;
    std::string lh_algebra_name;
    std::vector<VectorField> basis;
    Domain domain;
    SampleRegion region;
    ScalarField omega_density;
    std::vector<ScalarField> hamiltonians;
    bool has_central = false;
    BracketTable lh_brackets;
    StructureConstants structure;
    /// Alternative Hamiltonians closing without h0 (P3 only).
    std::vector<ScalarField> alt_hamiltonians;
    BracketTable alt_brackets;
    Point quadrature_base{0.0, 0.0};

    int dim() const { return static_cast<int>(basis.size()); }
};

namespace detail {

inline const Box square3{-3.0, 3.0, -3.0, 3.0};
inline const Box upper3{-3.0, 3.0, 0.2, 3.0};

inline ScalarField unit_density() {
    return ScalarField("1", [](auto, auto) { return 1.0; });
}

inline void validate_eta_family(const ClassId& id) {
    const auto& eta = id.eta;
    for (std::size_t i = 0; i < eta.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (eta[i] == eta[j]) throw ConfigError(id.str() + ": repeated function " + eta[i].str());
        if (eta[i].kind == Eta::Kind::exponential && eta[i].param == 0.0)
            throw ConfigError(id.str() + ": exp(0x) is the constant 1");
        if (eta[i].kind == Eta::Kind::power && (eta[i].param < 1.0 || eta[i].param > 12.0))
            throw ConfigError(id.str() + ": powers must satisfy 1 <= n <= 12");
    }
    if (id.kind == ClassKind::I14A) {
        for (const auto& e : eta)
            if (e.kind == Eta::Kind::power)
                throw ConfigError(id.str() + ": I14A requires 1 not in span(eta_j), but d/dx of " + e.str() +
                                  " eventually reaches 1");
    }
    if (id.kind == ClassKind::I14B) {
        for (const auto& e : eta)
            if (e.kind == Eta::Kind::power)
                for (int d = 1; d < e.degree(); ++d)
                    if (std::find(eta.begin(), eta.end(), Eta::power_of(d)) == eta.end())
                        throw ConfigError(id.str() + ": " + e.str() + " needs x^" + std::to_string(d) +
                                          " in the family for closure");
    }
}

inline ClassId normalized(ClassId id) {
    switch (id.kind) {
        case ClassKind::I12:
            if (id.r == 0) id.r = id.eta.empty() ? 1 : static_cast<int>(id.eta.size());
            if (id.eta.empty())
                for (int j = 1; j <= id.r; ++j) id.eta.push_back(Eta::power_of(j));
            break;
        case ClassKind::I14A:
            if (id.r == 0) id.r = id.eta.empty() ? 1 : static_cast<int>(id.eta.size());
            if (id.eta.empty())
                for (int j = 0; j < id.r; ++j) id.eta.push_back(Eta::exp_of(j % 2 == 0 ? 1.0 + j / 2 : -(1.0 + j / 2)));
            break;
        case ClassKind::I14B:
            if (id.r == 0) id.r = id.eta.empty() ? 2 : static_cast<int>(id.eta.size()) + 1;
            if (id.eta.empty())
                for (int j = 2; j <= id.r; ++j) id.eta.push_back(Eta::power_of(j - 1));
            break;
        case ClassKind::I16:
            if (id.r == 0) id.r = 2;
            if (!id.eta.empty()) throw ConfigError("I16 takes no eta family");
            break;
        default:
            if (id.r != 0 || !id.eta.empty())
                throw ConfigError(to_string(id.kind) + " takes no rank or function parameters");
            return id;
    }
    if (id.r < 1) throw ConfigError(id.str() + ": rank must be at least 1");
    if (id.kind == ClassKind::I16 && id.r > 4) throw ConfigError("I16: rank limited to 1..4");
    const std::size_t expected = id.kind == ClassKind::I14B ? static_cast<std::size_t>(id.r - 1)
                                                            : static_cast<std::size_t>(id.r);
    if (id.kind != ClassKind::I16 && id.eta.size() != expected)
        throw ConfigError(id.str() + ": function family size does not match rank");
    validate_eta_family(id);
    return id;
}

inline VectorField dx_field() {
    return VectorField("d/dx", [](auto, auto) { return vec(1.0, 0.0); });
}
inline VectorField dy_field() {
    return VectorField("d/dy", [](auto, auto) { return vec(0.0, 1.0); });
}
inline VectorField eta_dy_field(const Eta& e) {
    return VectorField(e.str() + " d/dy", [e](auto x, auto) { return vec(0.0, e(x)); });
}
inline ScalarField y_function() {
    return ScalarField("y", [](auto, auto y) { return y; });
}
inline ScalarField minus_x_function() {
    return ScalarField("-x", [](auto x, auto) { return -x; });
}
inline ScalarField minus_primitive(const Eta& e) {
    return ScalarField("-int " + e.str(), [e](auto x, auto) { return -e.primitive(x); });
}

/// Index (0-based) of the basis element x^{n} d/dy inside an η list, or -1.
inline int find_power(const std::vector<Eta>& eta, int n) {
    for (std::size_t i = 0; i < eta.size(); ++i)
        if (eta[i] == Eta::power_of(n)) return static_cast<int>(i);
    return -1;
}

inline ClassRecord make_p1() {
    ClassRecord c;
    c.algebra_name = "iso(2)";
    c.lh_algebra_name = "centrally extended iso(2)";
    c.basis = {dx_field(), dy_field(),
               VectorField("y d/dx - x d/dy", [](auto x, auto y) { return vec(y, -x); })};
    c.region = {square3, {}};
    c.omega_density = unit_density();
    c.hamiltonians = {y_function(), minus_x_function(),
                      ScalarField("(x^2+y^2)/2", [](auto x, auto y) { return 0.5 * (x * x + y * y); })};
    c.has_central = true;
    c.structure = StructureConstants(3);
    c.structure.set(0, 2, 1, -1.0);
    c.structure.set(1, 2, 0, 1.0);
    c.lh_brackets = BracketTable(3);
    c.lh_brackets.set(0, 1, -1, 1.0).set(0, 2, 1, 1.0).set(1, 2, 0, -1.0);
    return c;
}

inline StructureConstants sl2_constants() {
    StructureConstants s(3);
    s.set(0, 1, 0, 1.0);
    s.set(0, 2, 1, 2.0);
    s.set(1, 2, 2, 1.0);
    return s;
}

inline BracketTable sl2_brackets() {
    BracketTable b(3);
    b.set(0, 1, 0, -1.0).set(0, 2, 1, -2.0).set(1, 2, 2, -1.0);
    return b;
}

inline ClassRecord make_p2() {
    ClassRecord c;
    c.algebra_name = "sl(2)";
    c.lh_algebra_name = "sl(2)";
    c.basis = {dx_field(), VectorField("x d/dx + y d/dy", [](auto x, auto y) { return vec(x, y); }),
               VectorField("(x^2-y^2) d/dx + 2xy d/dy",
                           [](auto x, auto y) { return vec(x * x - y * y, 2.0 * x * y); })};
    c.domain = [](const Point& p) { return p.y != 0.0; };
    c.region = {upper3, c.domain};
    c.omega_density = ScalarField("1/y^2", [](auto, auto y) { return 1.0 / (y * y); }, c.domain);
    c.hamiltonians = {ScalarField("-1/y", [](auto, auto y) { return -1.0 / y; }),
                      ScalarField("-x/y", [](auto x, auto y) { return -x / y; }),
                      ScalarField("-(x^2+y^2)/y", [](auto x, auto y) { return -(x * x + y * y) / y; })};
    c.structure = sl2_constants();
    c.lh_brackets = sl2_brackets();
    c.quadrature_base = {0.0, 1.0};
    return c;
}

inline ClassRecord make_p3() {
    ClassRecord c;
    c.algebra_name = "so(3)";
    c.lh_algebra_name = "so(3) + R";
    c.basis = {VectorField("y d/dx - x d/dy", [](auto x, auto y) { return vec(y, -x); }),
               VectorField("(1+x^2-y^2) d/dx + 2xy d/dy",
                           [](auto x, auto y) { return vec(1.0 + x * x - y * y, 2.0 * x * y); }),
               VectorField("2xy d/dx + (1+y^2-x^2) d/dy",
                           [](auto x, auto y) { return vec(2.0 * x * y, 1.0 + y * y - x * x); })};
    c.region = {square3, {}};
    c.omega_density = ScalarField("1/(1+x^2+y^2)^2", [](auto x, auto y) {
        const auto s = 1.0 + x * x + y * y;
        return 1.0 / (s * s);
    });
    c.hamiltonians = {
        ScalarField("-1/(2(1+x^2+y^2))", [](auto x, auto y) { return -0.5 / (1.0 + x * x + y * y); }),
        ScalarField("y/(1+x^2+y^2)", [](auto x, auto y) { return y / (1.0 + x * x + y * y); }),
        ScalarField("-x/(1+x^2+y^2)", [](auto x, auto y) { return -x / (1.0 + x * x + y * y); })};
    c.has_central = true;
    c.structure = StructureConstants(3);
    c.structure.set(0, 1, 2, 1.0);
    c.structure.set(0, 2, 1, -1.0);
    c.structure.set(1, 2, 0, 4.0);
    c.lh_brackets = BracketTable(3);
    c.lh_brackets.set(0, 1, 2, -1.0).set(0, 2, 1, 1.0).set(1, 2, 0, -4.0).set(1, 2, -1, -1.0);
    c.alt_hamiltonians = c.hamiltonians;
    c.alt_hamiltonians[0] = ScalarField("-1/(2(1+x^2+y^2)) + 1/4",
                                        [](auto x, auto y) { return -0.5 / (1.0 + x * x + y * y) + 0.25; });
    c.alt_brackets = BracketTable(3);
    c.alt_brackets.set(0, 1, 2, -1.0).set(0, 2, 1, 1.0).set(1, 2, 0, -4.0);
    return c;
}

inline ClassRecord make_p5() {
    ClassRecord c;
    c.algebra_name = "sl(2) x| R^2";
    c.lh_algebra_name = "two-photon h6";
    c.basis = {dx_field(), dy_field(),
               VectorField("x d/dx - y d/dy", [](auto x, auto y) { return vec(x, -y); }),
               VectorField("y d/dx", [](auto, auto y) { return vec(y, 0.0); }),
               VectorField("x d/dy", [](auto x, auto) { return vec(0.0, x); })};
    c.region = {square3, {}};
    c.omega_density = unit_density();
    c.hamiltonians = {y_function(), minus_x_function(),
                      ScalarField("xy", [](auto x, auto y) { return x * y; }),
                      ScalarField("y^2/2", [](auto, auto y) { return 0.5 * y * y; }),
                      ScalarField("-x^2/2", [](auto x, auto) { return -0.5 * x * x; })};
    c.has_central = true;
    auto& s = c.structure = StructureConstants(5);
    s.set(0, 2, 0, 1.0);
    s.set(0, 4, 1, 1.0);
    s.set(1, 2, 1, -1.0);
    s.set(1, 3, 0, 1.0);
    s.set(2, 3, 3, -2.0);
    s.set(2, 4, 4, 2.0);
    s.set(3, 4, 2, -1.0);
    c.lh_brackets = BracketTable(5);
    c.lh_brackets.set(0, 1, -1, 1.0)
        .set(0, 2, 0, -1.0)
        .set(0, 4, 1, -1.0)
        .set(1, 2, 1, 1.0)
        .set(1, 3, 0, -1.0)
        .set(2, 3, 3, 2.0)
        .set(2, 4, 4, -2.0)
        .set(3, 4, 2, 1.0);
    return c;
}

inline ClassRecord make_i1() {
    ClassRecord c;
    c.algebra_name = "R";
    c.lh_algebra_name = "R";
    c.basis = {dx_field()};
    c.region = {upper3, {}};
    c.omega_density = unit_density();
    c.hamiltonians = {y_function()};
    c.structure = StructureConstants(1);
    c.lh_brackets = BracketTable(1);
    c.quadrature_base = {0.0, 1.0};
    return c;
}

inline ClassRecord make_i4() {
    ClassRecord c;
    c.algebra_name = "sl(2)";
    c.lh_algebra_name = "sl(2)";
    c.basis = {VectorField("d/dx + d/dy", [](auto, auto) { return vec(1.0, 1.0); }),
               VectorField("x d/dx + y d/dy", [](auto x, auto y) { return vec(x, y); }),
               VectorField("x^2 d/dx + y^2 d/dy", [](auto x, auto y) { return vec(x * x, y * y); })};
    c.domain = [](const Point& p) { return p.x != p.y; };
    c.region = {square3, [](const Point& p) { return std::abs(p.x - p.y) > 0.2; }};
    c.omega_density = ScalarField("1/(x-y)^2", [](auto x, auto y) { return 1.0 / ((x - y) * (x - y)); }, c.domain);
    c.hamiltonians = {ScalarField("1/(x-y)", [](auto x, auto y) { return 1.0 / (x - y); }),
                      ScalarField("(x+y)/(2(x-y))", [](auto x, auto y) { return (x + y) / (2.0 * (x - y)); }),
                      ScalarField("xy/(x-y)", [](auto x, auto y) { return x * y / (x - y); })};
    c.structure = sl2_constants();
    c.lh_brackets = sl2_brackets();
    c.quadrature_base = {1.0, 0.0};
    return c;
}

inline ClassRecord make_i5() {
    ClassRecord c;
    c.algebra_name = "sl(2)";
    c.lh_algebra_name = "sl(2)";
    c.basis = {dx_field(), VectorField("x d/dx + y/2 d/dy", [](auto x, auto y) { return vec(x, 0.5 * y); }),
               VectorField("x^2 d/dx + xy d/dy", [](auto x, auto y) { return vec(x * x, x * y); })};
    c.domain = [](const Point& p) { return p.y != 0.0; };
    c.region = {upper3, c.domain};
    c.omega_density = ScalarField("1/y^3", [](auto, auto y) { return 1.0 / (y * y * y); }, c.domain);
    c.hamiltonians = {ScalarField("-1/(2y^2)", [](auto, auto y) { return -0.5 / (y * y); }),
                      ScalarField("-x/(2y^2)", [](auto x, auto y) { return -0.5 * x / (y * y); }),
                      ScalarField("-x^2/(2y^2)", [](auto x, auto y) { return -0.5 * x * x / (y * y); })};
    c.structure = sl2_constants();
    c.lh_brackets = sl2_brackets();
    c.quadrature_base = {0.0, 1.0};
    return c;
}

inline ClassRecord make_i8() {
    ClassRecord c;
    c.algebra_name = "iso(1,1)";
    c.lh_algebra_name = "centrally extended iso(1,1)";
    c.basis = {dx_field(), dy_field(), VectorField("x d/dx - y d/dy", [](auto x, auto y) { return vec(x, -y); })};
    c.region = {square3, {}};
    c.omega_density = unit_density();
    c.hamiltonians = {y_function(), minus_x_function(), ScalarField("xy", [](auto x, auto y) { return x * y; })};
    c.has_central = true;
    c.structure = StructureConstants(3);
    c.structure.set(0, 2, 0, 1.0);
    c.structure.set(1, 2, 1, -1.0);
    c.lh_brackets = BracketTable(3);
    c.lh_brackets.set(0, 1, -1, 1.0).set(0, 2, 0, -1.0).set(1, 2, 1, 1.0);
    return c;
}

inline ClassRecord make_i12(const ClassId& id) {
    ClassRecord c;
    c.algebra_name = "R^" + std::to_string(id.r + 1);
    c.lh_algebra_name = c.algebra_name;
    c.basis = {dy_field()};
    c.hamiltonians = {minus_x_function()};
    for (const auto& e : id.eta) {
        c.basis.push_back(eta_dy_field(e));
        c.hamiltonians.push_back(minus_primitive(e));
    }
    c.region = {square3, {}};
    c.omega_density = unit_density();
    c.structure = StructureConstants(c.dim());
    c.lh_brackets = BracketTable(c.dim());
    return c;
}

inline ClassRecord make_i14a(const ClassId& id) {
    ClassRecord c;
    c.algebra_name = "R x| R^" + std::to_string(id.r);
    c.lh_algebra_name = c.algebra_name;
    c.basis = {dx_field()};
    c.hamiltonians = {y_function()};
    for (const auto& e : id.eta) {
        c.basis.push_back(eta_dy_field(e));
        c.hamiltonians.push_back(minus_primitive(e));
    }
    c.region = {square3, {}};
    c.omega_density = unit_density();
    c.structure = StructureConstants(c.dim());
    c.lh_brackets = BracketTable(c.dim());
    for (std::size_t j = 0; j < id.eta.size(); ++j) {
        const int k = static_cast<int>(j) + 1;
        const double a = id.eta[j].param;
        c.structure.set(0, k, k, a);
        c.lh_brackets.set(0, k, k, -a);
    }
    return c;
}

inline ClassRecord make_i14b(const ClassId& id) {
    ClassRecord c;
    c.algebra_name = "R x| R^" + std::to_string(id.r);
    c.lh_algebra_name = c.algebra_name + " (centrally extended)";
    c.basis = {dx_field(), dy_field()};
    c.hamiltonians = {y_function(), minus_x_function()};
    for (const auto& e : id.eta) {
        c.basis.push_back(eta_dy_field(e));
        c.hamiltonians.push_back(minus_primitive(e));
    }
    c.region = {square3, {}};
    c.omega_density = unit_density();
    c.has_central = true;
    c.structure = StructureConstants(c.dim());
    c.lh_brackets = BracketTable(c.dim());
    c.lh_brackets.set(0, 1, -1, 1.0);
    for (std::size_t j = 0; j < id.eta.size(); ++j) {
        const int k = static_cast<int>(j) + 2;
        const Eta& e = id.eta[j];
        if (e.kind == Eta::Kind::exponential) {
            c.structure.set(0, k, k, e.param);
            c.lh_brackets.set(0, k, k, -e.param);
        } else {
            const int n = e.degree();
            const int lower = n == 1 ? 1 : find_power(id.eta, n - 1) + 2;
            c.structure.set(0, k, lower, n);
            c.lh_brackets.set(0, k, lower, -n);
        }
    }
    return c;
}

inline ClassRecord make_i16(const ClassId& id) {
    ClassRecord c;
    c.algebra_name = "h2 x| R^" + std::to_string(id.r + 1);
    c.lh_algebra_name = c.algebra_name + " (centrally extended)";
    c.basis = {dx_field(), dy_field(), VectorField("x d/dx - y d/dy", [](auto x, auto y) { return vec(x, -y); })};
    c.hamiltonians = {y_function(), minus_x_function(), ScalarField("xy", [](auto x, auto y) { return x * y; })};
    for (int j = 1; j <= id.r; ++j) {
        const Eta e = Eta::power_of(j);
        c.basis.push_back(eta_dy_field(e));
        c.hamiltonians.push_back(minus_primitive(e));
    }
    c.region = {square3, {}};
    c.omega_density = unit_density();
    c.has_central = true;
    c.structure = StructureConstants(c.dim());
    c.structure.set(0, 2, 0, 1.0);
    c.structure.set(1, 2, 1, -1.0);
    c.lh_brackets = BracketTable(c.dim());
    c.lh_brackets.set(0, 1, -1, 1.0).set(0, 2, 0, -1.0).set(1, 2, 1, 1.0);
    for (int j = 1; j <= id.r; ++j) {
        const int k = 2 + j;
        const int lower = j == 1 ? 1 : k - 1;
        c.structure.set(0, k, lower, j);
        c.structure.set(2, k, k, j + 1.0);
        c.lh_brackets.set(0, k, lower, -j);
        c.lh_brackets.set(2, k, k, -(j + 1.0));
    }
    return c;
}

}  // namespace detail

/// Fully populated record; parametric ids are completed with the defaults.
inline ClassRecord get_class(const ClassId& requested) {
    const ClassId id = detail::normalized(requested);
    ClassRecord c;
    switch (id.kind) {
        case ClassKind::P1: c = detail::make_p1(); break;
        case ClassKind::P2: c = detail::make_p2(); break;
        case ClassKind::P3: c = detail::make_p3(); break;
        case ClassKind::P5: c = detail::make_p5(); break;
        case ClassKind::I1: c = detail::make_i1(); break;
        case ClassKind::I4: c = detail::make_i4(); break;
        case ClassKind::I5: c = detail::make_i5(); break;
        case ClassKind::I8: c = detail::make_i8(); break;
        case ClassKind::I12: c = detail::make_i12(id); break;
        case ClassKind::I14A: c = detail::make_i14a(id); break;
        case ClassKind::I14B: c = detail::make_i14b(id); break;
        case ClassKind::I16: c = detail::make_i16(id); break;
    }
    c.id = id;
    return c;
}

inline ClassRecord get_class(ClassKind kind) { return get_class(ClassId{kind, 0, {}}); }
inline ClassRecord get_class(const std::string& text) { return get_class(parse_class_id(text)); }

}  // namespace lhp
