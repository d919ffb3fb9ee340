#pragma once

// Casimir expressions and their coproduct evaluation on copies of the plane.

#include <cmath>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lhp/catalog.hpp"
#include "lhp/charts.hpp"
#include "lhp/errors.hpp"
#include "lhp/geometry.hpp"
#include "lhp/hamiltonian.hpp"
#include "lhp/prolong.hpp"
#include "lhp/systems.hpp"

namespace lhp {

/// Expression over symbols h0, h1, ..., hl.
class Expr {
public:
    enum class Op { constant, symbol, add, sub, mul, div, neg, pow };

    Expr(double c) : node_(std::make_shared<Node>(Node{Op::constant, c, 0, {}, {}})) {}  // NOLINT implicit
    static Expr h(int index) { return Expr(std::make_shared<Node>(Node{Op::symbol, 0.0, index, {}, {}})); }

    friend Expr operator+(const Expr& a, const Expr& b) { return binary(Op::add, a, b); }
    friend Expr operator-(const Expr& a, const Expr& b) { return binary(Op::sub, a, b); }
    friend Expr operator*(const Expr& a, const Expr& b) { return binary(Op::mul, a, b); }
    friend Expr operator/(const Expr& a, const Expr& b) { return binary(Op::div, a, b); }
    friend Expr operator-(const Expr& a) { return Expr(std::make_shared<Node>(Node{Op::neg, 0.0, 0, a.node_, {}})); }
    friend Expr pow(const Expr& a, double e) {
        return Expr(std::make_shared<Node>(Node{Op::pow, e, 0, a.node_, {}}));
    }

    /// h[0] is h0. Non-integer powers of a non-positive base throw DomainError.
    template <class T>
    T eval(const std::vector<T>& h) const {
        return eval_node<T>(*node_, h);
    }

    /// Polynomial degree, or −1 when a division or non-natural power occurs.
    int degree() const { return degree_of(*node_); }

    int max_symbol() const { return max_symbol_of(*node_); }

    std::string str() const { return str_of(*node_); }

private:
    struct Node {
        Op op;
        double value;
        int index;
        std::shared_ptr<const Node> a;
        std::shared_ptr<const Node> b;
    };
    using Ptr = std::shared_ptr<const Node>;

    explicit Expr(Ptr n) : node_(std::move(n)) {}
    static Expr binary(Op op, const Expr& a, const Expr& b) {
        return Expr(std::make_shared<Node>(Node{op, 0.0, 0, a.node_, b.node_}));
    }

    template <class T>
    static T eval_node(const Node& n, const std::vector<T>& h) {
        switch (n.op) {
            case Op::constant: return T(n.value);
            case Op::symbol:
                if (n.index < 0 || static_cast<std::size_t>(n.index) >= h.size())
                    throw ConfigError("expression symbol h" + std::to_string(n.index) + " has no value");
                return h[static_cast<std::size_t>(n.index)];
            case Op::add: return eval_node(*n.a, h) + eval_node(*n.b, h);
            case Op::sub: return eval_node(*n.a, h) - eval_node(*n.b, h);
            case Op::mul: return eval_node(*n.a, h) * eval_node(*n.b, h);
            case Op::div: {
                const T d = eval_node(*n.b, h);
                if (value_of(d) == 0.0) throw DomainError("division by zero in Casimir expression");
                return eval_node(*n.a, h) / d;
            }
            case Op::neg: return -eval_node(*n.a, h);
            case Op::pow: {
                const T base = eval_node(*n.a, h);
                const double e = n.value;
                if (e == std::round(e)) {
                    using std::pow;
                    return pow(base, static_cast<int>(e));
                }
                if (!(value_of(base) > 0.0))
                    throw DomainError("radicand <= 0 in Casimir expression (value " +
                                      std::to_string(value_of(base)) + ")");
                using std::pow;
                return pow(base, e);
            }
        }
        return T(0.0);
    }

    static int degree_of(const Node& n) {
        switch (n.op) {
            case Op::constant: return 0;
            case Op::symbol: return 1;
            case Op::add:
            case Op::sub: {
                const int a = degree_of(*n.a), b = degree_of(*n.b);
                return a < 0 || b < 0 ? -1 : std::max(a, b);
            }
            case Op::mul: {
                const int a = degree_of(*n.a), b = degree_of(*n.b);
                return a < 0 || b < 0 ? -1 : a + b;
            }
            case Op::div: return degree_of(*n.b) == 0 ? degree_of(*n.a) : -1;
            case Op::neg: return degree_of(*n.a);
            case Op::pow: {
                const int a = degree_of(*n.a);
                if (a < 0 || n.value < 0.0 || n.value != std::round(n.value)) return -1;
                return a * static_cast<int>(n.value);
            }
        }
        return -1;
    }

    static int max_symbol_of(const Node& n) {
        int m = n.op == Op::symbol ? n.index : -1;
        if (n.a) m = std::max(m, max_symbol_of(*n.a));
        if (n.b) m = std::max(m, max_symbol_of(*n.b));
        return m;
    }

    static std::string str_of(const Node& n) {
        std::ostringstream os;
        switch (n.op) {
            case Op::constant: os << n.value; break;
            case Op::symbol: os << "h" << n.index; break;
            case Op::add: os << "(" << str_of(*n.a) << " + " << str_of(*n.b) << ")"; break;
            case Op::sub: os << "(" << str_of(*n.a) << " - " << str_of(*n.b) << ")"; break;
            case Op::mul: os << str_of(*n.a) << "*" << str_of(*n.b); break;
            case Op::div: os << str_of(*n.a) << "/(" << str_of(*n.b) << ")"; break;
            case Op::neg: os << "-" << str_of(*n.a); break;
            case Op::pow: os << str_of(*n.a) << "^" << n.value; break;
        }
        return os.str();
    }

    Ptr node_;
};

struct CasimirSpec {
    ClassId cls;
    Expr expr{0.0};
    int degree = 0;
    bool nonpolynomial = false;
    /// Value on a single copy; empty where undefined.
    std::optional<double> single_copy;
};

/// Casimir of the LH algebra of a class, in the catalog's Hamiltonian labeling.
inline CasimirSpec casimir_spec(const ClassId& requested) {
    const ClassId id = get_class(requested).id;
    const Expr h0 = Expr::h(0), h1 = Expr::h(1), h2 = Expr::h(2), h3 = Expr::h(3), h4 = Expr::h(4), h5 = Expr::h(5);
    CasimirSpec s;
    s.cls = id;
    switch (id.kind) {
        case ClassKind::P1:
            s.expr = h3 * h0 - 0.5 * (h1 * h1 + h2 * h2);
            s.single_copy = 0.0;
            break;
        case ClassKind::P2:
        case ClassKind::I4:
        case ClassKind::I5:
            s.expr = h1 * h3 - h2 * h2;
            s.single_copy = id.kind == ClassKind::P2 ? 1.0 : (id.kind == ClassKind::I4 ? -0.25 : 0.0);
            break;
        case ClassKind::P3:
            s.expr = 4.0 * h1 * h1 + h2 * h2 + h3 * h3 + 2.0 * h1 * h0;
            s.single_copy = 0.0;
            break;
        case ClassKind::P5:
            s.expr = 2.0 * (h1 * h1 * h5 - h2 * h2 * h4 - h1 * h2 * h3) - h0 * (h3 * h3 + 4.0 * h4 * h5);
            s.single_copy = 0.0;
            break;
        case ClassKind::I8:
            s.expr = h1 * h2 + h3 * h0;
            s.single_copy = 0.0;
            break;
        case ClassKind::I14A: {
            const bool pair = id.r == 2 && id.eta[0].kind == Eta::Kind::exponential &&
                              id.eta[1].kind == Eta::Kind::exponential && id.eta[0].param == -id.eta[1].param;
            if (!pair) throw ConfigError("no Casimir in scope for " + id.str() + " (needs r = 2 with exp(ax), exp(-ax))");
            s.expr = h2 * h3;
            s.single_copy = -1.0 / (id.eta[0].param * id.eta[0].param);
            break;
        }
        case ClassKind::I14B:
            if (id.r != 2 || !(id.eta[0] == Eta::power_of(1)))
                throw ConfigError("no Casimir in scope for " + id.str() + " (needs r = 2 with eta = x)");
            s.expr = h2 * h2 + 2.0 * h3 * h0;
            s.single_copy = 0.0;
            break;
        case ClassKind::I16:
            if (id.r != 2) throw ConfigError("no Casimir in scope for " + id.str() + " (needs r = 2)");
            s.expr = (2.0 * h2 * h2 * h2 + 6.0 * h2 * h4 * h0 + 3.0 * h5 * h0 * h0) /
                     (3.0 * h0 * h0 * pow(-(h2 * h2) - 2.0 * h4 * h0, 1.5));
            s.single_copy.reset();
            break;
        case ClassKind::I1:
        case ClassKind::I12: throw ConfigError("no Casimir in scope for " + id.str() + " (abelian algebra)");
    }
    s.degree = s.expr.degree();
    s.nonpolynomial = s.degree < 0;
    return s;
}

/// Points carried to the coordinates of the Hamiltonians, then summed per basis element.
struct InvariantModel {
    CasimirSpec spec;
    std::vector<ScalarField> hamiltonians;  // hamiltonians[a-1] plays h_a
    Domain domain;                          // on the source side
    std::optional<Chart> chart;
    std::string description;

    template <class T>
    std::vector<T> summed(const std::vector<Vec2<T>>& copies) const {
        std::vector<T> h(hamiltonians.size() + 1, T(0.0));
        h[0] = T(static_cast<double>(copies.size()));
        for (const auto& p : copies) {
            Vec2<T> q = p;
            if (chart) {
                if constexpr (std::is_same_v<T, double>) q = chart->forward(p);
                else q = chart->forward(p.x, p.y);
            }
            for (std::size_t a = 0; a < hamiltonians.size(); ++a) h[a + 1] = h[a + 1] + hamiltonians[a](q.x, q.y);
        }
        return h;
    }

    double evaluate(const std::vector<Point>& copies) const {
        if (copies.empty()) throw ConfigError("invariant needs at least one copy");
        for (const auto& p : copies) {
            if (!in_domain(domain, p) || (chart && !chart->contains(p)))
                throw DomainError("copy outside the domain of the invariant");
        }
        if (copies.size() == 1 && !spec.single_copy && spec.nonpolynomial)
            throw DomainError("single-copy value undefined for " + spec.cls.str());
        return spec.expr.eval(summed(copies));
    }

    /// Gradient with respect to copy c.
    std::array<double, 2> gradient(const std::vector<Point>& copies, std::size_t c) const {
        std::vector<Vec2<Jet2>> jc;
        for (std::size_t i = 0; i < copies.size(); ++i) {
            if (i == c) {
                auto [jx, jy] = seed(copies[i].x, copies[i].y);
                jc.push_back({jx, jy});
            } else {
                jc.push_back({Jet2(copies[i].x), Jet2(copies[i].y)});
            }
        }
        const Jet2 v = spec.expr.eval(summed(jc));
        return {v.dx, v.dy};
    }
};

inline InvariantModel invariant_model(const ClassRecord& c) {
    InvariantModel m;
    m.spec = casimir_spec(c.id);
    m.hamiltonians = c.hamiltonians;
    m.domain = c.domain;
    m.description = "Casimir of " + c.id.str();
    return m;
}

inline InvariantModel invariant_model(const ClassId& id) { return invariant_model(get_class(id)); }

namespace detail {

inline bool is_plain_i14a1(const ClassId& id) {
    return id.kind == ClassKind::I14A && id.r == 1 && id.eta[0] == Eta::exp_of(1.0);
}

/// I8 invariant composed with `to_source_chart` then the I14A-to-I8 chart.
inline InvariantModel i14a1_model(std::optional<Chart> to_canonical) {
    InvariantModel m = invariant_model(ClassId{ClassKind::I8, 0, {}});
    const Chart bridge = i14a_to_i8_chart();
    m.chart = to_canonical ? (to_canonical->is_identity() ? bridge : to_canonical->then(bridge)) : bridge;
    m.domain = {};
    m.description = "Casimir of I8 through the I14A to I8 chart";
    return m;
}

}  // namespace detail

/// Conserved quantity for a system: the class Casimir through the system's chart, the
/// relabeled Bernoulli Hamiltonians, or the I8 route for I14A with r = 1.
inline InvariantModel invariant_model(const LHSystem& sys) {
    if (sys.status != SystemStatus::lie_hamilton || !sys.class_hint)
        throw ConfigError(sys.name + ": no invariant model (" + sys.class_note + ")");
    if (sys.name == "complex_bernoulli" && sys.class_hint->kind == ClassKind::P1) {
        const double m = sys.params.at("n").get<double>() - 1.0;
        const ScalarField h1 = sys.hamiltonians[0];
        InvariantModel model;
        model.spec = casimir_spec(ClassId{ClassKind::P1, 0, {}});
        model.hamiltonians = {sys.hamiltonians[1], sys.hamiltonians[2],
                              ScalarField("h1/(n-1)", [h1, m](auto r, auto th) { return h1(r, th) / m; })};
        model.domain = sys.domain;
        model.description = "P1 Casimir on relabeled Bernoulli Hamiltonians";
        return model;
    }
    if (!sys.canonical)
        throw ConfigError(sys.name + ": no chart to canonical coordinates, so no invariant model");
    if (detail::is_plain_i14a1(sys.canonical->cls)) {
        InvariantModel model = detail::i14a1_model(sys.canonical->chart);
        model.domain = sys.domain;
        return model;
    }
    InvariantModel model = invariant_model(sys.canonical->cls);
    if (!sys.canonical->chart.is_identity()) {
        model.chart = sys.canonical->chart;
        model.domain = sys.domain;
    }
    return model;
}

/// F^(k) on the given copies (k = copies.size()).
inline double coproduct_invariant(const CasimirSpec& spec, const ClassRecord& cls, const std::vector<Point>& copies) {
    InvariantModel m;
    m.spec = spec;
    m.hamiltonians = cls.hamiltonians;
    m.domain = cls.domain;
    return m.evaluate(copies);
}

/// F^(k) after swapping ambient copies i and j (0-based); the first k copies enter the invariant.
inline double permuted_invariant(const InvariantModel& model, std::vector<Point> ambient, std::size_t k, std::size_t i,
                                 std::size_t j) {
    if (i == j) throw ConfigError("permutation needs two distinct copies");
    if (i >= ambient.size() || j >= ambient.size()) throw ConfigError("permutation index beyond the copies");
    if (k < 1 || k > ambient.size()) throw ConfigError("invariant order must be between 1 and the copy count");
    std::swap(ambient[i], ambient[j]);
    ambient.resize(k);
    return model.evaluate(ambient);
}

inline double permuted_invariant(const CasimirSpec& spec, const ClassRecord& cls, const std::vector<Point>& ambient,
                                 std::size_t k, std::size_t i, std::size_t j) {
    InvariantModel m;
    m.spec = spec;
    m.hamiltonians = cls.hamiltonians;
    m.domain = cls.domain;
    return permuted_invariant(m, ambient, k, i, j);
}

/// Σ_c {F, h_a}_c with the product symplectic form of the class.
inline double prolonged_bracket(const InvariantModel& model, const ClassRecord& cls, const std::vector<Point>& copies,
                                std::size_t a) {
    double s = 0.0;
    for (std::size_t c = 0; c < copies.size(); ++c) {
        const auto gF = model.gradient(copies, c);
        const auto gh = grad(cls.hamiltonians[a], copies[c]);
        s += (gF[0] * gh[1] - gF[1] * gh[0]) / cls.omega_density(copies[c]);
    }
    return s;
}

struct DriftReport {
    double initial = 0.0;
    double max_abs_drift = 0.0;
    double max_rel_drift = 0.0;
    bool relative = true;
    std::size_t rows = 0;
};

/// Drift of the invariant on the copies `subset` (0-based, in order) of every row.
inline DriftReport drift_report(const InvariantModel& model, const Trajectory& tr, const std::vector<int>& subset,
                                double zero_threshold = 1e-10) {
    DriftReport r;
    if (tr.size() == 0) return r;
    auto at = [&](std::size_t row) {
        std::vector<Point> pts;
        for (int c : subset) {
            if (c < 0 || c >= tr.m) throw ConfigError("copy index outside trajectory");
            pts.push_back(tr.point(row, c));
        }
        return model.evaluate(pts);
    };
    r.initial = at(0);
    r.relative = std::abs(r.initial) > zero_threshold;
    for (std::size_t i = 0; i < tr.size(); ++i) r.max_abs_drift = std::max(r.max_abs_drift, std::abs(at(i) - r.initial));
    r.max_rel_drift = r.relative ? r.max_abs_drift / std::abs(r.initial) : r.max_abs_drift;
    r.rows = tr.size();
    return r;
}

inline std::vector<int> first_copies(int k) {
    std::vector<int> v(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) v[static_cast<std::size_t>(i)] = i;
    return v;
}

/// x_a(y_b − y_c) + x_b(y_c − y_a) + x_c(y_a − y_b): twice the signed area of (a, b, c).
inline double triangle_det(const Point& a, const Point& b, const Point& c) {
    return a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y);
}

}  // namespace lhp
