#pragma once

// Superposition rules for P1, I8 and P5, and I14A with r = 1 through the chart to I8.

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lhp/catalog.hpp"
#include "lhp/charts.hpp"
#include "lhp/coalgebra.hpp"
#include "lhp/errors.hpp"
#include "lhp/prolong.hpp"
#include "lhp/systems.hpp"

namespace lhp {

enum class Branch { none, plus, minus };

inline std::string to_string(Branch b) {
    return b == Branch::plus ? "plus" : (b == Branch::minus ? "minus" : "none");
}

struct RuleConstants {
    ClassId cls;
    /// P1: k1, k2, k3 (distances). I8: k1, k2, k3 (hyperbola constants). P5: signed k1, k2, k3, k4.
    std::vector<double> k;
    Branch branch = Branch::none;
};

inline constexpr double area_threshold = 1e-10;     // |A| relative to k3²
inline constexpr double radicand_threshold = 1e-12;  // |B|
inline constexpr double k4_threshold = 1e-12;        // |k4|

/// Number of particular solutions the rule needs, or 0 if no rule is in scope.
inline int particulars_needed(const ClassId& id) {
    switch (id.kind) {
        case ClassKind::P1:
        case ClassKind::I8: return 2;
        case ClassKind::P5: return 3;
        case ClassKind::I14A: return detail::is_plain_i14a1(get_class(id).id) ? 2 : 0;
        default: return 0;
    }
}

inline void require_rule(const ClassId& id) {
    if (particulars_needed(id) == 0) throw ConfigError("superposition rule not in scope for class " + id.str());
}

/// ¼√(2(k1²k2² + k1²k3² + k2²k3²) − (k1⁴ + k2⁴ + k3⁴)).
inline double heron_area(double k1, double k2, double k3) {
    const double a = k1 * k1, b = k2 * k2, c = k3 * k3;
    double rad = 2.0 * (a * b + a * c + b * c) - (a * a + b * b + c * c);
    if (rad < 0.0) {
        if (rad < -1e-12 * (a + b + c) * (a + b + c)) {
            std::ostringstream os;
            os << "triangle inequality violated for sides " << k1 << ", " << k2 << ", " << k3;
            throw DomainError(os.str());
        }
        rad = 0.0;
    }
    return 0.25 * std::sqrt(rad);
}

namespace detail {

inline double dist(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

inline Point apply_p1(const std::vector<double>& k, Branch br, const Point& q2, const Point& q3) {
    const double k3 = dist(q2, q3);
    const double k3s = k3 * k3;
    if (k3s == 0.0) throw DegenerateError("P1 particulars coincide");
    const double A = heron_area(k[0], k[1], k3);
    if (std::abs(A) < area_threshold * k3s) throw DegenerateError("P1 triangle area vanishes (collinear points)");
    const double s = (k[0] * k[0] + k3s - k[1] * k[1]) / (2.0 * k3s);
    const double sign = br == Branch::plus ? 1.0 : -1.0;
    return {q2.x + s * (q3.x - q2.x) - sign * 2.0 * A * (q3.y - q2.y) / k3s,
            q2.y + s * (q3.y - q2.y) + sign * 2.0 * A * (q3.x - q2.x) / k3s};
}

inline double i8_radicand(double k1, double k2, double k3) {
    return k1 * k1 + k2 * k2 + k3 * k3 - 2.0 * (k1 * k2 + k1 * k3 + k2 * k3);
}

inline Point apply_i8(const std::vector<double>& k, Branch br, const Point& q2, const Point& q3) {
    const double k3 = (q3.x - q2.x) * (q3.y - q2.y);
    const double rad = i8_radicand(k[0], k[1], k3);
    const double scale = k[0] * k[0] + k[1] * k[1] + k3 * k3;
    if (rad < -1e-12 * scale) throw DegenerateError("I8 radicand negative");
    const double B = std::sqrt(std::max(rad, 0.0));
    if (B < radicand_threshold) throw DegenerateError("I8 radicand vanishes");
    const double dy = q2.y - q3.y, dx = q2.x - q3.x;
    if (std::abs(dy) < 1e-12 || std::abs(dx) < 1e-12) throw DegenerateError("I8 particulars axis-aligned");
    const double sign = br == Branch::plus ? 1.0 : -1.0;
    return {0.5 * (q2.x + q3.x) + (k[1] - k[0] + sign * B) / (2.0 * dy),
            0.5 * (q2.y + q3.y) + (k[1] - k[0] - sign * B) / (2.0 * dx)};
}

inline Point apply_p5(const std::vector<double>& k, const Point& q2, const Point& q3, const Point& q4) {
    const double k4 = triangle_det(q2, q3, q4);
    if (std::abs(k4) < k4_threshold) throw DegenerateError("P5 particulars collinear (k4 vanishes)");
    const double a = 1.0 + (k[1] - k[0]) / k4, b = -k[1] / k4, c = k[0] / k4;
    return {a * q2.x + b * q3.x + c * q4.x, a * q2.y + b * q3.y + c * q4.y};
}

inline void check_count(const ClassId& id, const std::vector<Point>& particulars) {
    const int need = particulars_needed(id);
    if (need == 0) require_rule(id);
    if (static_cast<int>(particulars.size()) != need) {
        std::ostringstream os;
        os << id.str() << " rule needs " << need << " particular solutions, got " << particulars.size();
        throw ConfigError(os.str());
    }
}

}  // namespace detail

/// Rule evaluated on canonical-coordinate points (chart coordinates for the I14A route).
inline Point apply_rule(const RuleConstants& c, const std::vector<Point>& particulars) {
    detail::check_count(c.cls, particulars);
    switch (c.cls.kind) {
        case ClassKind::P1: return detail::apply_p1(c.k, c.branch, particulars[0], particulars[1]);
        case ClassKind::P5: return detail::apply_p5(c.k, particulars[0], particulars[1], particulars[2]);
        case ClassKind::I8: return detail::apply_i8(c.k, c.branch, particulars[0], particulars[1]);
        case ClassKind::I14A: {
            const Chart ch = i14a_to_i8_chart();
            const Point q = detail::apply_i8(c.k, c.branch, ch.forward(particulars[0]), ch.forward(particulars[1]));
            if (!(q.y > 0.0)) throw DegenerateError("I8 point outside the image of the I14A chart");
            return ch.inverse(q);
        }
        default: require_rule(c.cls);
    }
    return {};
}

inline RuleConstants extract_constants(const ClassId& requested, const Point& general0,
                                       const std::vector<Point>& particulars0) {
    const ClassId id = get_class(requested).id;
    detail::check_count(id, particulars0);
    RuleConstants c;
    c.cls = id;
    switch (id.kind) {
        case ClassKind::P1: {
            const Point &q1 = general0, &q2 = particulars0[0], &q3 = particulars0[1];
            c.k = {detail::dist(q1, q2), detail::dist(q1, q3), detail::dist(q2, q3)};
            if (c.k[2] == 0.0) throw DegenerateError("P1 particulars coincide");
            const double orient = triangle_det(q2, q3, q1);
            if (std::abs(orient) < 2.0 * area_threshold * c.k[2] * c.k[2])
                throw DegenerateError("P1 configuration collinear at t0");
            c.branch = orient > 0.0 ? Branch::plus : Branch::minus;
            return c;
        }
        case ClassKind::P5: {
            const Point &q1 = general0, &q2 = particulars0[0], &q3 = particulars0[1], &q4 = particulars0[2];
            c.k = {triangle_det(q1, q2, q3), triangle_det(q1, q2, q4), triangle_det(q1, q3, q4),
                   triangle_det(q2, q3, q4)};
            if (std::abs(c.k[3]) < k4_threshold) throw DegenerateError("P5 particulars collinear at t0");
            return c;
        }
        case ClassKind::I8:
        case ClassKind::I14A: {
            Point q1 = general0, q2 = particulars0[0], q3 = particulars0[1];
            if (id.kind == ClassKind::I14A) {
                const Chart ch = i14a_to_i8_chart();
                q1 = ch.forward(q1);
                q2 = ch.forward(q2);
                q3 = ch.forward(q3);
            }
            c.k = {(q1.x - q2.x) * (q1.y - q2.y), (q1.x - q3.x) * (q1.y - q3.y), (q3.x - q2.x) * (q3.y - q2.y)};
            double best = std::numeric_limits<double>::infinity();
            for (Branch b : {Branch::plus, Branch::minus}) {
                const double d = detail::dist(detail::apply_i8(c.k, b, q2, q3), q1);
                if (d < best) {
                    best = d;
                    c.branch = b;
                }
            }
            return c;
        }
        default: require_rule(id);
    }
    return c;
}

/// Rebuilds the general solution through general0 from particular trajectories on a shared grid.
/// A step whose jump exceeds 10 times the previous jump (or the largest particular step) is
/// reported as a branch inconsistency.
inline Trajectory reconstruct(const ClassId& id, const std::vector<Trajectory>& particulars, const Point& general0) {
    if (particulars.empty()) throw ConfigError("reconstruct needs particular trajectories");
    const std::size_t n = particulars[0].size();
    for (const auto& p : particulars) {
        if (p.size() != n) throw ConfigError("particular trajectories must share the time grid");
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(p.t[i] - particulars[0].t[i]) > 1e-12 * std::max(1.0, std::abs(p.t[i])))
                throw ConfigError("particular trajectories must share the time grid");
    }
    auto at = [&](std::size_t row) {
        std::vector<Point> q;
        for (const auto& p : particulars) q.push_back(p.point(row, 0));
        return q;
    };
    const RuleConstants c = extract_constants(id, general0, at(0));

    Trajectory out;
    out.m = 1;
    out.meta = {{"class", c.cls.str()}, {"k", c.k}, {"branch", to_string(c.branch)}};
    double prev_jump = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = particulars[0].t[i];
        Point g;
        try {
            g = i == 0 ? general0 : apply_rule(c, at(i));
        } catch (const DegenerateError& e) {
            throw DegenerateError(e.what(), t);
        } catch (const DomainError& e) {
            throw DegenerateError(e.what(), t);
        }
        if (i > 0) {
            const Point last = out.point(i - 1, 0);
            const double jump = detail::dist(g, last);
            double spacing = 0.0;
            const auto now = at(i), before = at(i - 1);
            for (std::size_t j = 0; j < now.size(); ++j) spacing = std::max(spacing, detail::dist(now[j], before[j]));
            if (prev_jump >= 0.0 && jump > 10.0 * std::max(prev_jump, spacing) + 1e-9) {
                std::ostringstream os;
                os << "discontinuous reconstruction (jump " << jump << " after " << prev_jump << ")";
                throw DegenerateError(os.str(), t);
            }
            prev_jump = jump;
        }
        out.t.push_back(t);
        out.x.push_back({g.x, g.y});
    }
    return out;
}

/// Same, with the particulars as the copies of one prolonged trajectory.
inline Trajectory reconstruct(const ClassId& id, const Trajectory& prolonged, const Point& general0) {
    std::vector<Trajectory> parts;
    for (int c = 0; c < prolonged.m; ++c) parts.push_back(prolonged.copy(c));
    return reconstruct(id, parts, general0);
}

/// Class whose rule serves the system, reached through its canonical chart.
inline ClassId system_rule_class(const LHSystem& sys) {
    if (!sys.canonical) {
        throw ConfigError("superposition rule not in scope for system " + sys.name +
                          " (no chart to canonical coordinates)");
    }
    require_rule(sys.canonical->cls);
    return sys.canonical->cls;
}

/// Reconstruction in the system's own coordinates: particulars go through the canonical chart and back.
inline Trajectory reconstruct_system(const LHSystem& sys, const std::vector<Trajectory>& particulars,
                                     const Point& general0) {
    const ClassId id = system_rule_class(sys);
    const Chart& ch = sys.canonical->chart;
    if (ch.is_identity()) return reconstruct(id, particulars, general0);
    std::vector<Trajectory> mapped = particulars;
    for (auto& tr : mapped) {
        for (auto& row : tr.x) {
            const Point q = ch.forward(Point{row[0], row[1]});
            row[0] = q.x;
            row[1] = q.y;
        }
    }
    Trajectory out = reconstruct(id, mapped, ch.forward(general0));
    for (auto& row : out.x) {
        const Point p = ch.inverse(Point{row[0], row[1]});
        row[0] = p.x;
        row[1] = p.y;
    }
    out.meta["chart"] = ch.label();
    return out;
}

}  // namespace lhp
