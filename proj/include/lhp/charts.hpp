#pragma once

// Changes of variables to canonical coordinates.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "lhp/errors.hpp"
#include "lhp/geometry.hpp"

namespace lhp {

/// Forward map (jet-capable), inverse (reals only) and source-side domain.
class Chart {
public:
    Chart() : Chart(identity()) {}

    template <class F, class G>
    Chart(std::string label, F fwd, G inv, Domain domain = {})
        : label_(std::move(label)),
          fwd_(label_, fwd, domain),
          inv_([inv](const Point& p) { return Point(inv(p)); }),
          domain_(std::move(domain)) {}

    static Chart identity() {
        return Chart("identity", [](auto x, auto y) { return vec(x, y); }, [](const Point& p) { return p; });
    }

    const std::string& label() const { return label_; }
    const Domain& domain() const { return domain_; }
    bool contains(const Point& p) const { return in_domain(domain_, p); }
    bool is_identity() const { return label_ == "identity"; }

    Point forward(const Point& p) const {
        if (!contains(p)) throw DomainError("chart " + label_ + ": point outside domain");
        return fwd_(p);
    }
    Vec2<Jet2> forward(const Jet2& x, const Jet2& y) const { return fwd_(x, y); }
    Point inverse(const Point& q) const { return inv_(q); }

    /// Row-major Jacobian of the forward map at p.
    std::array<double, 4> jacobian(const Point& p) const {
        if (!contains(p)) throw DomainError("chart " + label_ + ": point outside domain");
        const auto v = fwd_.jet(p);
        return {v.x.dx, v.x.dy, v.y.dx, v.y.dy};
    }

    /// g∘f, applying *this first.
    Chart then(const Chart& g) const {
        const Chart f = *this;
        return Chart(
            f.label_ + " then " + g.label_,
            [f, g](auto x, auto y) {
                const auto a = f.fwd_(x, y);
                return g.fwd_(a.x, a.y);
            },
            [f, g](const Point& q) { return f.inverse(g.inverse(q)); },
            [f, g](const Point& p) { return f.contains(p) && g.contains(f.fwd_(p)); });
    }

private:
    std::string label_;
    VectorField fwd_;
    std::function<Point(const Point&)> inv_;
    Domain domain_;
};

/// (u, v) ↦ (u+v, u−v).
inline Chart split_complex_chart() {
    return Chart(
        "split_complex", [](auto u, auto v) { return vec(u + v, u - v); },
        [](const Point& q) { return Point{0.5 * (q.x + q.y), 0.5 * (q.x - q.y)}; });
}

/// (u, v) ↦ (u, √v) on v > 0.
inline Chart dual_chart() {
    return Chart(
        "dual", [](auto u, auto v) { return vec(u, sqrt(v)); }, [](const Point& q) { return Point{q.x, q.y * q.y}; },
        [](const Point& p) { return p.y > 0.0; });
}

/// (x, y) ↦ (2x+y², 2x−y²) on y > 0, inverse x = (u+v)/4, y = √((u−v)/2).
inline Chart diffusion_chart() {
    return Chart(
        "diffusion_i4", [](auto x, auto y) { return vec(2.0 * x + y * y, 2.0 * x - y * y); },
        [](const Point& q) { return Point{0.25 * (q.x + q.y), std::sqrt(0.5 * (q.x - q.y))}; },
        [](const Point& p) { return p.y > 0.0; });
}

/// Polar Bernoulli coordinates (r, θ) ↦ (ln(r^{n−1}/sin φ), −cot φ/(n−1)), φ = θ(n−1) ∈ (0, π).
inline Chart bernoulli_chart(double n) {
    if (n == 0.0 || n == 1.0) throw ConfigError("bernoulli_h2 chart needs n not in {0, 1}");
    const double m = n - 1.0;
    return Chart(
        "bernoulli_h2",
        [m](auto r, auto th) {
            const auto phi = m * th;
            const auto s = sin(phi);
            return vec(log(pow(r, m) / s), -cos(phi) / (s * m));
        },
        [m](const Point& q) {
            const double phi = std::atan2(1.0, -m * q.y);
            return Point{std::pow(std::exp(q.x) * std::sin(phi), 1.0 / m), phi / m};
        },
        [m](const Point& p) {
            const double phi = m * p.y;
            return p.x > 0.0 && phi > 0.0 && phi < std::numbers::pi && std::sin(phi) > 1e-6;
        });
}

/// (u, v) ↦ (v e^{−u}, e^u).
inline Chart i14a_to_i8_chart() {
    return Chart(
        "i14a_to_i8", [](auto u, auto v) { return vec(v * exp(-u), exp(u)); },
        [](const Point& q) { return Point{std::log(q.y), q.x * q.y}; });
}

inline const std::vector<std::string>& chart_names() {
    static const std::vector<std::string> names{"identity", "split_complex", "dual", "diffusion_i4", "bernoulli_h2",
                                                "i14a_to_i8"};
    return names;
}

/// Named chart; `n` is used by bernoulli_h2 only.
inline Chart get_chart(const std::string& name, double n = 2.0) {
    if (name == "identity") return Chart::identity();
    if (name == "split_complex") return split_complex_chart();
    if (name == "dual") return dual_chart();
    if (name == "diffusion_i4") return diffusion_chart();
    if (name == "bernoulli_h2") return bernoulli_chart(n);
    if (name == "i14a_to_i8") return i14a_to_i8_chart();
    throw ConfigError("unknown chart '" + name + "'");
}

/// max over samples and i of ‖Dch·src_i(p) − Σ_j mixing[i][j] dst_j(ch(p))‖.
inline double verify_chart(const Chart& ch, const std::vector<VectorField>& src, const std::vector<VectorField>& dst,
                           const std::vector<std::vector<double>>& mixing, const std::vector<Point>& samples) {
    if (mixing.size() != src.size()) throw ConfigError("verify_chart: mixing rows must match source fields");
    double m = 0.0;
    for (const Point& p : samples) {
        if (!ch.contains(p)) throw DomainError("verify_chart: sample outside chart domain");
        const auto J = ch.jacobian(p);
        const Point q = ch.forward(p);
        for (std::size_t i = 0; i < src.size(); ++i) {
            const auto v = src[i](p);
            Point pushed{J[0] * v.x + J[1] * v.y, J[2] * v.x + J[3] * v.y};
            if (mixing[i].size() != dst.size()) throw ConfigError("verify_chart: mixing columns must match targets");
            for (std::size_t j = 0; j < dst.size(); ++j)
                if (mixing[i][j] != 0.0) pushed = pushed - mixing[i][j] * dst[j](q);
            m = std::max(m, norm(pushed));
        }
    }
    return m;
}

/// max over samples of ‖inv(fwd(p)) − p‖.
inline double chart_roundtrip_error(const Chart& ch, const std::vector<Point>& samples) {
    double m = 0.0;
    for (const Point& p : samples) m = std::max(m, norm(ch.inverse(ch.forward(p)) - p));
    return m;
}

inline std::vector<std::vector<double>> identity_mixing(std::size_t n, double s = 1.0) {
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = s;
    return m;
}

}  // namespace lhp
