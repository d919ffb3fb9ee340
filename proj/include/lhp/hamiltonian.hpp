#pragma once

// Symplectic forms on the plane: Poisson brackets, Hamiltonian functions, bivectors from ideals.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lhp/catalog.hpp"
#include "lhp/errors.hpp"
#include "lhp/geometry.hpp"

namespace lhp {

/// ω = f dx∧dy.
struct SymplecticForm {
    ScalarField density;
    Domain domain;
};

inline SymplecticForm symplectic_form(const ClassRecord& c) { return {c.omega_density, c.domain}; }

/// {h,g} = (h_x g_y − h_y g_x)/f at p.
inline double poisson_bracket(const SymplecticForm& w, const ScalarField& h, const ScalarField& g,
                              const Point& p) {
    if (!in_domain(w.domain, p)) throw DomainError("poisson_bracket: point outside domain");
    const double f = w.density(p);
    if (f == 0.0) throw DomainError("poisson_bracket: degenerate symplectic density");
    const Jet2 a = h.jet(p);
    const Jet2 b = g.jet(p);
    return (a.dx * b.dy - a.dy * b.dx) / f;
}

/// Max over samples of |∂x(fX^x) + ∂y(fX^y)|.
inline double is_hamiltonian(const SymplecticForm& w, const VectorField& X, const std::vector<Point>& samples) {
    double m = 0.0;
    for (const Point& p : samples) m = std::max(m, std::abs(weighted_divergence(w.density, X, p)));
    return m;
}

/// Max over samples of the deviation from f X^x = h_y, f X^y = −h_x.
inline double correspondence_residual(const SymplecticForm& w, const VectorField& X, const ScalarField& h,
                                      const std::vector<Point>& samples) {
    double m = 0.0;
    for (const Point& p : samples) {
        const double f = w.density(p);
        const auto v = X(p);
        const Jet2 hj = h.jet(p);
        m = std::max({m, std::abs(f * v.x - hj.dy), std::abs(f * v.y + hj.dx)});
    }
    return m;
}

/// Max over pairs and samples of |{h_i,h_j} − Σ_k b_ijk h_k − b_ij0|.
/// With include_central = false the h0 column is dropped (negative control).
inline double bracket_table_residual(const SymplecticForm& w, const std::vector<ScalarField>& h,
                                     const BracketTable& table, const std::vector<Point>& samples,
                                     bool include_central = true) {
    const int l = static_cast<int>(h.size());
    double m = 0.0;
    for (const Point& p : samples) {
        std::vector<double> hv(static_cast<std::size_t>(l));
        for (int k = 0; k < l; ++k) hv[static_cast<std::size_t>(k)] = h[static_cast<std::size_t>(k)](p);
        for (int i = 0; i < l; ++i)
            for (int j = i + 1; j < l; ++j) {
                double r = poisson_bracket(w, h[static_cast<std::size_t>(i)], h[static_cast<std::size_t>(j)], p);
                for (int k = 0; k < l; ++k) r -= table(i, j, k) * hv[static_cast<std::size_t>(k)];
                if (include_central) r -= table.central(i, j);
                m = std::max(m, std::abs(r));
            }
    }
    return m;
}

enum class PathOrder { y_then_x, x_then_y };

namespace detail {

inline double integrate_segment(const std::function<double(double)>& g, double a, double b) {
    if (a == b) return 0.0;
    double err = 0.0;
    const double lo = std::min(a, b), hi = std::max(a, b);
    const double val =
        boost::math::quadrature::gauss_kronrod<double, 15>::integrate(g, lo, hi, 20, 1e-13, &err);
    if (!std::isfinite(val) || err > 1e-10 * std::max(1.0, std::abs(val)))
        throw Error("hamiltonian_by_quadrature: quadrature did not converge");
    return a < b ? val : -val;
}

}  // namespace detail

/// Points along the axis-aligned path from base to p (corner included).
inline std::vector<Point> l_path_points(const Point& base, const Point& p, PathOrder order, int n = 256) {
    const Point corner = order == PathOrder::y_then_x ? Point{base.x, p.y} : Point{p.x, base.y};
    std::vector<Point> out;
    for (int i = 0; i <= n; ++i) {
        const double s = static_cast<double>(i) / n;
        out.push_back({base.x + s * (corner.x - base.x), base.y + s * (corner.y - base.y)});
    }
    for (int i = 1; i <= n; ++i) {
        const double s = static_cast<double>(i) / n;
        out.push_back({corner.x + s * (p.x - corner.x), corner.y + s * (p.y - corner.y)});
    }
    return out;
}

/// h(p) with h(base) = 0 from ι_X ω = dh, integrated along an L-shaped path.
inline double hamiltonian_by_quadrature(const SymplecticForm& w, const VectorField& X, const Point& base,
                                        const Point& p, PathOrder order = PathOrder::y_then_x) {
    for (const Point& q : l_path_points(base, p, order, 64))
        if (!in_domain(w.domain, q) || !X.contains(q))
            throw DomainError("hamiltonian_by_quadrature: path leaves the domain");
    const auto hy = [&](double x) {
        return std::function<double(double)>([&, x](double s) { return w.density(x, s) * X(x, s).x; });
    };
    const auto hx = [&](double y) {
        return std::function<double(double)>([&, y](double s) { return -w.density(s, y) * X(s, y).y; });
    };
    if (order == PathOrder::y_then_x)
        return detail::integrate_segment(hy(base.x), base.y, p.y) + detail::integrate_segment(hx(p.y), base.x, p.x);
    return detail::integrate_segment(hx(base.y), base.x, p.x) + detail::integrate_segment(hy(p.x), base.y, p.y);
}

namespace detail {

// Least-squares coefficients of v in the pointwise span of (a, b) over samples, plus residual.
inline std::pair<Eigen::Vector2d, double> expand_in_pair(const std::vector<Vec2<double>>& v,
                                                         const std::vector<Vec2<double>>& a,
                                                         const std::vector<Vec2<double>>& b) {
    const int n = static_cast<int>(v.size());
    Eigen::MatrixXd M(2 * n, 2);
    Eigen::VectorXd rhs(2 * n);
    for (int s = 0; s < n; ++s) {
        const auto u = static_cast<std::size_t>(s);
        M(2 * s, 0) = a[u].x;
        M(2 * s + 1, 0) = a[u].y;
        M(2 * s, 1) = b[u].x;
        M(2 * s + 1, 1) = b[u].y;
        rhs(2 * s) = v[u].x;
        rhs(2 * s + 1) = v[u].y;
    }
    const Eigen::Matrix2d G = M.transpose() * M;
    const Eigen::Vector2d c = G.fullPivLu().solve(M.transpose() * rhs);
    const Eigen::VectorXd r = rhs - M * c;
    double m = 0.0;
    for (int s = 0; s < n; ++s) m = std::max(m, std::hypot(r(2 * s), r(2 * s + 1)));
    return {c, m};
}

}  // namespace detail

/// Λ = Y1∧Y2 for a two-dimensional ideal ⟨Y1,Y2⟩ on which the algebra acts by traceless maps.
inline Bivector2 bivector_from_ideal(const std::vector<VectorField>& basis, std::pair<int, int> ideal,
                                     const std::vector<Point>& samples, double tol = 1e-9) {
    const int l = static_cast<int>(basis.size());
    if (ideal.first < 0 || ideal.second < 0 || ideal.first >= l || ideal.second >= l || ideal.first == ideal.second)
        throw ConfigError("bivector_from_ideal: invalid ideal indices");
    const VectorField& Y1 = basis[static_cast<std::size_t>(ideal.first)];
    const VectorField& Y2 = basis[static_cast<std::size_t>(ideal.second)];

    for (const Point& p : samples) {
        if (std::abs(wedge(Y1, Y2, p)) < tol)
            throw AlgebraError(AlgebraError::Reason::wedge_vanishes,
                               "I∧I = 0: " + Y1.label() + " ∧ " + Y2.label() + " vanishes at (" +
                                   std::to_string(p.x) + ", " + std::to_string(p.y) + ")",
                               ideal.first);
    }

    std::vector<Vec2<double>> y1, y2;
    for (const Point& p : samples) {
        y1.push_back(Y1(p));
        y2.push_back(Y2(p));
    }
    for (int k = 0; k < l; ++k) {
        const VectorField& X = basis[static_cast<std::size_t>(k)];
        std::vector<Vec2<double>> b1, b2;
        for (const Point& p : samples) {
            b1.push_back(lie_bracket(X, Y1, p));
            b2.push_back(lie_bracket(X, Y2, p));
        }
        const auto [c1, r1] = detail::expand_in_pair(b1, y1, y2);
        const auto [c2, r2] = detail::expand_in_pair(b2, y1, y2);
        if (std::max(r1, r2) > tol)
            throw AlgebraError(AlgebraError::Reason::not_an_ideal,
                               "not an ideal: bracket with basis element " + std::to_string(k + 1) + " (" +
                                   X.label() + ") leaves the span",
                               k);
        const double trace = c1(0) + c2(1);
        if (std::abs(trace) > tol)
            throw AlgebraError(AlgebraError::Reason::nonzero_trace,
                               "nonzero trace " + std::to_string(trace) + " of basis element " +
                                   std::to_string(k + 1) + " (" + X.label() + ") on the ideal",
                               k);
    }
    Domain d = intersect(Y1.domain(), Y2.domain());
    return {ScalarField(
                "(" + Y1.label() + ")^(" + Y2.label() + ")",
                [Y1, Y2](auto x, auto y) {
                    const auto a = Y1(x, y);
                    const auto b = Y2(x, y);
                    return a.x * b.y - a.y * b.x;
                },
                d),
            d};
}

/// ω with density 1/λ associated with a nondegenerate bivector.
inline SymplecticForm symplectic_from_bivector(const Bivector2& L) {
    ScalarField lam = L.lambda;
    return {ScalarField("1/(" + lam.label() + ")", [lam](auto x, auto y) { return 1.0 / lam(x, y); }, L.domain),
            L.domain};
}

/// Max over basis fields and samples of |L_X Λ|.
inline double check_trivial_representation(const std::vector<VectorField>& basis, const Bivector2& L,
                                           const std::vector<Point>& samples) {
    double m = 0.0;
    for (const auto& X : basis)
        for (const Point& p : samples) m = std::max(m, std::abs(lie_derivative_bivector(X, L, p)));
    return m;
}

/// Result of searching for a density f with div(f X_i) = 0 for every basis field.
struct CompatibilityReport {
    bool compatible = false;
    double residual = 0.0;  // max pointwise least-squares residual of X_i·∇ln f = −div X_i
    Point worst{0.0, 0.0};
    std::string note;
};

/// Pointwise test for a compatible symplectic form: at each sample, the equations
/// X_i·g = −div X_i in the unknown g = ∇ln f must be consistent. An inconsistency at a
/// generic point rules out every compatible ω near that point.
inline CompatibilityReport compatible_symplectic_check(const std::vector<VectorField>& basis,
                                                       const std::vector<Point>& samples, double tol = 1e-9) {
    CompatibilityReport rep;
    for (const Point& p : samples) {
        const int l = static_cast<int>(basis.size());
        Eigen::MatrixXd M(l, 2);
        Eigen::VectorXd rhs(l);
        for (int k = 0; k < l; ++k) {
            const auto v = basis[static_cast<std::size_t>(k)].jet(p);
            M(k, 0) = v.x.val;
            M(k, 1) = v.y.val;
            rhs(k) = -(v.x.dx + v.y.dy);
        }
        const Eigen::Vector2d g = M.completeOrthogonalDecomposition().solve(rhs);
        const double scale = 1.0 + rhs.cwiseAbs().maxCoeff();
        const double r = (M * g - rhs).cwiseAbs().maxCoeff() / scale;
        if (r > rep.residual) {
            rep.residual = r;
            rep.worst = p;
        }
    }
    rep.compatible = rep.residual <= tol;
    rep.note = rep.compatible ? "a compatible density exists pointwise"
                              : "no density f makes every field divergence-free for f dx^dy";
    return rep;
}

/// Residuals of the four catalog checks for one class.
struct ClassReport {
    std::string id;
    int samples = 0;
    double max_structure_residual = 0.0;
    double max_hamiltonianity_residual = 0.0;
    double max_correspondence_residual = 0.0;
    double max_bracket_residual = 0.0;
    double tolerance = 1e-9;

    bool passes() const {
        return max_structure_residual < tolerance && max_hamiltonianity_residual < tolerance &&
               max_correspondence_residual < tolerance && max_bracket_residual < tolerance;
    }
};

/// Samples of a class region.
inline std::vector<Point> class_samples(const ClassRecord& c, int n, std::uint64_t seed) {
    return sample_points(c.region, n, seed);
}

inline ClassReport verify_class(const ClassId& id, int n_samples = 200, std::uint64_t seed = default_seed) {
    const ClassRecord c = get_class(id);
    const auto samples = class_samples(c, n_samples, seed);
    const SymplecticForm w = symplectic_form(c);
    ClassReport rep;
    rep.id = c.id.str();
    rep.samples = n_samples;
    rep.max_structure_residual =
        std::max(structure_residual(c.basis, c.structure, samples), c.structure.jacobi_residual());
    for (int i = 0; i < c.dim(); ++i) {
        const auto& X = c.basis[static_cast<std::size_t>(i)];
        rep.max_hamiltonianity_residual = std::max(rep.max_hamiltonianity_residual, is_hamiltonian(w, X, samples));
        rep.max_correspondence_residual =
            std::max(rep.max_correspondence_residual,
                     correspondence_residual(w, X, c.hamiltonians[static_cast<std::size_t>(i)], samples));
        if (!c.alt_hamiltonians.empty())
            rep.max_correspondence_residual =
                std::max(rep.max_correspondence_residual,
                         correspondence_residual(w, X, c.alt_hamiltonians[static_cast<std::size_t>(i)], samples));
    }
    rep.max_bracket_residual = bracket_table_residual(w, c.hamiltonians, c.lh_brackets, samples);
    if (!c.alt_hamiltonians.empty())
        rep.max_bracket_residual =
            std::max(rep.max_bracket_residual, bracket_table_residual(w, c.alt_hamiltonians, c.alt_brackets, samples));
    return rep;
}

}  // namespace lhp
