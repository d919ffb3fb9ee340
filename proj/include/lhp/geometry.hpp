#pragma once

// Planar vector fields, brackets, bivectors, symmetric tensors and structure constants.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lhp/errors.hpp"
#include "lhp/jets.hpp"
#include "lhp/random.hpp"

namespace lhp {

template <class T>
struct Vec2 {
    T x{};
    T y{};
};

using Point = Vec2<double>;

template <class T>
Vec2<T> operator+(const Vec2<T>& a, const Vec2<T>& b) {
    return {a.x + b.x, a.y + b.y};
}
template <class T>
Vec2<T> operator-(const Vec2<T>& a, const Vec2<T>& b) {
    return {a.x - b.x, a.y - b.y};
}
template <class T>
Vec2<T> operator*(double s, const Vec2<T>& a) {
    return {s * a.x, s * a.y};
}

inline double norm(const Point& p) { return std::hypot(p.x, p.y); }

/// Builds a Vec2 whose scalar type is Jet2 as soon as either component is a jet.
template <class A, class B>
auto vec(const A& a, const B& b) {
    if constexpr (std::is_same_v<A, Jet2> || std::is_same_v<B, Jet2>) {
        return Vec2<Jet2>{Jet2(a), Jet2(b)};
    } else {
        return Vec2<double>{static_cast<double>(a), static_cast<double>(b)};
    }
}

/// Point predicate. An empty predicate accepts the whole plane.
using Domain = std::function<bool(const Point&)>;

inline bool in_domain(const Domain& d, const Point& p) { return !d || d(p); }

inline Domain intersect(Domain a, Domain b) {
    if (!a) return b;
    if (!b) return a;
    return [a = std::move(a), b = std::move(b)](const Point& p) { return a(p) && b(p); };
}

/// Scalar field evaluable on reals and on jets from one generic definition.
class ScalarField {
public:
    ScalarField() = default;

    template <class F>
    ScalarField(std::string label, F f, Domain domain = {})
        : label_(std::move(label)),
          real_([f](double x, double y) { return static_cast<double>(f(x, y)); }),
          jet_([f](const Jet2& x, const Jet2& y) { return Jet2(f(x, y)); }),
          domain_(std::move(domain)) {}

    double operator()(double x, double y) const { return real_(x, y); }
    Jet2 operator()(const Jet2& x, const Jet2& y) const { return jet_(x, y); }
    double operator()(const Point& p) const { return real_(p.x, p.y); }

    Jet2 jet(const Point& p) const {
        auto [jx, jy] = seed(p.x, p.y);
        return jet_(jx, jy);
    }

    const std::string& label() const { return label_; }
    const Domain& domain() const { return domain_; }
    bool contains(const Point& p) const { return in_domain(domain_, p); }
    bool valid() const { return static_cast<bool>(real_); }

private:
    std::string label_;
    std::function<double(double, double)> real_;
    std::function<Jet2(const Jet2&, const Jet2&)> jet_;
    Domain domain_;
};

/// Planar vector field evaluable on reals and on jets from one generic definition.
class VectorField {
public:
    VectorField() = default;

    template <class F>
    VectorField(std::string label, F f, Domain domain = {})
        : label_(std::move(label)),
          real_([f](double x, double y) {
              auto v = f(x, y);
              return Vec2<double>{value_of(v.x), value_of(v.y)};
          }),
          jet_([f](const Jet2& x, const Jet2& y) {
              auto v = f(x, y);
              return Vec2<Jet2>{Jet2(v.x), Jet2(v.y)};
          }),
          domain_(std::move(domain)) {}

    Vec2<double> operator()(double x, double y) const { return real_(x, y); }
    Vec2<Jet2> operator()(const Jet2& x, const Jet2& y) const { return jet_(x, y); }
    Vec2<double> operator()(const Point& p) const { return real_(p.x, p.y); }

    Vec2<Jet2> jet(const Point& p) const {
        auto [jx, jy] = seed(p.x, p.y);
        return jet_(jx, jy);
    }

    const std::string& label() const { return label_; }
    const Domain& domain() const { return domain_; }
    bool contains(const Point& p) const { return in_domain(domain_, p); }
    VectorField with_label(std::string label) const {
        VectorField out = *this;
        out.label_ = std::move(label);
        return out;
    }

private:
    std::string label_;
    std::function<Vec2<double>(double, double)> real_;
    std::function<Vec2<Jet2>(const Jet2&, const Jet2&)> jet_;
    Domain domain_;
};

inline VectorField operator*(double s, const VectorField& X) {
    std::ostringstream os;
    os << s << "*(" << X.label() << ")";
    return VectorField(
        os.str(), [X, s](auto x, auto y) { return s * X(x, y); }, X.domain());
}

inline VectorField operator+(const VectorField& X, const VectorField& Y) {
    return VectorField(
        X.label() + " + " + Y.label(), [X, Y](auto x, auto y) { return X(x, y) + Y(x, y); },
        intersect(X.domain(), Y.domain()));
}

/// Σ coeffs[i]·fields[i], a fixed element of the span.
inline VectorField linear_combination(const std::vector<double>& coeffs,
                                      const std::vector<VectorField>& fields) {
    if (coeffs.size() != fields.size() || fields.empty())
        throw ConfigError("linear_combination: size mismatch");
    VectorField out = coeffs[0] * fields[0];
    for (std::size_t i = 1; i < fields.size(); ++i) out = out + coeffs[i] * fields[i];
    return out;
}

/// (∂f/∂x, ∂f/∂y) at p.
inline std::array<double, 2> grad(const ScalarField& f, const Point& p) {
    const Jet2 j = f.jet(p);
    return {j.dx, j.dy};
}

inline void require_domain(const VectorField& X, const Point& p) {
    if (!X.contains(p)) throw DomainError("point outside domain of " + X.label());
}

/// Components of [X,Y] at p: X^i ∂_i Y^k − Y^i ∂_i X^k.
inline Vec2<double> lie_bracket(const VectorField& X, const VectorField& Y, const Point& p) {
    require_domain(X, p);
    require_domain(Y, p);
    const Vec2<Jet2> a = X.jet(p);
    const Vec2<Jet2> b = Y.jet(p);
    return {(a.x.val * b.x.dx + a.y.val * b.x.dy) - (b.x.val * a.x.dx + b.y.val * a.x.dy),
            (a.x.val * b.y.dx + a.y.val * b.y.dy) - (b.x.val * a.y.dx + b.y.val * a.y.dy)};
}

/// Coefficient of ∂x∧∂y in X∧Y at p.
inline double wedge(const VectorField& X, const VectorField& Y, const Point& p) {
    const Vec2<double> a = X(p);
    const Vec2<double> b = Y(p);
    return a.x * b.y - a.y * b.x;
}

/// ∂x(f X^x) + ∂y(f X^y) at p; zero iff X preserves f dx∧dy.
inline double weighted_divergence(const ScalarField& f, const VectorField& X, const Point& p) {
    auto [jx, jy] = seed(p.x, p.y);
    const Jet2 fj = f(jx, jy);
    const Vec2<Jet2> v = X(jx, jy);
    return (fj * v.x).dx + (fj * v.y).dy;
}

/// Λ = λ ∂x∧∂y.
struct Bivector2 {
    ScalarField lambda;
    Domain domain;
};

/// Symmetric contravariant 2-tensor with components rxx, rxy, ryy.
struct SymTensor2 {
    ScalarField rxx;
    ScalarField rxy;
    ScalarField ryy;
    Domain domain;

    std::array<double, 3> operator()(const Point& p) const { return {rxx(p), rxy(p), ryy(p)}; }
    double det(const Point& p) const {
        const auto r = (*this)(p);
        return r[0] * r[2] - r[1] * r[1];
    }
};

/// Coefficient of ∂x∧∂y in L_X Λ at p: X·∇λ − λ div X.
inline double lie_derivative_bivector(const VectorField& X, const Bivector2& L, const Point& p) {
    require_domain(X, p);
    if (!in_domain(L.domain, p)) throw DomainError("point outside bivector domain");
    auto [jx, jy] = seed(p.x, p.y);
    const Jet2 lam = L.lambda(jx, jy);
    const Vec2<Jet2> v = X(jx, jy);
    return v.x.val * lam.dx + v.y.val * lam.dy - lam.val * (v.x.dx + v.y.dy);
}

/// (xx, xy, yy) components of L_X R at p.
inline std::array<double, 3> lie_derivative_symtensor(const VectorField& X, const SymTensor2& R,
                                                      const Point& p) {
    require_domain(X, p);
    if (!in_domain(R.domain, p)) throw DomainError("point outside tensor domain");
    auto [jx, jy] = seed(p.x, p.y);
    const Vec2<Jet2> v = X(jx, jy);
    const Jet2 a = R.rxx(jx, jy);
    const Jet2 b = R.rxy(jx, jy);
    const Jet2 c = R.ryy(jx, jy);
    const double vx = v.x.val, vy = v.y.val;
    const double jxx = v.x.dx, jxy = v.x.dy, jyx = v.y.dx, jyy = v.y.dy;
    return {vx * a.dx + vy * a.dy - 2.0 * (a.val * jxx + b.val * jxy),
            vx * b.dx + vy * b.dy - (b.val * jxx + c.val * jxy) - (a.val * jyx + b.val * jyy),
            vx * c.dx + vy * c.dy - 2.0 * (b.val * jyx + c.val * jyy)};
}

/// c_ijk with [X_i,X_j] = Σ_k c_ijk X_k, stored for i<j; indices are 0-based.
class StructureConstants {
public:
    StructureConstants() = default;
    explicit StructureConstants(int dim)
        : dim_(dim), c_(static_cast<std::size_t>(dim * (dim - 1) / 2 * dim), 0.0) {}

    int dim() const { return dim_; }

    double operator()(int i, int j, int k) const {
        if (i == j) return 0.0;
        return i < j ? c_[offset(i, j) + k] : -c_[offset(j, i) + k];
    }

    /// Sets c_ijk (and implicitly c_jik = −c_ijk).
    void set(int i, int j, int k, double v) {
        if (i == j) throw ConfigError("structure constant with i == j");
        if (i < j)
            c_[offset(i, j) + k] = v;
        else
            c_[offset(j, i) + k] = -v;
    }

    std::vector<double> bracket(int i, int j) const {
        std::vector<double> out(static_cast<std::size_t>(dim_));
        for (int k = 0; k < dim_; ++k) out[static_cast<std::size_t>(k)] = (*this)(i, j, k);
        return out;
    }

    double max_abs_difference(const StructureConstants& o) const {
        if (o.dim_ != dim_) return std::numeric_limits<double>::infinity();
        double m = 0.0;
        for (std::size_t n = 0; n < c_.size(); ++n) m = std::max(m, std::abs(c_[n] - o.c_[n]));
        return m;
    }

    /// Max over i<j<k and n of the Jacobi identity on the constants themselves.
    double jacobi_residual() const {
        double m = 0.0;
        for (int i = 0; i < dim_; ++i)
            for (int j = i + 1; j < dim_; ++j)
                for (int k = j + 1; k < dim_; ++k)
                    for (int n = 0; n < dim_; ++n) {
                        double s = 0.0;
                        for (int q = 0; q < dim_; ++q)
                            s += (*this)(j, k, q) * (*this)(i, q, n) +
                                 (*this)(k, i, q) * (*this)(j, q, n) +
                                 (*this)(i, j, q) * (*this)(k, q, n);
                        m = std::max(m, std::abs(s));
                    }
        return m;
    }

    /// Human-readable list of nonzero brackets with 1-based labels, e.g. "[X1,X2] = 1*X1".
    std::string describe(double eps = 1e-12) const {
        std::ostringstream os;
        for (int i = 0; i < dim_; ++i)
            for (int j = i + 1; j < dim_; ++j) {
                bool first = true;
                for (int k = 0; k < dim_; ++k) {
                    const double v = (*this)(i, j, k);
                    if (std::abs(v) <= eps) continue;
                    if (first) os << "[X" << i + 1 << ",X" << j + 1 << "] =";
                    os << ' ' << (v < 0 ? "-" : (first ? "" : "+")) << (first || v < 0 ? "" : " ")
                       << std::abs(v) << "*X" << k + 1;
                    first = false;
                }
                if (!first) os << '\n';
            }
        return os.str();
    }

private:
    std::size_t offset(int i, int j) const {
        const int row = i * (2 * dim_ - i - 1) / 2 + (j - i - 1);
        return static_cast<std::size_t>(row * dim_);
    }

    int dim_ = 0;
    std::vector<double> c_;
};

struct FitResult {
    StructureConstants constants;
    double residual = 0.0;   // max pointwise ‖[X_i,X_j] − Σ c_ijk X_k‖
    double condition = 0.0;  // of the column-equilibrated normal matrix
    bool ill_conditioned = false;
};

/// Least-squares structure constants of a basis over sample points.
inline FitResult fit_structure_constants(const std::vector<VectorField>& basis,
                                         const std::vector<Point>& samples) {
    const int l = static_cast<int>(basis.size());
    const int rows = 2 * static_cast<int>(samples.size());
    if (l == 0) throw ConfigError("empty basis");
    if (rows < l) throw AlgebraError(AlgebraError::Reason::rank_deficient, "too few samples for basis");

    Eigen::MatrixXd A(rows, l);
    for (int k = 0; k < l; ++k)
        for (std::size_t s = 0; s < samples.size(); ++s) {
            require_domain(basis[static_cast<std::size_t>(k)], samples[s]);
            const auto v = basis[static_cast<std::size_t>(k)](samples[s]);
            A(2 * static_cast<int>(s), k) = v.x;
            A(2 * static_cast<int>(s) + 1, k) = v.y;
        }

    Eigen::VectorXd scale = A.colwise().norm().transpose();
    for (int k = 0; k < l; ++k)
        if (scale(k) == 0.0)
            throw AlgebraError(AlgebraError::Reason::rank_deficient,
                               "basis field " + std::to_string(k + 1) + " vanishes on all samples", k);
    const Eigen::MatrixXd As = A * scale.cwiseInverse().asDiagonal();
    const Eigen::MatrixXd G = As.transpose() * As;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(G, Eigen::EigenvaluesOnly);
    const double lmax = eig.eigenvalues().maxCoeff();
    const double lmin = std::max(eig.eigenvalues().minCoeff(), 0.0);
    FitResult out;
    out.condition = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();
    out.ill_conditioned = out.condition > 1e8;
    if (lmin <= 1e-13 * lmax) {
        int ba = 0, bb = 1;
        double best = -1.0;
        for (int a = 0; a < l; ++a)
            for (int b = a + 1; b < l; ++b) {
                const double c = std::abs(As.col(a).dot(As.col(b)));
                if (c > best) {
                    best = c;
                    ba = a;
                    bb = b;
                }
            }
        throw AlgebraError(AlgebraError::Reason::rank_deficient,
                           "rank-deficient sample matrix: basis fields " + std::to_string(ba + 1) +
                               " (" + basis[static_cast<std::size_t>(ba)].label() + ") and " +
                               std::to_string(bb + 1) + " (" +
                               basis[static_cast<std::size_t>(bb)].label() +
                               ") are degenerate on the samples",
                           ba);
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(G);

    out.constants = StructureConstants(l);
    Eigen::VectorXd b(rows);
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j) {
            for (std::size_t s = 0; s < samples.size(); ++s) {
                const auto br = lie_bracket(basis[static_cast<std::size_t>(i)],
                                            basis[static_cast<std::size_t>(j)], samples[s]);
                b(2 * static_cast<int>(s)) = br.x;
                b(2 * static_cast<int>(s) + 1) = br.y;
            }
            Eigen::VectorXd c = lu.solve(As.transpose() * b);
            c += lu.solve(As.transpose() * (b - As * c));  // one refinement sweep
            const Eigen::VectorXd r = b - As * c;
            for (std::size_t s = 0; s < samples.size(); ++s)
                out.residual = std::max(out.residual, std::hypot(r(2 * static_cast<int>(s)),
                                                                 r(2 * static_cast<int>(s) + 1)));
            for (int k = 0; k < l; ++k) out.constants.set(i, j, k, c(k) / scale(k));
        }
    return out;
}

/// Max pointwise deviation of [X_i,X_j] from Σ c_ijk X_k for given constants.
inline double structure_residual(const std::vector<VectorField>& basis, const StructureConstants& c,
                                 const std::vector<Point>& samples) {
    const int l = static_cast<int>(basis.size());
    double m = 0.0;
    for (const Point& p : samples) {
        std::vector<Vec2<double>> v;
        v.reserve(basis.size());
        for (const auto& X : basis) v.push_back(X(p));
        for (int i = 0; i < l; ++i)
            for (int j = i + 1; j < l; ++j) {
                Vec2<double> r = lie_bracket(basis[static_cast<std::size_t>(i)],
                                             basis[static_cast<std::size_t>(j)], p);
                for (int k = 0; k < l; ++k) r = r - c(i, j, k) * v[static_cast<std::size_t>(k)];
                m = std::max(m, norm(r));
            }
    }
    return m;
}

/// Pointwise cyclic sum [X_i,[X_j,X_k]] + cyclic, with inner brackets expanded through c.
inline double jacobi_pointwise_residual(const std::vector<VectorField>& basis,
                                        const StructureConstants& c,
                                        const std::vector<Point>& samples) {
    const int l = static_cast<int>(basis.size());
    double m = 0.0;
    for (const Point& p : samples) {
        std::vector<std::vector<Vec2<double>>> br(static_cast<std::size_t>(l),
                                                  std::vector<Vec2<double>>(static_cast<std::size_t>(l)));
        for (int a = 0; a < l; ++a)
            for (int b = 0; b < l; ++b)
                br[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                    lie_bracket(basis[static_cast<std::size_t>(a)], basis[static_cast<std::size_t>(b)], p);
        auto nested = [&](int i, int j, int k) {
            Vec2<double> s{};
            for (int q = 0; q < l; ++q)
                s = s + c(j, k, q) * br[static_cast<std::size_t>(i)][static_cast<std::size_t>(q)];
            return s;
        };
        for (int i = 0; i < l; ++i)
            for (int j = i + 1; j < l; ++j)
                for (int k = j + 1; k < l; ++k)
                    m = std::max(m, norm(nested(i, j, k) + nested(j, k, i) + nested(k, i, j)));
    }
    return m;
}

struct Box {
    double xmin, xmax, ymin, ymax;
};

/// Rectangle intersected with an acceptance predicate.
struct SampleRegion {
    Box box;
    Domain accept;
};

/// Uniform rejection sampling; throws if the region is (nearly) empty.
inline std::vector<Point> sample_points(const SampleRegion& region, int n, Rng& rng) {
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(n));
    long attempts = 0;
    const long max_attempts = 1000L * n + 1000;
    while (static_cast<int>(out.size()) < n) {
        if (++attempts > max_attempts) throw DomainError("sampling region has too little accepted area");
        const Point p{rng.uniform(region.box.xmin, region.box.xmax),
                      rng.uniform(region.box.ymin, region.box.ymax)};
        if (in_domain(region.accept, p)) out.push_back(p);
    }
    return out;
}

inline std::vector<Point> sample_points(const SampleRegion& region, int n, std::uint64_t seed) {
    Rng rng(seed);
    return sample_points(region, n, rng);
}

/// Near-identity polynomial diffeomorphism φ = S2∘S1 with S1(x,y) = (x + p(y), y)
/// and S2(x,y) = (x, y + q(x)); p and q are cubics.
class ShearDiffeo {
public:
    ShearDiffeo(std::array<double, 4> p, std::array<double, 4> q) : p_(p), q_(q) {}

    static ShearDiffeo random(Rng& rng, double amplitude) {
        std::array<double, 4> p{}, q{};
        for (auto& c : p) c = rng.uniform(-amplitude, amplitude);
        for (auto& c : q) c = rng.uniform(-amplitude, amplitude);
        return {p, q};
    }

    template <class T>
    Vec2<T> forward(const T& x, const T& y) const {
        const T x1 = x + poly(p_, y);
        return {x1, y + poly(q_, x1)};
    }

    template <class T>
    Vec2<T> inverse(const T& x, const T& y) const {
        const T y0 = y - poly(q_, x);
        return {x - poly(p_, y0), y0};
    }

    /// Jacobian of the forward map at a source point, row-major.
    template <class T>
    std::array<T, 4> jacobian(const T& x, const T& y) const {
        const T x1 = x + poly(p_, y);
        const T dp = dpoly(p_, y);
        const T dq = dpoly(q_, x1);
        return {T(1.0), dp, dq, 1.0 + dq * dp};
    }

private:
    template <class T>
    static T poly(const std::array<double, 4>& c, const T& s) {
        return c[0] + s * (c[1] + s * (c[2] + s * c[3]));
    }
    template <class T>
    static T dpoly(const std::array<double, 4>& c, const T& s) {
        return c[1] + s * (2.0 * c[2] + s * (3.0 * c[3]));
    }

    std::array<double, 4> p_, q_;
};

/// (φ_* X)(q) = Dφ(φ⁻¹q) · X(φ⁻¹q).
inline VectorField pushforward(const VectorField& X, const ShearDiffeo& phi) {
    Domain d;
    if (X.domain()) {
        d = [X, phi](const Point& q) { return X.contains(phi.inverse(q.x, q.y)); };
    }
    return VectorField(
        "push(" + X.label() + ")",
        [X, phi](auto x, auto y) {
            const auto s = phi.inverse(x, y);
            const auto v = X(s.x, s.y);
            const auto J = phi.jacobian(s.x, s.y);
            return vec(J[0] * v.x + J[1] * v.y, J[2] * v.x + J[3] * v.y);
        },
        d);
}

}  // namespace lhp
