#pragma once

// Local class of a planar sl(2) realization from the sign of det R, R the Casimir tensor field.

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "lhp/errors.hpp"
#include "lhp/geometry.hpp"

namespace lhp {

enum class Sl2Class { P2, I4, I5, I3 };

inline std::string to_string(Sl2Class c) {
    switch (c) {
        case Sl2Class::P2: return "P2";
        case Sl2Class::I4: return "I4";
        case Sl2Class::I5: return "I5";
        case Sl2Class::I3: return "I3";
    }
    return "?";
}

struct Sl2Sample {
    Point point;
    double det = 0.0;             // det R at the point
    double normalized_det = 0.0;  // det R / (‖R‖² + ε)
    int rank = 2;
};

struct Sl2Verdict {
    Sl2Class cls = Sl2Class::P2;
    int invariant_sign = 0;  // unused (0) for I3
    std::vector<double> det_values;
    std::vector<Sl2Sample> diagnostics;
    double scale = 1.0;  // s with [X1,X2]=sX1, [X1,X3]=2sX2, [X2,X3]=sX3
    double fit_residual = 0.0;
    double casimir_residual = 0.0;  // max |L_{X_i} R| over the samples
    double det_threshold = 1e-9;
    double wedge_threshold = 1e-9;
};

/// R = ½(X1⊗X3 + X3⊗X1) − X2⊗X2, no closure check.
inline SymTensor2 casimir_tensor(const VectorField& X1, const VectorField& X2, const VectorField& X3) {
    Domain d = intersect(intersect(X1.domain(), X2.domain()), X3.domain());
    return {ScalarField(
                "Rxx",
                [X1, X2, X3](auto x, auto y) {
                    const auto a = X1(x, y);
                    const auto b = X2(x, y);
                    const auto c = X3(x, y);
                    return a.x * c.x - b.x * b.x;
                },
                d),
            ScalarField(
                "Rxy",
                [X1, X2, X3](auto x, auto y) {
                    const auto a = X1(x, y);
                    const auto b = X2(x, y);
                    const auto c = X3(x, y);
                    return 0.5 * (a.x * c.y + c.x * a.y) - b.x * b.y;
                },
                d),
            ScalarField(
                "Ryy",
                [X1, X2, X3](auto x, auto y) {
                    const auto a = X1(x, y);
                    const auto b = X2(x, y);
                    const auto c = X3(x, y);
                    return a.y * c.y - b.y * b.y;
                },
                d),
            d};
}

/// Common positive scale s of the triple's brackets relative to the standard sl(2) table.
/// Throws AlgebraError(not_sl2) with the fitted constants otherwise.
inline std::pair<double, double> sl2_scale(const VectorField& X1, const VectorField& X2, const VectorField& X3,
                                           const std::vector<Point>& samples, double tol = 1e-9) {
    const FitResult fit = fit_structure_constants({X1, X2, X3}, samples);
    const auto& c = fit.constants;
    const double s = c(0, 1, 0);
    StructureConstants expected(3);
    expected.set(0, 1, 0, s);
    expected.set(0, 2, 1, 2.0 * s);
    expected.set(1, 2, 2, s);
    const double dev = c.max_abs_difference(expected);
    if (!(s > tol) || dev > tol * std::max(1.0, s) || fit.residual > tol) {
        std::ostringstream os;
        os << "triple does not close as sl(2) in the standard normalization (scale " << s << ", deviation " << dev
           << ", fit residual " << fit.residual << "); fitted constants:\n"
           << c.describe();
        throw AlgebraError(AlgebraError::Reason::not_sl2, os.str());
    }
    return {s, fit.residual};
}

/// R after verifying that the triple closes as sl(2) up to a positive scale.
inline SymTensor2 casimir_tensor(const VectorField& X1, const VectorField& X2, const VectorField& X3,
                                 const std::vector<Point>& samples) {
    sl2_scale(X1, X2, X3, samples);
    return casimir_tensor(X1, X2, X3);
}

inline double casimir_invariance_residual(const std::vector<VectorField>& fields, const SymTensor2& R,
                                          const std::vector<Point>& samples) {
    double m = 0.0;
    for (const auto& X : fields)
        for (const Point& p : samples)
            for (double v : lie_derivative_symtensor(X, R, p)) m = std::max(m, std::abs(v));
    return m;
}

inline Sl2Verdict classify_sl2(const VectorField& X1, const VectorField& X2, const VectorField& X3,
                               const std::vector<Point>& samples) {
    Sl2Verdict v;
    std::tie(v.scale, v.fit_residual) = sl2_scale(X1, X2, X3, samples);
    const SymTensor2 R = casimir_tensor(X1, X2, X3);

    int rank1 = 0;
    for (const Point& p : samples) {
        Sl2Sample s;
        s.point = p;
        const double w = std::max({std::abs(wedge(X1, X2, p)), std::abs(wedge(X1, X3, p)), std::abs(wedge(X2, X3, p))});
        s.rank = w < v.wedge_threshold ? 1 : 2;
        rank1 += s.rank == 1;
        const auto r = R(p);
        s.det = r[0] * r[2] - r[1] * r[1];
        s.normalized_det = s.det / (r[0] * r[0] + 2.0 * r[1] * r[1] + r[2] * r[2] + 1e-30);
        v.diagnostics.push_back(s);
        v.det_values.push_back(s.det);
    }
    v.casimir_residual = casimir_invariance_residual({X1, X2, X3}, R, samples);

    if (rank1 == static_cast<int>(samples.size())) {
        v.cls = Sl2Class::I3;
        v.invariant_sign = 0;
        return v;
    }
    if (rank1 > 0) {
        std::ostringstream os;
        os << "mixed rank: " << rank1 << " of " << samples.size() << " samples have rank 1";
        throw AlgebraError(AlgebraError::Reason::mixed_rank, os.str());
    }

    auto sign_of = [&](const Sl2Sample& s) {
        return s.normalized_det > v.det_threshold ? 1 : (s.normalized_det < -v.det_threshold ? -1 : 0);
    };
    const int first = sign_of(v.diagnostics.front());
    for (const auto& s : v.diagnostics) {
        if (sign_of(s) != first) {
            std::ostringstream os;
            os << "inconsistent det R signs: " << first << " at (" << v.diagnostics.front().point.x << ", "
               << v.diagnostics.front().point.y << ") vs " << sign_of(s) << " at (" << s.point.x << ", " << s.point.y
               << "); samples straddle a boundary of the generic domain";
            throw AlgebraError(AlgebraError::Reason::inconsistent_sign, os.str());
        }
    }
    v.invariant_sign = first;
    v.cls = first > 0 ? Sl2Class::P2 : (first < 0 ? Sl2Class::I4 : Sl2Class::I5);
    return v;
}

}  // namespace lhp
