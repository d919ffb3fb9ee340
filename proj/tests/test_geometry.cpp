#include <gtest/gtest.h>

#include <cmath>

#include "lhp/catalog.hpp"
#include "lhp/geometry.hpp"
#include "lhp/systems.hpp"

using namespace lhp;

namespace {

const VectorField dx("d/dx", [](auto, auto) { return vec(1.0, 0.0); });
const VectorField euler("x d/dx + y d/dy", [](auto x, auto y) { return vec(x, y); });
const VectorField x_dx("x d/dx", [](auto x, auto) { return vec(x, 0.0); });

const SampleRegion square{{-3.0, 3.0, -3.0, 3.0}, {}};

ScalarField constant(double c) {
    return ScalarField("c", [c](auto, auto) { return c; });
}

}  // namespace

TEST(LieBracket, CoordinateExamples) {
    const auto b = lie_bracket(dx, euler, {2.0, 3.0});
    EXPECT_DOUBLE_EQ(b.x, 1.0);
    EXPECT_DOUBLE_EQ(b.y, 0.0);

    const ClassRecord p2 = get_class(ClassKind::P2);
    const auto c = lie_bracket(p2.basis[0], p2.basis[2], {1.0, 2.0});
    const auto x2 = p2.basis[1](1.0, 2.0);
    EXPECT_DOUBLE_EQ(c.x, 2.0);
    EXPECT_DOUBLE_EQ(c.y, 4.0);
    EXPECT_DOUBLE_EQ(c.x, 2.0 * x2.x);
    EXPECT_DOUBLE_EQ(c.y, 2.0 * x2.y);
}

TEST(LieBracket, Antisymmetry) {
    for (ClassKind k : all_class_kinds()) {
        const ClassRecord c = get_class(k);
        for (const Point& p : sample_points(c.region, 20, 3)) {
            for (int i = 0; i < c.dim(); ++i)
                for (int j = 0; j < c.dim(); ++j) {
                    const auto a = lie_bracket(c.basis[i], c.basis[j], p);
                    const auto b = lie_bracket(c.basis[j], c.basis[i], p);
                    EXPECT_NEAR(a.x, -b.x, 1e-14 * std::max(1.0, std::abs(a.x))) << c.id.str();
                    EXPECT_NEAR(a.y, -b.y, 1e-14 * std::max(1.0, std::abs(a.y))) << c.id.str();
                }
        }
    }
}

TEST(LieBracket, JacobiOnEveryCatalogBasis) {
    for (ClassKind k : all_class_kinds()) {
        const ClassRecord c = get_class(k);
        const auto pts = sample_points(c.region, 100, 42);
        EXPECT_LT(jacobi_pointwise_residual(c.basis, c.structure, pts), 1e-9) << c.id.str();
        EXPECT_LT(c.structure.jacobi_residual(), 1e-12) << c.id.str();
    }
}

TEST(StructureFit, AffineLineAlgebra) {
    const FitResult fit = fit_structure_constants({dx, x_dx}, sample_points(square, 50, 1));
    EXPECT_NEAR(fit.constants(0, 1, 0), 1.0, 1e-12);
    EXPECT_NEAR(fit.constants(0, 1, 1), 0.0, 1e-12);
    EXPECT_LT(fit.residual, 1e-12);
}

TEST(StructureFit, ReproducesEveryCatalogTable) {
    for (ClassKind k : all_class_kinds()) {
        const ClassRecord c = get_class(k);
        const FitResult fit = fit_structure_constants(c.basis, sample_points(c.region, 100, 42));
        EXPECT_LT(fit.residual, 1e-9) << c.id.str();
        EXPECT_LT(fit.constants.max_abs_difference(c.structure), 1e-9) << c.id.str();
    }
}

TEST(StructureFit, CayleyKleinEllipticMatchesSl2) {
    const LHSystem ck = build_system("cayley_klein", {{"iota2", -1.0}});
    const FitResult fit = fit_structure_constants(ck.fields, sample_points(ck.region, 100, 42));
    EXPECT_LT(fit.residual, 1e-9);
    EXPECT_LT(fit.constants.max_abs_difference(detail::sl2_constants()), 1e-9);
}

TEST(StructureFit, DiffusionConstants) {
    const LHSystem d = build_system("diffusion_riccati", {{"c0", 1.0}});
    const FitResult fit = fit_structure_constants(d.fields, sample_points(d.region, 100, 42));
    EXPECT_NEAR(fit.constants(0, 1, 0), 2.0, 1e-9);
    EXPECT_NEAR(fit.constants(0, 2, 1), 4.0, 1e-9);
    EXPECT_NEAR(fit.constants(1, 2, 2), 2.0, 1e-9);
    EXPECT_LT(fit.residual, 1e-9);
}

TEST(StructureFit, NonClosedSetHasLargeResidual) {
    const VectorField x2dy("x^2 d/dy", [](auto x, auto) { return vec(0.0, x * x); });
    const VectorField dy("d/dy", [](auto, auto) { return vec(0.0, 1.0); });
    const FitResult fit = fit_structure_constants({dx, x2dy, dy}, sample_points(square, 50, 2));
    EXPECT_GT(fit.residual, 1e-3);
}

TEST(BivectorLieDerivative, Examples) {
    const Bivector2 unit{constant(1.0), {}};
    EXPECT_EQ(lie_derivative_bivector(dx, unit, {0.3, -1.2}), 0.0);
    EXPECT_DOUBLE_EQ(lie_derivative_bivector(x_dx, unit, {0.7, 2.0}), -1.0);

    const double n = 2.0;
    const VectorField dtheta("d/dtheta", [](auto, auto) { return vec(0.0, 1.0); });
    const Bivector2 ber{ScalarField("r^3", [n](auto r, auto) { return pow(r, 2.0 * n - 1.0); }), {}};
    EXPECT_NEAR(lie_derivative_bivector(dtheta, ber, {2.0, 1.0}), 0.0, 1e-14);
}

TEST(SymTensorLieDerivative, Examples) {
    const SymTensor2 dxdx{constant(1.0), constant(0.0), constant(0.0), {}};
    const auto a = lie_derivative_symtensor(dx, dxdx, {1.0, 1.0});
    EXPECT_EQ(a[0], 0.0);
    EXPECT_EQ(a[1], 0.0);
    EXPECT_EQ(a[2], 0.0);
    const auto b = lie_derivative_symtensor(x_dx, dxdx, {0.4, -2.0});
    EXPECT_DOUBLE_EQ(b[0], -2.0);
    EXPECT_DOUBLE_EQ(b[1], 0.0);
    EXPECT_DOUBLE_EQ(b[2], 0.0);
}

TEST(ShearDiffeo, RoundTripAndPushforward) {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const ShearDiffeo phi = ShearDiffeo::random(rng, 0.05);
        const VectorField pushed = pushforward(euler, phi);
        for (const Point& p : sample_points(square, 20, rng)) {
            const auto q = phi.forward(p.x, p.y);
            const auto back = phi.inverse(q.x, q.y);
            EXPECT_NEAR(back.x, p.x, 1e-12);
            EXPECT_NEAR(back.y, p.y, 1e-12);
            const auto J = phi.jacobian(p.x, p.y);
            const auto v = euler(p);
            const auto w = pushed(q.x, q.y);
            EXPECT_NEAR(w.x, J[0] * v.x + J[1] * v.y, 1e-12);
            EXPECT_NEAR(w.y, J[2] * v.x + J[3] * v.y, 1e-12);
        }
    }
}

TEST(Sampling, DeterministicAndInsideRegion) {
    const SampleRegion half{{-1.0, 1.0, -1.0, 1.0}, [](const Point& p) { return p.y > p.x; }};
    const auto a = sample_points(half, 30, 9);
    const auto b = sample_points(half, 30, 9);
    ASSERT_EQ(a.size(), 30u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].x, b[i].x);
        EXPECT_EQ(a[i].y, b[i].y);
        EXPECT_GT(a[i].y, a[i].x);
    }
}
