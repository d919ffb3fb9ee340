#include <gtest/gtest.h>

#include <cmath>

#include "lhp/catalog.hpp"
#include "lhp/hamiltonian.hpp"
#include "lhp/systems.hpp"

using namespace lhp;

namespace {

ScalarField unit() {
    return ScalarField("1", [](auto, auto) { return 1.0; });
}

const SymplecticForm area{unit(), {}};
const SampleRegion square{{-3.0, 3.0, -3.0, 3.0}, {}};

// The I4 density is singular on x = y; x - y is linear along each leg of an L-path.
bool i4_paths_stay_on_base_side(const Point& base, const Point& p) {
    for (const Point& q : {base, p, Point{base.x, p.y}, Point{p.x, base.y}})
        if (!(q.x > q.y)) return false;
    return true;
}

}  // namespace

TEST(PoissonBracket, SignConvention) {
    const ClassRecord p1 = get_class(ClassKind::P1);
    const SymplecticForm w = symplectic_form(p1);
    for (const Point& p : sample_points(square, 10, 1)) {
        EXPECT_DOUBLE_EQ(poisson_bracket(w, p1.hamiltonians[0], p1.hamiltonians[1], p), 1.0);
        EXPECT_EQ(poisson_bracket(w, p1.hamiltonians[2], p1.hamiltonians[2], p), 0.0);
    }
}

TEST(PoissonBracket, TwoPhotonQuadraticPair) {
    const ClassRecord p5 = get_class(ClassKind::P5);
    const Point p{1.0, 2.0};
    EXPECT_DOUBLE_EQ(poisson_bracket(symplectic_form(p5), p5.hamiltonians[3], p5.hamiltonians[4], p), 2.0);
    EXPECT_DOUBLE_EQ(p5.hamiltonians[2](p), 2.0);
}

TEST(PoissonBracket, Antisymmetry) {
    Rng rng(3);
    for (ClassKind k : all_class_kinds()) {
        const ClassRecord c = get_class(k);
        const SymplecticForm w = symplectic_form(c);
        for (const Point& p : sample_points(c.region, 20, rng))
            for (int i = 0; i < c.dim(); ++i)
                for (int j = 0; j < c.dim(); ++j)
                    EXPECT_EQ(poisson_bracket(w, c.hamiltonians[i], c.hamiltonians[j], p),
                              -poisson_bracket(w, c.hamiltonians[j], c.hamiltonians[i], p));
    }
}

TEST(PoissonBracket, ReproducesStoredTables) {
    for (ClassKind k : all_class_kinds()) {
        const ClassRecord c = get_class(k);
        EXPECT_LT(bracket_table_residual(symplectic_form(c), c.hamiltonians, c.lh_brackets, class_samples(c, 100, 42)),
                  1e-9)
            << c.id.str();
    }
}

TEST(Hamiltonianity, Examples) {
    const auto pts = sample_points(square, 50, 4);
    const VectorField rotation("y d/dx - x d/dy", [](auto x, auto y) { return vec(y, -x); });
    EXPECT_LT(is_hamiltonian(area, rotation, pts), 1e-14);

    const SymplecticForm hyperbolic{ScalarField("1/y^2", [](auto, auto y) { return 1.0 / (y * y); }),
                                    [](const Point& p) { return p.y > 0.0; }};
    const VectorField special("(x^2-y^2) d/dx + 2xy d/dy",
                              [](auto x, auto y) { return vec(x * x - y * y, 2.0 * x * y); });
    EXPECT_LT(is_hamiltonian(hyperbolic, special, sample_points(SampleRegion{{-3, 3, 0.2, 3}, {}}, 50, 4)), 1e-12);

    const VectorField dilation("x d/dx", [](auto x, auto) { return vec(x, 0.0); });
    EXPECT_DOUBLE_EQ(is_hamiltonian(area, dilation, pts), 1.0);
}

TEST(Quadrature, Examples) {
    const ClassRecord p1 = get_class(ClassKind::P1);
    EXPECT_NEAR(hamiltonian_by_quadrature(area, p1.basis[2], {0, 0}, {1, 1}), 1.0, 1e-12);
    EXPECT_EQ(hamiltonian_by_quadrature(area, p1.basis[2], {0.3, 0.4}, {0.3, 0.4}), 0.0);

    const ClassRecord p2 = get_class(ClassKind::P2);
    EXPECT_NEAR(hamiltonian_by_quadrature(symplectic_form(p2), p2.basis[0], {0, 1}, {2, 2}), 0.5, 1e-12);
}

TEST(Quadrature, MatchesCatalogUpToConstantAndIsPathIndependent) {
    for (ClassKind k : all_class_kinds()) {
        const ClassRecord c = get_class(k);
        const SymplecticForm w = symplectic_form(c);
        const Point base = c.quadrature_base;
        int checked = 0;
        for (const Point& p : class_samples(c, 12, 8)) {
            if (k == ClassKind::I4 && !i4_paths_stay_on_base_side(base, p)) continue;
            for (int i = 0; i < c.dim(); ++i) {
                double a = 0.0, b = 0.0;
                try {
                    a = hamiltonian_by_quadrature(w, c.basis[i], base, p, PathOrder::y_then_x);
                    b = hamiltonian_by_quadrature(w, c.basis[i], base, p, PathOrder::x_then_y);
                } catch (const DomainError&) {
                    continue;
                }
                const double expected = c.hamiltonians[i](p) - c.hamiltonians[i](base);
                const double scale = std::max(1.0, std::abs(expected));
                EXPECT_LT(std::abs(a - b), 1e-8 * scale) << c.id.str() << " h" << i + 1;
                EXPECT_LT(std::abs(a - expected), 1e-8 * scale) << c.id.str() << " h" << i + 1;
                ++checked;
            }
        }
        EXPECT_GT(checked, 0) << c.id.str();
    }
}

TEST(Quadrature, PathLeavingDomainIsAnError) {
    const ClassRecord p2 = get_class(ClassKind::P2);
    EXPECT_THROW(hamiltonian_by_quadrature(symplectic_form(p2), p2.basis[0], {0, 1}, {1, -1}), DomainError);
}

TEST(IdealBivector, UnitDensityExamples) {
    for (const char* id : {"P1", "P5", "I8", "I14B:r=2", "I16:r=1"}) {
        const ClassRecord c = get_class(id);
        const auto pts = class_samples(c, 100, 42);
        const Bivector2 L = bivector_from_ideal(c.basis, {0, 1}, pts);
        for (const Point& p : pts) EXPECT_DOUBLE_EQ(L.lambda(p), 1.0) << id;
        EXPECT_LT(check_trivial_representation(c.basis, L, pts), 1e-12) << id;
    }
}

TEST(IdealBivector, BernoulliPowerLaw) {
    for (double n : {2.0, 3.0}) {
        const LHSystem ber = build_system("complex_bernoulli", {{"n", n}});
        const auto pts = sample_points(ber.region, 100, 42);
        const auto fields = ber.algebra_fields();
        const Bivector2 L = bivector_from_ideal(fields, {1, 2}, pts);
        for (const Point& p : pts) {
            const double expected = std::pow(p.x, 2 * n - 1);
            EXPECT_NEAR(L.lambda(p), expected, 1e-12 * expected);
        }
        EXPECT_LT(check_trivial_representation(fields, L, pts), 1e-9);
        const SymplecticForm w = symplectic_from_bivector(L);
        for (const Point& p : pts) EXPECT_NEAR(w.density(p), std::pow(p.x, 1 - 2 * n), 1e-12);
    }
}

TEST(IdealBivector, Failures) {
    const auto pts = sample_points(square, 50, 6);
    const VectorField dx("d/dx", [](auto, auto) { return vec(1.0, 0.0); });
    const VectorField dy("d/dy", [](auto, auto) { return vec(0.0, 1.0); });
    const VectorField xdx("x d/dx", [](auto x, auto) { return vec(x, 0.0); });
    const VectorField xdy("x d/dy", [](auto x, auto) { return vec(0.0, x); });
    try {
        bivector_from_ideal({dx, dy, xdx}, {0, 1}, pts);
        FAIL() << "expected nonzero trace";
    } catch (const AlgebraError& e) {
        EXPECT_EQ(e.reason(), AlgebraError::Reason::nonzero_trace);
        EXPECT_EQ(e.offender(), 2);
    }
    const ClassRecord i16 = get_class("I16:r=2");
    try {
        bivector_from_ideal(i16.basis, {0, 1}, class_samples(i16, 50, 6));
        FAIL() << "expected not an ideal";
    } catch (const AlgebraError& e) {
        EXPECT_EQ(e.reason(), AlgebraError::Reason::not_an_ideal);
    }
    try {
        bivector_from_ideal({dx, dy, xdy}, {1, 2}, pts);
        FAIL() << "expected vanishing wedge";
    } catch (const AlgebraError& e) {
        EXPECT_EQ(e.reason(), AlgebraError::Reason::wedge_vanishes);
        EXPECT_NE(std::string(e.what()).find("I∧I = 0"), std::string::npos);
    }
    EXPECT_THROW(bivector_from_ideal({dx, dy}, {0, 0}, pts), ConfigError);
}

TEST(TrivialRepresentation, Examples) {
    const ClassRecord p1 = get_class(ClassKind::P1);
    const Bivector2 unit_bivector{unit(), {}};
    EXPECT_LT(check_trivial_representation(p1.basis, unit_bivector, class_samples(p1, 100, 42)), 1e-12);
    const VectorField xdx("x d/dx", [](auto x, auto) { return vec(x, 0.0); });
    EXPECT_DOUBLE_EQ(check_trivial_representation({xdx}, unit_bivector, sample_points(square, 10, 1)), 1.0);

    const ClassRecord i16 = get_class("I16:r=2");
    EXPECT_LT(check_trivial_representation(i16.basis, unit_bivector, class_samples(i16, 100, 42)), 1e-12);
}

TEST(Compatibility, CatalogClassesAdmitForms) {
    for (ClassKind k : all_class_kinds()) {
        const ClassRecord c = get_class(k);
        EXPECT_TRUE(compatible_symplectic_check(c.basis, class_samples(c, 50, 42)).compatible) << c.id.str();
    }
}

TEST(Compatibility, LieButNotHamiltonianAlgebra) {
    const LHSystem lv = build_system("lotka_volterra", {{"a", 1.0}, {"b", 1.0}});
    const CompatibilityReport r = compatible_symplectic_check(lv.fields, sample_points(lv.region, 50, 42));
    EXPECT_FALSE(r.compatible);
    EXPECT_GT(r.residual, 1e-3);
}
