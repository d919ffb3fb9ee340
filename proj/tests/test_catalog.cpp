#include <gtest/gtest.h>

#include <cmath>

#include "lhp/catalog.hpp"
#include "lhp/hamiltonian.hpp"

using namespace lhp;

namespace {

void expect_field(const VectorField& X, const Point& p, double ex, double ey) {
    const auto v = X(p);
    EXPECT_NEAR(v.x, ex, 1e-14) << X.label();
    EXPECT_NEAR(v.y, ey, 1e-14) << X.label();
}

}  // namespace

TEST(Catalog, TwelveClassesInTableOrder) {
    const auto& kinds = all_class_kinds();
    ASSERT_EQ(kinds.size(), 12u);
    std::vector<std::string> names;
    for (ClassKind k : kinds) names.push_back(to_string(k));
    EXPECT_EQ(names, (std::vector<std::string>{"P1", "P2", "P3", "P5", "I1", "I4", "I5", "I8", "I12", "I14A", "I14B",
                                               "I16"}));
}

TEST(Catalog, EuclideanRecord) {
    const ClassRecord c = get_class("P1");
    ASSERT_EQ(c.dim(), 3);
    const Point p{0.7, -1.3};
    expect_field(c.basis[0], p, 1.0, 0.0);
    expect_field(c.basis[1], p, 0.0, 1.0);
    expect_field(c.basis[2], p, p.y, -p.x);
    EXPECT_EQ(c.omega_density(p), 1.0);
    EXPECT_DOUBLE_EQ(c.hamiltonians[0](p), p.y);
    EXPECT_DOUBLE_EQ(c.hamiltonians[1](p), -p.x);
    EXPECT_DOUBLE_EQ(c.hamiltonians[2](p), 0.5 * (p.x * p.x + p.y * p.y));
    EXPECT_TRUE(c.has_central);
}

TEST(Catalog, ParabolicSl2Record) {
    const ClassRecord c = get_class("I5");
    const Point p{0.4, 1.7};
    expect_field(c.basis[0], p, 1.0, 0.0);
    expect_field(c.basis[1], p, p.x, 0.5 * p.y);
    expect_field(c.basis[2], p, p.x * p.x, p.x * p.y);
    EXPECT_NEAR(c.omega_density(p), 1.0 / (p.y * p.y * p.y), 1e-15);
    const double y2 = p.y * p.y;
    EXPECT_NEAR(c.hamiltonians[0](p), -1.0 / (2 * y2), 1e-15);
    EXPECT_NEAR(c.hamiltonians[1](p), -p.x / (2 * y2), 1e-15);
    EXPECT_NEAR(c.hamiltonians[2](p), -p.x * p.x / (2 * y2), 1e-15);
    EXPECT_FALSE(c.has_central);
}

TEST(Catalog, ExponentialRankOneHamiltonians) {
    const ClassRecord c = get_class("I14A:r=1:eta=exp(x)");
    const Point p{0.3, 2.0};
    EXPECT_DOUBLE_EQ(c.hamiltonians[0](p), 2.0);
    EXPECT_DOUBLE_EQ(c.hamiltonians[1](p), -std::exp(0.3));
}

TEST(Catalog, IdParsingAndDefaults) {
    EXPECT_EQ(get_class("p2").id.str(), "P2");
    EXPECT_EQ(get_class("I14A:r=2").id, get_class("I14A:r=2:eta=exp(x),exp(-x)").id);
    EXPECT_EQ(get_class(ClassKind::I16).id.r, 2);
    EXPECT_EQ(get_class(ClassKind::I14B).dim(), 3);
    EXPECT_EQ(get_class("I12:r=3").dim(), 4);
    EXPECT_EQ(get_class("I16:r=4").dim(), 7);
}

TEST(Catalog, InvalidIdsAreRejected) {
    EXPECT_THROW(get_class("Q7"), ConfigError);
    EXPECT_THROW(get_class("P2:r=2"), ConfigError);
    EXPECT_THROW(get_class("I16:r=5"), ConfigError);
    EXPECT_THROW(get_class("I14A:r=1:eta=x"), ConfigError);
    EXPECT_THROW(get_class("I14A:r=2:eta=exp(x),exp(x)"), ConfigError);
    EXPECT_THROW(get_class("I14B:r=2:eta=x^2"), ConfigError);
    EXPECT_THROW(get_class("I12:r=2:eta=x"), ConfigError);
    EXPECT_THROW(get_class("I8:foo=1"), ConfigError);
}

TEST(Catalog, EveryClassVerifies) {
    for (ClassKind k : all_class_kinds()) {
        const ClassReport r = verify_class(get_class(k).id, 200, 42);
        EXPECT_TRUE(r.passes()) << r.id << " structure " << r.max_structure_residual << " hamiltonian "
                                << r.max_hamiltonianity_residual << " correspondence "
                                << r.max_correspondence_residual << " brackets " << r.max_bracket_residual;
    }
}

TEST(Catalog, ParametricVariantsVerify) {
    for (const char* id : {"I12:r=1", "I12:r=3", "I14A:r=2", "I14A:r=3:eta=exp(x),exp(2x),exp(-0.5x)",
                           "I14B:r=3", "I14B:r=3:eta=x,exp(x)", "I16:r=1", "I16:r=3", "I16:r=4"}) {
        const ClassReport r = verify_class(parse_class_id(id), 200, 42);
        EXPECT_TRUE(r.passes()) << id;
    }
}

TEST(Catalog, SphericalAlternativeHamiltonians) {
    const ClassRecord c = get_class(ClassKind::P3);
    const auto pts = class_samples(c, 200, 42);
    const SymplecticForm w = symplectic_form(c);
    ASSERT_EQ(c.alt_hamiltonians.size(), 3u);
    EXPECT_LT(bracket_table_residual(w, c.alt_hamiltonians, c.alt_brackets, pts), 1e-9);
    EXPECT_FALSE(c.alt_brackets.uses_central());
    for (int i = 0; i < 3; ++i)
        EXPECT_LT(correspondence_residual(w, c.basis[i], c.alt_hamiltonians[i], pts), 1e-9);
}

TEST(Catalog, CentralTermIsNeeded) {
    for (ClassKind k : all_class_kinds()) {
        const ClassRecord c = get_class(k);
        if (!c.has_central) continue;
        const auto pts = class_samples(c, 100, 42);
        EXPECT_GT(bracket_table_residual(symplectic_form(c), c.hamiltonians, c.lh_brackets, pts, false), 1e-3)
            << c.id.str();
    }
}

TEST(Catalog, CentralFlagsMatchTable) {
    for (const char* id : {"P1", "P3", "P5", "I8", "I14B", "I16"}) EXPECT_TRUE(get_class(id).has_central) << id;
    for (const char* id : {"P2", "I1", "I4", "I5", "I12", "I14A"}) EXPECT_FALSE(get_class(id).has_central) << id;
}
