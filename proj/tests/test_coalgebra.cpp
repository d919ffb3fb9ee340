#include <gtest/gtest.h>

#include <cmath>

#include "lhp/acceptance.hpp"
#include "lhp/coalgebra.hpp"

using namespace lhp;

TEST(Casimir, PlaneExamples) {
    const ClassRecord p1 = get_class(ClassKind::P1);
    EXPECT_DOUBLE_EQ(coproduct_invariant(casimir_spec(p1.id), p1, {{0, 0}, {3, 4}}), 12.5);
    EXPECT_DOUBLE_EQ(coproduct_invariant(casimir_spec(p1.id), p1, {{1.5, -2}, {1.5, -2}}), 0.0);
    const ClassRecord p5 = get_class(ClassKind::P5);
    EXPECT_NEAR(coproduct_invariant(casimir_spec(p5.id), p5, {{0, 0}, {1, 0}, {0, 1}}), 1.0, 1e-14);
}

TEST(Casimir, SpecShapes) {
    EXPECT_EQ(casimir_spec(parse_class_id("P1")).degree, 2);
    EXPECT_EQ(casimir_spec(parse_class_id("P5")).degree, 3);
    EXPECT_TRUE(casimir_spec(parse_class_id("I16:r=2")).nonpolynomial);
    EXPECT_FALSE(casimir_spec(parse_class_id("I16:r=2")).single_copy);
    EXPECT_THROW(casimir_spec(parse_class_id("I1")), ConfigError);
    EXPECT_THROW(casimir_spec(parse_class_id("I12:r=2")), ConfigError);
    EXPECT_THROW(casimir_spec(parse_class_id("I16:r=3")), ConfigError);
    EXPECT_THROW(casimir_spec(parse_class_id("I14A:r=1")), ConfigError);
}

TEST(Casimir, ClosedFormsOnRandomCopies) {
    Rng rng(5);
    for (const auto& cf : acceptance::closed_forms()) {
        const ClassRecord c = get_class(cf.cls);
        const CasimirSpec spec = casimir_spec(c.id);
        int checked = 0;
        for (int trial = 0; trial < 200 && checked < 20; ++trial) {
            const auto q = sample_points(c.region, static_cast<std::size_t>(cf.k), rng);
            double want;
            try {
                want = cf.f(q);
            } catch (const Error&) {
                continue;
            }
            if (!std::isfinite(want) || std::abs(want) < 1e-6) continue;
            const double got = coproduct_invariant(spec, c, q);
            EXPECT_NEAR(got, want, 1e-9 * std::max(1.0, std::abs(want))) << cf.cls;
            ++checked;
        }
        EXPECT_GE(checked, 10) << cf.cls;
    }
}

TEST(Casimir, SingleCopyValues) {
    Rng rng(9);
    for (const char* id : {"P1", "P2", "P3", "P5", "I4", "I5", "I8", "I14A:r=2", "I14B:r=2"}) {
        const ClassRecord c = get_class(id);
        const CasimirSpec spec = casimir_spec(c.id);
        ASSERT_TRUE(spec.single_copy) << id;
        for (const Point& p : sample_points(c.region, 10, rng))
            EXPECT_NEAR(coproduct_invariant(spec, c, {p}), *spec.single_copy, 1e-10) << id;
    }
    const ClassRecord i16 = get_class("I16:r=2");
    EXPECT_THROW(coproduct_invariant(casimir_spec(i16.id), i16, {{0.5, 1.0}}), DomainError);
}

TEST(Casimir, CommutesWithProlongedHamiltonians) {
    Rng rng(13);
    for (const char* id : {"P1", "P2", "P3", "P5", "I4", "I5", "I8", "I14A:r=2", "I14B:r=2", "I16:r=2"}) {
        const ClassRecord c = get_class(id);
        const InvariantModel model = invariant_model(c);
        for (int trial = 0; trial < 5; ++trial) {
            const auto q = sample_points(c.region, 3, rng);
            const double scale = std::max(1.0, std::abs(model.evaluate(q)));
            for (std::size_t a = 0; a < c.hamiltonians.size(); ++a)
                EXPECT_LT(std::abs(prolonged_bracket(model, c, q, a)), 1e-9 * scale) << id << " h" << a + 1;
        }
    }
}

TEST(Casimir, PermutedInvariants) {
    const ClassRecord p1 = get_class(ClassKind::P1);
    const CasimirSpec spec = casimir_spec(p1.id);
    const std::vector<Point> q{{0, 0}, {3, 4}, {1, 1}};
    EXPECT_DOUBLE_EQ(permuted_invariant(spec, p1, q, 2, 1, 2), 1.0);
    EXPECT_DOUBLE_EQ(permuted_invariant(spec, p1, q, 2, 0, 2), 6.5);

    const ClassRecord i8 = get_class(ClassKind::I8);
    const std::vector<Point> r{{0, 0}, {1, 2}, {3, 5}};
    EXPECT_DOUBLE_EQ(permuted_invariant(casimir_spec(i8.id), i8, r, 2, 1, 2), 15.0);
    EXPECT_THROW(permuted_invariant(spec, p1, q, 2, 1, 1), ConfigError);
    EXPECT_THROW(permuted_invariant(spec, p1, q, 2, 0, 5), ConfigError);
}

TEST(Conservation, InvariantsHoldAlongSolutions) {
    Rng rng(21);
    auto trig = [&](double amp = 1.0) { return random_trig_signal(rng, amp); };
    const std::vector<std::pair<LHSystem, int>> cases{
        {build_system("lh_class", {{"class", "P1"}}, {{"b1", trig()}, {"b2", trig()}, {"b3", trig()}}), 2},
        {build_system("quadratic_hamiltonian", nlohmann::json::object(),
                      {{"alpha", trig()}, {"beta", trig()}, {"gamma", trig()}, {"delta", trig()}, {"epsilon", trig()}}),
         3},
        {build_system("complex_bernoulli", {{"n", 2.0}}, {{"a1I", trig()}, {"a2R", trig()}, {"a2I", trig()}}), 2},
    };
    for (const auto& [s, k] : cases) {
        const InvariantModel model = invariant_model(s);
        std::vector<double> init;
        for (const Point& p : sample_points(s.region, static_cast<std::size_t>(k), rng)) {
            init.push_back(p.x);
            init.push_back(p.y);
        }
        const Trajectory tr = integrate(s, k, init, 0.0, 5.0, StepControl::adaptive(1e-10), uniform_grid(0, 5, 200));
        EXPECT_LT(drift_report(model, tr, first_copies(k)).max_rel_drift, 1e-6) << s.name;
    }
}

TEST(Conservation, FrozenSystemHasNoDrift) {
    const LHSystem s = build_system("lh_class", {{"class", "P1"}});
    const Trajectory tr = integrate(s, 2, {0.0, 0.0, 1.0, 2.0}, 0.0, 2.0, StepControl::adaptive(1e-10));
    const DriftReport d = drift_report(invariant_model(s), tr, first_copies(2));
    EXPECT_DOUBLE_EQ(d.initial, 2.5);
    EXPECT_EQ(d.max_abs_drift, 0.0);
}
