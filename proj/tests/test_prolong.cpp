#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "lhp/prolong.hpp"

using namespace lhp;

namespace {

LHSystem oscillator() {
    return build_system("quadratic_hamiltonian", nlohmann::json::object(),
                        {{"alpha", Signal::constant(1.0)}, {"gamma", Signal::constant(1.0)}});
}

double endpoint_error(const Trajectory& tr) { return std::hypot(tr.x.back()[0], tr.x.back()[1] + 1.0); }

}  // namespace

TEST(Integrate, OscillatorQuarterPeriodAdaptive) {
    const Trajectory tr = integrate(oscillator(), 1, {1.0, 0.0}, 0.0, std::numbers::pi / 2, StepControl::adaptive(1e-12));
    EXPECT_DOUBLE_EQ(tr.t.back(), std::numbers::pi / 2);
    EXPECT_LT(endpoint_error(tr), 1e-8);
    EXPECT_EQ(tr.meta["method"], "rkf45");
}

TEST(Integrate, FixedStepIsFourthOrder) {
    std::vector<double> errs;
    for (double dt : {1e-2, 5e-3, 2.5e-3})
        errs.push_back(endpoint_error(integrate(oscillator(), 1, {1.0, 0.0}, 0.0, std::numbers::pi / 2, StepControl::fixed(dt))));
    for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
        const double ratio = errs[i] / errs[i + 1];
        EXPECT_GT(ratio, 8.0);
        EXPECT_LT(ratio, 32.0);
    }
}

TEST(Integrate, OutputGridIsHonoured) {
    const auto grid = uniform_grid(0.0, 2.0, 20);
    ASSERT_EQ(grid.size(), 21u);
    const Trajectory tr = integrate(oscillator(), 1, {1.0, 0.0}, 0.0, 2.0, StepControl::adaptive(1e-11), grid);
    ASSERT_EQ(tr.size(), grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_DOUBLE_EQ(tr.t[i], grid[i]);
        EXPECT_NEAR(tr.x[i][0], std::cos(grid[i]), 1e-8);
        EXPECT_NEAR(tr.x[i][1], -std::sin(grid[i]), 1e-8);
    }
}

TEST(Integrate, ProlongationDecouplesUnderFixedSteps) {
    Rng rng(11);
    const LHSystem s = build_system("lh_class", {{"class", "P5"}},
                                    {{"b1", random_trig_signal(rng, 1.0)},
                                     {"b2", random_trig_signal(rng, 1.0)},
                                     {"b3", random_trig_signal(rng, 1.0)},
                                     {"b4", random_trig_signal(rng, 1.0)},
                                     {"b5", random_trig_signal(rng, 1.0)}});
    const std::vector<Point> init{{0.1, 0.2}, {-0.4, 0.5}, {0.9, -0.3}};
    const auto ctrl = StepControl::fixed(1e-2);
    const Trajectory joint = integrate(s, 3, flatten(init), 0.0, 1.0, ctrl);
    for (int c = 0; c < 3; ++c) {
        const Trajectory single = integrate(s, 1, flatten({init[static_cast<std::size_t>(c)]}), 0.0, 1.0, ctrl);
        ASSERT_EQ(single.size(), joint.size());
        for (std::size_t i = 0; i < joint.size(); ++i) {
            EXPECT_EQ(joint.point(i, c).x, single.x[i][0]);
            EXPECT_EQ(joint.point(i, c).y, single.x[i][1]);
        }
    }
}

TEST(Integrate, ZeroCoefficientsStayPut) {
    const LHSystem s = build_system("cayley_klein", {{"iota2", 1.0}});
    const Trajectory tr = integrate(s, 2, {0.3, 0.1, -0.2, 0.4}, 0.0, 3.0, StepControl::adaptive(1e-10));
    for (const auto& row : tr.x) EXPECT_EQ(row, (std::vector<double>{0.3, 0.1, -0.2, 0.4}));
}

TEST(Integrate, Errors) {
    const LHSystem ho = oscillator();
    EXPECT_THROW(integrate(ho, 1, {1.0, 0.0}, 1.0, 1.0, StepControl::fixed(0.1)), ConfigError);
    EXPECT_THROW(integrate(ho, 1, {1.0, 0.0}, 1.0, 0.0, StepControl::fixed(0.1)), ConfigError);
    EXPECT_THROW(integrate(ho, 2, {1.0, 0.0}, 0.0, 1.0, StepControl::fixed(0.1)), ConfigError);
    EXPECT_THROW(integrate(ho, 1, {1.0, 0.0}, 0.0, 1.0, StepControl::fixed(0.0)), ConfigError);

    const LHSystem mp = build_system("milne_pinney", {{"c", -1.0}}, {{"omega2", Signal::constant(0.0)}});
    EXPECT_THROW(integrate(mp, 1, {0.0, 1.0}, 0.0, 1.0, StepControl::adaptive(1e-9)), DomainError);
    EXPECT_THROW(integrate(mp, 1, {1.0, 0.0}, 0.0, 5.0, StepControl::adaptive(1e-9)), IntegrationError);
}

TEST(Trajectory, CsvRoundTrip) {
    const Trajectory tr = integrate(oscillator(), 2, {1.0, 0.0, 0.3, 0.7}, 0.0, 1.0, StepControl::fixed(0.1));
    EXPECT_EQ(csv_header(2), "t,x1,y1,x2,y2");
    std::stringstream ss;
    write_csv(ss, tr);
    const Trajectory back = read_csv(ss);
    EXPECT_EQ(back.m, 2);
    EXPECT_EQ(back.t, tr.t);
    EXPECT_EQ(back.x, tr.x);
    EXPECT_EQ(back.copy(1).x[0], (std::vector<double>{0.3, 0.7}));
}

TEST(Trajectory, JsonLinesAndInterpolation) {
    const Trajectory tr = integrate(oscillator(), 1, {1.0, 0.0}, 0.0, 1.0, StepControl::fixed(0.25));
    std::stringstream ss;
    write_jsonl(ss, tr);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(ss, line)) {
        const auto j = nlohmann::json::parse(line);
        EXPECT_EQ(j["t"].get<double>(), tr.t[rows]);
        ++rows;
    }
    EXPECT_EQ(rows, tr.size());
    const auto mid = tr.state_at(0.125);
    EXPECT_DOUBLE_EQ(mid[0], 0.5 * (tr.x[0][0] + tr.x[1][0]));
    EXPECT_THROW(tr.state_at(2.0), DomainError);
}

TEST(Trajectory, FormatDouble) {
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(-2.0), "-2");
    const double v = std::numbers::pi / 7;
    EXPECT_EQ(std::stod(format_double(v)), v);
}
