#include <gtest/gtest.h>

#include <cmath>

#include "lhp/jets.hpp"
#include "lhp/random.hpp"

using namespace lhp;

namespace {

template <class F>
std::pair<double, double> central_difference(F f, double x, double y, double h = 1e-6) {
    return {(f(x + h, y) - f(x - h, y)) / (2 * h), (f(x, y + h) - f(x, y - h)) / (2 * h)};
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(Jets, SeedingPlacesUnitDerivatives) {
    auto [x, y] = seed(2.0, 3.0);
    EXPECT_EQ(x.val, 2.0);
    EXPECT_EQ(x.dx, 1.0);
    EXPECT_EQ(x.dy, 0.0);
    EXPECT_EQ(y.val, 3.0);
    EXPECT_EQ(y.dx, 0.0);
    EXPECT_EQ(y.dy, 1.0);

    auto [x0, y0] = seed(0.0, 0.0);
    EXPECT_EQ(x0.dx, 1.0);
    EXPECT_EQ(y0.dy, 1.0);
}

TEST(Jets, ProductRule) {
    auto [x, y] = seed(2.0, 3.0);
    const Jet2 p = x * y;
    EXPECT_EQ(p.val, 6.0);
    EXPECT_EQ(p.dx, 3.0);
    EXPECT_EQ(p.dy, 2.0);
}

TEST(Jets, GradientExamples) {
    {
        auto [x, y] = seed(1.0, 2.0);
        const Jet2 f = x * x + y * y;
        EXPECT_DOUBLE_EQ(f.dx, 2.0);
        EXPECT_DOUBLE_EQ(f.dy, 4.0);
    }
    {
        auto [x, y] = seed(0.0, 5.0);
        const Jet2 f = exp(x);
        EXPECT_DOUBLE_EQ(f.dx, 1.0);
        EXPECT_DOUBLE_EQ(f.dy, 0.0);
    }
    {
        auto [x, y] = seed(0.0, 2.0);
        const Jet2 f = -1.0 / y;
        EXPECT_DOUBLE_EQ(f.dx, 0.0);
        EXPECT_DOUBLE_EQ(f.dy, 0.25);
    }
}

TEST(Jets, PolynomialDerivativesAreExact) {
    Rng rng(42);
    for (int i = 0; i < 1000; ++i) {
        const double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3);
        auto [x, y] = seed(a, b);
        const Jet2 f = x * x * x * y;
        EXPECT_LT(rel_err(f.dx, 3 * a * a * b), 1e-14);
        EXPECT_LT(rel_err(f.dy, a * a * a), 1e-14);
    }
}

TEST(Jets, RandomCompositionsMatchFiniteDifferences) {
    Rng rng(7);
    auto f = [](auto x, auto y, double c1, double c2, double c3) {
        using std::cos, std::exp, std::log, std::pow, std::sin, std::sqrt;
        return c1 * sin(x * y) + c2 * exp(0.3 * x) * cos(y) + c3 * log(1.5 + x * x) / sqrt(2.0 + y * y) +
               pow(1.0 + x * x + y * y, 1.5) - x * x * y / (3.0 + y * y);
    };
    for (int i = 0; i < 1000; ++i) {
        const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
        const double c1 = rng.uniform(-1, 1), c2 = rng.uniform(-1, 1), c3 = rng.uniform(-1, 1);
        auto [x, y] = seed(a, b);
        const Jet2 j = f(x, y, c1, c2, c3);
        const auto [gx, gy] = central_difference([&](double u, double v) { return f(u, v, c1, c2, c3); }, a, b);
        EXPECT_LT(rel_err(j.dx, gx), 1e-6);
        EXPECT_LT(rel_err(j.dy, gy), 1e-6);
        EXPECT_DOUBLE_EQ(j.val, f(a, b, c1, c2, c3));
    }
}

TEST(Jets, DomainErrors) {
    auto [x, y] = seed(0.0, -1.0);
    EXPECT_THROW(sqrt(x), DomainError);
    EXPECT_THROW(log(y), DomainError);
    EXPECT_THROW(pow(y, 0.5), DomainError);
    EXPECT_NO_THROW(pow(y, 2));
}

TEST(Jets, ValueOfWorksOnBothScalars) {
    EXPECT_EQ(value_of(1.5), 1.5);
    EXPECT_EQ(value_of(Jet2(2.5, 1.0, 0.0)), 2.5);
}
