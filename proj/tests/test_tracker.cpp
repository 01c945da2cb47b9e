#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mhdshock/tracker.hpp"

using namespace mhdshock;

TEST_CASE("critical density closed form")
{
    CHECK(critical_density(1.0) == Catch::Approx(1.5));
    CHECK(critical_density(2.0) == Catch::Approx(1.2));
    CHECK(critical_density(3.0) == Catch::Approx(1.1));
}

TEST_CASE("solve_critical_point at c = 0 recovers the closed form")
{
    for (double a : {1.5, 2.0, 3.0}) {
        const CriticalPoint cp = solve_critical_point(a, 0.0);
        CHECK(cp.R == Catch::Approx(critical_density(a)).margin(1e-8));
        CHECK(std::abs(cp.gamma) <= 1e-8);
        CHECK(cp.residual <= 1e-8);
    }
}

TEST_CASE("critical manifold parity in c")
{
    const double a = 2.0;
    const CriticalPoint plus = solve_critical_point(a, 0.005);
    const CriticalPoint minus = solve_critical_point(a, -0.005);

    CHECK(plus.residual <= 1e-8);
    CHECK(minus.residual <= 1e-8);
    CHECK(std::abs(plus.R - minus.R) <= 1e-8);
    CHECK(std::abs(plus.gamma + minus.gamma) <= 1e-8);
    CHECK(std::abs(plus.gamma) > 10.0 * plus.residual);  // symmetry genuinely broken
}

TEST_CASE("find_root: seeded at a known zero returns immediately")
{
    const double a = 2.0;
    const ShockWave s = parallel_shock(a, critical_density(a));
    const Complex root = find_root(s, 1.0, Complex(0.01, 0.0), true);
    CHECK(std::abs(root) <= 1e-6);

    // start exactly at the root (lambda = 0 on the axis)
    const Complex again = find_root(s, 1.0, Complex(0.0, 0.0), true);
    CHECK(std::abs(again) <= 1e-12);
}

TEST_CASE("find_root agrees with solve_critical_point off c = 0")
{
    const double a = 2.0, c = 0.005;
    const CriticalPoint cp = solve_critical_point(a, c);
    const ShockWave s = solve_shock({a, cp.R, c});
    const Complex root = find_root(s, 1.0, Complex(0.0, 1e-3), true);
    CHECK(root.imag() == Catch::Approx(cp.gamma).margin(1e-8));
}

TEST_CASE("trace_critical_curve reproduces the closed form at c = 0")
{
    const CriticalTrace trace = trace_critical_curve(0.0, 1.5, 3.0, 21);
    REQUIRE(trace.points.size() == 21);
    CHECK_FALSE(trace.hit_existence_boundary);
    for (const CriticalPoint& p : trace.points) {
        CHECK(p.R == Catch::Approx(critical_density(p.a)).margin(1e-8));
        CHECK(std::abs(p.gamma) <= 1e-8);
        CHECK(p.residual <= 1e-8);
    }
}

TEST_CASE("trace_critical_curve parity sweep")
{
    const CriticalTrace plus = trace_critical_curve(0.005, 1.8, 2.2, 5);
    const CriticalTrace minus = trace_critical_curve(-0.005, 1.8, 2.2, 5);
    REQUIRE(plus.points.size() == 5);
    REQUIRE(minus.points.size() == 5);
    for (size_t i = 0; i < 5; ++i) {
        CHECK(std::abs(plus.points[i].R - minus.points[i].R) <= 1e-7);
        CHECK(std::abs(plus.points[i].gamma + minus.points[i].gamma) <= 1e-7);
    }
}

TEST_CASE("trace_critical_curve minimal grid")
{
    const CriticalTrace t = trace_critical_curve(0.0, 2.0, 2.1, 2);
    REQUIRE(t.points.size() == 2);
    CHECK(t.points[0].a == 2.0);
    CHECK(t.points[1].a == Catch::Approx(2.1));
}

TEST_CASE("trace_instability starts on the axis and destabilizes")
{
    const auto branch = trace_instability(2.0, 0.0, 0.05, 6);
    REQUIRE(branch.size() == 6);
    CHECK(std::abs(branch[0].alpha) <= 1e-8);
    CHECK(std::abs(branch[0].beta) <= 1e-8);  // gamma(2, 0) = 0

    double prev = 0.0;
    for (size_t i = 1; i < branch.size(); ++i) {
        CHECK(branch[i].alpha > prev);
        CHECK(branch[i].residual <= 1e-8);
        prev = branch[i].alpha;
    }
}

TEST_CASE("trace_instability inherits the axis frequency at c != 0")
{
    const double a0 = 2.0, c = 0.005;
    const CriticalPoint cp = solve_critical_point(a0, c);
    const auto branch = trace_instability(a0, c, 0.02, 3);
    CHECK(branch[0].beta == Catch::Approx(cp.gamma).margin(1e-6));
    CHECK(branch[2].alpha > 0.0);
}

TEST_CASE("verify_theorem1 over a feasible grid")
{
    const auto rows = verify_theorem1({1.5, 2.0, 3.0});
    for (const auto& r : rows) {
        CHECK_FALSE(r.no_shock);
        CHECK(r.gap <= 1e-6);
    }
    CHECK(rows[1].rho_formula == Catch::Approx(1.2));
    CHECK(rows[2].rho_formula == Catch::Approx(1.1));

    // closed form decreases toward 1
    CHECK(rows[0].rho_formula > rows[1].rho_formula);
    CHECK(rows[1].rho_formula > rows[2].rho_formula);
}

TEST_CASE("verify_theorem1 flags points outside the slow region")
{
    const auto rows = verify_theorem1({0.75, 1.0, 1.1});
    for (const auto& r : rows) CHECK(r.no_shock);
}
