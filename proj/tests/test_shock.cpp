#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mhdshock/shock.hpp"

using namespace mhdshock;

TEST_CASE("g_profile values and domain")
{
    CHECK(g_profile(1.0, 2.0, 1.0, 0.0) == 2.0);
    CHECK(g_profile(1.0, 2.0, 1.0, 0.1) ==
          Catch::Approx(2.0 + 0.5 * std::pow(0.1 / 3.0, 2)).epsilon(1e-14));
    const double v = std::sqrt(1.5);
    CHECK(g_profile(v, 0.7, v, 0.0) == Catch::Approx(2.5).epsilon(1e-14));

    CHECK_THROWS_AS(g_profile(0.0, 2.0, 1.0, 0.0), Error);
    CHECK_THROWS_AS(g_profile(-1.0, 2.0, 1.0, 0.0), Error);
    CHECK_THROWS_AS(g_profile(4.0, 2.0, 1.0, 0.0), Error);  // v = a^2/m
}

TEST_CASE("parallel shock closed form and classification")
{
    const ShockWave slow = parallel_shock(2.0, 1.5);
    CHECK(slow.left.v == Catch::Approx(std::sqrt(1.5)).epsilon(1e-14));
    CHECK(slow.right.v == Catch::Approx(1.0 / std::sqrt(1.5)).epsilon(1e-14));
    CHECK(slow.left.w == 0.0);
    CHECK(slow.right.b == 0.0);
    CHECK(slow.m == Catch::Approx(std::sqrt(1.5)));
    CHECK(slow.lax_type == LaxType::Slow);
    CHECK(rh_residual(slow) <= 1e-12);

    // both velocities are roots of g(.) = j
    CHECK(g_profile(slow.left.v, 2.0, slow.m, 0.0) == Catch::Approx(slow.j).epsilon(1e-12));
    CHECK(g_profile(slow.right.v, 2.0, slow.m, 0.0) == Catch::Approx(slow.j).epsilon(1e-12));

    const ShockWave fast = parallel_shock(0.8, 1.5);
    CHECK(fast.left.v == Catch::Approx(slow.left.v));
    CHECK(fast.lax_type == LaxType::Fast);

    // boundary of the slow Lax condition: m v^- = rho^+ = a^2
    const ShockWave boundary = parallel_shock(std::sqrt(1.5), 1.5);
    CHECK(boundary.lax_type == LaxType::None);

    CHECK_THROWS_AS(parallel_shock(2.0, 0.9), Error);
    CHECK_THROWS_AS(parallel_shock(2.0, 1.0), Error);
}

TEST_CASE("root product identity at c = 0")
{
    for (double rp : {1.1, 1.5, 2.4, 3.0}) {
        const ShockWave s = parallel_shock(2.0, rp);
        CHECK(s.left.v * s.right.v == Catch::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("solve_shock reduces to the parallel shock at c = 0")
{
    const ShockWave a = solve_shock({2.0, 1.5, 0.0});
    const ShockWave b = parallel_shock(2.0, 1.5);
    CHECK(a.left.v == b.left.v);
    CHECK(a.right.v == b.right.v);
    CHECK(a.lax_type == LaxType::Slow);
}

TEST_CASE("solve_shock: non-parallel slow shocks satisfy Rankine-Hugoniot")
{
    const ShockWave s = solve_shock({2.0, 1.5, 0.01});
    CHECK(s.lax_type == LaxType::Slow);
    CHECK(rh_residual(s) <= 1e-10);
    CHECK(std::abs(s.left.v - std::sqrt(1.5)) < 1e-3);  // O(c^2) shift

    // d-invariant m w - a b = 0 on both sides
    CHECK(std::abs(s.m * s.left.w - s.left.a * s.left.b) < 1e-12);
    CHECK(std::abs(s.m * s.right.w - s.right.a * s.right.b) < 1e-12);

    // g(v-) = g(v+) = j within 1e-9 relative
    CHECK(g_profile(s.left.v, 2.0, s.m, s.c) == Catch::Approx(s.j).epsilon(1e-9));
    CHECK(g_profile(s.right.v, 2.0, s.m, s.c) == Catch::Approx(s.j).epsilon(1e-9));
    CHECK(s.right.v < s.left.v);
    CHECK(s.left.v < 2.0 * 2.0 / s.m);
}

TEST_CASE("solve_shock parity in c")
{
    const ShockWave plus = solve_shock({2.0, 1.5, 0.01});
    const ShockWave minus = solve_shock({2.0, 1.5, -0.01});
    CHECK(plus.left.rho == minus.left.rho);
    CHECK(std::abs(plus.left.v - minus.left.v) < 1e-10);
    CHECK(std::abs(plus.left.w + minus.left.w) < 1e-10);
    CHECK(std::abs(plus.left.b + minus.left.b) < 1e-10);
    CHECK(std::abs(plus.right.w + minus.right.w) < 1e-10);
    CHECK(std::abs(plus.right.b + minus.right.b) < 1e-10);
}

TEST_CASE("rh_residual flags a perturbed pair")
{
    ShockWave s = parallel_shock(2.0, 1.5);
    s.right.rho += 0.1;
    CHECK(rh_residual(s) >= 1e-3);
}

TEST_CASE("slow/none transition sits at a^2 = rho_plus")
{
    const double rp = 1.5;
    double lo = 1.0, hi = 2.0;  // classify(lo): none, classify(hi): slow
    REQUIRE(classify(parallel_shock(lo, rp)) == LaxType::None);
    REQUIRE(classify(parallel_shock(hi, rp)) == LaxType::Slow);
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (classify(parallel_shock(mid, rp)) == LaxType::Slow)
            hi = mid;
        else
            lo = mid;
    }
    CHECK(0.5 * (lo + hi) == Catch::Approx(std::sqrt(rp)).epsilon(1e-9));
}

TEST_CASE("fast branch machinery")
{
    const ShockWave fast = solve_shock({0.8, 1.5, 0.01}, ShockBranch::Fast);
    CHECK(fast.lax_type == LaxType::Fast);
    CHECK(rh_residual(fast) <= 1e-10);

    // requesting the slow branch there has no admissible root
    CHECK_THROWS_AS(solve_shock({0.8, 1.5, 0.01}), Error);
}

TEST_CASE("infeasible parameters raise NoShock")
{
    CHECK_THROWS_AS(solve_shock({2.0, 0.9, 0.0}), Error);
    try {
        solve_shock({2.0, 5.0, 0.01});  // rho_plus > a^2, not slow
        FAIL("expected NoShock");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoShock);
    }
}
