#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <random>

#include "mhdshock/model.hpp"
#include "mhdshock/shock.hpp"

using namespace mhdshock;

namespace {

std::mt19937 rng(20240817);

State random_state()
{
    std::uniform_real_distribution<double> rho(0.3, 3.0);
    std::uniform_real_distribution<double> vel(-2.5, 2.5);
    std::uniform_real_distribution<double> field(-3.0, 3.0);
    return State{rho(rng), vel(rng), vel(rng), field(rng), field(rng)};
}

Vector5 dense_eigenvalues(const Matrix5& a)
{
    Eigen::EigenSolver<Matrix5> es(a);
    Vector5 ev = es.eigenvalues().real();
    std::sort(ev.data(), ev.data() + 5);
    return ev;
}

}  // namespace

TEST_CASE("flux_f component formulas")
{
    Vector5 f = flux_f({1.0, 1.0, 0.0, 2.0, 0.0});
    Vector5 expect;
    expect << 1, 0, 0, 0, 0;
    CHECK((f - expect).cwiseAbs().maxCoeff() == 0.0);

    f = flux_f({1.0, 0.0, 0.0, 0.0, 0.0});
    expect << 0, 1, 0, 0, 0;
    CHECK((f - expect).cwiseAbs().maxCoeff() == 0.0);

    const double m = std::sqrt(1.5);
    f = flux_f({1.5, m / 1.5, 0.0, 2.0, 0.0});
    CHECK(f(0) == Catch::Approx(m).epsilon(1e-14));
}

TEST_CASE("flux_g component formulas")
{
    Vector5 g = flux_g({1.0, 0.0, 0.0, 2.0, 0.0});
    Vector5 expect;
    expect << 0, 0, 3, 0, 0;
    CHECK((g - expect).cwiseAbs().maxCoeff() == 0.0);

    g = flux_g({1.7, 0.4, 0.0, 1.3, 0.0});  // parallel state
    CHECK(g(0) == 0.0);
    CHECK(g(1) == 0.0);
    CHECK(g(2) == Catch::Approx(1.7 + 0.5 * 1.3 * 1.3).epsilon(1e-14));

    g = flux_g({1.0, 1.0, 1.0, 1.0, 1.0});
    expect << 1, 0, 2, 0, 0;
    CHECK((g - expect).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("flux zero rows are exact")
{
    for (int i = 0; i < 50; ++i) {
        const State s = random_state();
        CHECK(flux_f(s)(3) == 0.0);
        CHECK(flux_g(s)(4) == 0.0);
    }
}

TEST_CASE("model matrices: symmetry, diagonal weights, factorization")
{
    for (int i = 0; i < 50; ++i) {
        const State s = random_state();
        const ModelMatrices m = model_matrices(s);

        CHECK((m.A_tilde - m.A_tilde.transpose()).cwiseAbs().maxCoeff() == 0.0);
        CHECK((m.B_tilde - m.B_tilde.transpose()).cwiseAbs().maxCoeff() == 0.0);

        CHECK(m.D(0, 0) == Catch::Approx(1.0 / s.rho));
        CHECK(m.D(1, 1) == s.rho);
        CHECK(m.D.diagonal().minCoeff() > 0.0);

        CHECK(m.T.determinant() == Catch::Approx(s.rho * s.rho).epsilon(1e-12));

        // A = T D^-1 A_tilde T^-1 against generic inversion
        const Matrix5 a_ref = m.T * m.D.inverse() * m.A_tilde * m.T.inverse();
        const Matrix5 b_ref = m.T * m.D.inverse() * m.B_tilde * m.T.inverse();
        const double scale = std::max(1.0, a_ref.cwiseAbs().maxCoeff());
        CHECK((m.A - a_ref).cwiseAbs().maxCoeff() / scale < 1e-12);
        CHECK((m.B - b_ref).cwiseAbs().maxCoeff() /
                  std::max(1.0, b_ref.cwiseAbs().maxCoeff()) <
              1e-12);
    }
}

TEST_CASE("acoustic decoupling at the trivial state")
{
    const ModelMatrices m = model_matrices({1.0, 0.0, 0.0, 0.0, 0.0});
    Matrix5 expect = Matrix5::Zero();
    expect(0, 1) = 1.0;
    expect(1, 0) = 1.0;
    CHECK((m.A - expect).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("characteristic speeds: closed form examples")
{
    Vector5 sp = characteristic_speeds({1.0, 0.0, 0.0, 0.0, 0.0});
    Vector5 expect;
    expect << -1, 0, 0, 0, 1;
    CHECK((sp - expect).cwiseAbs().maxCoeff() < 1e-14);

    sp = characteristic_speeds({1.0, 0.0, 0.0, 2.0, 0.0});
    expect << -2, -1, 0, 1, 2;
    CHECK((sp - expect).cwiseAbs().maxCoeff() < 1e-14);

    sp = characteristic_speeds({1.0, 3.0, 0.0, 2.0, 0.0});
    expect << 1, 2, 3, 4, 5;
    CHECK((sp - expect).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("characteristic speeds agree with dense eigensolve of A")
{
    for (int i = 0; i < 200; ++i) {
        const State s = random_state();
        const Vector5 closed = characteristic_speeds(s);
        const Vector5 dense = dense_eigenvalues(model_matrices(s).A);
        CHECK(std::is_sorted(closed.data(), closed.data() + 5));
        CHECK((closed - dense).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("eigenvalue sign counts at slow-shock states")
{
    const ShockWave s = parallel_shock(2.0, 1.5);
    REQUIRE(s.lax_type == LaxType::Slow);

    const Vector5 up = characteristic_speeds(s.left);
    const Vector5 down = characteristic_speeds(s.right);
    CHECK(std::count_if(up.data(), up.data() + 5, [](double x) { return x < 0.0; }) == 1);
    CHECK(std::count_if(down.data(), down.data() + 5, [](double x) { return x > 0.0; }) == 3);
}
