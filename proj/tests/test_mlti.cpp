#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tctl/matfun.hpp"
#include "tctl/mlti.hpp"
#include "tctl/tfunc.hpp"

using namespace tctl;
using oracle::rel_err;

namespace {

// random system shifted to a prescribed spectral abscissa -alpha
MltiSystem random_stable_system(std::mt19937_64& rng, Index n, Index l, double alpha) {
    Tensor3 a = oracle::random_real(rng, n, n, l);
    const StabilityReport pre = stability(MltiSystem(a, Tensor3(n, 1, l)));
    a -= (pre.max_real_part + alpha) * identity_tensor(n, l);
    Tensor3 b = oracle::random_real(rng, n, 1, l);
    return {a, b};
}

Tensor3 sv_x0() {
    Eigen::MatrixXd x1(2, 1), x2(2, 1);
    x1 << 1, 2;
    x2 << 3, 4;
    return Tensor3::from_slices(std::vector<Eigen::MatrixXd>{x1, x2});
}

}  // namespace

TEST_CASE("MltiSystem validates its shapes") {
    std::mt19937_64 rng(301);
    CHECK_THROWS_AS(MltiSystem(oracle::random_real(rng, 2, 3, 2), oracle::random_real(rng, 2, 1, 2)),
                    NotSquare);
    CHECK_THROWS_AS(MltiSystem(oracle::random_real(rng, 2, 2, 2), oracle::random_real(rng, 2, 1, 3)),
                    ShapeMismatch);
    CHECK_THROWS_AS(MltiSystem(oracle::random_real(rng, 2, 2, 2), oracle::random_real(rng, 3, 1, 2)),
                    ShapeMismatch);
}

TEST_CASE("zero input solution") {
    std::mt19937_64 rng(307);

    SUBCASE("t = 0 returns the initial state") {
        const MltiSystem sys(oracle::random_real(rng, 3, 3, 2), oracle::random_real(rng, 3, 1, 2));
        const Tensor3 x0 = oracle::random_real(rng, 3, 2, 2);
        CHECK(rel_err(zero_input_solution(sys, x0, 0.0), x0) < 1e-13);
    }
    SUBCASE("zero dynamics holds the state") {
        const MltiSystem sys(Tensor3(3, 3, 2), oracle::random_real(rng, 3, 1, 2));
        const Tensor3 x0 = oracle::random_real(rng, 3, 1, 2);
        for (double t : {0.5, 2.0}) CHECK(rel_err(zero_input_solution(sys, x0, t), x0) < 1e-13);
    }
    SUBCASE("worked example at t = 1 matches the lifted ODE solution") {
        const MltiSystem sys(oracle::example_a(), oracle::example_b());
        const Tensor3 x0 = sv_x0();
        const Tensor3 got = zero_input_solution(sys, x0, 1.0);
        const Eigen::MatrixXcd e = matfun::expm(Eigen::MatrixXcd(oracle::bcirc(sys.a)));
        const Tensor3 want = oracle::fold(e * oracle::matvec(x0), 2, 2);
        CHECK(rel_err(got, want) < 1e-8);
    }
    SUBCASE("incompatible state shape is rejected") {
        const MltiSystem sys(oracle::random_real(rng, 3, 3, 2), oracle::random_real(rng, 3, 1, 2));
        CHECK_THROWS_AS(zero_input_solution(sys, oracle::random_real(rng, 2, 1, 2), 1.0),
                        ShapeMismatch);
    }
}

TEST_CASE("make_grid") {
    const auto g = make_grid(1.0, 0.25);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 1.0);

    const auto clamped = make_grid(1.0, 0.3);
    CHECK(clamped.back() == 1.0);
    for (std::size_t k = 1; k < clamped.size(); ++k) CHECK(clamped[k] > clamped[k - 1]);

    CHECK_THROWS_AS(make_grid(1.0, 0.0), Error);
}

TEST_CASE("simulate grid validation") {
    std::mt19937_64 rng(311);
    const MltiSystem sys(oracle::random_real(rng, 2, 2, 2), oracle::random_real(rng, 2, 1, 2));
    const Tensor3 x0 = oracle::random_real(rng, 2, 1, 2);
    CHECK_THROWS_AS(simulate(sys, x0, {}, {0.5, 1.0}), NonMonotoneGrid);
    CHECK_THROWS_AS(simulate(sys, x0, {}, {0.0, 0.5, 0.5}), NonMonotoneGrid);
    CHECK_THROWS_AS(simulate(sys, x0, {}, {}), NonMonotoneGrid);
    CHECK_THROWS_AS(simulate(sys, x0, {x0}, {0.0, 1.0}), ShapeMismatch);  // sample count
    const std::vector<Tensor3> bad_shape(2, oracle::random_real(rng, 2, 1, 2));
    CHECK_THROWS_AS(simulate(sys, oracle::random_real(rng, 2, 2, 2), bad_shape, {0.0, 1.0}),
                    ShapeMismatch);  // input columns differ from state columns
}

TEST_CASE("zero-input simulation matches the closed-form solution on the grid") {
    std::mt19937_64 rng(313);
    const MltiSystem sys = random_stable_system(rng, 3, 3, 0.5);
    const Tensor3 x0 = oracle::random_real(rng, 3, 2, 3);
    const auto grid = make_grid(2.0, 0.25);
    const Trajectory traj = simulate(sys, x0, {}, grid);
    REQUIRE(traj.states.size() == grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(rel_err(traj.states[k], zero_input_solution(sys, x0, grid[k])) < 1e-9);
        // t-product route vs direct action of the exponential on the state
        const Tensor3 via_apply = tfun_apply(sys.a, TensorFunction::exponential(grid[k]), x0);
        CHECK(rel_err(traj.states[k], via_apply) < 1e-9);
    }
}

TEST_CASE("constant input on zero dynamics integrates linearly") {
    const Index n = 2, l = 2;
    const MltiSystem sys(Tensor3(n, n, l), identity_tensor(n, l));
    std::mt19937_64 rng(317);
    const Tensor3 x0 = oracle::random_real(rng, n, 1, l);
    const Tensor3 u = oracle::random_real(rng, n, 1, l);
    const auto grid = make_grid(2.0, 0.5);
    const Trajectory traj = simulate_constant(sys, x0, u, grid);
    const Tensor3 bu = tprod(sys.b, u);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Tensor3 want = x0 + grid[k] * bu;
        CHECK((traj.states[k] - want).norm() < 1e-12 * (1.0 + want.norm()));
    }
}

TEST_CASE("forced simulation matches a fine RK4 oracle") {
    std::mt19937_64 rng(331);
    for (int trial = 0; trial < 3; ++trial) {
        const MltiSystem sys = random_stable_system(rng, 2, 2, 0.8);
        const Tensor3 x0 = oracle::random_real(rng, 2, 1, 2);
        const Tensor3 u = oracle::random_real(rng, 1, 1, 2);

        const Trajectory traj = simulate_constant(sys, x0, u, make_grid(1.0, 0.01));
        const Eigen::MatrixXd ac = oracle::bcirc(sys.a).real();
        const Eigen::MatrixXd bc = oracle::bcirc(sys.b).real();
        const Eigen::MatrixXd xv = oracle::matvec(x0).real();
        const Eigen::MatrixXd uv = oracle::matvec(u).real();
        const Eigen::MatrixXd want = oracle::rk4(ac, bc * uv, xv, 1.0, 1e-4);
        const Eigen::MatrixXd got = oracle::matvec(traj.states.back()).real();
        CHECK((got - want).norm() <= 1e-6 * (1.0 + want.norm()));
    }
}

TEST_CASE("superposition of zero-input and zero-state responses") {
    std::mt19937_64 rng(337);
    const MltiSystem sys = random_stable_system(rng, 3, 2, 0.5);
    const Tensor3 x0 = oracle::random_real(rng, 3, 1, 2);
    const Tensor3 u = oracle::random_real(rng, 1, 1, 2);
    const auto grid = make_grid(1.0, 0.1);

    const Trajectory full = simulate_constant(sys, x0, u, grid);
    const Trajectory zero_input = simulate(sys, x0, {}, grid);
    const Trajectory zero_state = simulate_constant(sys, Tensor3(3, 1, 2), u, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Tensor3 sum = zero_input.states[k] + zero_state.states[k];
        CHECK((full.states[k] - sum).norm() <= 1e-9 * (1.0 + sum.norm()));
    }
}

TEST_CASE("stability of the worked example open loop") {
    const MltiSystem sys(oracle::example_a(), oracle::example_b());
    const StabilityReport report = stability(sys);
    CHECK(report.stable);
    CHECK(report.max_real_part == doctest::Approx(-2.0 + std::sqrt(2.0)).epsilon(1e-12));
    CHECK(report.decay_rate == doctest::Approx(0.586).epsilon(1e-3));

    const std::vector<Complex> expected{
        Complex(-2 + std::sqrt(2.0), 0), Complex(-2 - std::sqrt(2.0), 0),
        Complex(-4, std::sqrt(50.0)), Complex(-4, -std::sqrt(50.0))};
    std::vector<Complex> got;
    for (Index i = 0; i < report.per_slice_spectra.rows(); ++i)
        for (Index j = 0; j < report.per_slice_spectra.cols(); ++j)
            got.push_back(report.per_slice_spectra(i, j));
    CHECK(oracle::multiset_distance(got, expected) < 1e-12);

    // eigentuple view carries the same spectra
    std::vector<Complex> via_tuples;
    for (const auto& t : report.eigentuples)
        for (Index i = 0; i < t.spectrum.size(); ++i) via_tuples.push_back(t.spectrum(i));
    CHECK(oracle::multiset_distance(via_tuples, expected) < 1e-12);
}

TEST_CASE("identity dynamics are unstable") {
    const MltiSystem sys(identity_tensor(2, 2), oracle::example_b());
    const StabilityReport report = stability(sys);
    CHECK(!report.stable);
    CHECK(report.max_real_part == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("worked example closed loop per-slice design is stable with the requested spectra") {
    // ideal per-slice closed loop D_i - B_i K_i with the first-block input
    Eigen::MatrixXcd d1(2, 2), d2(2, 2);
    d1 << Complex(-6, 0), Complex(7, 0), Complex(-2, 0), Complex(2, 0);
    d2 << Complex(-6, 0), Complex(3, 0), Complex(-18, 0), Complex(-2, 0);
    Eigen::VectorXcd b(2);
    b << Complex(1, 0), Complex(1, 0);
    Eigen::RowVectorXcd k1(2), k2(2);
    k1 << Complex(27, 0), Complex(-27, 0);
    k2 << Complex(278.0 / 17.0, 0), Complex(-74.0 / 17.0, 0);

    SpectralForm s;
    s.rows = s.cols = 2;
    s.tubes = 2;
    s.expect_real = true;
    s.slices = {d1 - b * k1, d2 - b * k2};
    const Tensor3 a_cl = from_spectral(s);

    const StabilityReport report = stability(MltiSystem(a_cl, oracle::example_b()));
    CHECK(report.stable);
    CHECK(report.decay_rate == doctest::Approx(2.0).epsilon(1e-9));

    const std::vector<Complex> expected{Complex(-2, 5), Complex(-2, -5), Complex(-10, 10),
                                        Complex(-10, -10)};
    std::vector<Complex> got;
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j) got.push_back(report.per_slice_spectra(i, j));
    CHECK(oracle::multiset_distance(got, expected) < 1e-9);
}

TEST_CASE("stable trajectories decay exponentially at the reported rate") {
    std::mt19937_64 rng(347);
    std::uniform_real_distribution<double> alpha_dist(0.5, 1.5);
    for (int trial = 0; trial < 5; ++trial) {
        const MltiSystem sys = random_stable_system(rng, 3, 3, alpha_dist(rng));
        const StabilityReport report = stability(sys);
        REQUIRE(report.stable);
        const double alpha = report.decay_rate;

        const Tensor3 x0 = oracle::random_real(rng, 3, 1, 3);
        const auto grid = make_grid(10.0 / alpha, 10.0 / alpha / 200.0);
        const Trajectory traj = simulate(sys, x0, {}, grid);

        double c = 0.0;
        const double x0_norm = x0.norm();
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double bound = std::exp(-(alpha - 0.01 * alpha) * grid[k]) * x0_norm;
            c = std::max(c, traj.states[k].norm() / bound);
        }
        CHECK(c <= 10.0);
    }
}
