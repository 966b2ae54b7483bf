#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tctl/matfun.hpp"
#include "tctl/spectral.hpp"
#include "tctl/tfunc.hpp"

using namespace tctl;
using oracle::rel_err;

TEST_CASE("tfun with the identity map returns the tensor") {
    std::mt19937_64 rng(211);
    const Tensor3 a = oracle::random_real(rng, 3, 3, 4);
    CHECK(rel_err(tfun(a, TensorFunction::identity()), a) < 1e-13);
}

TEST_CASE("tfun with squaring equals the t-product with itself") {
    std::mt19937_64 rng(223);
    const Tensor3 a = oracle::random_real(rng, 3, 3, 5);
    const Tensor3 squared = tfun(a, TensorFunction::polynomial({0.0, 0.0, 1.0}));
    CHECK(rel_err(squared, tprod(a, a)) < 1e-12);
}

TEST_CASE("tfun exp on the identity tensor") {
    const Tensor3 e = tfun(identity_tensor(2, 2), TensorFunction::exponential());
    CHECK((Eigen::MatrixXcd(e.slice(0)) -
           std::exp(1.0) * Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-12);
    CHECK(Eigen::MatrixXcd(e.slice(1)).norm() < 1e-12);
}

TEST_CASE("texp at t = 0 is the identity tensor") {
    std::mt19937_64 rng(227);
    const Tensor3 a = oracle::random_real(rng, 3, 3, 4);
    CHECK(rel_err(texp(a, 0.0), identity_tensor(3, 4)) < 1e-14);
}

TEST_CASE("texp of the zero tensor is the identity for any t") {
    const Tensor3 zero(2, 2, 3);
    for (double t : {0.1, 1.0, 7.5})
        CHECK(rel_err(texp(zero, t), identity_tensor(2, 3)) < 1e-14);
}

TEST_CASE("texp matches the block-circulant exponential oracle") {
    SUBCASE("worked example dynamics at t = 1") {
        const Tensor3 a = oracle::example_a();
        const Eigen::MatrixXcd want = matfun::expm(Eigen::MatrixXcd(oracle::bcirc(a)));
        CHECK(rel_err(Eigen::MatrixXcd(bcirc(texp(a, 1.0)).data), want) < 1e-8);
    }
    SUBCASE("random tensors at several times") {
        std::mt19937_64 rng(229);
        for (double t : {0.25, 1.0, 2.0}) {
            const Tensor3 a = oracle::random_real(rng, 3, 3, 4);
            const Eigen::MatrixXcd want = matfun::expm(Eigen::MatrixXcd(oracle::bcirc(a) * t));
            CHECK(rel_err(Eigen::MatrixXcd(bcirc(texp(a, t)).data), want) < 1e-8);
        }
    }
}

TEST_CASE("tfun_apply") {
    std::mt19937_64 rng(233);
    const Tensor3 a = oracle::random_real(rng, 3, 3, 3);
    const Tensor3 b = oracle::random_real(rng, 3, 2, 3);

    SUBCASE("identity map gives the t-product") {
        CHECK(rel_err(tfun_apply(a, TensorFunction::identity(), b), tprod(a, b)) < 1e-12);
    }
    SUBCASE("identity tensor argument gives tfun") {
        const Tensor3 id = identity_tensor(3, 3);
        const TensorFunction f = TensorFunction::exponential(0.5);
        CHECK(rel_err(tfun_apply(a, f, id), tfun(a, f)) < 1e-12);
    }
    SUBCASE("exp action matches the explicit expm(bcirc) MatVec oracle") {
        const Tensor3 stable = a - 3.0 * identity_tensor(3, 3);
        for (double t : {0.5, 1.0}) {
            const Tensor3 got = tfun_apply(stable, TensorFunction::exponential(t), b);
            const Eigen::MatrixXcd e = matfun::expm(Eigen::MatrixXcd(oracle::bcirc(stable) * t));
            const Tensor3 want = oracle::fold(e * oracle::matvec(b), 3, 3);
            CHECK(rel_err(got, want) < 1e-9);
        }
    }
    SUBCASE("shape mismatches are rejected") {
        CHECK_THROWS_AS(
            tfun_apply(a, TensorFunction::identity(), oracle::random_real(rng, 2, 2, 3)),
            ShapeMismatch);
        CHECK_THROWS_AS(
            tfun_apply(a, TensorFunction::identity(), oracle::random_real(rng, 3, 2, 4)),
            ShapeMismatch);
    }
}

TEST_CASE("f(a) commutes with a") {
    std::mt19937_64 rng(239);
    for (int trial = 0; trial < 10; ++trial) {
        const Tensor3 a = oracle::random_real(rng, 3, 3, 4);
        const Tensor3 fa = texp(a, 0.7);
        CHECK((tprod(fa, a) - tprod(a, fa)).norm() <= 1e-9 * a.norm() * fa.norm());
    }
}

TEST_CASE("conjugate transpose compatibility for real-coefficient functions") {
    std::mt19937_64 rng(241);
    for (const TensorFunction& f :
         {TensorFunction::exponential(0.5), TensorFunction::polynomial({1.0, -2.0, 0.5})}) {
        const Tensor3 a = oracle::random_complex(rng, 3, 3, 4);
        const Tensor3 lhs = tfun(tctranspose(a), f);
        const Tensor3 rhs = tctranspose(tfun(a, f));
        CHECK((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
    }
}

TEST_CASE("similarity transform compatibility") {
    std::mt19937_64 rng(251);
    const Tensor3 a = oracle::random_real(rng, 3, 3, 3);
    const Tensor3 p = identity_tensor(3, 3) + 0.3 * oracle::random_real(rng, 3, 3, 3);
    const Tensor3 pinv = tinv(p);
    const TensorFunction f = TensorFunction::exponential(0.5);
    const Tensor3 lhs = tfun(tprod(p, tprod(a, pinv)), f);
    const Tensor3 rhs = tprod(p, tprod(tfun(a, f), pinv));
    CHECK(rel_err(lhs, rhs) < 1e-8);
}

TEST_CASE("texp satisfies the semigroup law") {
    std::mt19937_64 rng(257);
    std::uniform_real_distribution<double> dist(0.1, 1.2);
    for (int trial = 0; trial < 10; ++trial) {
        const Tensor3 a = oracle::random_real(rng, 3, 3, 3);
        const double s = dist(rng), t = dist(rng);
        CHECK(rel_err(texp(a, s + t), tprod(texp(a, s), texp(a, t))) < 1e-8);
    }
}

TEST_CASE("eigentuple route cross-check: f(a) = p * f(d) * pinv") {
    std::mt19937_64 rng(263);
    const Tensor3 a = oracle::random_real(rng, 3, 3, 4);
    const TEig e = teig(a);
    const TensorFunction f = TensorFunction::exponential(0.6);
    const Tensor3 via_slices = tfun(a, f);
    const Tensor3 via_eigentuples = tprod(e.p, tprod(tfun(e.d, f), e.pinv));
    CHECK(rel_err(via_slices, via_eigentuples) < 1e-8);
}

TEST_CASE("evaluator failures propagate") {
    const Tensor3 big = 1e4 * identity_tensor(2, 2);
    CHECK_THROWS_AS(texp(big, 1.0), OverflowError);
    CHECK_THROWS_AS(
        tfun(oracle::example_a(),
             TensorFunction::custom("bad", [](const Eigen::MatrixXcd&) {
                 return Eigen::MatrixXcd(Eigen::MatrixXcd::Zero(1, 1));
             })),
        ConsistencyError);
}

TEST_CASE("tfun requires a square tensor") {
    std::mt19937_64 rng(269);
    CHECK_THROWS_AS(tfun(oracle::random_real(rng, 2, 3, 2), TensorFunction::identity()), NotSquare);
}

TEST_CASE("real tensors map to exactly real results") {
    std::mt19937_64 rng(271);
    const Tensor3 a = oracle::random_real(rng, 3, 3, 5);
    CHECK(texp(a, 0.8).is_real());
    CHECK(tfun(a, TensorFunction::polynomial({0.5, 1.0, -0.25})).is_real());
}
