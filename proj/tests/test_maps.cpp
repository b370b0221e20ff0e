#include <catch2/catch_amalgamated.hpp>

#include "opineq/generators.hpp"
#include "opineq/maps.hpp"
#include "test_support.hpp"

using namespace opineq;
using Catch::Approx;

TEST_CASE("apply_map on the catalog") {
    // trace functional on the worked-example matrix
    const SymMatrix tr = apply_map(MapSpec::normalized_trace(2, 0.5), testsup::example1_a().sym());
    REQUIRE(tr.dim() == 1);
    REQUIRE(tr.at(0, 0) == Approx(4.5));

    // corner extraction by the first basis vector
    Mat v(2, 1);
    v(0, 0) = 1.0;
    const SymMatrix corner = apply_map(MapSpec::compression(v), testsup::diag_pd({3.0, 7.0}).sym());
    REQUIRE(corner.dim() == 1);
    REQUIRE(corner.at(0, 0) == Approx(3.0));

    // pinching kills the off-diagonal
    const SymMatrix pinched =
        apply_map(MapSpec::pinching({0, 1}), testsup::sym({{2.0, 1.0}, {1.0, 2.0}}));
    REQUIRE(pinched.at(0, 0) == Approx(2.0));
    REQUIRE(pinched.at(0, 1) == 0.0);
    REQUIRE(pinched.at(1, 1) == Approx(2.0));

    REQUIRE_THROWS_AS(apply_map(MapSpec::normalized_trace(3, 0.5), SymMatrix::identity(2)),
                      DimensionMismatch);
}

TEST_CASE("is_unital on catalog members") {
    REQUIRE(is_unital(MapSpec::normalized_trace(2, 0.5)));
    REQUIRE_FALSE(is_unital(MapSpec::normalized_trace(3, 0.5)));
    const Mat q = random_orthogonal(4, 99);
    Mat v(4, 2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 2; ++j) v(i, j) = q(i, j);
    REQUIRE(is_unital(MapSpec::compression(v)));
    REQUIRE(is_unital(MapSpec::pinching({0, 1, 0})));
    REQUIRE(is_unital(MapSpec::mixture({{0.25, MapSpec::pinching({0, 1})},
                                        {0.75, MapSpec::pinching({0, 0})}})));
    REQUIRE_FALSE(is_unital(MapSpec::mixture({{0.25, MapSpec::pinching({0, 1})},
                                              {0.25, MapSpec::pinching({0, 0})}})));
}

TEST_CASE("MapSpec construction validates") {
    Mat skew(2, 2);
    skew(0, 0) = 1.0;
    skew(0, 1) = 1.0;
    skew(1, 1) = 1.0;
    REQUIRE_THROWS_AS(MapSpec::compression(skew), HypothesisViolation);
    REQUIRE_THROWS_AS(MapSpec::normalized_trace(2, 0.0), HypothesisViolation);
    REQUIRE_THROWS_AS(MapSpec::mixture({}), DimensionMismatch);
    REQUIRE_THROWS_AS(MapSpec::mixture({{1.0, MapSpec::pinching({0, 1})},
                                        {1.0, MapSpec::normalized_trace(2, 0.5)}}),
                      DimensionMismatch);
}

TEST_CASE("apply_map is linear") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = 2 + static_cast<int>(rng.below(5));
        MapSpec phi = sample_unital_map(dim, rng);
        Mat mx(dim, dim), my(dim, dim);
        for (double& v : mx.a) v = rng.normal();
        for (double& v : my.a) v = rng.normal();
        const SymMatrix x = SymMatrix::from_mat(mx);
        const SymMatrix y = SymMatrix::from_mat(my);
        const double alpha = rng.uniform(-2.0, 2.0);
        const double beta = rng.uniform(-2.0, 2.0);
        const SymMatrix lhs = apply_map(phi, alpha * x + beta * y);
        const SymMatrix rhs = alpha * apply_map(phi, x) + beta * apply_map(phi, y);
        REQUIRE(max_abs(lhs.mat() - rhs.mat()) <= 1e-12 * std::max(1.0, max_abs(rhs.mat())));
    }
}

TEST_CASE("catalog maps preserve positivity") {
    SplitMix64 rng(29);
    for (int trial = 0; trial < 1000; ++trial) {
        const int dim = 2 + static_cast<int>(rng.below(5));
        MapSpec phi = sample_unital_map(dim, rng);
        const PosDefMatrix x = random_posdef_in_band(dim, 0.2, 5.0, rng.next());
        const SymMatrix img = apply_map(phi, x.sym());
        const Eigensystem es = eig_sym(img);
        REQUIRE(es.values.front() >= -1e-12 * std::max(std::abs(es.values.back()), 1.0));
    }
}

TEST_CASE("choi_check on hand instances") {
    // identity input: both sides are I
    const CheckResult id = choi_check(MapSpec::pinching({0, 1}), PosDefMatrix(SymMatrix::identity(2)));
    REQUIRE(id.verdict);
    REQUIRE(id.margin == Approx(0.0).margin(1e-13));

    // trace map on diag(1,4): (2.5)^{-1} = 0.4 vs (1 + 0.25)/2 = 0.625
    const CheckResult tr = choi_check(MapSpec::normalized_trace(2, 0.5), testsup::diag_pd({1.0, 4.0}));
    REQUIRE(tr.verdict);
    REQUIRE(tr.lhs.at(0, 0) == Approx(0.4).epsilon(1e-14));
    REQUIRE(tr.rhs.at(0, 0) == Approx(0.625).epsilon(1e-14));

    // pinching of [[2,1],[1,2]]: lhs diag(1/2), rhs diag(2/3) from the exact inverse
    const CheckResult pin =
        choi_check(MapSpec::pinching({0, 1}), testsup::pd({{2.0, 1.0}, {1.0, 2.0}}));
    REQUIRE(pin.verdict);
    REQUIRE(pin.lhs.at(0, 0) == Approx(0.5).epsilon(1e-13));
    REQUIRE(pin.rhs.at(0, 0) == Approx(2.0 / 3.0).epsilon(1e-13));

    REQUIRE_THROWS_AS(choi_check(MapSpec::normalized_trace(2, 0.3), testsup::diag_pd({1.0, 4.0})),
                      HypothesisViolation);
}

TEST_CASE("ando_check on hand instances") {
    // identity compression keeps both sides equal
    const CheckResult id = ando_check(MapSpec::identity_map(2), testsup::example1_a(),
                                      testsup::example1_b(), Weight(0.25));
    REQUIRE(id.verdict);
    REQUIRE(id.margin == Approx(0.0).margin(1e-10));

    // worked-example pair under the trace map; rhs = sqrt(4.5 * 21)
    const CheckResult tr = ando_check(MapSpec::normalized_trace(2, 0.5), testsup::example1_a(),
                                      testsup::example1_b(), Weight(0.5));
    REQUIRE(tr.verdict);
    REQUIRE(tr.rhs.at(0, 0) == Approx(std::sqrt(94.5)).epsilon(1e-13));
    REQUIRE(tr.lhs.at(0, 0) == Approx(8.9408991).margin(1e-6));

    // pinching on commuting diagonals is an equality
    const CheckResult pin = ando_check(MapSpec::pinching({0, 0, 1}), testsup::diag_pd({1.0, 2.0, 3.0}),
                                       testsup::diag_pd({2.0, 2.0, 5.0}), Weight(0.7));
    REQUIRE(pin.verdict);
    REQUIRE(pin.margin == Approx(0.0).margin(1e-12));
}

TEST_CASE("choi and ando hold across the catalog") {
    SplitMix64 rng(37);
    for (int trial = 0; trial < 400; ++trial) {
        const int dim = 2 + static_cast<int>(rng.below(7));
        MapSpec phi = sample_unital_map(dim, rng);
        const PosDefMatrix a = random_posdef_in_band(dim, 0.3, 4.0, rng.next());
        const PosDefMatrix b = random_posdef_in_band(dim, 0.5, 7.0, rng.next());
        const double nu = 0.1 * static_cast<double>(rng.below(11));
        REQUIRE(choi_check(phi, a).verdict);
        REQUIRE(ando_check(phi, a, b, Weight(nu)).verdict);
    }
    // ando also for non-unital members
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = 2 + static_cast<int>(rng.below(4));
        const MapSpec phi = MapSpec::normalized_trace(dim, rng.uniform(0.1, 2.0));
        const PosDefMatrix a = random_posdef_in_band(dim, 0.3, 4.0, rng.next());
        const PosDefMatrix b = random_posdef_in_band(dim, 0.5, 7.0, rng.next());
        REQUIRE(ando_check(phi, a, b, Weight(rng.uniform01())).verdict);
    }
}
