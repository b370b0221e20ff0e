#include <catch2/catch_amalgamated.hpp>

#include "opineq/generators.hpp"
#include "opineq/means.hpp"
#include "test_support.hpp"

using namespace opineq;
using Catch::Approx;

TEST_CASE("arith_mean endpoints and entries") {
    const PosDefMatrix a = testsup::example1_a();
    const PosDefMatrix b = testsup::example1_b();
    REQUIRE(max_abs(arith_mean(a, b, Weight(0.0)).sym().mat() - a.sym().mat()) < 1e-14);

    const PosDefMatrix mid = arith_mean(testsup::diag_pd({1.0, 2.0}), testsup::diag_pd({3.0, 4.0}),
                                        Weight(0.5));
    REQUIRE(mid.sym().at(0, 0) == Approx(2.0));
    REQUIRE(mid.sym().at(1, 1) == Approx(3.0));

    // entrywise average of the worked-example pair
    const PosDefMatrix avg = arith_mean(a, b, Weight(0.5));
    REQUIRE(avg.sym().at(0, 0) == Approx(11.5));
    REQUIRE(avg.sym().at(0, 1) == Approx(-0.75));
    REQUIRE(avg.sym().at(1, 1) == Approx(14.0));

    REQUIRE_THROWS_AS(arith_mean(a, testsup::diag_pd({1.0}), Weight(0.5)), DimensionMismatch);
}

TEST_CASE("geo_mean endpoints, idempotence, scalars") {
    const PosDefMatrix a = testsup::pd({{2.0, 1.0}, {1.0, 2.0}});
    REQUIRE(max_abs(geo_mean(a, a, Weight(0.3)).sym().mat() - a.sym().mat()) < 1e-12);
    REQUIRE(max_abs(geo_mean(a, a, Weight(0.0)).sym().mat() - a.sym().mat()) < 1e-13);

    const PosDefMatrix g = geo_mean(testsup::diag_pd({4.0, 9.0}), testsup::diag_pd({1.0, 1.0}),
                                    Weight(0.5));
    REQUIRE(g.sym().at(0, 0) == Approx(2.0).margin(1e-12));
    REQUIRE(g.sym().at(1, 1) == Approx(3.0).margin(1e-12));

    // scalar case from the worked example: 4.5 # 21 = sqrt(94.5)
    const PosDefMatrix s = geo_mean(testsup::diag_pd({4.5}), testsup::diag_pd({21.0}), Weight(0.5));
    REQUIRE(s.sym().at(0, 0) == Approx(std::sqrt(94.5)).epsilon(1e-13));
    REQUIRE(s.sym().at(0, 0) == Approx(9.72).margin(0.005));
}

TEST_CASE("kantorovich constant") {
    REQUIRE(kantorovich(1.0) == Approx(1.0));
    REQUIRE(kantorovich(2.0) == Approx(1.125));
    // h = 20.25 / 16 = 81/64; K = 21025/20736
    REQUIRE(kantorovich(1.265625) == Approx(21025.0 / 20736.0).epsilon(1e-15));
    REQUIRE_THROWS_AS(kantorovich(0.0), HypothesisViolation);
    REQUIRE_THROWS_AS(kantorovich(-1.0), HypothesisViolation);
}

TEST_CASE("kantorovich monotone on a grid, symmetric, >= 1") {
    double prev = kantorovich(1.0);
    for (int i = 1; i <= 200; ++i) {
        const double h = 1.0 + 0.15 * i;
        const double k = kantorovich(h);
        REQUIRE(k > prev);
        REQUIRE(k >= 1.0);
        REQUIRE(kantorovich(1.0 / h) == Approx(k).epsilon(1e-14));
        prev = k;
    }
}

TEST_CASE("young_refinement_check scalar bound") {
    const CheckResult eq = young_refinement_check(3.0, 3.0, Weight(0.3));
    REQUIRE(eq.verdict);
    REQUIRE(eq.lhs.at(0, 0) == Approx(3.0).epsilon(1e-15));
    REQUIRE(eq.rhs.at(0, 0) == Approx(3.0).epsilon(1e-15));

    // equality case at nu = 1/2: K(4)^{1/2} * 2 = 2.5 = (1+4)/2
    const CheckResult half = young_refinement_check(1.0, 4.0, Weight(0.5));
    REQUIRE(half.verdict);
    REQUIRE(half.lhs.at(0, 0) == Approx(2.5).epsilon(1e-14));
    REQUIRE(half.rhs.at(0, 0) == Approx(2.5).epsilon(1e-14));

    // K(2)^{1/4} * 2^{1/4} = (9/4)^{1/4} = sqrt(1.5)
    const CheckResult q = young_refinement_check(1.0, 2.0, Weight(0.25));
    REQUIRE(q.verdict);
    REQUIRE(q.lhs.at(0, 0) == Approx(std::sqrt(1.5)).epsilon(1e-14));
    REQUIRE(q.rhs.at(0, 0) == Approx(1.25).epsilon(1e-15));

    REQUIRE_THROWS_AS(young_refinement_check(0.0, 1.0, Weight(0.5)), HypothesisViolation);
}

TEST_CASE("young refinement holds over a scalar sweep") {
    SplitMix64 rng(5);
    for (int i = 0; i < 5000; ++i) {
        const double a = std::exp(rng.uniform(-3.0, 3.0));
        const double b = std::exp(rng.uniform(-3.0, 3.0));
        const double nu = 0.1 * static_cast<double>(rng.below(11));
        REQUIRE(young_refinement_check(a, b, Weight(nu)).verdict);
    }
}

TEST_CASE("geo_mean congruence invariance") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = 2 + static_cast<int>(rng.below(4));
        const PosDefMatrix a = random_posdef_in_band(dim, 0.5, 2.5, rng.next());
        const PosDefMatrix b = random_posdef_in_band(dim, 0.8, 4.0, rng.next());
        const double nu = rng.uniform01();

        // well-conditioned invertible T = Q1 D Q2 with D in [0.5, 2]
        const Mat q1 = random_orthogonal(dim, rng.next());
        const Mat q2 = random_orthogonal(dim, rng.next());
        Mat d(dim, dim);
        for (int i = 0; i < dim; ++i) d(i, i) = rng.uniform(0.5, 2.0);
        const Mat t = q1 * d * q2;

        const SymMatrix lhs = SymMatrix::from_mat(
            transpose(t) * geo_mean(a, b, Weight(nu)).sym().mat() * t);
        const PosDefMatrix ta(SymMatrix::from_mat(transpose(t) * a.sym().mat() * t));
        const PosDefMatrix tb(SymMatrix::from_mat(transpose(t) * b.sym().mat() * t));
        const SymMatrix rhs = geo_mean(ta, tb, Weight(nu)).sym();
        const double scale = std::max(operator_norm(rhs), 1e-30);
        REQUIRE(operator_norm(lhs - rhs) <= 1e-8 * scale);
    }
}

TEST_CASE("geo_mean transposition symmetry") {
    SplitMix64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = 2 + static_cast<int>(rng.below(4));
        const PosDefMatrix a = random_posdef_in_band(dim, 0.4, 2.0, rng.next());
        const PosDefMatrix b = random_posdef_in_band(dim, 1.0, 6.0, rng.next());
        const double nu = rng.uniform01();
        const SymMatrix lhs = geo_mean(a, b, Weight(nu)).sym();
        const SymMatrix rhs = geo_mean(b, a, Weight(1.0 - nu)).sym();
        REQUIRE(operator_norm(lhs - rhs) <= 1e-9 * std::max(operator_norm(rhs), 1.0));
    }
}

TEST_CASE("arithmetic dominates geometric in the Loewner order") {
    SplitMix64 rng(17);
    const double grid[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (int trial = 0; trial < 60; ++trial) {
        const int dim = 2 + static_cast<int>(rng.below(5));
        const PosDefMatrix a = random_posdef_in_band(dim, 0.5, 3.0, rng.next());
        const PosDefMatrix b = random_posdef_in_band(dim, 0.7, 5.0, rng.next());
        for (double nu : grid) {
            const LoewnerVerdict v =
                loewner_leq(geo_mean(a, b, Weight(nu)).sym(), arith_mean(a, b, Weight(nu)).sym());
            REQUIRE(v.holds);
        }
    }
}

TEST_CASE("commuting reduction to entrywise weighted powers") {
    SplitMix64 rng(19);
    for (int trial = 0; trial < 200; ++trial) {
        const int dim = 1 + static_cast<int>(rng.below(6));
        std::vector<double> av(dim), bv(dim);
        for (double& v : av) v = std::exp(rng.uniform(-1.5, 1.5));
        for (double& v : bv) v = std::exp(rng.uniform(-1.5, 1.5));
        const double nu = rng.uniform01();
        const SymMatrix g =
            geo_mean(testsup::diag_pd(av), testsup::diag_pd(bv), Weight(nu)).sym();
        for (int i = 0; i < dim; ++i) {
            const double want = std::pow(av[static_cast<std::size_t>(i)], 1.0 - nu) *
                                std::pow(bv[static_cast<std::size_t>(i)], nu);
            REQUIRE(g.at(i, i) == Approx(want).margin(1e-12 * std::max(1.0, want)));
        }
    }
}

TEST_CASE("Weight validates its range") {
    REQUIRE_THROWS_AS(Weight(-0.1), HypothesisViolation);
    REQUIRE_THROWS_AS(Weight(1.1), HypothesisViolation);
    REQUIRE(Weight(0.3).r() == Approx(0.3));
    REQUIRE(Weight(0.8).r() == Approx(0.2).epsilon(1e-15));
}

TEST_CASE("KantParams couples the ratio with the weight exponent") {
    const KantParams k(4.0, Weight(0.25));
    REQUIRE(k.h == 4.0);
    REQUIRE(k.r == Approx(0.25));
    REQUIRE(k.r <= 0.5);
    REQUIRE(KantParams(2.0, Weight(0.9)).r == Approx(0.1).epsilon(1e-14));
    REQUIRE_THROWS_AS(KantParams(0.0, Weight(0.5)), HypothesisViolation);
    REQUIRE_THROWS_AS(KantParams(-2.0, Weight(0.5)), HypothesisViolation);
}
