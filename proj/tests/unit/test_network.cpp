#include <gtest/gtest.h>

#include <numbers>

#include "apcycle/errors.hpp"
#include "apcycle/network.hpp"
#include "oracles.hpp"

using namespace apcycle;
using apcycle::testing::random_network;
using apcycle::testing::random_point;
using apcycle::testing::term_by_term;

namespace {

double max_rel(const CVector& a, const CVector& b) {
    return (a - b).cwiseAbs().maxCoeff() / std::max(1e-300, b.cwiseAbs().maxCoeff());
}

int idx(int N, int from, int to) { return directed_edge_index(N, {from, to}); }

}  // namespace

TEST(CycleNetwork, ValidateRejectsBadInput) {
    EXPECT_NO_THROW(CycleNetwork::homogeneous(3).validate());
    CycleNetwork small = CycleNetwork::homogeneous(3);
    small.N = 2;
    EXPECT_THROW(small.validate(), InvalidNetwork);
    CycleNetwork short_list = CycleNetwork::homogeneous(4);
    short_list.couplings.pop_back();
    EXPECT_THROW(short_list.validate(), InvalidNetwork);
    CycleNetwork zero = CycleNetwork::homogeneous(4);
    zero.couplings[2] = 0.0;
    EXPECT_THROW(zero.validate(), InvalidNetwork);
}

TEST(Complexify, ZeroShiftGivesEqualCoefficients) {
    // k_01 = 2, delta_01 = 0: a_01 = b_01 = 2/(2i) = -i.
    CycleNetwork net = CycleNetwork::homogeneous(3);
    net.couplings[0] = 2.0;
    const LaurentSystem sys = complexify(net);
    // Node 1 equation: +b_10 x_0/x_1 - a_10 x_1/x_0 with a_10 = b_01, b_10 = a_01.
    EXPECT_NEAR(std::abs(sys.coeffs(0, idx(3, 0, 1)) - Complex(0, -1)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(sys.coeffs(0, idx(3, 1, 0)) - Complex(0, 1)), 0.0, 1e-15);
}

TEST(Complexify, QuarterTurnShift) {
    // k_01 = 1, delta_01 = pi/2: a_01 = 1/2, b_01 = -1/2.
    CycleNetwork net = CycleNetwork::homogeneous(3);
    net.phase_shifts[0] = std::numbers::pi / 2;
    const LaurentSystem sys = complexify(net);
    EXPECT_NEAR(std::abs(sys.coeffs(0, idx(3, 0, 1)) - Complex(0.5, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(sys.coeffs(0, idx(3, 1, 0)) - Complex(0.5, 0)), 0.0, 1e-15);
}

TEST(Complexify, MatchesTermByTermEvaluator) {
    std::mt19937_64 rng(11);
    for (int N : {3, 4, 5, 8}) {
        const CycleNetwork net = random_network(N, rng);
        const LaurentSystem sys = complexify(net);
        for (int trial = 0; trial < 20; ++trial) {
            const CVector x = random_point(N - 1, rng);
            EXPECT_LT(max_rel(evaluate(sys, x), term_by_term(net, x)), 1e-13) << "N=" << N;
        }
    }
}

TEST(Complexify, BaseMonomialsTouchAtMostTwoEquations) {
    std::mt19937_64 rng(3);
    const LaurentSystem sys = complexify(random_network(6, rng));
    for (int d = 0; d < directed_edge_count(6); ++d) {
        int nonzero = 0;
        for (int k = 0; k < sys.n(); ++k) nonzero += sys.coeffs(k, d) != Complex{0.0};
        EXPECT_LE(nonzero, 2);
        EXPECT_GE(nonzero, 1);
    }
}

TEST(Evaluate, AllOnesOnZeroShiftZeroFrequency) {
    const CycleNetwork net = CycleNetwork::homogeneous(5, 1.3);
    const LaurentSystem sys = complexify(net);
    const CVector ones = CVector::Ones(4);
    CVector expected = sys.constants;
    for (int k = 0; k < 4; ++k) expected[k] += sys.coeffs.row(k).sum();
    EXPECT_EQ(evaluate(sys, ones), expected);
    // a = b on zero shift, so each neighbour contributes k/(2i) (1 - 1) = 0.
    EXPECT_LT(evaluate(sys, ones).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Evaluate, ZeroCoordinateThrows) {
    const LaurentSystem sys = complexify(CycleNetwork::homogeneous(4));
    CVector x = CVector::Ones(3);
    x[1] = 0.0;
    EXPECT_THROW(evaluate(sys, x), ZeroCoordinate);
    EXPECT_THROW(jacobian(sys, x), ZeroCoordinate);
}

TEST(Jacobian, MatchesCentralDifferences) {
    std::mt19937_64 rng(5);
    for (int N : {3, 4, 5}) {
        const LaurentSystem sys = random_base_system(N, 100 + N);
        for (int trial = 0; trial < 10; ++trial) {
            const CVector x = random_point(N - 1, rng);
            const CMatrix J = jacobian(sys, x);
            const double h = 1e-6;
            for (int j = 0; j < N - 1; ++j) {
                CVector xp = x;
                CVector xm = x;
                xp[j] += h;
                xm[j] -= h;
                const CVector fd = (evaluate(sys, xp) - evaluate(sys, xm)) / (2 * h);
                for (int i = 0; i < N - 1; ++i) {
                    const double scale = std::max(1.0, std::abs(J(i, j)));
                    EXPECT_LT(std::abs(fd[i] - J(i, j)) / scale, 1e-6);
                }
            }
        }
    }
}

TEST(Jacobian, LinearInMixing) {
    std::mt19937_64 rng(8);
    const LaurentSystem base = random_base_system(5, 9);
    const MixingMatrix R = MixingMatrix::random(4, 77);
    const LaurentSystem mixed = randomize(base, R);
    const CVector x = random_point(4, rng);
    const CMatrix expected = R.entries * jacobian(base, x);
    EXPECT_LT((jacobian(mixed, x) - expected).cwiseAbs().maxCoeff(), 1e-13 * expected.cwiseAbs().maxCoeff());
}

TEST(Jacobian, ZeroCoefficientRowIsZero) {
    LaurentSystem sys = random_base_system(4, 2);
    sys.coeffs.row(1).setZero();
    std::mt19937_64 rng(1);
    const CMatrix J = jacobian(sys, random_point(3, rng));
    EXPECT_EQ(J.row(1).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Randomize, IdentityLeavesCoefficients) {
    const LaurentSystem base = random_base_system(6, 4);
    const LaurentSystem same = randomize(base, MixingMatrix::identity(5));
    EXPECT_EQ(same.constants, base.constants);
    EXPECT_EQ(same.coeffs, base.coeffs);
}

TEST(Randomize, MatrixVectorOracle) {
    std::mt19937_64 rng(21);
    for (int N : {3, 5, 7}) {
        const LaurentSystem base = random_base_system(N, N);
        const MixingMatrix R = MixingMatrix::random(N - 1, 1000 + N);
        const LaurentSystem mixed = randomize(base, R);
        for (int trial = 0; trial < 100; ++trial) {
            const CVector p = random_point(N - 1, rng);
            const CVector expected = R.entries * evaluate(base, p);
            const double err = (evaluate(mixed, p) - expected).norm();
            EXPECT_LT(err, 1e-12 * expected.norm());
            EXPECT_LT(max_rel(evaluate(mixed, p), expected), 1e-13);
        }
    }
}

TEST(Randomize, SolutionsStaySolutions) {
    // x = 1 solves the zero-frequency, zero-shift system.
    const LaurentSystem base = complexify(CycleNetwork::homogeneous(4));
    const LaurentSystem mixed = randomize(base, MixingMatrix::random(3, 5));
    EXPECT_LT(evaluate(mixed, CVector::Ones(3)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Randomize, SingularMixingRejected) {
    MixingMatrix R = MixingMatrix::identity(3);
    R.entries(2, 2) = 1e-12;
    EXPECT_THROW(randomize(random_base_system(4, 1), R), SingularMixing);
}

TEST(MixingMatrix, RandomIsWellConditionedAndSeeded) {
    const MixingMatrix a = MixingMatrix::random(6, 42);
    const MixingMatrix b = MixingMatrix::random(6, 42);
    EXPECT_EQ(a.entries, b.entries);
    EXPECT_LT(a.condition(), MixingMatrix::default_condition_limit);
    EXPECT_NE(MixingMatrix::random(6, 43).entries, a.entries);
}

TEST(RealResidual, ZeroStateOnZeroNetwork) {
    const CycleNetwork net = CycleNetwork::homogeneous(5);
    const std::vector<double> theta(5, 0.0);
    for (double r : real_residual(net, theta, 0.0)) EXPECT_EQ(r, 0.0);
}

TEST(RealResidual, TwistStatesAreEquilibria) {
    for (int N : {3, 4, 5, 7}) {
        const CycleNetwork net = CycleNetwork::homogeneous(N, 1.7);
        for (int q = 0; q < N; ++q) {
            std::vector<double> theta(N);
            for (int j = 0; j < N; ++j) theta[j] = 2 * std::numbers::pi * q * j / N;
            for (double r : real_residual(net, theta, 0.0)) EXPECT_NEAR(r, 0.0, 1e-14);
        }
    }
}

TEST(RealResidual, AgreesWithComplexForm) {
    std::mt19937_64 rng(17);
    const CycleNetwork net = random_network(5, rng);
    std::uniform_real_distribution<double> angle(-3, 3);
    std::vector<double> theta(5, 0.0);
    CVector x(4);
    for (int i = 1; i < 5; ++i) {
        theta[i] = angle(rng);
        x[i - 1] = std::polar(1.0, theta[i]);
    }
    const std::vector<double> r = real_residual(net, theta, mean_frequency(net));
    const CVector f = evaluate(complexify(net), x);
    for (int i = 1; i < 5; ++i) {
        EXPECT_NEAR(f[i - 1].real(), r[i], 1e-13);
        EXPECT_NEAR(f[i - 1].imag(), 0.0, 1e-13);
    }
}
