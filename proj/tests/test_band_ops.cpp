#include <cmath>

#include <gtest/gtest.h>

#include "seqcore/seqcore.hpp"
#include "seqcore/verify/oracles.hpp"
#include "test_support.hpp"

using namespace seqcore;
using seqcore::testing::seq;

namespace {

void expect_seq_near(const FiniteSeq& got, const FiniteSeq& want, double tol) {
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t k = 0; k < got.size(); ++k) EXPECT_LE(std::abs(got[k] - want[k]), tol) << "index " << k;
}

void expect_matrix_near(const Matrix& got, const Matrix& want, double tol) {
    ASSERT_EQ(got.rows(), want.rows());
    ASSERT_EQ(got.cols(), want.cols());
    EXPECT_LE(got.max_abs_diff(want), tol);
}

}  // namespace

TEST(ForwardTransform, DifferenceSystemTakesDifferences) {
    const FiniteSeq y = forward_transform(seq({1, 2, 3, 4}), BandSystem::difference(4));
    EXPECT_EQ(y, seq({1, 1, 1, 1}));
}

TEST(ForwardTransform, ConstantBand) {
    const FiniteSeq y = forward_transform(seq({1, 1, 1}), BandSystem::constant(2, 1, 1, 3));
    EXPECT_EQ(y, seq({2, 3, 3}));
}

TEST(ForwardTransform, ZeroMapsToZero) {
    CounterRng rng(1);
    const BandSystem sys = seqcore::testing::random_system(rng, 16);
    EXPECT_EQ(forward_transform(FiniteSeq::zeros(16), sys), FiniteSeq::zeros(16));
}

TEST(ForwardTransform, RejectsShortSystem) {
    EXPECT_THROW(forward_transform(seq({1, 2, 3}), BandSystem::difference(2)), InvalidArgument);
}

TEST(InverseTransform, UnrollsUnitVector) {
    const FiniteSeq x = inverse_transform(seq({1, 0, 0, 0}), BandSystem::constant(1, 1, 1, 4));
    EXPECT_EQ(x, seq({1, -1, 1, -1}));
}

TEST(InverseTransform, ZeroMapsToZero) {
    EXPECT_EQ(inverse_transform(FiniteSeq::zeros(5), BandSystem::constant(2, 1, 1, 5)), FiniteSeq::zeros(5));
}

TEST(InverseTransform, RoundTripSmallCase) {
    const BandSystem sys = BandSystem::constant(2, 1, 1, 3);
    expect_seq_near(inverse_transform(forward_transform(seq({1, -1, 2}), sys), sys), seq({1, -1, 2}), 1e-15);
}

TEST(InverseTransform, MatchesForwardSubstitutionOracle) {
    CounterRng rng(2);
    for (int c = 0; c < 20; ++c) {
        const BandSystem sys = seqcore::testing::random_system(rng, 40);
        const auto y = seqcore::testing::random_values(rng, 40);
        const FiniteSeq got = inverse_transform(FiniteSeq(y), sys);
        const FiniteSeq want(oracle::forward_substitution(sys, y));
        const double scale = std::max(1.0, want.sup_norm());
        expect_seq_near(got, want, 1e-12 * scale);
    }
}

TEST(InverseTransform, RoundTripOnContractingSystems) {
    CounterRng rng(3);
    for (int c = 0; c < 20; ++c) {
        const BandSystem sys = seqcore::testing::contracting_system(rng, 256);
        const FiniteSeq x(seqcore::testing::random_values(rng, 256));
        const FiniteSeq back = inverse_transform(forward_transform(x, sys), sys);
        expect_seq_near(back, x, 1e-12);
    }
}

TEST(TriangleKernel, ConstantBandEntries) {
    const TriangleKernel t = triangle_kernel(BandSystem::constant(2, 1, 1, 3), 3);
    expect_matrix_near(t.matrix(), seqcore::testing::dense({{2, 0, 0}, {1, 2, 0}, {0, 1, 2}}), 0.0);
}

TEST(TriangleKernel, DifferenceMatrix) {
    const TriangleKernel t = triangle_kernel(BandSystem::difference(2), 2);
    expect_matrix_near(t.matrix(), seqcore::testing::dense({{1, 0}, {-1, 1}}), 0.0);
}

TEST(TriangleKernel, IsTwoBandLowerTriangular) {
    CounterRng rng(4);
    const BandSystem sys = seqcore::testing::random_system(rng, 12);
    const TriangleKernel t = triangle_kernel(sys, 12);
    for (std::size_t n = 0; n < 12; ++n) {
        for (std::size_t k = 0; k < 12; ++k) {
            if (k + 1 < n || k > n) {
                EXPECT_EQ(t(n, k), Complex{});
            } else {
                EXPECT_NE(t(n, k), Complex{});
            }
        }
    }
    expect_matrix_near(t.matrix(), oracle::band_triangle(sys, 12), 0.0);
}

TEST(InverseKernel, ConstantBandEntries) {
    const TriangleKernel v = inverse_kernel(BandSystem::constant(2, 1, 1, 3), 3);
    expect_matrix_near(v.matrix(), seqcore::testing::dense({{0.5, 0, 0}, {-0.25, 0.5, 0}, {0.125, -0.25, 0.5}}), 1e-16);
}

TEST(InverseKernel, DiagonalIsAlphaOverR) {
    CounterRng rng(5);
    const BandSystem sys = seqcore::testing::random_system(rng, 30);
    const TriangleKernel v = inverse_kernel(sys, 30);
    for (std::size_t k = 0; k < 30; ++k) EXPECT_NEAR(v(k, k).real(), sys.alpha(k) / sys.r(k), 1e-15 * std::abs(v(k, k)));
}

TEST(InverseKernel, MatchesSubstitutionOracleEntrywise) {
    CounterRng rng(6);
    for (int c = 0; c < 10; ++c) {
        const BandSystem sys = seqcore::testing::random_system(rng, 48);
        const Matrix want = oracle::inverse_by_substitution(sys, 48);
        const TriangleKernel got = inverse_kernel(sys, 48);
        for (std::size_t n = 0; n < 48; ++n) {
            for (std::size_t k = 0; k <= n; ++k) {
                EXPECT_LE(std::abs(got(n, k) - want(n, k)), 1e-12 * std::abs(want(n, k))) << n << "," << k;
            }
        }
    }
}

TEST(InverseKernel, LogPathAgreesWithDirectProducts) {
    const BandSystem sys = BandSystem::constant(1, 1.5, 1, 200);
    const TriangleKernel a = inverse_kernel(sys, 200);
    const TriangleKernel b = inverse_kernel_direct(sys, 200);
    for (std::size_t n = 0; n < 200; ++n) {
        for (std::size_t k = 0; k <= n; ++k) EXPECT_LE(std::abs(a(n, k) - b(n, k)), 1e-12 * std::abs(b(n, k)));
    }
}

TEST(InverseKernel, IsRightInverseOfTriangle) {
    CounterRng rng(7);
    const BandSystem sys = seqcore::testing::contracting_system(rng, 64);
    const Matrix prod = triangle_kernel(sys, 64).matrix() * inverse_kernel(sys, 64).matrix();
    EXPECT_LE(prod.max_abs_diff(Matrix::identity(64)), 1e-14);
}

TEST(InverseKernel, ColumnsTransformToUnitVectors) {
    CounterRng rng(8);
    const BandSystem sys = seqcore::testing::random_system(rng, 20);
    for (std::size_t k = 0; k < 20; ++k) {
        const FiniteSeq y = forward_transform(basis_vector(sys, k, 20), sys);
        for (std::size_t n = 0; n < 20; ++n) EXPECT_NEAR(std::abs(y[n] - (n == k ? 1.0 : 0.0)), 0.0, 1e-12);
    }
}

TEST(MaddoxParanorm, SupWithUnitExponents) {
    EXPECT_DOUBLE_EQ(maddox_paranorm(seq({1, 0.5, 0.25}), ExponentSeq::constant(1, 3), ParanormKind::sup), 1.0);
}

TEST(MaddoxParanorm, SumWithExponentTwo) {
    EXPECT_DOUBLE_EQ(maddox_paranorm(FiniteSeq(std::vector<Complex>(9, 1.0)), ExponentSeq::constant(2, 9), ParanormKind::sum), 3.0);
}

TEST(MaddoxParanorm, ZeroForZero) {
    const ExponentSeq p({0.5, 1.5, 2.0});
    EXPECT_EQ(maddox_paranorm(FiniteSeq::zeros(3), p, ParanormKind::sup), 0.0);
    EXPECT_EQ(maddox_paranorm(FiniteSeq::zeros(3), p, ParanormKind::sum), 0.0);
}

TEST(MaddoxParanorm, AxiomsOnRandomTriples) {
    CounterRng rng(9);
    for (int c = 0; c < 200; ++c) {
        const std::size_t n = 16;
        const BandSystem sys = seqcore::testing::random_system(rng, n);
        std::vector<double> pv(n);
        for (auto& v : pv) v = rng.uniform(0.3, 3.0);
        const ExponentSeq p(pv);
        const auto xv = seqcore::testing::random_values(rng, n);
        const auto zv = seqcore::testing::random_values(rng, n);
        std::vector<Complex> sum(n), neg(n);
        for (std::size_t k = 0; k < n; ++k) {
            sum[k] = xv[k] + zv[k];
            neg[k] = -xv[k];
        }
        const double beta = rng.uniform(-3.0, 3.0);
        std::vector<Complex> scaled(n);
        for (std::size_t k = 0; k < n; ++k) scaled[k] = beta * xv[k];
        for (auto kind : {ParanormKind::sup, ParanormKind::sum}) {
            const double gx = space_paranorm(FiniteSeq(xv), sys, p, kind);
            const double gz = space_paranorm(FiniteSeq(zv), sys, p, kind);
            EXPECT_LE(space_paranorm(FiniteSeq(sum), sys, p, kind), (gx + gz) * (1 + 1e-12));
            EXPECT_EQ(space_paranorm(FiniteSeq(neg), sys, p, kind), gx);
            EXPECT_LE(space_paranorm(FiniteSeq(scaled), sys, p, kind), std::max(1.0, std::abs(beta)) * gx * (1 + 1e-12));
        }
    }
}

TEST(MaddoxParanorm, SupRequiresPositiveInfimum) {
    EXPECT_THROW(maddox_paranorm(seq({1, 1}), ExponentSeq({1.0, 1e-12}), ParanormKind::sup), InvalidArgument);
}

TEST(BasisVector, ConstantBandColumnZero) {
    const FiniteSeq b = basis_vector(BandSystem::constant(2, 1, 1, 4), 0, 4);
    expect_seq_near(b, seq({0.5, -0.25, 0.125, -0.0625}), 1e-16);
}

TEST(BasisVector, VanishesAboveIndex) {
    CounterRng rng(10);
    const BandSystem sys = seqcore::testing::random_system(rng, 10);
    for (std::size_t k = 0; k < 10; ++k) {
        const FiniteSeq b = basis_vector(sys, k, 10);
        for (std::size_t n = 0; n < k; ++n) EXPECT_EQ(b[n], Complex{});
    }
}

TEST(ZVector, IsInverseTransformOfOnes) {
    CounterRng rng(11);
    const BandSystem sys = seqcore::testing::random_system(rng, 24);
    expect_seq_near(z_vector(sys, 24), inverse_transform(FiniteSeq(std::vector<Complex>(24, 1.0)), sys), 1e-12);
}

TEST(ExpansionResidual, FullExpansionLeavesNothing) {
    CounterRng rng(12);
    const BandSystem sys = seqcore::testing::contracting_system(rng, 32);
    const FiniteSeq x(seqcore::testing::random_values(rng, 32));
    EXPECT_LE(expansion_residual(x, sys, ExponentSeq::constant(1, 32), 31), 1e-13);
}

TEST(ExpansionResidual, DifferenceSystemTail) {
    EXPECT_NEAR(expansion_residual(seq({1, 2, 3, 4}), BandSystem::difference(4), ExponentSeq::constant(1, 4), 1), 1.0, 1e-15);
}

TEST(ExpansionResidual, MatchesTailAndDoesNotIncrease) {
    CounterRng rng(13);
    for (int c = 0; c < 10; ++c) {
        const std::size_t n = 48;
        const BandSystem sys = seqcore::testing::random_system(rng, n);
        std::vector<double> pv(n);
        for (auto& v : pv) v = rng.uniform(0.5, 2.0);
        const ExponentSeq p(pv);
        const FiniteSeq x = inverse_transform(FiniteSeq(seqcore::testing::random_values(rng, n)), sys);
        const FiniteSeq mu = forward_transform(x, sys);
        double prev = 1e300;
        for (std::size_t m = 0; m + 1 < n; ++m) {
            const double r = expansion_residual(x, sys, p, m);
            EXPECT_NEAR(r, tail_paranorm(mu, p, m), 1e-10);
            EXPECT_LE(r, prev + 1e-10);
            prev = r;
        }
    }
}
