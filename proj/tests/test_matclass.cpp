#include <cmath>

#include <gtest/gtest.h>

#include "seqcore/seqcore.hpp"
#include "seqcore/verify/oracles.hpp"
#include "test_support.hpp"

using namespace seqcore;

namespace {

const std::vector<std::size_t> kLadder{32, 64, 128, 256};

BandSystem smooth(std::size_t n) {
    std::vector<double> r(n), s(n), a(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k);
        r[k] = 2.0 + 0.5 * std::sin(t);
        s[k] = 1.0 + 0.5 * std::cos(t);
        a[k] = 1.0 + 0.25 * std::sin(0.5 * t);
    }
    return {r, s, a};
}

MatrixLadder ladder_of(std::initializer_list<std::size_t> ns, const std::function<Matrix(std::size_t)>& make) {
    MatrixLadder ml;
    for (std::size_t n : ns) {
        ml.ns.push_back(n);
        ml.mats.push_back(make(n));
    }
    return ml;
}

}  // namespace

TEST(Btilde, InverseKernelMapsToIdentity) {
    CounterRng rng(51);
    const BandSystem sys = seqcore::testing::random_system(rng, 24);
    EXPECT_LE(btilde(inverse_kernel(sys, 24).matrix(), sys).max_abs_diff(Matrix::identity(24)), 1e-12);
}

TEST(Btilde, IdentityMapsToTriangle) {
    CounterRng rng(52);
    const BandSystem sys = seqcore::testing::random_system(rng, 10);
    EXPECT_EQ(btilde(Matrix::identity(10), sys).max_abs_diff(oracle::band_triangle(sys, 10)), 0.0);
    EXPECT_EQ(btilde(Matrix(10, 10), sys).max_abs_diff(Matrix(10, 10)), 0.0);
}

TEST(Btilde, LiftShortcutAgreesWithDenseProduct) {
    const BandSystem sys = smooth(40);
    const MatrixSpec b = MatrixSpec::generator(GeneratorName::cesaro).lifted(sys);
    const Matrix fast = btilde(b, sys, 40);
    const Matrix slow = btilde(b.materialize(40), sys);
    EXPECT_LE(fast.max_abs_diff(slow), 1e-12);
    EXPECT_EQ(fast.max_abs_diff(make_matrix(GeneratorSpec::of(GeneratorName::cesaro), 40)), 0.0);
}

TEST(EMatrix, TriangleGivesIdentity) {
    CounterRng rng(53);
    const BandSystem sys = seqcore::testing::contracting_system(rng, 20);
    const EMatrix e = e_matrix(MatrixSpec::generator(GeneratorSpec::two_band(sys)), sys, 20);
    EXPECT_LE(e.matrix().max_abs_diff(Matrix::identity(20)), 1e-14);
}

TEST(EMatrix, IdentityGivesInverseKernel) {
    CounterRng rng(54);
    const BandSystem sys = seqcore::testing::random_system(rng, 16);
    const EMatrix e = e_matrix(MatrixSpec::generator(GeneratorName::identity), sys, 16);
    EXPECT_EQ(e.matrix().max_abs_diff(inverse_kernel(sys, 16).matrix()), 0.0);
}

TEST(EMatrix, MatchesProductWithSubstitutionInverse) {
    CounterRng rng(55);
    const BandSystem sys = seqcore::testing::random_system(rng, 14);
    Matrix a(14, 14);
    for (std::size_t i = 0; i < 14; ++i) {
        for (std::size_t k = 0; k < 14; ++k) a(i, k) = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    }
    const EMatrix e(a, inverse_kernel(sys, 14));
    const Matrix want = a * oracle::inverse_by_substitution(sys, 14);
    EXPECT_LE(e.matrix().max_abs_diff(want), 1e-10 * std::max(1.0, oracle::full_abs_sum(want)));
}

TEST(EMatrix, PartialRowsOfBandedMatrixFreezeAfterRowIndex) {
    CounterRng rng(56);
    const BandSystem sys = seqcore::testing::random_system(rng, 12);
    const EMatrix e = e_matrix(MatrixSpec::generator(GeneratorSpec::band(2, 1)), sys, 12);
    for (std::size_t n = 0; n < 12; ++n) {
        const Matrix fam = e.partial_family(n);
        for (std::size_t m = n; m < 12; ++m) {
            for (std::size_t k = 0; k <= n; ++k) EXPECT_EQ(fam(m, k), fam(n, k));
            for (std::size_t k = 0; k <= m; ++k) EXPECT_LE(std::abs(fam(m, k) - e.partial(n, m, k)), 1e-12);
        }
    }
}

TEST(ConditionCatalog, WorkedExamples) {
    const MatrixLadder ces = ladder_of({32, 64, 128, 256}, [](std::size_t n) { return make_matrix(GeneratorSpec::of(GeneratorName::cesaro), n); });
    ConditionInputs in;
    in.source = &ces;
    in.p = ExponentSeq::constant(1.0, 256);
    const ConditionVerdict rowabs = eval_condition("rowabs_sum_one", in, kLadder);
    EXPECT_EQ(rowabs.verdict, Verdict::holds);
    EXPECT_NEAR(*rowabs.estimates.back().observed, 1.0, 1e-12);

    const MatrixLadder eye = ladder_of({32, 64, 128, 256}, [](std::size_t n) { return Matrix::identity(n); });
    ConditionInputs ein;
    ein.source = &eye;
    ein.p = ExponentSeq::constant(1.0, 256);
    ein.q = ExponentSeq::constant(1.0, 256);
    const ConditionVerdict m37 = eval_condition("mt37", ein, kLadder);
    EXPECT_EQ(m37.verdict, Verdict::holds);
    for (const auto& e : m37.estimates) {
        const double b = std::stod(e.witness.substr(2));
        EXPECT_NEAR(e.value, 1.0 / b, 1e-15);
    }
    EXPECT_EQ(eval_condition("mt40", ein, kLadder).verdict, Verdict::fails);
}

TEST(ConditionCatalog, UnknownIdThrows) { EXPECT_THROW(catalog_entry("mt99"), InvalidArgument); }

TEST(ClassReport, CesaroIsRegular) {
    const BandSystem sys = smooth(256);
    const ClassReport rep = class_report(MatrixSpec::generator(GeneratorName::cesaro).lifted(sys), "c:sc_reg", sys,
                                         ExponentSeq::constant(1.0, 256), kLadder);
    EXPECT_EQ(rep.aggregate, Verdict::holds);
    ASSERT_EQ(rep.conditions.size(), 3U);
    EXPECT_NEAR(rep.conditions[0].estimates.back().value, 1.0, 1e-12);
}

TEST(ClassReport, ZeroMatrixFailsRowSums) {
    const BandSystem sys = smooth(256);
    const ClassReport rep = class_report(MatrixSpec::generator(GeneratorName::zero), "c:sc_reg", sys,
                                         ExponentSeq::constant(1.0, 256), kLadder);
    EXPECT_EQ(rep.aggregate, Verdict::fails);
    EXPECT_EQ(rep.conditions[2].id, "row_sum_one");
    EXPECT_EQ(rep.conditions[2].verdict, Verdict::fails);
}

TEST(ClassReport, StatisticalRegularityOfCesaro) {
    const BandSystem sys = smooth(256);
    const ClassReport rep = class_report(MatrixSpec::generator(GeneratorName::cesaro).lifted(sys), "st_linf:sc_reg", sys,
                                         ExponentSeq::constant(1.0, 256), kLadder);
    EXPECT_EQ(rep.aggregate, Verdict::holds);
    ASSERT_EQ(rep.densities.size(), 2U);
    EXPECT_EQ(rep.conditions.back().id, "density_zero_rows:powers_of_2");
}

// An identity btilde has unit mass on every square row, so the density-zero row
// condition fails even though squares have Cesaro density zero.
TEST(ClassReport, IdentityIsNotStatisticallyRegular) {
    const BandSystem sys = smooth(256);
    const ClassReport rep = class_report(MatrixSpec::generator(GeneratorName::identity).lifted(sys), "st_linf:sc_reg", sys,
                                         ExponentSeq::constant(1.0, 256), kLadder);
    EXPECT_EQ(rep.aggregate, Verdict::fails);
    for (const auto& c : rep.conditions) {
        if (c.id.rfind("density_zero_rows", 0) == 0) EXPECT_EQ(c.verdict, Verdict::fails) << c.id;
        else EXPECT_EQ(c.verdict, Verdict::holds) << c.id;
    }
}

TEST(ClassReport, TriangleMapsBoundedDomainIntoBoundedSequences) {
    CounterRng rng(57);
    const BandSystem sys = seqcore::testing::contracting_system(rng, 256);
    const MatrixSpec t = MatrixSpec::generator(GeneratorSpec::two_band(sys));
    EXPECT_EQ(class_report(t, "sinf:linf", sys, ExponentSeq::constant(1.0, 256), kLadder).aggregate, Verdict::holds);
    // E = T V = I satisfies every listed sinf:c condition, including the unshifted row-sum limit.
    const ClassReport c = class_report(t, "sinf:c", sys, ExponentSeq::constant(1.0, 256), kLadder);
    EXPECT_EQ(c.conditions.back().id, "mt31");
    EXPECT_EQ(c.aggregate, Verdict::holds);
}

TEST(ClassReport, QSpacesRequireQ) {
    const BandSystem sys = smooth(64);
    const std::vector<std::size_t> l{16, 32, 64};
    EXPECT_THROW(class_report(MatrixSpec::generator(GeneratorName::identity), "s0:c_q", sys, ExponentSeq::constant(1.0, 64), l),
                 InvalidArgument);
    EXPECT_THROW(class_report(MatrixSpec::generator(GeneratorName::identity), "nope", sys, ExponentSeq::constant(1.0, 64), l),
                 InvalidArgument);
}

TEST(ClassReport, DecreasingQIsFlagged) {
    std::vector<double> q(64);
    for (std::size_t k = 0; k < 64; ++k) q[k] = 2.0 - static_cast<double>(k) / 64.0;
    EXPECT_FALSE(check_q(ExponentSeq(q), 64).empty());
    EXPECT_TRUE(check_q(ExponentSeq::constant(1.0, 64), 64).empty());
}
