#include <cmath>

#include <gtest/gtest.h>

#include "seqcore/seqcore.hpp"
#include "test_support.hpp"

using namespace seqcore;
using seqcore::testing::dense;
using seqcore::testing::seq;

TEST(Generators, CesaroRows) {
    const Matrix c = make_matrix(GeneratorSpec::of(GeneratorName::cesaro), 3);
    EXPECT_LE(c.max_abs_diff(dense({{1, 0, 0}, {1.0 / 2, 1.0 / 2, 0}, {1.0 / 3, 1.0 / 3, 1.0 / 3}})), 1e-16);
}

TEST(Generators, RieszWithUnitWeightsIsCesaro) {
    const Matrix r = make_matrix(GeneratorSpec::riesz(std::vector<double>(20, 1.0)), 20);
    const Matrix c = make_matrix(GeneratorSpec::of(GeneratorName::cesaro), 20);
    EXPECT_EQ(r.max_abs_diff(c), 0.0);
}

TEST(Generators, RieszRejectsShortOrNonPositiveWeights) {
    EXPECT_THROW(make_matrix(GeneratorSpec::riesz({1, 1}), 3), InvalidArgument);
    EXPECT_THROW(make_matrix(GeneratorSpec::riesz({1, 0, 1}), 3), InvalidArgument);
}

TEST(Generators, BandMatrix) {
    EXPECT_EQ(make_matrix(GeneratorSpec::band(2, 1), 3).max_abs_diff(dense({{2, 0, 0}, {1, 2, 0}, {0, 1, 2}})), 0.0);
}

TEST(Generators, DoubleBandReducesToBand) {
    const std::size_t n = 6;
    const Matrix a = make_matrix(GeneratorSpec::two_band(BandSystem::constant(2, 1, 1, n)), n);
    EXPECT_EQ(a.max_abs_diff(make_matrix(GeneratorSpec::band(2, 1), n)), 0.0);
    const Matrix d = make_matrix(GeneratorSpec::two_band(BandSystem::difference(n)), n);
    EXPECT_EQ(d.max_abs_diff(make_matrix(GeneratorSpec::of(GeneratorName::difference), n)), 0.0);
}

TEST(Generators, DoubleBandMatchesTriangleKernel) {
    CounterRng rng(21);
    const BandSystem sys = seqcore::testing::random_system(rng, 9);
    EXPECT_EQ(make_matrix(GeneratorSpec::two_band(sys), 9).max_abs_diff(triangle_kernel(sys, 9).matrix()), 0.0);
}

TEST(Generators, SummationIsInverseOfDifference) {
    const std::size_t n = 8;
    const Matrix s = make_matrix(GeneratorSpec::of(GeneratorName::summation), n);
    const Matrix d = make_matrix(GeneratorSpec::of(GeneratorName::difference), n);
    EXPECT_EQ((s * d).max_abs_diff(Matrix::identity(n)), 0.0);
}

TEST(Generators, ApplyMatchesMaterializedMatrix) {
    CounterRng rng(22);
    const auto x = seqcore::testing::random_values(rng, 30);
    std::vector<double> t(30);
    for (auto& v : t) v = rng.uniform(0.5, 2.0);
    for (const GeneratorSpec& g : {GeneratorSpec::of(GeneratorName::cesaro), GeneratorSpec::riesz(t), GeneratorSpec::band(2, -1),
                                   GeneratorSpec::of(GeneratorName::summation), GeneratorSpec::of(GeneratorName::identity)}) {
        const auto a = apply_generator(g, x);
        const auto b = make_matrix(g, 30).apply(x);
        for (std::size_t k = 0; k < 30; ++k) EXPECT_LE(std::abs(a[k] - b[k]), 1e-12) << to_string(g.name);
    }
}

TEST(Sequences, OnesAndUnitVector) {
    SequenceSpec e;
    EXPECT_EQ(make_sequence(e, 3), seq({1, 1, 1}));
    SequenceSpec u;
    u.name = SequenceName::unit;
    u.index = 1;
    EXPECT_EQ(make_sequence(u, 3), seq({0, 1, 0}));
}

TEST(Sequences, RootsOfUnityOrderFourAreExact) {
    SequenceSpec r;
    r.name = SequenceName::roots_of_unity;
    r.m = 4;
    EXPECT_EQ(make_sequence(r, 4), seq({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}));
}

TEST(Sequences, SquareIndicatorAndConvergent) {
    SequenceSpec sq;
    sq.name = SequenceName::square_indicator;
    EXPECT_EQ(make_sequence(sq, 10), seq({1, 1, 0, 0, 1, 0, 0, 0, 0, 1}));
    SequenceSpec cv;
    cv.name = SequenceName::convergent;
    cv.limit = {0.5, 0};
    cv.rate = 2;
    const FiniteSeq x = make_sequence(cv, 4);
    EXPECT_DOUBLE_EQ(x[3].real(), 0.5 + 1.0 / 16);
}

TEST(Sequences, RandomBoundedIsDeterministicAndClustered) {
    SequenceSpec s;
    s.name = SequenceName::random_bounded;
    s.seed = 42;
    const FiniteSeq a = make_sequence(s, 500);
    EXPECT_EQ(a, make_sequence(s, 500));
    const auto pts = random_bounded_clusters(42, s.clusters);
    for (std::size_t k = 0; k < a.size(); ++k) {
        double best = 1e300;
        for (auto p : pts) best = std::min(best, std::abs(a[k] - p));
        EXPECT_LE(best, 0.5 / static_cast<double>(k + 1) + 1e-15);
    }
    s.seed = 43;
    EXPECT_NE(a, make_sequence(s, 500));
}

TEST(Sequences, PerfectSquareTest) {
    std::size_t count = 0;
    for (std::size_t k = 0; k < 100000; ++k) count += is_perfect_square(k) ? 1 : 0;
    EXPECT_EQ(count, 317U);
}
