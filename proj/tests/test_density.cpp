#include <cmath>

#include <gtest/gtest.h>

#include "seqcore/seqcore.hpp"

using namespace seqcore;

TEST(NaturalDensity, Evens) {
    const std::vector<std::size_t> l{1000};
    EXPECT_DOUBLE_EQ(natural_density(index_set("evens"), l).values.back(), 0.5);
}

TEST(NaturalDensity, SquaresShrink) {
    const std::vector<std::size_t> l{100, 400, 1600, 6400};
    const DensityEstimate d = natural_density(index_set("squares"), l);
    EXPECT_DOUBLE_EQ(d.values[0], 0.10);
    for (std::size_t i = 1; i < d.values.size(); ++i) EXPECT_LT(d.values[i], d.values[i - 1]);
    EXPECT_NEAR(d.trend, -0.5, 0.01);
}

TEST(NaturalDensity, EmptySet) {
    const std::vector<std::size_t> l{10, 100};
    EXPECT_EQ(natural_density(index_set("empty"), l).limit_estimate, 0.0);
}

TEST(ADensity, CesaroMatchesNatural) {
    const std::vector<std::size_t> l{10, 100, 1000};
    const MatrixSpec c = MatrixSpec::generator(GeneratorName::cesaro);
    for (const char* name : {"evens", "odds", "squares", "powers_of_2"}) {
        const DensityEstimate a = a_density(c, index_set(name), l);
        const DensityEstimate n = natural_density(index_set(name), l);
        for (std::size_t i = 0; i < l.size(); ++i) EXPECT_NEAR(a.values[i], n.values[i], 1e-12) << name;
    }
}

TEST(ADensity, AllIndicesUnderRegularMatrixTendToOne) {
    const std::vector<std::size_t> l{10, 100, 1000};
    std::vector<double> t(1000);
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = 1.0 + static_cast<double>(k % 3);
    const DensityEstimate d = a_density(MatrixSpec::generator(GeneratorSpec::riesz(t)), index_set("all"), l);
    EXPECT_NEAR(d.limit_estimate, 1.0, 1e-12);
    EXPECT_EQ(a_density(MatrixSpec::generator(GeneratorName::cesaro), index_set("empty"), l).limit_estimate, 0.0);
}

TEST(IndexSets, UnknownNameThrows) { EXPECT_THROW(index_set("primes"), InvalidArgument); }
