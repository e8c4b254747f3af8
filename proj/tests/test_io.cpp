#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "seqcore/io.hpp"
#include "seqcore/seqcore.hpp"

using namespace seqcore;
using io::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
}

RegionEstimate region(std::vector<Complex> v) {
    return RegionEstimate::from_vertices(RegionMethod::cluster_hull, Window{1, 10}, std::move(v), geom::direction_angles(8));
}

}  // namespace

TEST(StableDump, SeventeenDigitsAndSortedKeys) {
    EXPECT_EQ(io::format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(io::format_double(2.0), "2");
    EXPECT_EQ(io::format_double(INFINITY), "null");
    const json j{{"b", 1.0 / 3}, {"a", json::array({1, 2.5})}};
    EXPECT_EQ(io::stable_dump(j, 0), R"({"a":[1,2.5],"b":0.33333333333333331})");
}

TEST(StableDump, RoundTripsDoublesExactly) {
    CounterRng rng(71);
    for (int i = 0; i < 200; ++i) {
        const double v = rng.uniform(-1e6, 1e6) * std::pow(10.0, rng.uniform(-20, 20));
        EXPECT_EQ(json::parse(io::stable_dump(json(v))).get<double>(), v);
    }
}

TEST(ParseSystem, ExplicitAndGenerated) {
    const BandSystem a = io::parse_system(json::parse(R"({"r":[2,2],"s":[1,1],"alpha":[1,1]})"), 2);
    EXPECT_EQ(a.r(1), 2.0);
    const BandSystem d = io::parse_system(json::parse(R"({"generator":"difference"})"), 5);
    EXPECT_EQ(d.size(), 5U);
    EXPECT_EQ(d.s(3), -1.0);
    const BandSystem c = io::parse_system(json::parse(R"({"generator":"constant","params":{"r":3,"s":0.5,"alpha":2}})"), 4);
    EXPECT_EQ(c.alpha(2), 2.0);
}

TEST(ParseSystem, RejectsUnknownAndMissingKeys) {
    EXPECT_THROW(io::parse_system(json::parse(R"({"r":[1],"s":[1],"alpha":[1],"beta":1})"), 1), io::SchemaError);
    EXPECT_THROW(io::parse_system(json::parse(R"({"r":[1],"s":[1]})"), 1), io::SchemaError);
    EXPECT_THROW(io::parse_system(json::parse(R"({"generator":"lower"})"), 1), io::SchemaError);
    EXPECT_THROW(io::parse_system(json::parse(R"({"r":[0],"s":[1],"alpha":[1]})"), 1), InvalidArgument);
}

TEST(ParseSequence, AllForms) {
    EXPECT_EQ(io::parse_sequence(json("alternating"), 3), FiniteSeq({1, -1, 1}));
    EXPECT_EQ(io::parse_sequence(json::parse("[1, [0, 2]]"), 2), FiniteSeq({1, {0, 2}}));
    EXPECT_EQ(io::parse_sequence(json::parse(R"({"values":[3,4]})"), 2), FiniteSeq({3, 4}));
    EXPECT_EQ(io::parse_sequence(json::parse(R"({"name":"e_n","index":1})"), 3), FiniteSeq({0, 1, 0}));
    EXPECT_THROW(io::parse_sequence(json("primes"), 3), io::SchemaError);
    EXPECT_THROW(io::parse_sequence(json::parse(R"({"name":"e","colour":1})"), 3), io::SchemaError);
}

TEST(ParseMatrix, GeneratorScaleLift) {
    const MatrixSpec m = io::parse_matrix(json::parse(R"({"generator":"cesaro","scale":2,"lift":{"generator":"difference"}})"), 8);
    EXPECT_EQ(m.scale(), Complex(2));
    ASSERT_TRUE(m.lift().has_value());
    const MatrixSpec d = io::parse_matrix(json::parse(R"({"dense":[[1,0],[2,3]]})"), 2);
    EXPECT_EQ(d.materialize(2)(1, 0), Complex(2));
    EXPECT_THROW(io::parse_matrix(json::parse(R"({"dense":[[1,0],[2]]})"), 2), io::SchemaError);
    EXPECT_THROW(io::parse_matrix(json::parse(R"({"scale":2})"), 2), io::SchemaError);
}

TEST(ParsePolicy, ValidatesThresholds) {
    EXPECT_EQ(io::parse_policy(json::parse(R"({"zero_tol":1e-9})")).zero_tol, 1e-9);
    EXPECT_THROW(io::parse_policy(json::parse(R"({"fail_tol":1e-12})")), io::SchemaError);
    EXPECT_THROW(io::parse_policy(json::parse(R"({"speed":1})")), io::SchemaError);
}

TEST(ReadJsonFile, InvalidJsonIsSchemaError) {
    const auto path = std::filesystem::temp_directory_path() / "seqcore_io_bad.json";
    std::ofstream(path) << "{\"a\": ";
    EXPECT_THROW(io::read_json_file(path), io::SchemaError);
    EXPECT_THROW(io::read_json_file(path.string() + ".missing"), io::SchemaError);
}

TEST(RegionCsv, PointSegmentSquare) {
    EXPECT_EQ(io::region_csv(region({{0.5, 0}})), "x,y\n0.5,0\n");
    EXPECT_EQ(io::region_csv(region({{-1, 0}, {1, 0}})), "x,y\n-1,0\n1,0\n");
    EXPECT_EQ(io::region_csv(region(geom::convex_hull({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}))), "x,y\n0,-1\n1,0\n0,1\n-1,0\n");
}

TEST(RegionCsv, ExportWritesSidecar) {
    const auto dir = std::filesystem::temp_directory_path() / "seqcore_io_export";
    std::filesystem::create_directories(dir);
    const RegionEstimate r = region({{-1, 0}, {1, 0}});
    io::export_region(r, dir / "seg.csv");
    EXPECT_EQ(slurp(dir / "seg.csv"), io::region_csv(r));
    const json side = json::parse(slurp(dir / "seg.json"));
    EXPECT_EQ(side.at("support").size(), 8U);
    EXPECT_EQ(side.at("vertices").size(), 2U);
}

TEST(RuleTables, MatchCheckedInTranscription) {
    const json expected = io::read_json_file(std::filesystem::path(SEQCORE_DATA_DIR) / "rule_tables.json");
    EXPECT_EQ(json::diff(expected, io::rule_tables()), json::array());
}

TEST(Reports, ClassReportSerializesDeterministically) {
    const std::vector<std::size_t> l{16, 32, 64};
    const BandSystem sys = BandSystem::difference(64);
    const ClassReport rep = class_report(MatrixSpec::generator(GeneratorName::cesaro).lifted(sys), "c:sc_reg", sys,
                                         ExponentSeq::constant(1.0, 64), l);
    const std::string a = io::stable_dump(io::to_json(rep));
    const ClassReport again = class_report(MatrixSpec::generator(GeneratorName::cesaro).lifted(sys), "c:sc_reg", sys,
                                           ExponentSeq::constant(1.0, 64), l);
    EXPECT_EQ(a, io::stable_dump(io::to_json(again)));
    EXPECT_EQ(json::parse(a).at("aggregate"), "holds");
}
