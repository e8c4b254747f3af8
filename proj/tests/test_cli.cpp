#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include "seqcore/io.hpp"

namespace fs = std::filesystem;
using seqcore::io::json;

namespace {

struct Proc {
    int code = -1;
    std::string out;
};

Proc run(const std::string& args) {
    const std::string cmd = std::string(SEQCORE_CLI) + " " + args + " 2>/dev/null";
    Proc r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), p)) > 0;) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string config(const char* name) { return (fs::path(SEQCORE_CONFIG_DIR) / name).string(); }

fs::path scratch(const char* name) {
    const fs::path dir = fs::temp_directory_path() / "seqcore_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

fs::path write(const char* name, const std::string& text) {
    const fs::path p = scratch(name);
    std::ofstream(p) << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Cli, CesaroRegularityExitsZero) {
    const Proc r = run("class-check --config " + config("cesaro_reg.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out).at("aggregate"), "holds");
}

TEST(Cli, ZeroMatrixRegularityExitsOne) {
    const auto p = write("zero.json", R"({"class":"c:sc_reg","matrix":{"generator":"zero"},"system":{"generator":"difference"}})");
    EXPECT_EQ(run("class-check --config " + p.string()).code, 1);
}

TEST(Cli, AlphaCoreOfAlternatingUnderDifference) {
    const fs::path out = scratch("alpha.csv");
    const Proc r = run("core --kind alpha --x alternating --system " + config("delta.json") + " --out " + out.string());
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(slurp(out), "x,y\n-2,0\n2,0\n");
    EXPECT_TRUE(fs::exists(scratch("alpha.json")));
}

TEST(Cli, CoreCsvRowCounts) {
    const fs::path sq = scratch("square.csv");
    EXPECT_EQ(run("core --kind knopp --x roots_of_unity --out " + sq.string()).code, 0);
    EXPECT_EQ(slurp(sq), "x,y\n0,-1\n1,0\n0,1\n-1,0\n");
    const fs::path pt = scratch("point.csv");
    EXPECT_EQ(run("core --kind st --x square_indicator --out " + pt.string()).code, 0);
    const std::string csv = slurp(pt);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
}

TEST(Cli, InvalidJsonExitsThree) {
    const auto p = write("bad.json", "{\"class\": ");
    EXPECT_EQ(run("class-check --config " + p.string()).code, 3);
}

TEST(Cli, UnknownKeyExitsThree) {
    const auto p = write("unknown.json", R"({"class":"c:sc_reg","matrix":{"generator":"cesaro"},"system":{"generator":"difference"},"extra":1})");
    EXPECT_EQ(run("class-check --config " + p.string()).code, 3);
}

TEST(Cli, UnknownSubcommandAndMissingArgsExitAboveTwo) {
    EXPECT_GE(run("frobnicate").code, 3);
    EXPECT_GE(run("").code, 3);
    EXPECT_EQ(run("transform --x alternating").code, 3);
}

TEST(Cli, EmptySelectionExitsTwo) {
    const auto p = write("empty.json", R"({"select": []})");
    EXPECT_EQ(run("verify --config " + p.string()).code, 2);
}

TEST(Cli, DoubledCesaroInclusionExitsOne) {
    EXPECT_EQ(run("verify --config " + config("verify_negative.json")).code, 1);
}

TEST(Cli, CatalogCriterionPassesWithCheckedInTables) {
    const auto p = write("catalog.json", R"({"select": [11, 10]})");
    const Proc r = run("verify --config " + p.string());
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(json::parse(r.out).at("criteria").size(), 2U);
}

TEST(Cli, InclusionConfig) {
    const Proc r = run("core-include --config " + config("include_alpha_knopp.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(json::parse(r.out).at("included").get<bool>());
    EXPECT_EQ(run("core-include --config " + config("include_alpha_knopp.json") + " --tol 0 --x '[0,10,0,0,0,0,0,0]' --length 8 --window 2,8")
                  .code,
              1);
}

TEST(Cli, TransformAndInvert) {
    const Proc t = run("transform --x '[1,2,3,4]' --system difference");
    EXPECT_EQ(t.code, 0);
    EXPECT_EQ(json::parse(t.out).at("y"), json::parse("[1,1,1,1]"));
    const Proc i = run("invert --y '[1,0,0,0]' --system '{\"generator\":\"constant\",\"params\":{\"r\":1,\"s\":1}}'");
    EXPECT_EQ(json::parse(i.out).at("x"), json::parse("[1,-1,1,-1]"));
}

TEST(Cli, ParanormAndResidual) {
    const auto p = write("pn.json", R"({"p": 1})");
    const Proc g = run("paranorm --config " + p.string() + " --x '[1,2,3,4]' --system difference");
    EXPECT_EQ(json::parse(g.out).at("value"), 1.0);
    const auto q = write("res.json", R"({"p": 1, "n": [1, 3]})");
    const Proc r = run("basis-residual --config " + q.string() + " --x '[1,2,3,4]' --system difference");
    const json rows = json::parse(r.out).at("residuals");
    EXPECT_EQ(rows[0].at("residual"), 1.0);
    EXPECT_EQ(rows[1].at("residual"), 0.0);
}

TEST(Cli, DualCheckReport) {
    const Proc r = run("dual-check --config " + config("dual_s0_beta.json"));
    ASSERT_LE(r.code, 2);
    const json j = json::parse(r.out);
    EXPECT_EQ(j.at("conditions").size(), 3U);
}

TEST(Cli, ReportsAreByteIdentical) {
    const std::string args = "class-check --config " + config("cesaro_reg.json");
    EXPECT_EQ(run(args).out, run(args).out);
    const std::string core = "core --kind knopp-disc --x random_bounded --directions 32";
    EXPECT_EQ(run(core).out, run(core).out);
    const fs::path a = scratch("det_a.json"), b = scratch("det_b.json");
    run(args + " --out " + a.string());
    run(args + " --out " + b.string());
    EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Cli, OutFileMatchesStdout) {
    const fs::path out = scratch("mirror.json");
    const Proc r = run("class-check --config " + config("cesaro_reg.json") + " --out " + out.string());
    EXPECT_EQ(slurp(out), r.out);
}
