// Prints one PASS/FAIL line per acceptance criterion and the measured values.
// Exit status: 0 when every criterion passes, 1 otherwise.

#include <cstdio>
#include <exception>
#include <string>

#include "seqcore/io.hpp"
#include "seqcore/verify/suite.hpp"

int main(int argc, char** argv) {
    using namespace seqcore;
    verify::SuiteConfig cfg;
#ifdef SEQCORE_RULE_TABLE_PATH
    cfg.rule_table_path = SEQCORE_RULE_TABLE_PATH;
#endif
    if (argc > 1) cfg.rule_table_path = argv[1];
    try {
        int passed = 0;
        const auto rep = verify::run_suite(cfg, [&](const verify::CriterionResult& r) {
            passed += r.passed ? 1 : 0;
            std::printf("%s\n", verify::summary_line(r).c_str());
            std::printf("      %s\n", io::stable_dump(r.details, 0).c_str());
            std::fflush(stdout);
        });
        std::printf("criteria evaluated: %zu, passed: %d\n", rep.results.size(), passed);
        return rep.exit_code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance: %s\n", e.what());
        return 3;
    }
}
