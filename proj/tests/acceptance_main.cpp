// Verification gate: runs the named suite (default "all") and prints one
// pass/fail line per criterion. Exit status 0 iff every criterion passed,
// 1 for a failed criterion or an unknown suite name.
#include <cstdio>
#include <string>

#include "nevlab/accept.hpp"

int main(int argc, char** argv) {
    std::string suite = argc > 1 ? argv[1] : "all";
    auto results = nevlab::run_acceptance(suite);
    if (results.empty()) {
        std::fprintf(stderr, "unknown suite '%s'; known suites:", suite.c_str());
        for (const auto& name : nevlab::acceptance_suite_names())
            std::fprintf(stderr, " %s", name.c_str());
        std::fprintf(stderr, " all\n");
        return 1;
    }

    bool all_pass = true;
    double total = 0.0;
    for (const auto& r : results) {
        std::printf("[%s] %-22s %s (%.2f s)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str(), r.seconds);
        all_pass = all_pass && r.pass;
        total += r.seconds;
    }
    std::printf("%zu criteria, total %.2f s\n", results.size(), total);
    return all_pass ? 0 : 1;
}
