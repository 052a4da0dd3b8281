// Command-line front door: scenario execution, task-type shortcuts, and the
// verification suite. See include/nevlab/scenario.hpp for the JSON schema.
#include <CLI11.hpp>

#include <cstdio>
#include <string>

#include "nevlab/accept.hpp"
#include "nevlab/scenario.hpp"

namespace {

struct RunFlags {
    std::string scenario;
    std::string out_dir = ".";
    unsigned seed = 0;
    int jobs = 0;
    double tolerance = 0.0;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* jobs_opt = nullptr;
    CLI::Option* tol_opt = nullptr;
};

/// The run-style subcommands share one flag set; only the task filter differs.
void add_run_flags(CLI::App* cmd, RunFlags& f) {
    cmd->add_option("--scenario", f.scenario, "scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out-dir", f.out_dir, "directory for artifacts (default: .)");
    f.seed_opt = cmd->add_option("--seed", f.seed, "override the scenario seed");
    f.jobs_opt = cmd->add_option("--jobs", f.jobs,
                                 "worker count (0 = NEVLAB_JOBS or hardware)");
    f.tol_opt = cmd->add_option("--tolerance", f.tolerance,
                                "override the scenario relative tolerance");
}

int run_with(const RunFlags& f, const std::string& only_op) {
    nevlab::ScenarioOverrides ov;
    if (f.seed_opt->count()) {
        ov.has_seed = true;
        ov.seed = f.seed;
    }
    if (f.jobs_opt->count()) {
        ov.has_jobs = true;
        ov.jobs = f.jobs;
    }
    if (f.tol_opt->count()) {
        ov.has_tol = true;
        ov.rel_tol = f.tolerance;
    }
    return nevlab::run_scenario_file(f.scenario, f.out_dir, ov, only_op);
}

int run_verify(const std::string& suite, int jobs) {
    auto results = nevlab::run_acceptance(suite, jobs);
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

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"boundary-regularity diagnostics for Pick functions"};
    app.require_subcommand(1);

    RunFlags run_flags, sweep_flags, classify_flags, foliate_flags, horocycle_flags;
    std::string verify_suite = "all";
    int verify_jobs = 0;

    add_run_flags(app.add_subcommand("run", "execute every task in a scenario"), run_flags);
    add_run_flags(app.add_subcommand("sweep", "execute only the sweep tasks"), sweep_flags);
    add_run_flags(app.add_subcommand("classify", "execute only the classify tasks"),
                  classify_flags);
    add_run_flags(app.add_subcommand("foliate", "execute only the foliate tasks"), foliate_flags);
    add_run_flags(app.add_subcommand("horocycle", "execute only the horocycle tasks"),
                  horocycle_flags);

    CLI::App* verify = app.add_subcommand("verify", "run the verification criteria");
    verify->add_option("suite", verify_suite, "criterion name or 'all' (default)");
    verify->add_option("--jobs", verify_jobs, "worker count (0 = NEVLAB_JOBS or hardware)");

    CLI11_PARSE(app, argc, argv);

    if (app.got_subcommand("run")) return run_with(run_flags, "");
    if (app.got_subcommand("sweep")) return run_with(sweep_flags, "sweep");
    if (app.got_subcommand("classify")) return run_with(classify_flags, "classify");
    if (app.got_subcommand("foliate")) return run_with(foliate_flags, "foliate");
    if (app.got_subcommand("horocycle")) return run_with(horocycle_flags, "horocycle");
    return run_verify(verify_suite, verify_jobs);
}
