// Experiment runner: binds the config, the experiment dispatch and the
// report writers. Exit code 0 = experiment passed, 1 = a check failed,
// 2 = the config (file or flags) was rejected.

#include "oscillab/config.hpp"
#include "oscillab/experiments.hpp"
#include "oscillab/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"multi-frequency oscillation experiments"};
    std::string config_path, experiment, out_dir;
    std::uint64_t seed = 0;
    int threads = 0;
    bool quick = false;

    auto* copt = app.add_option("--config", config_path, "config file (ini-style key=value)");
    auto* eopt = app.add_option("--experiment", experiment,
                                "one of: " + [] {
                                    std::string s;
                                    for (const auto& n : oscillab::experiment_names())
                                        s += (s.empty() ? "" : ", ") + n;
                                    return s;
                                }());
    auto* sopt = app.add_option("--seed", seed, "global seed (per-trial streams derive from it)");
    auto* oopt = app.add_option("--out", out_dir, "report directory (default: out)");
    auto* topt = app.add_option("--threads", threads, "worker threads, 0 = all cores");
    auto* qflg = app.add_flag("--quick", quick, "reduced budgets (acceptance-all ignores this)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e); // prints help or the parse error
        return rc == 0 ? 0 : 2;
    }

    try {
        oscillab::ExperimentConfig cfg;
        if (copt->count()) cfg = oscillab::load_config(config_path);
        if (eopt->count()) cfg.experiment = experiment;
        if (sopt->count()) cfg.seed = seed;
        if (oopt->count()) cfg.out_dir = out_dir;
        if (topt->count()) cfg.threads = threads;
        if (qflg->count()) cfg.quick = true;
        if (const char* env = std::getenv("OSCILLAB_OUT"); env != nullptr && *env != '\0')
            cfg.out_dir = env;
        cfg.check();

        const auto start = std::chrono::steady_clock::now();
        auto last = start;
        const auto outcome = oscillab::run_experiment(cfg, [&](const oscillab::CriterionResult& r) {
            const auto now = std::chrono::steady_clock::now();
            const double secs = std::chrono::duration<double>(now - last).count();
            last = now;
            std::printf("criterion %2d %-52s %s  (%.1f s)  %s\n", r.index,
                        (r.name + ":").c_str(), r.pass ? "PASS" : "FAIL", secs, r.detail.c_str());
            std::fflush(stdout);
        });

        for (const auto& path : oscillab::write_report(outcome.report, cfg.out_dir))
            std::printf("wrote %s\n", path.c_str());
        for (const auto& [key, value] : outcome.report.summary)
            std::printf("%s: %s\n", key.c_str(), value.c_str());
        const double total =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s: %s (%.1f s)\n", cfg.experiment.c_str(),
                    outcome.pass ? "PASS" : "FAIL", total);
        return outcome.pass ? 0 : 1;
    } catch (const oscillab::ConfigError& e) {
        for (const auto& issue : e.issues()) std::fprintf(stderr, "config error: %s\n", issue.c_str());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
