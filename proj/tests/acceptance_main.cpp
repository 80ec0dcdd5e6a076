// Acceptance gate: the ten criteria at their pinned budgets, one line each.
// Exit 0 only if every criterion holds.

#include "oscillab/config.hpp"
#include "oscillab/experiments.hpp"

#include <chrono>
#include <cstdio>

int main() {
    oscillab::ExperimentConfig cfg; // defaults: seed 20260825, all cores
    cfg.experiment = "acceptance-all";

    auto last = std::chrono::steady_clock::now();
    const auto start = last;
    int failed = 0;
    const auto results = oscillab::run_acceptance(cfg, [&](const oscillab::CriterionResult& r) {
        const auto now = std::chrono::steady_clock::now();
        const double secs = std::chrono::duration<double>(now - last).count();
        last = now;
        std::printf("criterion %2d %-52s %s  (%.1f s)  %s\n", r.index, (r.name + ":").c_str(),
                    r.pass ? "PASS" : "FAIL", secs, r.detail.c_str());
        std::fflush(stdout);
    });
    for (const auto& r : results)
        if (!r.pass) ++failed;

    const double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d/10 criteria passed (%.1f s total)\n", 10 - failed, total);
    return failed == 0 ? 0 : 1;
}
