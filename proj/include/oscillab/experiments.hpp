#pragma once

#include "oscillab/config.hpp"
#include "oscillab/report.hpp"

#include <functional>
#include <string>
#include <vector>

namespace oscillab {

struct ExperimentOutcome {
    ExperimentReport report;
    bool pass = false;
};

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Run the experiment named in the config at the config's budgets; the
/// report comes back fully populated (columns, rows, summary, deviation
/// labels). Throws ConfigError on an invalid config. on_criterion fires per
/// acceptance criterion when the experiment is acceptance-all, otherwise
/// never.
ExperimentOutcome run_experiment(
    const ExperimentConfig& cfg,
    const std::function<void(const CriterionResult&)>& on_criterion = {});

/// The ten acceptance checks at their pinned budgets. Only the seed and
/// thread count are taken from the config: the budgets are part of the
/// contract, so `quick` is deliberately ignored here. on_result fires as
/// each criterion finishes, in order.
std::vector<CriterionResult> run_acceptance(
    const ExperimentConfig& cfg,
    const std::function<void(const CriterionResult&)>& on_result = {});

} // namespace oscillab
