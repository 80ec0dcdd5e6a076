#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace oscillab {

/// Every issue found while parsing or validating a config, each prefixed
/// with its key path; nothing is reported piecemeal.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(std::vector<std::string> issues);
    const std::vector<std::string>& issues() const { return issues_; }

  private:
    std::vector<std::string> issues_;
};

/// Experiment selection plus every module parameter the runners consume.
/// Defaults match the acceptance protocols, so a bare experiment name runs
/// the canonical budget.
struct ExperimentConfig {
    std::string experiment = "acceptance-all";
    std::uint64_t seed = 20260825;
    std::string out_dir = "out";
    int threads = 0; // 0 = hardware concurrency
    bool quick = false;

    // [grid] spectral grid: domain length 2^log2_domain, 2^log2_samples bins
    int log2_domain = 6;
    int log2_samples = 15;

    // [growth] operator-norm scan
    long trials = 320;
    int sets = 4;
    std::vector<std::size_t> n_list = {2, 4, 8, 16, 32, 64, 128};
    double lambda = 0.25; // jump altitude, calibrated to unit-energy inputs

    // [martingale]
    int depth = 12;

    // [projections]
    double rho = 2.0; // exceptional-scale closeness factor

    // [multiplier]
    double delta0 = 1.0 / 3.0; // major-arc cutoff exponent N^{delta0}
    int mult_grid = 4096;      // beta grid size for the error scan

    // [ergodic]
    int lacunary_r = 1;   // times floor(2^{k/R})
    long n_max = 65536;   // horizon
    int grid_points = 100;
    std::string poly = "sqrt2*n^2"; // monomial descriptor: <coeff>*n^<d>

    // [whitney]
    int grid_depth = 10;

    /// Returns the full issue list instead of throwing (empty = valid).
    std::vector<std::string> validate() const;

    /// validate() and throw ConfigError when anything is wrong.
    void check() const;
};

/// The INI dialect used everywhere: `key = value` lines, `[section]`
/// headers, `#`/`;` comments. Unknown keys and malformed values are
/// collected and thrown together as ConfigError.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config(const std::string& path);

/// Canonical key=value rendering of the final (post-override) values in a
/// fixed order; this is the text whose FNV-1a hash the reports carry.
std::string canonical_text(const ExperimentConfig& cfg);

const std::vector<std::string>& experiment_names();

} // namespace oscillab
