#pragma once

#include "oscillab/dyadic_martingale.hpp"
#include "oscillab/frequency_set.hpp"
#include "oscillab/periodic_signal.hpp"
#include "oscillab/rng.hpp"
#include "oscillab/spectral_projections.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace oscillab {

/// A nonlinear statistic viewed as an operator: f maps to the pointwise
/// statistic of its projection family (spectral kinds) or its conditional
/// expectation ladder (martingale kinds).
struct OperatorSpec {
    enum class Kind {
        maximal,
        jump,
        variation,
        smooth_maximal,
        martingale_jump,
        martingale_variation,
    };

    Kind kind = Kind::maximal;
    double param = 0.0;      // lambda for jump kinds, r for variation kinds
    ScaleRange scales{1, 0}; // spectral kinds; inverted range = derive per set
    GridGeometry grid{6, 15}; // spectral kinds
    int depth = 10;           // martingale kinds

    bool spectral() const;
    bool auto_scales() const { return scales.k_min > scales.k_max; }
    void validate() const;
};

/// Default scale window for a frequency set: coarse end one octave beyond the
/// set's span (where the neighborhood union swallows its whole active band),
/// fine end at the two-bin resolution floor.
ScaleRange derive_scales(const FrequencySet& set, const GridGeometry& g);

/// Best ratio seen; a certified lower bound on the operator norm, never an
/// upper bound.
struct EmpiricalNormEstimate {
    double ratio = 0.0;
    std::string witness;  // family and trial index of the maximizer
    std::string strategy; // search families used
    std::uint64_t seed = 0;
    long trials = 0;
};

/// Adversarial search over three input families: (i) iid complex Gaussian
/// coefficients on the set's span window (half-span margin each side) —
/// energy far from the set is invisible to every projection and only dilutes
/// ||f||, so concentrating the ensemble is optimal for a norm search; (ii)
/// frequency combs (spectral kinds: small random-phase bumps in the DFT bins
/// at each frequency of the set; martingale kinds: iid-increment dyadic
/// layers), and (iii) coordinate ascent from the best candidate, one DFT bin
/// (or sample) at a time with a fixed step cap. Candidates are L2-normalized
/// before evaluation since the jump statistics are not homogeneous.
/// Deterministic for fixed (spec, set, trials, seed): trials are keyed by
/// index and the reduction is ordered.
EmpiricalNormEstimate estimate_ratio(const OperatorSpec& spec, const FrequencySet& lambda_set,
                                     long trials, std::uint64_t seed);

struct GrowthRow {
    std::size_t n = 0; // frequency count
    double ratio = 0.0;
    std::uint64_t seed = 0;
    long trials = 0;
};

/// Least-squares fits of ratio against c0 + c1 ln N and c0 + c2 ln^2 N; both
/// are always reported, never auto-selected.
struct GrowthFit {
    double c0_log = 0.0;
    double c1_log = 0.0;
    double rms_log = 0.0;
    double c0_log2 = 0.0;
    double c2_log2 = 0.0;
    double rms_log2 = 0.0;
};

struct GrowthScan {
    std::vector<GrowthRow> rows;
    GrowthFit fit;
};

/// The frequency set growth_scan and mean_growth_curves draw for
/// (seed, n, set_index); exposed so reports can label their rows with the
/// scale windows of the sets actually sampled.
FrequencySet scan_frequency_set(std::uint64_t seed, std::size_t n, int set_index,
                                const GridGeometry& g);

/// estimate_ratio at each N in n_list over sets_per_n freshly sampled
/// frequency sets (gaps uniform in (1, 2]), trials split evenly per set; the
/// row keeps the best ratio over the sets.
GrowthScan growth_scan(const OperatorSpec& spec, const std::vector<std::size_t>& n_list,
                       long trials_per_n, int sets_per_n, std::uint64_t seed);

/// Ensemble-mean companion to growth_scan: the same frequency sets and
/// Gaussian inputs, but each row is the mean ratio over all trials instead of
/// the best one — the low-noise reading for trend checks. All specs share the
/// per-trial inputs, so curves for several kinds are directly comparable;
/// every spec must be spectral on the same grid.
std::vector<GrowthScan> mean_growth_curves(const std::vector<OperatorSpec>& specs,
                                           const std::vector<std::size_t>& n_list,
                                           long trials_per_n, int sets_per_n, std::uint64_t seed);

GrowthFit fit_growth(const std::vector<GrowthRow>& rows);

/// sup_t t * mu{|F| > t}^{1/2} over a dyadic threshold grid, mu = normalized
/// counting measure on the sample points.
double weak_l2_size(const std::vector<double>& values);

struct InterpolationCheck {
    double envelope = 0.0; // a (r/(r-2))^{1/2+1/p} + b
    double margin = 0.0;   // c * envelope - measured
    bool pass = false;
};

/// measured <= c * (a (r/(r-2))^{1/2+1/p} + b)? Requires r > 2.
InterpolationCheck interpolation_check(double a, double b, double p, double r, double measured,
                                       double c = 1.0);

/// Smallest constant making interpolation_check pass at every supplied r.
double fit_interpolation_constant(double a, double b, double p,
                                  const std::vector<double>& r_values,
                                  const std::vector<double>& measured);

} // namespace oscillab
