#pragma once

#include "oscillab/frequency_set.hpp"
#include "oscillab/periodic_signal.hpp"

#include <cstdint>
#include <vector>

namespace oscillab {

/// Dyadic scale window [k_min, k_max]; the finest neighborhood half-width
/// 2^{-k_max} must span at least two frequency bins of the grid.
struct ScaleRange {
    int k_min = 0;
    int k_max = 0;

    void validate(const GridGeometry& g) const;
    int count() const { return k_max - k_min + 1; }
};

/// Byte mask over FFTW-ordered bins: 1 iff min_theta |xi_m - theta| < 2^{-k}
/// (strictly; the neighborhoods are open). The comparison is exact in IEEE
/// arithmetic because xi_m, theta*L and 2^{-k}*L carry no rounding.
std::vector<std::uint8_t> rough_mask(const FrequencySet& set, int k, const GridGeometry& g);

/// Keep bins where mask is set, zero the rest; values are copied untouched,
/// so nesting/idempotence of masks is bit-exact.
Spectrum apply_mask(const Spectrum& s, const std::vector<std::uint8_t>& mask);

PeriodicSignal rough_projection(const PeriodicSignal& f, const FrequencySet& set, int k);

/// Multiplier sum_theta bump(dilation * (xi_m - theta)) with the canonical
/// projection bump (1 on [-1/4,1/4], support (-1/2,1/2)).
std::vector<double> smooth_multiplier(const FrequencySet& set, double dilation,
                                      const GridGeometry& g);
PeriodicSignal smooth_projection(const PeriodicSignal& f, const FrequencySet& set, int k);
PeriodicSignal smooth_projection_r(const PeriodicSignal& f, const FrequencySet& set, double r);

/// Pointwise sup over k in range of |rough projection|.
std::vector<double> maximal_function(const PeriodicSignal& f, const FrequencySet& set,
                                     const ScaleRange& range);

struct ScaleStat {
    enum class Kind { jump, variation };
    Kind kind = Kind::jump;
    double param = 1.0; // lambda for jump, r for variation

    static ScaleStat jump(double lambda) { return {Kind::jump, lambda}; }
    static ScaleStat variation(double r) { return {Kind::variation, r}; }
};

/// Per grid point: feed the scale sequence {rough projection at k}(x_j) to
/// the chosen statistic (lambda sqrt(N_lambda) or V^r).
std::vector<double> scale_oscillation(const PeriodicSignal& f, const FrequencySet& set,
                                      const ScaleRange& range, const ScaleStat& stat);

/// Scales where some pair of frequencies sits within a factor rho of the
/// neighborhood width (the merging scales), plus the complementary maximal
/// k-blocks on which the neighborhood union has a constant component count.
struct ExceptionalScales {
    std::vector<int> scales;
    struct Block {
        int k_lo = 0;
        int k_hi = 0;
        int components = 1;
    };
    std::vector<Block> blocks;
};

ExceptionalScales exceptional_scales(const FrequencySet& set, const ScaleRange& range, double rho);

} // namespace oscillab
