#pragma once

#include "oscillab/periodic_signal.hpp"
#include "oscillab/rng.hpp"

#include <vector>

namespace oscillab {

/// Finite set of modulation frequencies, sorted ascending. Normalization:
/// pairwise gaps in (1, 2] (fixes the unit) and everything at least two bins
/// inside the Nyquist band of the grid it will be used on.
struct FrequencySet {
    std::vector<double> thetas;

    FrequencySet(std::vector<double> t, const GridGeometry& g);

    std::size_t size() const { return thetas.size(); }
    double min_gap() const; // +inf for singletons
};

/// N frequencies with iid gaps uniform in (1, 2], centered around 0, all
/// multiples of the grid's bin spacing so modulation shifts them exactly.
FrequencySet random_frequency_set(Rng& rng, std::size_t n, const GridGeometry& g);

/// Number of connected components of the union of open neighborhoods
/// theta + (-halfwidth, +halfwidth); adjacent intervals merge exactly when
/// the gap is < 2 * halfwidth.
int component_count(const FrequencySet& set, double halfwidth);

} // namespace oscillab
