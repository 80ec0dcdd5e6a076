#include "oscillab/frequency_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oscillab {

FrequencySet::FrequencySet(std::vector<double> t, const GridGeometry& g) : thetas(std::move(t)) {
    if (thetas.empty()) throw std::domain_error("frequency set must be nonempty");
    std::sort(thetas.begin(), thetas.end());
    const double band = g.nyquist() - 2.0;
    for (double th : thetas)
        if (std::abs(th) > band)
            throw std::domain_error("frequency outside the representable band");
    for (std::size_t i = 1; i < thetas.size(); ++i) {
        const double gap = thetas[i] - thetas[i - 1];
        if (!(gap > 1.0) || !(gap <= 2.0))
            throw std::domain_error("pairwise gaps must lie in (1, 2]");
    }
}

double FrequencySet::min_gap() const {
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < thetas.size(); ++i) g = std::min(g, thetas[i] - thetas[i - 1]);
    return g;
}

FrequencySet random_frequency_set(Rng& rng, std::size_t n, const GridGeometry& g) {
    if (n == 0) throw std::domain_error("frequency set must be nonempty");
    // gaps on the bin lattice: bin counts in (L, 2L] give spacings in (1, 2]
    const auto L = static_cast<long>(std::size_t{1} << g.log2_domain);
    std::vector<long> bins(n, 0);
    for (std::size_t i = 1; i < n; ++i)
        bins[i] = bins[i - 1] + L + 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(L)));
    const long mid = bins.back() / 2;
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i)
        t[i] = static_cast<double>(bins[i] - mid) / static_cast<double>(L);
    return FrequencySet(std::move(t), g);
}

int component_count(const FrequencySet& set, double halfwidth) {
    if (!(halfwidth > 0.0)) throw std::domain_error("component_count: halfwidth must be positive");
    int n = 1;
    for (std::size_t i = 1; i < set.thetas.size(); ++i)
        if (set.thetas[i] - set.thetas[i - 1] >= 2.0 * halfwidth) ++n;
    return n;
}

} // namespace oscillab
