#pragma once

#include <cstddef>
#include <map>
#include <vector>

namespace oscillab {

/// Dyadic interval [lo, lo + 2^{-scale}) of the unit-interval Whitney family.
struct WhitneyInterval {
    double lo = 0.0;
    int scale = 0; // |J| = 2^{-scale}

    double size() const;
    double hi() const { return lo + size(); }
    double center() const { return lo + 0.5 * size(); }
};

/// Whitney cover of (0,1): dyadic J selected when dist(J, {0,1}) >= 100|J|
/// while the parent violates that, truncated at |J| = 2^{-(grid_depth+7)}.
/// Selected intervals tile [covered_lo, covered_hi] contiguously; bumps are
/// telescoped differences of smooth descents placed at the shared endpoints,
/// so their sum is exactly 1 away from the two outer ramps.
class WhitneyDecomposition {
  public:
    explicit WhitneyDecomposition(int grid_depth); // >= 8

    int grid_depth() const { return grid_depth_; }
    const std::vector<WhitneyInterval>& intervals() const { return intervals_; }

    double bump(std::size_t i, double x) const;
    double partition_sum(double x) const; // cheap: only the two straddling bumps
    long find(double x) const;            // index of the J containing x, -1 if none

    double covered_lo() const { return boundaries_.front(); }
    double covered_hi() const { return boundaries_.back(); }
    /// measure of [0,1) not covered by any J
    double residual_mass() const { return 1.0 - (covered_hi() - covered_lo()); }
    /// sum-to-one holds for x in [interior_lo, interior_hi]
    double interior_lo() const { return boundaries_.front() + widths_.front(); }
    double interior_hi() const { return boundaries_.back() - widths_.back(); }

    /// #{J : x inside the concentric dilate factor*J}
    int overlap_count(double x, double factor = 20.0) const;
    std::map<int, std::size_t> per_scale_count() const;

  private:
    int grid_depth_;
    std::vector<WhitneyInterval> intervals_;
    std::vector<double> boundaries_; // size K+1, boundaries_[i] = left edge of J_i
    std::vector<double> widths_;     // size K+1, ramp half-width at boundary i
};

/// max over sampled J of |J|^alpha * sup |d^alpha bump_J| via central finite
/// differences at spacing |J|/2^10; alpha in [0, 3].
double derivative_bound_check(const WhitneyDecomposition& decomp, int alpha);

} // namespace oscillab
