#pragma once

#include "oscillab/oscillation.hpp"

#include <vector>

namespace oscillab {

/// f sampled on 2^b uniform points of [0,1); depth b >= 1.
struct DyadicFunction {
    std::vector<cplx> samples;

    DyadicFunction() = default;
    explicit DyadicFunction(std::vector<cplx> s);

    int depth() const { return depth_; }
    std::size_t size() const { return samples.size(); }

  private:
    int depth_ = 0;
};

/// Averages over dyadic blocks of 2^k consecutive samples (k = 0 identity,
/// k = b global mean). Throws std::domain_error for k outside [0, b].
DyadicFunction conditional_expectation(const DyadicFunction& f, int k);

/// Grid norm with uniform measure: p = 1, 2 or variation_infinity.
double grid_norm(const DyadicFunction& f, double p);
inline double grid_l2(const DyadicFunction& f) { return grid_norm(f, 2.0); }

/// || lambda sqrt(N_lambda(E_k f : k)) ||_2 / ||f||_2 over the full martingale
/// ladder k = 0..b at every grid point. Zero f is a domain error.
double lepingle_jump_ratio(const DyadicFunction& f, double lambda);

/// Same shape with V^r of the ladder; requires r > 2.
double lepingle_variation_ratio(const DyadicFunction& f, double r);

/// All ladder levels at every point, row j = (E_0 f .. E_b f)(x_j); the two
/// ratio functions are thin wrappers over this.
std::vector<std::vector<cplx>> martingale_ladder(const DyadicFunction& f);

} // namespace oscillab
