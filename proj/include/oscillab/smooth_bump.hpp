#pragma once

#include <functional>

namespace oscillab {

/// C-infinity compactly supported plateau function built from exp(-1/x)
/// ramps: 0 left of `lo`, rises on [lo, li], 1 on [li, ri], falls on
/// [ri, ro], 0 right of `ro`. Asymmetric flanks are allowed.
class SmoothBump {
  public:
    SmoothBump(double lo, double li, double ri, double ro);

    double operator()(double x) const;
    double support_lo() const { return lo_; }
    double support_hi() const { return ro_; }
    double plateau_lo() const { return li_; }
    double plateau_hi() const { return ri_; }

  private:
    double lo_, li_, ri_, ro_;
};

/// Symmetric bump: 1 on [center-inner, center+inner], 0 outside
/// (center-outer, center+outer). Requires 0 < inner < outer.
SmoothBump make_bump(double inner, double outer, double center);

/// The canonical cutoffs used throughout:
///   projection_bump: 1 on [-1/4, 1/4], supported in (-1/2, 1/2)
///   wide_bump:       1 on [-3/4, 3/4], supported in (-1, 1)
///   arc_bump:        same sandwich as projection_bump (major-arc chi)
///   tail_bump:       1 on [1/2, 1], supported in (1/4, 2) -- the one-sided
///                    profile whose d-th-root substitution stays smooth at 0
const SmoothBump& projection_bump();
const SmoothBump& wide_bump();
const SmoothBump& arc_bump();
const SmoothBump& tail_bump();

/// Smooth monotone step: 0 for x <= edge - width, 1 for x >= edge + width.
double smooth_step_up(double x, double edge, double width);

/// tail_bump(s^{1/d}) / (d s^{1-1/d}) for s > 0, 0 for s <= 0; vanishes for
/// s < (1/4)^d because the profile's support starts at 1/4, so the whole
/// function is Schwartz-smooth at the origin.
double tail_profile(double s, int d);

} // namespace oscillab
