#include "oscillab/smooth_bump.hpp"

#include <cmath>
#include <stdexcept>

namespace oscillab {
namespace {

// h(t) = exp(-1/t) for t > 0, extended by 0: all derivatives vanish at 0.
double h(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// canonical transition: 0 at t <= 0, 1 at t >= 1, C-infinity throughout
double ramp01(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = h(t);
    return a / (a + h(1.0 - t));
}

} // namespace

SmoothBump::SmoothBump(double lo, double li, double ri, double ro)
    : lo_(lo), li_(li), ri_(ri), ro_(ro) {
    if (!(lo < li && li <= ri && ri < ro))
        throw std::domain_error("SmoothBump: need lo < li <= ri < ro");
}

double SmoothBump::operator()(double x) const {
    if (x <= lo_ || x >= ro_) return 0.0;
    if (x < li_) return ramp01((x - lo_) / (li_ - lo_));
    if (x <= ri_) return 1.0;
    return ramp01((ro_ - x) / (ro_ - ri_));
}

SmoothBump make_bump(double inner, double outer, double center) {
    if (!(0.0 < inner && inner < outer))
        throw std::domain_error("make_bump: need 0 < inner < outer");
    return SmoothBump(center - outer, center - inner, center + inner, center + outer);
}

const SmoothBump& projection_bump() {
    static const SmoothBump b = make_bump(0.25, 0.5, 0.0);
    return b;
}

const SmoothBump& wide_bump() {
    static const SmoothBump b = make_bump(0.75, 1.0, 0.0);
    return b;
}

const SmoothBump& arc_bump() {
    static const SmoothBump b = make_bump(0.25, 0.5, 0.0);
    return b;
}

const SmoothBump& tail_bump() {
    static const SmoothBump b(0.25, 0.5, 1.0, 2.0);
    return b;
}

double smooth_step_up(double x, double edge, double width) {
    if (!(width > 0.0)) throw std::domain_error("smooth_step_up: width must be positive");
    return ramp01((x - edge + width) / (2.0 * width));
}

double tail_profile(double s, int d) {
    if (d < 1) throw std::domain_error("tail_profile: need d >= 1");
    if (s <= 0.0) return 0.0;
    if (d == 1) return tail_bump()(s);
    const double root = std::pow(s, 1.0 / static_cast<double>(d));
    const double v = tail_bump()(root);
    if (v == 0.0) return 0.0;
    return v / (static_cast<double>(d) * std::pow(s, 1.0 - 1.0 / static_cast<double>(d)));
}

} // namespace oscillab
