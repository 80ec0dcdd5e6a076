#include "oscillab/whitney.hpp"

#include "oscillab/smooth_bump.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oscillab {

double WhitneyInterval::size() const { return std::ldexp(1.0, -scale); }

namespace {

// distance of the dyadic interval [c 2^{-n}, (c+1) 2^{-n}) to {0,1},
// in units of 2^{-n}: exact integer arithmetic
long dist_units(long c, int n) { return std::min(c, (long{1} << n) - c - 1); }

bool passes(long c, int n) { return dist_units(c, n) >= 100; }

bool selected(long c, int n) {
    if (!passes(c, n)) return false;
    if (n == 0) return true; // no parent to defer to (cannot happen: 100 J never fits)
    return !passes(c >> 1, n - 1);
}

// descending smooth edge: 1 for x <= edge - width, 0 for x >= edge + width
double descent(double x, double edge, double width) {
    return 1.0 - smooth_step_up(x, edge, width);
}

} // namespace

WhitneyDecomposition::WhitneyDecomposition(int grid_depth) : grid_depth_(grid_depth) {
    if (grid_depth < 8) throw std::domain_error("whitney: grid depth must be at least 8");
    const int n_max = grid_depth + 7;
    for (int n = 8; n <= n_max; ++n) {
        // candidates sit within dist/|J| in [100, 202); probe both flanks
        const long top = (long{1} << n) - 1;
        for (long c = 100; c <= std::min<long>(202, top); ++c)
            if (selected(c, n)) intervals_.push_back({std::ldexp(static_cast<double>(c), -n), n});
        for (long c = std::max<long>(top - 202, 203); c <= top - 100; ++c)
            if (selected(c, n)) intervals_.push_back({std::ldexp(static_cast<double>(c), -n), n});
    }
    std::sort(intervals_.begin(), intervals_.end(),
              [](const WhitneyInterval& a, const WhitneyInterval& b) { return a.lo < b.lo; });
    if (intervals_.empty()) throw std::runtime_error("whitney: empty family");

    boundaries_.reserve(intervals_.size() + 1);
    boundaries_.push_back(intervals_.front().lo);
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        if (i > 0 && intervals_[i].lo != intervals_[i - 1].hi())
            throw std::runtime_error("whitney: selected intervals do not tile");
        boundaries_.push_back(intervals_[i].hi());
    }

    widths_.resize(boundaries_.size());
    widths_.front() = intervals_.front().size() / 4.0;
    widths_.back() = intervals_.back().size() / 4.0;
    for (std::size_t i = 1; i + 1 < boundaries_.size(); ++i)
        widths_[i] = std::min(intervals_[i - 1].size(), intervals_[i].size()) / 4.0;
}

double WhitneyDecomposition::bump(std::size_t i, double x) const {
    if (i >= intervals_.size()) throw std::domain_error("whitney: bump index out of range");
    // difference of the two descents bracketing J_i; transitions are disjoint
    return descent(x, boundaries_[i + 1], widths_[i + 1]) - descent(x, boundaries_[i], widths_[i]);
}

long WhitneyDecomposition::find(double x) const {
    if (x < covered_lo() || x >= covered_hi()) return -1;
    const auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), x);
    return static_cast<long>(it - boundaries_.begin()) - 1;
}

double WhitneyDecomposition::partition_sum(double x) const {
    // telescoping: sum = descent(last) - descent(first); every interior term
    // cancels identically, so evaluate just the outer ramps
    return descent(x, boundaries_.back(), widths_.back()) -
           descent(x, boundaries_.front(), widths_.front());
}

int WhitneyDecomposition::overlap_count(double x, double factor) const {
    int n = 0;
    for (const auto& j : intervals_)
        if (std::abs(x - j.center()) < 0.5 * factor * j.size()) ++n;
    return n;
}

std::map<int, std::size_t> WhitneyDecomposition::per_scale_count() const {
    std::map<int, std::size_t> out;
    for (const auto& j : intervals_) ++out[j.scale];
    return out;
}

double derivative_bound_check(const WhitneyDecomposition& decomp, int alpha) {
    if (alpha < 0 || alpha > 3)
        throw std::domain_error("derivative check supports orders 0..3 only");
    const auto& js = decomp.intervals();
    // sample a bounded subset of intervals, every scale represented
    std::vector<std::size_t> picks;
    for (std::size_t i = 0; i < js.size(); ++i)
        if (i < 8 || i + 8 >= js.size() || js[i].scale != js[i - 1].scale || i % 37 == 0)
            picks.push_back(i);

    double worst = 0.0;
    for (std::size_t i : picks) {
        const double size = js[i].size();
        const double h = size / 1024.0;
        const double lo = js[i].lo - 0.5 * size;
        const double hi = js[i].hi() + 0.5 * size;
        auto f = [&](double x) { return decomp.bump(i, x); };
        const int steps = 400;
        for (int s = 0; s <= steps; ++s) {
            const double x = lo + (hi - lo) * static_cast<double>(s) / steps;
            double d = 0.0;
            switch (alpha) {
                case 0: d = f(x); break;
                case 1: d = (f(x + h) - f(x - h)) / (2.0 * h); break;
                case 2: d = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h); break;
                default:
                    d = (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) /
                        (2.0 * h * h * h);
            }
            worst = std::max(worst, std::pow(size, alpha) * std::abs(d));
        }
    }
    return worst;
}

} // namespace oscillab
