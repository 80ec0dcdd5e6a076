#include "oscillab/dyadic_martingale.hpp"

#include <cmath>
#include <stdexcept>

namespace oscillab {

DyadicFunction::DyadicFunction(std::vector<cplx> s) : samples(std::move(s)) {
    const std::size_t n = samples.size();
    if (n < 2 || (n & (n - 1)) != 0)
        throw std::domain_error("DyadicFunction: sample count must be 2^b, b >= 1");
    depth_ = 0;
    while ((std::size_t{1} << depth_) < n) ++depth_;
}

DyadicFunction conditional_expectation(const DyadicFunction& f, int k) {
    if (k < 0 || k > f.depth())
        throw std::domain_error("conditional_expectation: level outside [0, b]");
    if (k == 0) return f;
    const std::size_t block = std::size_t{1} << k;
    std::vector<cplx> out(f.size());
    for (std::size_t lo = 0; lo < f.size(); lo += block) {
        cplx mean{0.0, 0.0};
        for (std::size_t j = 0; j < block; ++j) mean += f.samples[lo + j];
        mean /= static_cast<double>(block);
        for (std::size_t j = 0; j < block; ++j) out[lo + j] = mean;
    }
    return DyadicFunction(std::move(out));
}

double grid_norm(const DyadicFunction& f, double p) {
    const double inv = 1.0 / static_cast<double>(f.size());
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& z : f.samples) m = std::max(m, std::abs(z));
        return m;
    }
    if (p == 1.0) {
        double s = 0.0;
        for (const auto& z : f.samples) s += std::abs(z);
        return s * inv;
    }
    if (p == 2.0) {
        double s = 0.0;
        for (const auto& z : f.samples) s += std::norm(z);
        return std::sqrt(s * inv);
    }
    throw std::domain_error("grid_norm: p must be 1, 2 or infinity");
}

std::vector<std::vector<cplx>> martingale_ladder(const DyadicFunction& f) {
    const int b = f.depth();
    const std::size_t n = f.size();
    // level[k] holds one value per block of size 2^k
    std::vector<std::vector<cplx>> level(b + 1);
    level[0] = f.samples;
    for (int k = 1; k <= b; ++k) {
        const auto& prev = level[k - 1];
        level[k].resize(prev.size() / 2);
        for (std::size_t s = 0; s < level[k].size(); ++s)
            level[k][s] = 0.5 * (prev[2 * s] + prev[2 * s + 1]);
    }
    std::vector<std::vector<cplx>> rows(n, std::vector<cplx>(b + 1));
    for (std::size_t j = 0; j < n; ++j)
        for (int k = 0; k <= b; ++k) rows[j][k] = level[k][j >> k];
    return rows;
}

namespace {

template <class PointStat>
double ladder_ratio(const DyadicFunction& f, PointStat&& stat) {
    const double denom = grid_l2(f);
    if (denom == 0.0) throw std::domain_error("ladder ratio undefined for the zero function");
    const auto rows = martingale_ladder(f);
    double acc = 0.0;
    for (const auto& row : rows) {
        const double v = stat(std::span<const cplx>(row));
        acc += v * v;
    }
    return std::sqrt(acc / static_cast<double>(rows.size())) / denom;
}

} // namespace

double lepingle_jump_ratio(const DyadicFunction& f, double lambda) {
    if (!(lambda > 0.0)) throw std::domain_error("lepingle_jump_ratio: lambda must be positive");
    return ladder_ratio(f, [lambda](std::span<const cplx> row) {
        return lambda * std::sqrt(static_cast<double>(jump_count(row, lambda)));
    });
}

double lepingle_variation_ratio(const DyadicFunction& f, double r) {
    if (!(r > 2.0)) throw std::domain_error("lepingle_variation_ratio: need r > 2");
    return ladder_ratio(f, [r](std::span<const cplx> row) { return r_variation(row, r); });
}

} // namespace oscillab
