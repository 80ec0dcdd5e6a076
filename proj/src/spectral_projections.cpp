#include "oscillab/spectral_projections.hpp"

#include "oscillab/smooth_bump.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oscillab {

void ScaleRange::validate(const GridGeometry& g) const {
    if (k_min > k_max) throw std::domain_error("scale range: k_min must not exceed k_max");
    if (std::ldexp(1.0, -k_max) < 2.0 * g.bin_spacing())
        throw std::domain_error("scale range: finest neighborhood narrower than two bins");
}

namespace {

void check_resolvable(double halfwidth, const GridGeometry& g) {
    if (halfwidth < 2.0 * g.bin_spacing())
        throw std::domain_error("projection scale narrower than two frequency bins");
}

// Fill mask slots for signed bin indices in [m_lo, m_hi] (clipped).
void mark(std::vector<std::uint8_t>& mask, long m_lo, long m_hi) {
    const long M = static_cast<long>(mask.size());
    m_lo = std::max(m_lo, -M / 2);
    m_hi = std::min(m_hi, M / 2 - 1);
    if (m_lo > m_hi) return;
    auto slot = [M](long m) { return m >= 0 ? m : m + M; };
    if (m_lo >= 0 || m_hi < 0) {
        std::fill(mask.begin() + slot(m_lo), mask.begin() + slot(m_hi) + 1, std::uint8_t{1});
    } else {
        std::fill(mask.begin() + slot(m_lo), mask.end(), std::uint8_t{1});
        std::fill(mask.begin(), mask.begin() + m_hi + 1, std::uint8_t{1});
    }
}

} // namespace

std::vector<std::uint8_t> rough_mask(const FrequencySet& set, int k, const GridGeometry& g) {
    const double w = std::ldexp(1.0, -k);
    check_resolvable(w, g);
    const double L = g.domain();
    const std::size_t M = g.samples();
    std::vector<std::uint8_t> mask(M, 0);
    // |m/L - theta| < w  <=>  |m - theta L| < w L, both sides exact doubles:
    // scaling by the power-of-two L rounds nothing and m - theta*L fits in
    // 53 bits for this grid. Locate the integer endpoints by local probing.
    const double W = w * L;
    const double half = static_cast<double>(M / 2);
    for (double theta : set.thetas) {
        const double c = theta * L;
        auto member = [&](long m) { return std::abs(static_cast<double>(m) - c) < W; };
        // the member set {m : |m - c| < W} is one integer interval whose
        // edges sit within a bin or two of c -+ W; probe from just outside
        const long a = static_cast<long>(std::floor(std::max(c - W, -half - 4.0))) - 2;
        const long b = static_cast<long>(std::ceil(std::min(c + W, half + 4.0))) + 2;
        long lo = a;
        while (lo <= b && !member(lo)) ++lo;
        if (lo > b) continue;
        long hi = b;
        while (!member(hi)) --hi;
        mark(mask, lo, hi);
    }
    return mask;
}

Spectrum apply_mask(const Spectrum& s, const std::vector<std::uint8_t>& mask) {
    if (mask.size() != s.bins.size()) throw std::domain_error("mask/spectrum size mismatch");
    Spectrum out = s;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (!mask[i]) out.bins[i] = cplx{0.0, 0.0};
    return out;
}

PeriodicSignal rough_projection(const PeriodicSignal& f, const FrequencySet& set, int k) {
    return synthesize(apply_mask(analyze(f), rough_mask(set, k, f.grid)));
}

std::vector<double> smooth_multiplier(const FrequencySet& set, double dilation,
                                      const GridGeometry& g) {
    if (!(dilation > 0.0)) throw std::domain_error("smooth multiplier: dilation must be positive");
    // support half-width of the canonical bump is 1/(2 dilation)
    check_resolvable(0.5 / dilation, g);
    const auto& phi = projection_bump();
    const double L = g.domain();
    const std::size_t M = g.samples();
    std::vector<double> w(M, 0.0);
    for (double theta : set.thetas) {
        const double c = theta * L;
        const double halfspan = 0.5 * L / dilation;
        const long lo = std::max(static_cast<long>(std::floor(c - halfspan)) - 1,
                                 -static_cast<long>(M) / 2);
        const long hi = std::min(static_cast<long>(std::ceil(c + halfspan)) + 1,
                                 static_cast<long>(M) / 2 - 1);
        for (long m = lo; m <= hi; ++m) {
            const std::size_t slot = static_cast<std::size_t>(m >= 0 ? m : m + static_cast<long>(M));
            w[slot] += phi(dilation * (static_cast<double>(m) / L - theta));
        }
    }
    return w;
}

namespace {

PeriodicSignal weighted_projection(const PeriodicSignal& f, const std::vector<double>& w) {
    Spectrum s = analyze(f);
    for (std::size_t i = 0; i < s.bins.size(); ++i) s.bins[i] *= w[i];
    return synthesize(s);
}

} // namespace

PeriodicSignal smooth_projection(const PeriodicSignal& f, const FrequencySet& set, int k) {
    if (k < 1) throw std::domain_error("smooth projection: dyadic scale must have k >= 1");
    return weighted_projection(f, smooth_multiplier(set, std::ldexp(1.0, k), f.grid));
}

PeriodicSignal smooth_projection_r(const PeriodicSignal& f, const FrequencySet& set, double r) {
    if (!(r >= 2.0)) throw std::domain_error("smooth projection: continuous dilation needs r >= 2");
    return weighted_projection(f, smooth_multiplier(set, r, f.grid));
}

std::vector<double> maximal_function(const PeriodicSignal& f, const FrequencySet& set,
                                     const ScaleRange& range) {
    range.validate(f.grid);
    const Spectrum s = analyze(f);
    std::vector<double> out(f.size(), 0.0);
    for (int k = range.k_min; k <= range.k_max; ++k) {
        const auto proj = synthesize(apply_mask(s, rough_mask(set, k, f.grid)));
        for (std::size_t j = 0; j < out.size(); ++j)
            out[j] = std::max(out[j], std::abs(proj.samples[j]));
    }
    return out;
}

std::vector<double> scale_oscillation(const PeriodicSignal& f, const FrequencySet& set,
                                      const ScaleRange& range, const ScaleStat& stat) {
    range.validate(f.grid);
    const Spectrum s = analyze(f);
    const int K = range.count();
    std::vector<std::vector<cplx>> rows(K);
    for (int k = range.k_min; k <= range.k_max; ++k)
        rows[k - range.k_min] = synthesize(apply_mask(s, rough_mask(set, k, f.grid))).samples;

    std::vector<double> out(f.size(), 0.0);
    std::vector<cplx> seq(K);
    for (std::size_t j = 0; j < out.size(); ++j) {
        for (int i = 0; i < K; ++i) seq[i] = rows[i][j];
        if (stat.kind == ScaleStat::Kind::jump) {
            out[j] = stat.param *
                     std::sqrt(static_cast<double>(jump_count(std::span<const cplx>(seq), stat.param)));
        } else {
            out[j] = r_variation(std::span<const cplx>(seq), stat.param);
        }
    }
    return out;
}

ExceptionalScales exceptional_scales(const FrequencySet& set, const ScaleRange& range, double rho) {
    if (!(rho > 1.0)) throw std::domain_error("exceptional scales: rho must exceed 1");
    std::vector<double> gaps;
    for (std::size_t i = 0; i + 1 < set.thetas.size(); ++i)
        for (std::size_t j = i + 1; j < set.thetas.size(); ++j)
            gaps.push_back(set.thetas[j] - set.thetas[i]);

    ExceptionalScales out;
    for (int k = range.k_min; k <= range.k_max; ++k) {
        const double w = std::ldexp(1.0, -k);
        const bool exc = std::any_of(gaps.begin(), gaps.end(), [&](double gap) {
            return w / rho <= gap && gap <= w * rho;
        });
        if (exc) out.scales.push_back(k);
        const int comp = component_count(set, w);
        if (!out.blocks.empty() && out.blocks.back().components == comp)
            out.blocks.back().k_hi = k;
        else
            out.blocks.push_back({k, k, comp});
    }
    return out;
}

} // namespace oscillab
