#pragma once

#include "oscillab/oscillation.hpp"

#include <vector>

namespace oscillab {

/// M = 2^b samples of f at x_j = j L / M on the circle [0, L), L = 2^a.
/// Analysis convention: F f(xi_m) = (L/M) sum_j f_j e(-2 pi i m j / M) at
/// xi_m = m / L, m in [-M/2, M/2); synthesis f_j = (1/L) sum_m F_m e(+...).
struct GridGeometry {
    int log2_domain = 6;  // a, L = 2^a
    int log2_samples = 16; // b, M = 2^b

    double domain() const { return static_cast<double>(std::size_t{1} << log2_domain); }
    std::size_t samples() const { return std::size_t{1} << log2_samples; }
    double sample_spacing() const { return domain() / static_cast<double>(samples()); }
    double bin_spacing() const { return 1.0 / domain(); }
    double nyquist() const { return static_cast<double>(samples()) / (2.0 * domain()); }
    void validate() const; // a <= b, both positive

    bool operator==(const GridGeometry&) const = default;
};

struct PeriodicSignal {
    GridGeometry grid;
    std::vector<cplx> samples;

    PeriodicSignal() = default;
    PeriodicSignal(GridGeometry g, std::vector<cplx> s);
    static PeriodicSignal zero(GridGeometry g);

    std::size_t size() const { return samples.size(); }
    double point(std::size_t j) const { return static_cast<double>(j) * grid.sample_spacing(); }
};

/// DFT bins stored in FFTW order: slot i holds m = i for i < M/2, m = i - M
/// otherwise. Values carry the (L/M) analysis factor.
struct Spectrum {
    GridGeometry grid;
    std::vector<cplx> bins;

    std::size_t size() const { return bins.size(); }
    long signed_index(std::size_t i) const {
        const long M = static_cast<long>(size());
        const long m = static_cast<long>(i);
        return m < M / 2 ? m : m - M;
    }
    double frequency(std::size_t i) const {
        return static_cast<double>(signed_index(i)) / grid.domain();
    }
};

Spectrum analyze(const PeriodicSignal& f);
PeriodicSignal synthesize(const Spectrum& s);

/// Continuum norms on [0, L): sqrt((L/M) sum |f_j|^2) and the matching
/// spectral-side sqrt((1/L) sum |F_m|^2); Parseval ties them together.
double l2_norm(const PeriodicSignal& f);
double l2_norm(const Spectrum& s);

} // namespace oscillab
