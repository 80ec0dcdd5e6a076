#include "oscillab/periodic_signal.hpp"

#include "oscillab/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace oscillab {

void GridGeometry::validate() const {
    if (log2_domain < 1 || log2_samples < 1)
        throw std::domain_error("grid exponents must be positive");
    if (log2_domain > log2_samples)
        throw std::domain_error("domain exponent must not exceed sample exponent");
}

PeriodicSignal::PeriodicSignal(GridGeometry g, std::vector<cplx> s)
    : grid(g), samples(std::move(s)) {
    grid.validate();
    if (samples.size() != grid.samples())
        throw std::domain_error("sample count does not match grid");
}

PeriodicSignal PeriodicSignal::zero(GridGeometry g) {
    g.validate();
    return PeriodicSignal(g, std::vector<cplx>(g.samples(), cplx{0.0, 0.0}));
}

Spectrum analyze(const PeriodicSignal& f) {
    Spectrum s;
    s.grid = f.grid;
    s.bins = f.samples;
    fft_forward(s.bins);
    const double scale = f.grid.domain() / static_cast<double>(f.grid.samples());
    for (auto& z : s.bins) z *= scale;
    return s;
}

PeriodicSignal synthesize(const Spectrum& s) {
    std::vector<cplx> out = s.bins;
    fft_inverse(out);
    const double scale = 1.0 / s.grid.domain();
    for (auto& z : out) z *= scale;
    return PeriodicSignal(s.grid, std::move(out));
}

double l2_norm(const PeriodicSignal& f) {
    double acc = 0.0;
    for (const auto& z : f.samples) acc += std::norm(z);
    return std::sqrt(acc * f.grid.domain() / static_cast<double>(f.grid.samples()));
}

double l2_norm(const Spectrum& s) {
    double acc = 0.0;
    for (const auto& z : s.bins) acc += std::norm(z);
    return std::sqrt(acc / s.grid.domain());
}

} // namespace oscillab
