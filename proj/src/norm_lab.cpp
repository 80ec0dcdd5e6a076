#include "oscillab/norm_lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace oscillab {

bool OperatorSpec::spectral() const {
    return kind != Kind::martingale_jump && kind != Kind::martingale_variation;
}

void OperatorSpec::validate() const {
    if (kind == Kind::jump || kind == Kind::martingale_jump) {
        if (!(param > 0.0)) throw std::domain_error("operator spec: jump lambda must be positive");
    }
    if (kind == Kind::variation && !(param >= 1.0))
        throw std::domain_error("operator spec: variation exponent must be >= 1");
    if (kind == Kind::martingale_variation && !(param > 2.0))
        throw std::domain_error("operator spec: martingale variation requires r > 2");
    if (spectral()) {
        grid.validate();
        if (!auto_scales()) scales.validate(grid);
    } else if (depth < 1 || depth > 24) {
        throw std::domain_error("operator spec: martingale depth out of range");
    }
}

ScaleRange derive_scales(const FrequencySet& set, const GridGeometry& g) {
    const double span = std::max(set.thetas.back() - set.thetas.front(), 1.0);
    int k_min = -static_cast<int>(std::ceil(std::log2(span))) - 1;
    // Below the whole-band width every scale acts identically on grid signals.
    k_min = std::max(k_min, -(g.log2_samples - g.log2_domain + 1));
    return {k_min, g.log2_domain - 1};
}

namespace {

// Trial-index offsets keeping the families on disjoint Rng streams.
constexpr std::uint64_t gaussian_stream = 0;
constexpr std::uint64_t comb_stream = 1u << 20;
constexpr std::uint64_t ascent_stream = 2u << 20;
constexpr std::uint64_t scan_stream = 3u << 20;
constexpr int ascent_steps = 32;

ScaleRange effective_scales(const OperatorSpec& spec, const FrequencySet& set) {
    return spec.auto_scales() ? derive_scales(set, spec.grid) : spec.scales;
}

double stat_l2(const std::vector<double>& v, const GridGeometry& g) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s * g.domain() / static_cast<double>(g.samples()));
}

std::vector<double> spectral_stat(const OperatorSpec& spec, const ScaleRange& range,
                                  const PeriodicSignal& f, const FrequencySet& set) {
    switch (spec.kind) {
    case OperatorSpec::Kind::maximal:
        return maximal_function(f, set, range);
    case OperatorSpec::Kind::jump:
        return scale_oscillation(f, set, range, ScaleStat::jump(spec.param));
    case OperatorSpec::Kind::variation:
        return scale_oscillation(f, set, range, ScaleStat::variation(spec.param));
    case OperatorSpec::Kind::smooth_maximal: {
        std::vector<double> out(f.size(), 0.0);
        for (int k = std::max(range.k_min, 1); k <= range.k_max; ++k) {
            const PeriodicSignal g = smooth_projection(f, set, k);
            for (std::size_t j = 0; j < out.size(); ++j)
                out[j] = std::max(out[j], std::abs(g.samples[j]));
        }
        return out;
    }
    default:
        throw std::logic_error("spectral_stat: martingale kind");
    }
}

// The jump statistics are not homogeneous in f, so every candidate is
// normalized to unit L2 before evaluation; for the homogeneous kinds this
// changes nothing.
double spectral_ratio(const OperatorSpec& spec, const ScaleRange& range, const PeriodicSignal& f,
                      const FrequencySet& set) {
    const double nf = l2_norm(f);
    if (nf == 0.0) return 0.0;
    PeriodicSignal u = f;
    for (auto& z : u.samples) z /= nf;
    return stat_l2(spectral_stat(spec, range, u, set), f.grid);
}

double martingale_ratio(const OperatorSpec& spec, const DyadicFunction& f) {
    const double nf = grid_l2(f);
    if (nf == 0.0) return 0.0;
    std::vector<cplx> s = f.samples;
    for (auto& z : s) z /= nf;
    const DyadicFunction u(std::move(s));
    return spec.kind == OperatorSpec::Kind::martingale_jump
               ? lepingle_jump_ratio(u, spec.param)
               : lepingle_variation_ratio(u, spec.param);
}

// FFTW slots of the bins the widest neighborhood keeps; everything the
// operator family can see.
std::vector<std::size_t> active_slots(const FrequencySet& set, const ScaleRange& range,
                                      const GridGeometry& g) {
    const auto mask = rough_mask(set, range.k_min, g);
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) slots.push_back(i);
    return slots;
}

// Span window with a half-span margin each side. The margin scales with the
// set rather than with the dyadic scale grid, so the ensemble geometry varies
// continuously in N instead of jumping at octave boundaries.
std::vector<std::size_t> window_slots(const FrequencySet& set, const GridGeometry& g) {
    const double span = std::max(set.thetas.back() - set.thetas.front(), 1.0);
    const double lo = set.thetas.front() - 0.5 * span - 1.0;
    const double hi = set.thetas.back() + 0.5 * span + 1.0;
    const long m_half = static_cast<long>(g.samples()) / 2;
    std::vector<std::size_t> slots;
    for (long m = -m_half; m < m_half; ++m) {
        const double xi = static_cast<double>(m) / g.domain();
        if (xi >= lo && xi <= hi)
            slots.push_back(static_cast<std::size_t>(m >= 0 ? m : m + 2 * m_half));
    }
    return slots;
}

PeriodicSignal gaussian_signal(Rng& rng, const std::vector<std::size_t>& slots,
                               const GridGeometry& g) {
    Spectrum s{g, std::vector<cplx>(g.samples(), cplx{0.0, 0.0})};
    for (const std::size_t slot : slots) s.bins[slot] = rng.complex_gaussian();
    return synthesize(s);
}

// Small random-phase bumps at each frequency: center bin plus three
// neighbors a side, envelope 1/sqrt(1+|off|), fresh phase per bin.
PeriodicSignal comb_signal(Rng& rng, const FrequencySet& set, const GridGeometry& g) {
    Spectrum s{g, std::vector<cplx>(g.samples(), cplx{0.0, 0.0})};
    const long m_half = static_cast<long>(g.samples()) / 2;
    for (const double th : set.thetas) {
        const long center = std::lround(th * g.domain()); // exact: thetas sit on bins
        for (long off = -3; off <= 3; ++off) {
            const long m = center + off;
            if (m < -m_half || m >= m_half) continue;
            const double amp = 1.0 / std::sqrt(1.0 + static_cast<double>(std::labs(off)));
            s.bins[static_cast<std::size_t>(m >= 0 ? m : m + 2 * m_half)] += amp * rng.phase();
        }
    }
    return synthesize(s);
}

// Martingale analogue of a comb: independent block-constant layers at every
// dyadic level, i.e. a martingale with iid increments.
DyadicFunction comb_dyadic(Rng& rng, int depth) {
    const std::size_t n = std::size_t{1} << depth;
    std::vector<cplx> s(n, cplx{0.0, 0.0});
    const double layer_scale = 1.0 / std::sqrt(static_cast<double>(depth));
    for (int level = 1; level <= depth; ++level) {
        const std::size_t block = n >> level;
        for (std::size_t b = 0; b < (std::size_t{1} << level); ++b) {
            const cplx v = layer_scale * rng.complex_gaussian();
            for (std::size_t j = b * block; j < (b + 1) * block; ++j) s[j] += v;
        }
    }
    return DyadicFunction(std::move(s));
}

DyadicFunction gaussian_dyadic(Rng& rng, int depth) {
    std::vector<cplx> s(std::size_t{1} << depth);
    for (auto& z : s) z = rng.complex_gaussian();
    return DyadicFunction(std::move(s));
}

} // namespace

EmpiricalNormEstimate estimate_ratio(const OperatorSpec& spec, const FrequencySet& lambda_set,
                                     long trials, std::uint64_t seed) {
    spec.validate();
    if (trials < 1) throw std::domain_error("estimate_ratio: trials must be positive");

    EmpiricalNormEstimate out;
    out.seed = seed;
    out.trials = trials;
    out.strategy = "gaussian+comb+ascent";

    const long g_trials = (trials + 1) / 2;
    const long c_trials = trials - g_trials;
    double best = -1.0;
    std::string witness = "none";

    if (spec.spectral()) {
        const ScaleRange range = effective_scales(spec, lambda_set);
        range.validate(spec.grid);
        const auto slots = active_slots(lambda_set, range, spec.grid);
        const auto gauss_slots = window_slots(lambda_set, spec.grid);
        PeriodicSignal best_f;
        auto consider = [&](const PeriodicSignal& f, std::string w) {
            const double r = spectral_ratio(spec, range, f, lambda_set);
            if (r > best) {
                best = r;
                best_f = f;
                witness = std::move(w);
            }
        };
        for (long i = 0; i < g_trials; ++i) {
            Rng rng = Rng::for_trial(seed, gaussian_stream + static_cast<std::uint64_t>(i));
            consider(gaussian_signal(rng, gauss_slots, spec.grid),
                     "gaussian trial " + std::to_string(i));
        }
        for (long i = 0; i < c_trials; ++i) {
            Rng rng = Rng::for_trial(seed, comb_stream + static_cast<std::uint64_t>(i));
            consider(comb_signal(rng, lambda_set, spec.grid), "comb trial " + std::to_string(i));
        }

        // Coordinate ascent on the active bins, greedy accept/revert with a
        // fixed evaluation budget.
        Spectrum cur = analyze(best_f);
        const std::string base = witness;
        for (int step = 0; step < ascent_steps; ++step) {
            Rng rng = Rng::for_trial(seed, ascent_stream + static_cast<std::uint64_t>(step));
            const std::size_t slot = slots[rng.below(slots.size())];
            double peak = 0.0;
            for (const std::size_t s : slots) peak = std::max(peak, std::abs(cur.bins[s]));
            const cplx save = cur.bins[slot];
            cur.bins[slot] += 0.1 * peak * rng.phase();
            const PeriodicSignal candidate = synthesize(cur);
            const double r = spectral_ratio(spec, range, candidate, lambda_set);
            if (r > best) {
                best = r;
                witness = "ascent step " + std::to_string(step) + " from " + base;
            } else {
                cur.bins[slot] = save;
            }
        }
    } else {
        DyadicFunction best_f;
        auto consider = [&](DyadicFunction f, std::string w) {
            const double r = martingale_ratio(spec, f);
            if (r > best) {
                best = r;
                best_f = std::move(f);
                witness = std::move(w);
            }
        };
        for (long i = 0; i < g_trials; ++i) {
            Rng rng = Rng::for_trial(seed, gaussian_stream + static_cast<std::uint64_t>(i));
            consider(gaussian_dyadic(rng, spec.depth), "gaussian trial " + std::to_string(i));
        }
        for (long i = 0; i < c_trials; ++i) {
            Rng rng = Rng::for_trial(seed, comb_stream + static_cast<std::uint64_t>(i));
            consider(comb_dyadic(rng, spec.depth), "comb trial " + std::to_string(i));
        }

        std::vector<cplx> cur = best_f.samples;
        const std::string base = witness;
        for (int step = 0; step < ascent_steps; ++step) {
            Rng rng = Rng::for_trial(seed, ascent_stream + static_cast<std::uint64_t>(step));
            const std::size_t j = rng.below(cur.size());
            const double rms = grid_l2(DyadicFunction(cur));
            const cplx save = cur[j];
            cur[j] += 0.5 * rms * rng.phase();
            const double r = martingale_ratio(spec, DyadicFunction(cur));
            if (r > best) {
                best = r;
                witness = "ascent step " + std::to_string(step) + " from " + base;
            } else {
                cur[j] = save;
            }
        }
    }

    out.ratio = best;
    out.witness = witness;
    return out;
}

namespace {

// set plus the derived seed for its trials; the shared keying behind
// growth_scan, mean_growth_curves and scan_frequency_set
std::pair<FrequencySet, std::uint64_t> scan_sample(std::uint64_t seed, std::size_t n,
                                                   int set_index, const GridGeometry& g) {
    const std::uint64_t key = scan_stream + n * 64 + static_cast<std::uint64_t>(set_index);
    Rng rng = Rng::for_trial(seed, key);
    FrequencySet set = random_frequency_set(rng, n, g);
    return {std::move(set), rng.next()};
}

} // namespace

FrequencySet scan_frequency_set(std::uint64_t seed, std::size_t n, int set_index,
                                const GridGeometry& g) {
    return scan_sample(seed, n, set_index, g).first;
}

GrowthScan growth_scan(const OperatorSpec& spec, const std::vector<std::size_t>& n_list,
                       long trials_per_n, int sets_per_n, std::uint64_t seed) {
    spec.validate();
    if (!spec.spectral())
        throw std::domain_error("growth_scan: frequency-set scan needs a spectral kind");
    if (n_list.empty()) throw std::domain_error("growth_scan: empty N list");
    if (sets_per_n < 1 || trials_per_n < sets_per_n)
        throw std::domain_error("growth_scan: budget must cover every set");

    GrowthScan out;
    out.rows.reserve(n_list.size());
    for (const std::size_t n : n_list) {
        if (n == 0) throw std::domain_error("growth_scan: N must be positive");
        double best = 0.0;
        for (int si = 0; si < sets_per_n; ++si) {
            const auto [set, sub_seed] = scan_sample(seed, n, si, spec.grid);
            best = std::max(
                best, estimate_ratio(spec, set, trials_per_n / sets_per_n, sub_seed).ratio);
        }
        out.rows.push_back({n, best, seed, trials_per_n});
    }
    out.fit = fit_growth(out.rows);
    return out;
}

std::vector<GrowthScan> mean_growth_curves(const std::vector<OperatorSpec>& specs,
                                           const std::vector<std::size_t>& n_list,
                                           long trials_per_n, int sets_per_n, std::uint64_t seed) {
    if (specs.empty()) throw std::domain_error("mean_growth_curves: no operator specs");
    for (const auto& spec : specs) {
        spec.validate();
        if (!spec.spectral())
            throw std::domain_error("mean_growth_curves: frequency-set scan needs a spectral kind");
        if (spec.grid.log2_domain != specs.front().grid.log2_domain ||
            spec.grid.log2_samples != specs.front().grid.log2_samples)
            throw std::domain_error("mean_growth_curves: specs must share one grid");
    }
    if (n_list.empty()) throw std::domain_error("mean_growth_curves: empty N list");
    if (sets_per_n < 1 || trials_per_n < sets_per_n)
        throw std::domain_error("mean_growth_curves: budget must cover every set");

    const GridGeometry grid = specs.front().grid;
    const long per_set = trials_per_n / sets_per_n;
    std::vector<GrowthScan> out(specs.size());
    for (const std::size_t n : n_list) {
        if (n == 0) throw std::domain_error("mean_growth_curves: N must be positive");
        std::vector<double> sums(specs.size(), 0.0);
        long count = 0;
        for (int si = 0; si < sets_per_n; ++si) {
            const auto [set, sub_seed] = scan_sample(seed, n, si, grid);
            const auto gauss_slots = window_slots(set, grid);
            std::vector<ScaleRange> ranges;
            ranges.reserve(specs.size());
            for (const auto& spec : specs) {
                const ScaleRange r = effective_scales(spec, set);
                r.validate(grid);
                ranges.push_back(r);
            }
            for (long i = 0; i < per_set; ++i) {
                Rng rng = Rng::for_trial(sub_seed, gaussian_stream + static_cast<std::uint64_t>(i));
                const PeriodicSignal f = gaussian_signal(rng, gauss_slots, grid);
                for (std::size_t k = 0; k < specs.size(); ++k)
                    sums[k] += spectral_ratio(specs[k], ranges[k], f, set);
                ++count;
            }
        }
        for (std::size_t k = 0; k < specs.size(); ++k)
            out[k].rows.push_back({n, sums[k] / static_cast<double>(count), seed, count});
    }
    for (auto& scan : out) scan.fit = fit_growth(scan.rows);
    return out;
}

GrowthFit fit_growth(const std::vector<GrowthRow>& rows) {
    if (rows.empty()) throw std::domain_error("fit_growth: no rows");
    const auto least_squares = [&](auto xfun, double& c0, double& c1, double& rms) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(rows.size());
        for (const auto& r : rows) {
            const double x = xfun(r);
            sx += x;
            sy += r.ratio;
            sxx += x * x;
            sxy += x * r.ratio;
        }
        const double det = n * sxx - sx * sx;
        if (std::abs(det) < 1e-12 * (1.0 + n * sxx)) {
            c1 = 0.0;
            c0 = sy / n;
        } else {
            c1 = (n * sxy - sx * sy) / det;
            c0 = (sy - c1 * sx) / n;
        }
        double ss = 0.0;
        for (const auto& r : rows) {
            const double e = r.ratio - (c0 + c1 * xfun(r));
            ss += e * e;
        }
        rms = std::sqrt(ss / n);
    };
    GrowthFit fit;
    least_squares([](const GrowthRow& r) { return std::log(static_cast<double>(r.n)); },
                  fit.c0_log, fit.c1_log, fit.rms_log);
    least_squares(
        [](const GrowthRow& r) {
            const double l = std::log(static_cast<double>(r.n));
            return l * l;
        },
        fit.c0_log2, fit.c2_log2, fit.rms_log2);
    return fit;
}

double weak_l2_size(const std::vector<double>& values) {
    if (values.empty()) throw std::domain_error("weak_l2_size: empty sample");
    std::vector<double> a;
    a.reserve(values.size());
    for (const double v : values) a.push_back(std::abs(v));
    std::sort(a.begin(), a.end());
    const double vmax = a.back();
    if (vmax == 0.0) return 0.0;
    const double n = static_cast<double>(a.size());
    const int j0 = static_cast<int>(std::floor(std::log2(vmax)));
    double best = 0.0;
    for (int j = j0; j > j0 - 48; --j) {
        const double t = std::ldexp(1.0, j);
        const auto it = std::upper_bound(a.begin(), a.end(), t);
        const double frac = static_cast<double>(a.end() - it) / n;
        best = std::max(best, t * std::sqrt(frac));
    }
    return best;
}

InterpolationCheck interpolation_check(double a, double b, double p, double r, double measured,
                                       double c) {
    if (!(r > 2.0)) throw std::domain_error("interpolation_check: requires r > 2");
    if (!(p >= 1.0)) throw std::domain_error("interpolation_check: requires p >= 1");
    if (a < 0.0 || b < 0.0 || measured < 0.0 || c < 0.0)
        throw std::domain_error("interpolation_check: negative input");
    InterpolationCheck out;
    out.envelope = a * std::pow(r / (r - 2.0), 0.5 + 1.0 / p) + b;
    out.margin = c * out.envelope - measured;
    out.pass = out.margin >= 0.0;
    return out;
}

double fit_interpolation_constant(double a, double b, double p,
                                  const std::vector<double>& r_values,
                                  const std::vector<double>& measured) {
    if (r_values.empty() || r_values.size() != measured.size())
        throw std::domain_error("fit_interpolation_constant: mismatched samples");
    double c = 0.0;
    for (std::size_t i = 0; i < r_values.size(); ++i) {
        const auto chk = interpolation_check(a, b, p, r_values[i], measured[i], 1.0);
        if (chk.envelope <= 0.0) {
            if (measured[i] > 0.0)
                throw std::domain_error("fit_interpolation_constant: zero envelope");
            continue;
        }
        c = std::max(c, measured[i] / chk.envelope);
    }
    return c;
}

} // namespace oscillab
