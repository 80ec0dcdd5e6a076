#include "oscillab/experiments.hpp"

#include "oscillab/dyadic_martingale.hpp"
#include "oscillab/ergodic.hpp"
#include "oscillab/exponential_sums.hpp"
#include "oscillab/highprec.hpp"
#include "oscillab/norm_lab.hpp"
#include "oscillab/oscillation.hpp"
#include "oscillab/rng.hpp"
#include "oscillab/spectral_projections.hpp"
#include "oscillab/whitney.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <ctime>
#include <numeric>
#include <thread>

namespace oscillab {

namespace {

// ---------------------------------------------------------------- plumbing

std::string strf(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    return buf;
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Ordered-by-construction parallel map: body(i) may only write state owned
/// by index i, so the result is identical for every thread count.
void parallel_for(long n, int threads, const std::function<void(long)>& body) {
    int t = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (t < 1) t = 1;
    t = static_cast<int>(std::min<long>(t, n));
    if (t <= 1) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(t));
    for (int w = 0; w < t; ++w)
        pool.emplace_back([&] {
            for (long i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    for (auto& th : pool) th.join();
}

std::vector<cplx> random_values(Rng& rng, std::size_t n) {
    std::vector<cplx> v(n);
    for (auto& z : v) z = rng.complex_gaussian();
    return v;
}

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double det = n * sxx - sx * sx;
    LineFit f;
    f.slope = det != 0.0 ? (n * sxy - sx * sy) / det : 0.0;
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

RealPolynomial parse_poly(const std::string& descriptor) {
    const auto star = descriptor.find("*n^");
    const std::string coeff = descriptor.substr(0, star);
    const int d = std::stoi(descriptor.substr(star + 3));
    if (coeff == "sqrt2") return RealPolynomial::monomial_poly(sqrt2_60, d, true);
    return RealPolynomial::monomial_poly(coeff, d, false);
}

struct Check {
    bool pass = true;
    std::string detail;
};

// ------------------------------------------------- 1: brute-force oracles

// The slow references: every increasing subsequence enumerated by bitmask.
int jump_count_bitmask(const std::vector<cplx>& v, double lambda) {
    const int n = static_cast<int>(v.size());
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) < 2) continue;
        int prev = -1, steps = 0;
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            if (!(mask & (1u << i))) continue;
            if (prev >= 0) {
                if (!(std::abs(v[i] - v[prev]) > lambda)) ok = false;
                ++steps;
            }
            prev = i;
        }
        if (ok) best = std::max(best, steps);
    }
    return best;
}

double r_variation_bitmask(const std::vector<cplx>& v, double r) {
    const int n = static_cast<int>(v.size());
    double best = 0.0;
    const bool inf = std::isinf(r);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) < 2) continue;
        int prev = -1;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            if (!(mask & (1u << i))) continue;
            if (prev >= 0) {
                const double inc = std::abs(v[i] - v[prev]);
                acc = inf ? std::max(acc, inc) : acc + std::pow(inc, r);
            }
            prev = i;
        }
        best = std::max(best, inf ? acc : std::pow(acc, 1.0 / r));
    }
    return best;
}

const std::vector<double>& lambda_grid() {
    static const std::vector<double> v{0.1, 0.5, 1.0, 2.0};
    return v;
}

const std::vector<double>& r_grid() {
    static const std::vector<double> v{1.0, 1.5, 2.0, 3.0, variation_infinity};
    return v;
}

Check oracle_suite(std::uint64_t seed, long samples, int threads, ExperimentReport* rep) {
    std::vector<long> jump_bad(samples, 0), var_bad(samples, 0);
    parallel_for(samples, threads, [&](long i) {
        Rng rng = Rng::for_trial(seed, 0x0100000ull + static_cast<std::uint64_t>(i));
        const auto v = random_values(rng, 1 + static_cast<std::size_t>(i % 10));
        for (const double lambda : lambda_grid())
            if (jump_count(std::span<const cplx>(v), lambda) != jump_count_bitmask(v, lambda))
                ++jump_bad[i];
        for (const double r : r_grid()) {
            const double dp = r_variation(std::span<const cplx>(v), r);
            const double ref = r_variation_bitmask(v, r);
            if (std::abs(dp - ref) > 1e-12 * std::max(1.0, std::abs(ref))) ++var_bad[i];
        }
    });
    long jumps = 0, vars = 0;
    for (long i = 0; i < samples; ++i) {
        jumps += jump_bad[i];
        vars += var_bad[i];
    }
    if (rep) {
        rep->add_row({"jump_oracle", "lambda in {0.1,0.5,1,2}", std::to_string(samples),
                      std::to_string(jumps)});
        rep->add_row({"variation_oracle", "r in {1,1.5,2,3,inf}", std::to_string(samples),
                      std::to_string(vars)});
        rep->add_summary("oracle_matches", jumps + vars == 0);
        rep->add_summary("oracle_mismatches", jumps + vars);
    }
    return {jumps + vars == 0,
            strf("%ld sequences, %ld jump / %ld variation mismatches", samples, jumps, vars)};
}

// --------------------------------------------- 2: increment inequalities

Check inequality_suite(std::uint64_t seed, long samples, int threads, ExperimentReport* rep) {
    // four families of pointwise inequalities, zero tolerance for violations
    std::vector<long> bad(samples, 0);
    parallel_for(samples, threads, [&](long i) {
        Rng rng = Rng::for_trial(seed, 0x0200000ull + static_cast<std::uint64_t>(i));
        const std::size_t len = std::size_t{1} << (i % 7); // 1 .. 64
        const auto v = random_values(rng, len);
        const std::span<const cplx> sp(v);
        const double eps = 1e-9;

        double l2 = 0.0;
        for (const auto& z : v) l2 += std::norm(z);
        l2 = std::sqrt(l2);

        std::vector<double> variations;
        for (const double r : r_grid()) variations.push_back(r_variation(sp, r));

        for (std::size_t ri = 0; ri < variations.size(); ++ri) {
            const double r = r_grid()[ri];
            for (const double lambda : lambda_grid()) {
                const int nl = jump_count(sp, lambda);
                const double lhs =
                    nl == 0 ? 0.0
                            : (std::isinf(r) ? lambda
                                             : lambda * std::pow(static_cast<double>(nl), 1.0 / r));
                if (lhs > variations[ri] + eps) ++bad[i];
            }
            if (ri > 0 && variations[ri] > variations[ri - 1] + eps) ++bad[i]; // V^r decreasing
        }
        const double v2 = variations[2]; // r = 2
        if (v2 > 2.0 * l2 + eps) ++bad[i];
        if (block_v2_bound(ComplexSequence(v)) + eps < v2) ++bad[i];
    });
    long violations = 0;
    for (long i = 0; i < samples; ++i) violations += bad[i];
    if (rep) {
        rep->add_row({"inequalities", "jump-vs-variation, V2 vs l2, block bound, r-monotone",
                      std::to_string(samples), std::to_string(violations)});
        rep->add_summary("inequality_violations", violations);
    }
    return {violations == 0, strf("%ld sequences, %ld violations", samples, violations)};
}

// ------------------------------------ 3: martingale identities + Lepingle

Check lepingle_suite(std::uint64_t seed, long tower_trials, long jump_trials, long var_trials,
                     const std::vector<int>& depths, ExperimentReport* rep) {
    // tower property and contraction at depth 12, exact up to 1e-12
    double tower_err = 0.0;
    long contraction_bad = 0;
    for (long t = 0; t < tower_trials; ++t) {
        Rng rng = Rng::for_trial(seed, 0x0300000ull + static_cast<std::uint64_t>(t));
        const DyadicFunction f(random_values(rng, std::size_t{1} << 12));
        const double nf = grid_l2(f);
        const int j = static_cast<int>(rng.below(13));
        const int k = static_cast<int>(rng.below(13));
        const auto ej_ek = conditional_expectation(conditional_expectation(f, k), j);
        const auto e_coarse = conditional_expectation(f, std::max(j, k));
        double diff = 0.0;
        for (std::size_t s = 0; s < ej_ek.samples.size(); ++s)
            diff = std::max(diff, std::abs(ej_ek.samples[s] - e_coarse.samples[s]));
        tower_err = std::max(tower_err, diff / std::max(1.0, nf));
        if (grid_l2(conditional_expectation(f, k)) > nf * (1.0 + 1e-12)) ++contraction_bad;
    }

    // worst jump ratio per depth over a dyadic altitude sweep; slope of the
    // worst case against depth must stay flat
    const std::vector<double> sweep{0.25, 0.5, 1.0, 2.0};
    std::vector<double> jump_max(depths.size(), 0.0), var_max(depths.size(), 0.0);
    for (std::size_t di = 0; di < depths.size(); ++di) {
        const int b = depths[di];
        for (long t = 0; t < jump_trials; ++t) {
            Rng rng = Rng::for_trial(seed, 0x0310000ull + static_cast<std::uint64_t>(b) * 100000 +
                                               static_cast<std::uint64_t>(t));
            const DyadicFunction f(random_values(rng, std::size_t{1} << b));
            for (const double lambda : sweep)
                jump_max[di] = std::max(jump_max[di], lepingle_jump_ratio(f, lambda));
        }
        for (long t = 0; t < var_trials; ++t) {
            Rng rng = Rng::for_trial(seed, 0x0320000ull + static_cast<std::uint64_t>(b) * 100000 +
                                               static_cast<std::uint64_t>(t));
            const DyadicFunction f(random_values(rng, std::size_t{1} << b));
            var_max[di] = std::max(var_max[di], lepingle_variation_ratio(f, 2.1));
        }
    }
    std::vector<double> xs(depths.begin(), depths.end());
    const double slope = fit_line(xs, jump_max).slope;
    double worst_jump = 0.0;
    for (const double m : jump_max) worst_jump = std::max(worst_jump, m);

    // r/(r-2) envelope constant per depth, stable within a factor 2
    const double envelope = 2.1 / 0.1;
    double c_lo = 1e300, c_hi = 0.0;
    for (const double m : var_max) {
        c_lo = std::min(c_lo, m / envelope);
        c_hi = std::max(c_hi, m / envelope);
    }

    const bool pass = tower_err <= 1e-12 && contraction_bad == 0 && slope <= 0.05 &&
                      worst_jump <= 2.0 && c_hi <= 2.0 * c_lo;
    if (rep) {
        for (std::size_t di = 0; di < depths.size(); ++di)
            rep->add_row({std::to_string(depths[di]), std::to_string(jump_trials),
                          format_double(jump_max[di]), std::to_string(var_trials),
                          format_double(var_max[di]), format_double(var_max[di] / envelope)});
        rep->add_summary("tower_error", tower_err);
        rep->add_summary("contraction_violations", contraction_bad);
        rep->add_summary("jump_ratio_slope_vs_depth", slope);
        rep->add_summary("envelope_constant_spread", c_hi / c_lo);
    }
    return {pass, strf("tower %.1e, slope %+.4f (cap 0.05), jump max %.3f, C spread %.2fx",
                       tower_err, slope, worst_jump, c_hi / c_lo)};
}

// ------------------------------------------------ 4: projection structure

Check projection_suite(std::uint64_t seed, long pairs, const GridGeometry& g, int threads,
                       ExperimentReport* rep) {
    std::vector<long> bad(pairs, 0);
    parallel_for(pairs, threads, [&](long i) {
        Rng rng = Rng::for_trial(seed, 0x0400000ull + static_cast<std::uint64_t>(i));
        const auto set = random_frequency_set(rng, 1 + rng.below(8), g);
        Spectrum s{g, random_values(rng, g.samples())};
        const double nf = l2_norm(s);
        const ScaleRange range = derive_scales(set, g);

        std::vector<std::vector<std::uint8_t>> masks;
        for (int k = range.k_min; k <= range.k_max; ++k) masks.push_back(rough_mask(set, k, g));

        for (std::size_t a = 0; a < masks.size(); ++a) {
            const Spectrum pa = apply_mask(s, masks[a]);
            if (l2_norm(pa) > nf + 1e-10) ++bad[i]; // contraction
            for (std::size_t bidx = a; bidx < masks.size(); ++bidx) {
                // coarse-after-fine equals fine, compared bit for bit
                const Spectrum fine = apply_mask(s, masks[bidx]);
                const Spectrum both = apply_mask(fine, masks[a]);
                for (std::size_t m = 0; m < fine.bins.size(); ++m)
                    if (both.bins[m] != fine.bins[m]) {
                        ++bad[i];
                        break;
                    }
            }
        }

        // modulation covariance: shifting the set by whole bins translates
        // every mask exactly
        const long shift_bins = static_cast<long>(rng.below(7)) - 3;
        std::vector<double> moved;
        for (const double th : set.thetas) moved.push_back(th + shift_bins * g.bin_spacing());
        const FrequencySet shifted(std::move(moved), g);
        const long m_half = static_cast<long>(g.samples()) / 2;
        const int k_mid = range.k_min + range.count() / 2;
        const auto base = rough_mask(set, k_mid, g);
        const auto after = rough_mask(shifted, k_mid, g);
        auto slot = [&](long v) { return static_cast<std::size_t>(v >= 0 ? v : v + 2 * m_half); };
        for (long m = -m_half; m < m_half; ++m) {
            const long src = m - shift_bins;
            if (src < -m_half || src >= m_half) continue;
            if (after[slot(m)] != base[slot(src)]) {
                ++bad[i];
                break;
            }
        }
    });
    long violations = 0;
    for (long i = 0; i < pairs; ++i) violations += bad[i];
    if (rep) {
        rep->add_row({"projection_structure", "nesting, contraction, modulation",
                      std::to_string(pairs), std::to_string(violations)});
        rep->add_summary("projection_violations", violations);
    }
    return {violations == 0, strf("%ld (set, input) pairs, %ld violations", pairs, violations)};
}

// ------------------------------------------- 5: multi-frequency growth

Check growth_suite(std::uint64_t seed, const std::vector<std::size_t>& n_list, long trials,
                   int sets, double lambda, const GridGeometry& g, ExperimentReport* rep) {
    OperatorSpec max_spec;
    max_spec.grid = g;
    OperatorSpec jump_spec = max_spec;
    jump_spec.kind = OperatorSpec::Kind::jump;
    jump_spec.param = lambda;

    const auto scans = mean_growth_curves({max_spec, jump_spec}, n_list, trials, sets, seed);
    const auto& maximal = scans[0];
    const auto& jump = scans[1];

    bool increasing = true;
    for (std::size_t i = 1; i < maximal.rows.size(); ++i)
        if (maximal.rows[i].ratio <= maximal.rows[i - 1].ratio) increasing = false;

    const double range = maximal.rows.back().ratio - maximal.rows.front().ratio;
    const double rms_frac = range > 0.0 ? maximal.fit.rms_log2 / range : 1e300;
    const double lo = std::log(static_cast<double>(n_list.front()));
    const double hi = std::log(static_cast<double>(n_list.back()));
    const double jump_rise = jump.fit.c1_log * (hi - lo);
    const double max_rise = maximal.fit.c2_log2 * (hi * hi - lo * lo);

    const bool fit_ok = maximal.fit.c2_log2 >= 0.0 && rms_frac < 0.15;
    const bool pass = increasing && fit_ok && jump_rise <= max_rise;

    if (rep) {
        const char* names[2] = {"maximal", "jump"};
        for (int k = 0; k < 2; ++k) {
            const auto& scan = scans[static_cast<std::size_t>(k)];
            for (const auto& row : scan.rows) {
                // scale window of the first sampled set; later sets differ
                // only when their span crosses a power of two
                const ScaleRange sc = derive_scales(scan_frequency_set(seed, row.n, 0, g), g);
                rep->add_row({names[k], std::to_string(row.n), std::to_string(sc.k_min),
                              std::to_string(sc.k_max), format_double(k == 0 ? 0.0 : lambda),
                              format_double(row.ratio), "gaussian-mean", std::to_string(row.seed),
                              std::to_string(row.trials)});
            }
        }
        rep->add_summary("maximal_strictly_increasing", increasing);
        rep->add_summary("maximal_log2_coefficient", maximal.fit.c2_log2);
        rep->add_summary("maximal_log2_rms_over_range", rms_frac);
        rep->add_summary("maximal_log_fit_rms", maximal.fit.rms_log);
        rep->add_summary("jump_log_rise", jump_rise);
        rep->add_summary("maximal_log2_rise", max_rise);
    }
    return {pass, strf("increase %s; c2=%+.5f; fit rms %.1f%% of range (limit 15%%); "
                       "jump rise %.4f vs maximal %.4f",
                       increasing ? "yes" : "no", maximal.fit.c2_log2, 100.0 * rms_frac,
                       jump_rise, max_rise)};
}

// --------------------------------------------------------- 6: Weyl sums

Check weyl_suite(long q_max, int threads, ExperimentReport* rep) {
    std::vector<long> bad(q_max + 1, 0);
    std::vector<double> worst(q_max + 1, 0.0); // |S| q^{1/2 - 0.1} per modulus
    parallel_for(q_max, threads, [&](long i) {
        const long q = i + 1;
        const double bound = 3.0 * std::pow(static_cast<double>(q), -0.4);
        for (long a2 = 1; a2 <= q; ++a2) {
            if (std::gcd(a2, q) != 1) continue;
            for (long a1 = 0; a1 <= 1; ++a1) {
                const double mag = std::abs(weyl_sum(q, {a1, a2}));
                if (mag > 1.0 + 1e-12) ++bad[q];
                if (mag > bound + 1e-12) ++bad[q];
                worst[q] = std::max(worst[q], mag * std::pow(static_cast<double>(q), 0.4));
            }
        }
    });
    long violations = 0;
    double worst_ratio = 0.0;
    long worst_q = 1;
    for (long q = 1; q <= q_max; ++q) {
        violations += bad[q];
        if (worst[q] / 3.0 > worst_ratio) {
            worst_ratio = worst[q] / 3.0;
            worst_q = q;
        }
    }

    const double gauss = std::abs(weyl_sum(5, {0, 1}));
    const double gauss_err = std::abs(gauss - 1.0 / std::sqrt(5.0));

    const bool pass = violations == 0 && gauss_err <= 1e-12;
    if (rep) {
        for (long q = 1; q <= q_max; ++q)
            rep->add_row({std::to_string(q), format_double(worst[q]),
                          format_double(3.0 * std::pow(static_cast<double>(q), -0.4))});
        rep->add_summary("violations", violations);
        rep->add_summary("worst_bound_fraction", worst_ratio);
        rep->add_summary("gauss_sum_error", gauss_err);
    }
    return {pass, strf("q <= %ld exhaustive, %ld violations; worst at q=%ld uses %.0f%% of the "
                       "bound; Gauss err %.1e",
                       q_max, violations, worst_q, 100.0 * worst_ratio, gauss_err)};
}

// -------------------------------------------------- 7: van der Corput

Check vdc_suite(ExperimentReport* rep) {
    const real_hp bd(sqrt2_60);
    const double bd_d = 1.4142135623730951;
    bool pass = true;
    std::string detail;
    for (const int d : {2, 3}) {
        for (const long n : {16L, 64L}) {
            const double nd = std::pow(static_cast<double>(n), d) * bd_d;
            const double center = std::abs(vdc_phi(n, 0.0, bd, d, VdcVariant::rough));
            if (std::abs(center - 1.0) > 1e-10) pass = false;

            // beta up to 2^10 full oscillation cycles, 2^10 sample points
            const double beta_max = 1024.0 / nd;
            double worst = 0.0;
            double at = 0.0;
            for (long j = 1; j <= 1024; ++j) {
                const double beta = beta_max * static_cast<double>(j) / 1024.0;
                const double mag = std::abs(vdc_phi(n, beta, bd, d, VdcVariant::rough));
                const double bound = 3.0 * std::pow(1.0 + nd * beta, -1.0 / d);
                if (mag > bound + 1e-12) pass = false;
                if (bound > 0.0 && mag / bound > worst) {
                    worst = mag / bound;
                    at = beta;
                }
            }
            if (rep)
                rep->add_row({std::to_string(d), std::to_string(n), format_double(center),
                              format_double(worst), format_double(at)});
            if (d == 2 && n == 64)
                detail = strf("|phi(0)-1| <= 1e-10; decay envelope holds, tightest use %.0f%% "
                              "(d=2, N=64)",
                              100.0 * worst);
        }
    }
    if (rep) rep->add_summary("envelope_ok", pass);
    return {pass, detail};
}

// ------------------------------------------- 8: multiplier error decay

Check multiplier_suite(const std::vector<long>& n_list, double delta0, int grid,
                       const RealPolynomial& q_poly, ExperimentReport* rep) {
    std::vector<double> ln_n, ln_err;
    std::vector<ErrorScanResult> results;
    for (const long n : n_list) {
        const ErrorScanResult r = error_scan(q_poly, 0, n, delta0, grid);
        results.push_back(r);
        ln_n.push_back(std::log(static_cast<double>(n)));
        ln_err.push_back(std::log(r.sup_error));
        if (rep)
            rep->add_row({std::to_string(n), format_double(delta0), format_double(r.sup_error),
                          format_double(r.at_beta), std::to_string(grid)});
    }
    const double slope = fit_line(ln_n, ln_err).slope;
    const bool shrinks = results.back().sup_error < results.front().sup_error;
    const bool pass = slope <= -0.05 && shrinks;
    if (rep) {
        rep->add_summary("loglog_slope", slope);
        rep->add_summary("first_error", results.front().sup_error);
        rep->add_summary("last_error", results.back().sup_error);
    }
    return {pass, strf("sup error %.3f -> %.3f over N in [%ld, %ld], log-log slope %+.3f "
                       "(cap -0.05)",
                       results.front().sup_error, results.back().sup_error, n_list.front(),
                       n_list.back(), slope)};
}

// -------------------------------------- 9: ergodic convergence proxy

Check ergodic_suite(const RealPolynomial& p_poly, int lacunary_r, long n_max, int grid_points,
                    const std::vector<long>& n0_list, ExperimentReport* rep) {
    const CircleRotation rot{real_hp(golden_60)};
    std::vector<double> grid;
    for (int i = 0; i < grid_points; ++i)
        grid.push_back((static_cast<double>(i) + 0.5) / static_cast<double>(grid_points));

    const Observable wave = TrigPolynomial{{{1, cplx{1.0, 0.0}}}};
    const Observable box = Indicator{0.0, 1.0 / 3.0};
    const char* names[2] = {"wave", "box"};
    const Observable* obs[2] = {&wave, &box};

    bool pass = true;
    double ratios[2] = {0.0, 0.0};
    for (int oi = 0; oi < 2; ++oi) {
        const SeriesGrid sg =
            average_series_grid(rot, *obs[oi], grid, p_poly, lacunary_r, n_max, SumWeight::flat);
        const TailDiameters td = tail_diameters(sg, n0_list);
        ratios[oi] = td.grid_mean.back() / td.grid_mean.front();
        if (!(ratios[oi] <= 0.7)) pass = false;
        if (rep)
            for (std::size_t i = 0; i < td.n0.size(); ++i)
                rep->add_row({names[oi], std::to_string(td.n0[i]),
                              format_double(td.grid_mean[i]), format_double(td.grid_max[i])});
    }

    // a constant observable must average to itself at every time, exactly
    const double c = 0.375;
    const Observable constant = TrigPolynomial{{{0, cplx{c, 0.0}}}};
    const SeriesGrid sc = average_series_grid(rot, constant, {grid[0], grid.back()}, p_poly,
                                              lacunary_r, n_max, SumWeight::flat);
    double const_dev = 0.0;
    for (const auto& per_time : sc.values)
        for (const cplx& v : per_time) const_dev = std::max(const_dev, std::abs(v - c));
    if (const_dev != 0.0) pass = false;
    if (rep) {
        rep->add_summary("tail_ratio_wave", ratios[0]);
        rep->add_summary("tail_ratio_box", ratios[1]);
        rep->add_summary("constant_series_deviation", const_dev);
    }
    return {pass, strf("tail ratios wave %.3f, box %.3f (cap 0.7); constant deviation %.1e",
                       ratios[0], ratios[1], const_dev)};
}

// ------------------------------------- 10: Whitney partition/reconstruction

Check whitney_suite(int grid_depth, const std::vector<long>& n_list,
                    const RealPolynomial& p_poly, ExperimentReport* rep) {
    const WhitneyDecomposition dec(grid_depth);

    double part_err = 0.0;
    int overlap = 0;
    const double lo = dec.interior_lo(), hi = dec.interior_hi();
    for (int i = 0; i <= 4096; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / 4096.0;
        part_err = std::max(part_err, std::abs(dec.partition_sum(x) - 1.0));
        overlap = std::max(overlap, dec.overlap_count(x, 20.0));
    }

    std::size_t size_constant = 0;
    for (const auto& [scale, count] : dec.per_scale_count()) {
        size_constant = std::max(size_constant, count);
        if (rep) rep->add_row({"scale_count", std::to_string(scale), std::to_string(count)});
    }

    // component sums rebuild the full average on the integer-shift model
    FiniteSupport f;
    f.values[0] = cplx{1.0, 0.0};
    f.values[3] = cplx{0.5, -0.25};
    f.values[-7] = cplx{0.2, 0.0};
    const IntegerShift sys;
    double recon_err = 0.0;
    for (const long n : n_list) {
        const FiniteSupport direct = ergodic_average(sys, f, p_poly, n, SumWeight::flat);
        FiniteSupport total;
        for (std::size_t j = 0; j < dec.intervals().size(); ++j) {
            const FiniteSupport part = whitney_average(sys, f, dec, j, p_poly, n, SumWeight::flat);
            for (const auto& [key, val] : part.values) total.values[key] += val;
        }
        FiniteSupport diff = direct;
        for (const auto& [key, val] : total.values) diff.values[key] -= val;
        recon_err = std::max(recon_err, lp_norm(diff, variation_infinity));
        if (rep)
            rep->add_row({"reconstruction", std::to_string(n), format_double(recon_err)});
    }

    const bool pass = part_err <= 1e-10 && recon_err <= 1e-8 && overlap <= 40;
    if (rep) {
        rep->add_summary("partition_sum_error", part_err);
        rep->add_summary("reconstruction_error", recon_err);
        rep->add_summary("overlap_max", static_cast<long>(overlap));
        rep->add_summary("per_scale_count_max", static_cast<long>(size_constant));
    }
    return {pass, strf("partition err %.1e, reconstruction err %.1e, overlap %d (cap 40), "
                       "per-size count %zu",
                       part_err, recon_err, overlap, size_constant)};
}

// ---------------------------------------------------------- dispatching

void label_deviations(const std::string& experiment, ExperimentReport& rep,
                      const ExperimentConfig& cfg) {
    // parameters with no canonical value in the source analysis, pinned here
    if (experiment == "projection-growth" || experiment == "acceptance-all") {
        rep.deviations.emplace_back("growth.lambda",
                                    format_double(cfg.lambda) + " (jump altitude calibrated to "
                                    "unit-energy inputs; twice the per-sample RMS)");
        rep.deviations.emplace_back("growth.reading",
                                    "trend checks read ensemble means; estimate_ratio itself "
                                    "reports the max");
    }
    if (experiment == "multiplier-error" || experiment == "acceptance-all") {
        rep.deviations.emplace_back("multiplier.delta0", format_double(cfg.delta0));
        rep.deviations.emplace_back("precision",
                                    "100-digit phase reduction; 2^-40 floor ambiguity guard");
    }
    if (experiment == "ergodic-convergence" || experiment == "acceptance-all") {
        rep.deviations.emplace_back("ergodic.surrogates",
                                    "sqrt2 and the golden mean carried as 60-digit decimals");
    }
}

ExperimentReport make_report(const ExperimentConfig& cfg) {
    ExperimentReport rep;
    rep.experiment = cfg.experiment;
    rep.seed = cfg.seed;
    rep.config_hash = fnv1a_hex(canonical_text(cfg));
    rep.timestamp = utc_now();
    label_deviations(cfg.experiment, rep, cfg);
    return rep;
}

} // namespace

std::vector<CriterionResult> run_acceptance(
    const ExperimentConfig& cfg, const std::function<void(const CriterionResult&)>& on_result) {
    cfg.check();
    const std::uint64_t seed = cfg.seed;
    const int threads = cfg.threads;
    const GridGeometry grid{6, 15};
    const RealPolynomial q2 = RealPolynomial::sqrt2_square();

    std::vector<CriterionResult> out;
    auto record = [&](int index, const char* name, const Check& c) {
        out.push_back({index, name, c.pass, c.detail});
        if (on_result) on_result(out.back());
    };

    record(1, "oscillation statistics match the exhaustive oracle",
           oracle_suite(seed, 1000, threads, nullptr));
    record(2, "increment inequalities hold without exception",
           inequality_suite(seed, 10000, threads, nullptr));
    record(3, "martingale identities and Lepingle stability",
           lepingle_suite(seed, 500, 500, 150, {8, 10, 12, 14}, nullptr));
    record(4, "projection nesting, contraction and modulation",
           projection_suite(seed, 100, grid, threads, nullptr));
    record(5, "multi-frequency growth shape",
           growth_suite(seed, {2, 4, 8, 16, 32, 64, 128}, 320, 4, 0.25, grid, nullptr));
    record(6, "Weyl sum magnitude bounds", weyl_suite(500, threads, nullptr));
    record(7, "van der Corput decay envelope", vdc_suite(nullptr));
    record(8, "multiplier approximation error decay",
           multiplier_suite({256, 512, 1024, 2048, 4096, 8192, 16384}, 1.0 / 3.0, 4096, q2,
                            nullptr));
    record(9, "ergodic averages settle along the lacunary times",
           ergodic_suite(q2, 1, 65536, 100, {1024, 8192}, nullptr));
    record(10, "Whitney partition and reconstruction",
           whitney_suite(10, {64, 256}, q2, nullptr));
    return out;
}

ExperimentOutcome run_experiment(const ExperimentConfig& cfg,
                                 const std::function<void(const CriterionResult&)>& on_criterion) {
    cfg.check();
    ExperimentOutcome outcome;
    ExperimentReport& rep = outcome.report;
    rep = make_report(cfg);
    const GridGeometry grid{cfg.log2_domain, cfg.log2_samples};
    const bool q = cfg.quick;

    if (cfg.experiment == "stats-oracle") {
        rep.columns = {"check", "parameters", "samples", "violations"};
        const Check a = oracle_suite(cfg.seed, q ? 200 : 1000, cfg.threads, &rep);
        const Check b = inequality_suite(cfg.seed, q ? 2000 : 10000, cfg.threads, &rep);
        outcome.pass = a.pass && b.pass;
        rep.add_summary("detail", a.detail + "; " + b.detail);
    } else if (cfg.experiment == "lepingle") {
        rep.columns = {"depth", "jump_trials", "max_jump_ratio",
                       "var_trials", "max_variation_r2.1", "envelope_constant"};
        const Check c = q ? lepingle_suite(cfg.seed, 100, 80, 40, {8, 10, 12}, &rep)
                          : lepingle_suite(cfg.seed, 500, 500, 150, {8, 10, 12, 14}, &rep);
        outcome.pass = c.pass;
        rep.add_summary("detail", c.detail);
    } else if (cfg.experiment == "projection-growth") {
        rep.columns = {"operator", "N", "k_min", "k_max", "param",
                       "ratio",    "strategy", "seed", "trials"};
        const std::vector<std::size_t> ns = q ? std::vector<std::size_t>{2, 8, 32} : cfg.n_list;
        const long trials = q ? std::max<long>(2 * cfg.sets, 40) : cfg.trials;
        const Check c = growth_suite(cfg.seed, ns, trials, cfg.sets, cfg.lambda, grid, &rep);
        outcome.pass = c.pass;
        rep.add_summary("detail", c.detail);
    } else if (cfg.experiment == "weyl") {
        rep.columns = {"q", "worst_scaled_magnitude", "bound"};
        const Check c = weyl_suite(q ? 120 : 500, cfg.threads, &rep);
        outcome.pass = c.pass;
        rep.add_summary("detail", c.detail);
    } else if (cfg.experiment == "multiplier-error") {
        rep.columns = {"N", "delta0", "sup_error", "at_beta", "grid_size"};
        const std::vector<long> ns =
            q ? std::vector<long>{256, 1024}
              : std::vector<long>{256, 512, 1024, 2048, 4096, 8192, 16384};
        const Check c = multiplier_suite(ns, cfg.delta0, q ? 512 : cfg.mult_grid,
                                         parse_poly(cfg.poly), &rep);
        outcome.pass = c.pass;
        rep.add_summary("detail", c.detail);
    } else if (cfg.experiment == "ergodic-convergence") {
        rep.columns = {"observable", "n0", "tail_diameter_mean", "tail_diameter_max"};
        const Check c = q ? ergodic_suite(parse_poly(cfg.poly), cfg.lacunary_r, 8192, 20,
                                          {512, 2048}, &rep)
                          : ergodic_suite(parse_poly(cfg.poly), cfg.lacunary_r, cfg.n_max,
                                          cfg.grid_points, {1024, 8192}, &rep);
        outcome.pass = c.pass;
        rep.add_summary("detail", c.detail);
    } else if (cfg.experiment == "whitney-check") {
        rep.columns = {"kind", "key", "value"};
        const std::vector<long> ns = q ? std::vector<long>{64} : std::vector<long>{64, 256};
        const Check c = whitney_suite(cfg.grid_depth, ns, parse_poly(cfg.poly), &rep);
        outcome.pass = c.pass;
        rep.add_summary("detail", c.detail);
    } else { // acceptance-all; cfg.check() already vetted the name
        rep.columns = {"criterion", "name", "pass", "detail"};
        bool all = true;
        const auto results = run_acceptance(cfg, on_criterion);
        for (const auto& r : results) {
            all = all && r.pass;
            rep.add_row({std::to_string(r.index), r.name, r.pass ? "pass" : "fail", r.detail});
            rep.add_summary(strf("criterion_%d", r.index), r.pass);
        }
        outcome.pass = all;
    }
    rep.add_summary("pass", outcome.pass);
    return outcome;
}

} // namespace oscillab
