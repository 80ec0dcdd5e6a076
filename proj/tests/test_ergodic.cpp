#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oscillab/ergodic.hpp"
#include "oscillab/rng.hpp"
#include "oscillab/smooth_bump.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace oscillab;

namespace {
constexpr double tau = 2.0 * std::numbers::pi;

FiniteSupport random_support(Rng& rng, int entries) {
    FiniteSupport f;
    while (static_cast<int>(f.values.size()) < entries) {
        const long pos = static_cast<long>(rng.below(41)) - 20;
        f.values[pos] = rng.complex_gaussian();
    }
    return f;
}

double support_distance(const FiniteSupport& a, const FiniteSupport& b) {
    double worst = 0.0;
    for (const auto& [p, v] : a.values) {
        const auto it = b.values.find(p);
        const cplx w = it == b.values.end() ? cplx{0.0, 0.0} : it->second;
        worst = std::max(worst, std::abs(v - w));
    }
    for (const auto& [p, v] : b.values)
        if (!a.values.count(p)) worst = std::max(worst, std::abs(v));
    return worst;
}
} // namespace

TEST_CASE("polynomial floors: exact paths and the ambiguity guard") {
    const RealPolynomial ident({"0", "1"}, {false, false});
    CHECK(floor_poly(ident, 5) == 5);
    CHECK(floor_poly(ident, 1) == 1);
    CHECK_THROWS_AS(floor_poly(ident, 0), std::domain_error);

    CHECK(floor_poly(RealPolynomial::sqrt2_square(), 3) == 12);

    // rational arithmetic handles negatives exactly
    const RealPolynomial shifted({"-3.5", "0", "1"}, {false, false, false});
    CHECK(floor_poly(shifted, 1) == -3); // 1 - 3.5 = -2.5
    CHECK(floor_poly(shifted, 2) == 0);  // 4 - 3.5 = 0.5

    // the same digits: the exact path resolves, the inexact path refuses
    const std::string near = "2.0000000000000000001";
    CHECK(floor_poly(RealPolynomial::monomial_poly(near, 1, false), 1) == 2);
    CHECK_THROWS_AS(floor_poly(RealPolynomial::monomial_poly(near, 1, true), 1),
                    std::runtime_error);

    CHECK_THROWS_AS(floor_poly(RealPolynomial::monomial_poly("1e90", 1, false), 1),
                    std::overflow_error);
}

TEST_CASE("rotation averages: constants, the geometric closed form") {
    const CircleRotation rot{real_hp(golden_60)};
    const RealPolynomial q2 = RealPolynomial::sqrt2_square();

    // constants survive flat averaging bit for bit
    const cplx c{0.75, -0.5};
    const Observable constant = TrigPolynomial{{{0, c}}};
    for (long N : {1L, 3L, 7L, 100L})
        CHECK(ergodic_average(rot, constant, 0.37, q2, N, SumWeight::flat) == c);

    // linear P: A_N f(x) = e(x) * (1/N) sum e(n alpha), a geometric series
    const RealPolynomial ident({"0", "1"}, {false, false});
    const Observable wave = TrigPolynomial{{{1, cplx{1.0, 0.0}}}};
    const long N = 733;
    const double x = 0.21;
    const real_hp a = frac(rot.alpha);
    const cplx ea = std::polar(1.0, tau * static_cast<double>(a));
    const cplx eNa = std::polar(1.0, tau * static_cast<double>(frac(a * N)));
    const cplx geo = ea * (1.0 - eNa) / (1.0 - ea);
    const cplx want = std::polar(1.0, tau * x) * geo / static_cast<double>(N);
    CHECK(std::abs(ergodic_average(rot, wave, x, ident, N, SumWeight::flat) - want) < 1e-10);

    // indicator averages are real frequencies in [0, 1]
    const Observable box = Indicator{0.2, 0.5};
    const cplx hits = ergodic_average(rot, box, 0.11, q2, 200, SumWeight::flat);
    CHECK(hits.imag() == 0.0);
    CHECK(hits.real() >= 0.0);
    CHECK(hits.real() <= 1.0);

    CHECK_THROWS_AS(ergodic_average(rot, constant, 0.0, q2, 0, SumWeight::flat),
                    std::domain_error);
    CHECK_THROWS_AS(ergodic_average(rot, Observable{FiniteSupport{}}, 0.0, q2, 4,
                                    SumWeight::flat),
                    std::domain_error);
}

TEST_CASE("lacunary sampling times") {
    CHECK(lacunary_times(1, 64) == std::vector<long>{2, 4, 8, 16, 32, 64});
    CHECK(lacunary_times(4, 16) == std::vector<long>{1, 2, 3, 4, 5, 6, 8, 9, 11, 13, 16});

    // refinement only adds times
    const auto coarse = lacunary_times(1, 256);
    const auto fine = lacunary_times(2, 256);
    for (const long t : coarse)
        CHECK(std::find(fine.begin(), fine.end(), t) != fine.end());

    CHECK_THROWS_AS(lacunary_times(0, 64), std::domain_error);
    CHECK_THROWS_AS(lacunary_times(1, 0), std::domain_error);
}

TEST_CASE("average series: refinement monotonicity and tail diameters") {
    const CircleRotation rot{real_hp(golden_60)};
    const RealPolynomial q2 = RealPolynomial::sqrt2_square();
    const Observable wave = TrigPolynomial{{{1, cplx{1.0, 0.0}}}};

    std::vector<double> grid;
    for (int i = 0; i < 16; ++i) grid.push_back(i / 16.0 + 1.0 / 32.0);

    const SeriesGrid g1 = average_series_grid(rot, wave, grid, q2, 1, 256, SumWeight::flat);
    const SeriesGrid g2 = average_series_grid(rot, wave, grid, q2, 2, 256, SumWeight::flat);
    CHECK(g1.times == lacunary_times(1, 256));

    // the scalar entry point is the single-point grid
    const AverageSeries s = average_series(rot, wave, grid[3], q2, 1, 256, SumWeight::flat);
    REQUIRE(s.times == g1.times);
    for (std::size_t t = 0; t < s.times.size(); ++t)
        CHECK(std::abs(s.values[t] - g1.values[t][3]) == 0.0);

    // a coarser time set is a subsequence, so every statistic can only drop
    const OscillationReport v1 = oscillation_report(g1, SeriesStat::variation, 2.0);
    const OscillationReport v2 = oscillation_report(g2, SeriesStat::variation, 2.0);
    const OscillationReport j1 = oscillation_report(g1, SeriesStat::jump, 0.05);
    const OscillationReport j2 = oscillation_report(g2, SeriesStat::jump, 0.05);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(v1.per_point[i] <= v2.per_point[i] + 1e-12);
        CHECK(j1.per_point[i] <= j2.per_point[i] + 1e-12);
    }
    CHECK(v1.grid_linf >= v1.grid_l2);
    CHECK(v1.grid_l2 >= v1.grid_l1 - 1e-15);

    // constant observables do not oscillate at all
    const Observable constant = TrigPolynomial{{{0, cplx{0.75, -0.5}}}};
    const SeriesGrid gc = average_series_grid(rot, constant, grid, q2, 1, 256, SumWeight::flat);
    const OscillationReport dc = oscillation_report(gc, SeriesStat::diameter, 0.0);
    for (const double v : dc.per_point) CHECK(v == 0.0);
    CHECK(dc.grid_linf == 0.0);

    // tails can only shrink as the cutoff rises
    const TailDiameters td = tail_diameters(g1, {4, 16, 64, 256});
    for (std::size_t i = 1; i < td.n0.size(); ++i) {
        CHECK(td.grid_mean[i] <= td.grid_mean[i - 1] + 1e-15);
        CHECK(td.grid_max[i] <= td.grid_max[i - 1] + 1e-15);
    }
    CHECK_THROWS_AS(tail_diameters(g1, {512}), std::domain_error);

    // smooth weights stay bounded by the weight mass
    const SeriesGrid gp = average_series_grid(rot, wave, {0.1, 0.6}, q2, 1, 64, SumWeight::psi);
    for (const auto& row : gp.values)
        for (const cplx z : row) CHECK(std::abs(z) <= 1.6);
}

TEST_CASE("integer shift: exact transport and norms") {
    Rng rng = Rng::for_trial(0x5eed6, 3);
    const FiniteSupport f = random_support(rng, 8);

    for (const long m : {-5L, 17L}) {
        const FiniteSupport shifted = shift_apply(f, m);
        for (const double p : {1.0, 2.0}) CHECK(lp_norm(shifted, p) == lp_norm(f, p));
        CHECK(lp_norm(shifted, std::numeric_limits<double>::infinity()) ==
              lp_norm(f, std::numeric_limits<double>::infinity()));
        // shifting back restores the original support exactly
        CHECK(support_distance(shift_apply(shifted, -m), f) == 0.0);
    }
    CHECK_THROWS_AS(lp_norm(f, 0.5), std::domain_error);

    // delta mass at 0 under P(n) = n spreads over {-1, -2, -3} with mass 1/3
    FiniteSupport delta;
    delta.values[0] = cplx{1.0, 0.0};
    const RealPolynomial ident({"0", "1"}, {false, false});
    const FiniteSupport avg = ergodic_average(IntegerShift{}, delta, ident, 3, SumWeight::flat);
    REQUIRE(avg.values.size() == 3);
    for (const long pos : {-1L, -2L, -3L})
        CHECK(std::abs(avg.values.at(pos) - cplx{1.0 / 3.0, 0.0}) < 1e-15);

    // psi weight reproduces the bump samples
    const FiniteSupport pavg = ergodic_average(IntegerShift{}, delta, ident, 4, SumWeight::psi);
    for (long n = 1; n <= 8; ++n) {
        const double w = tail_bump()(n / 4.0);
        if (w == 0.0) {
            CHECK(!pavg.values.count(-n));
        } else {
            CHECK(std::abs(pavg.values.at(-n) - cplx{w / 4.0, 0.0}) < 1e-15);
        }
    }
}

TEST_CASE("whitney filtering reconstructs the average") {
    const WhitneyDecomposition dec(10);
    const IntegerShift shift;
    Rng rng = Rng::for_trial(0x5eed6, 9);
    const FiniteSupport f = random_support(rng, 4);

    // a single time whose fractional part sits deep inside one interval
    const RealPolynomial deep({"0.728", "1"}, {false, false});
    const long j = dec.find(0.728);
    REQUIRE(j >= 0);
    const FiniteSupport one =
        whitney_average(shift, f, dec, static_cast<std::size_t>(j), deep, 1, SumWeight::flat);
    CHECK(support_distance(one, shift_apply(f, 1)) < 1e-15);

    // an interval far from the fractional part contributes nothing
    const long j_far = dec.find(0.2);
    REQUIRE(j_far >= 0);
    CHECK(whitney_average(shift, f, dec, static_cast<std::size_t>(j_far), deep, 1,
                          SumWeight::flat)
              .values.empty());

    // summing every component reconstructs the plain average
    const RealPolynomial q2 = RealPolynomial::sqrt2_square();
    const long N = 64;
    const FiniteSupport full = ergodic_average(shift, f, q2, N, SumWeight::flat);
    FiniteSupport total;
    for (std::size_t i = 0; i < dec.intervals().size(); ++i) {
        const FiniteSupport part = whitney_average(shift, f, dec, i, q2, N, SumWeight::flat);
        for (const auto& [p, v] : part.values) total.values[p] += v;
    }
    CHECK(support_distance(total, full) < 1e-8);

    // components never exceed the input in sup norm (L^infinity sanity)
    const double fmax = lp_norm(f, std::numeric_limits<double>::infinity());
    const FiniteSupport comp =
        whitney_average(shift, f, dec, static_cast<std::size_t>(j), q2, N, SumWeight::flat);
    CHECK(lp_norm(comp, std::numeric_limits<double>::infinity()) <= fmax + 1e-12);

    CHECK_THROWS_AS(whitney_average(shift, f, dec, dec.intervals().size(), q2, 1,
                                    SumWeight::flat),
                    std::domain_error);
}

TEST_CASE("equidistribution deviation at the final time") {
    const CircleRotation rot{real_hp(golden_60)};
    std::vector<double> grid;
    for (int i = 0; i < 10; ++i) grid.push_back(i / 10.0);

    // constant observables have zero deviation
    const Observable flat1 = TrigPolynomial{{{0, cplx{1.0, 0.0}}}};
    const RealPolynomial q2 = RealPolynomial::sqrt2_square();
    CHECK(weyl_limit_check(rot, flat1, q2, 64, grid) == 0.0);

    // linear orbit of a pure wave: geometric-series cancellation
    const RealPolynomial ident({"0", "1"}, {false, false});
    const Observable wave = TrigPolynomial{{{1, cplx{1.0, 0.0}}}};
    CHECK(weyl_limit_check(rot, wave, ident, 4096, grid) < 5e-4);

    // indicator under the quadratic orbit: small but not tiny at 2^12 steps
    const Observable box = Indicator{0.0, 1.0 / 3.0};
    const double dev = weyl_limit_check(rot, box, q2, 4096, grid);
    CHECK(dev > 0.0);
    CHECK(dev < 0.05);

    CHECK_THROWS_AS(weyl_limit_check(rot, wave, q2, 64, {}), std::domain_error);
    CHECK_THROWS_AS(weyl_limit_check(rot, Observable{FiniteSupport{}}, q2, 64, grid),
                    std::domain_error);
}
