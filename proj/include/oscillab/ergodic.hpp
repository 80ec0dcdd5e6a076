#pragma once

#include "oscillab/exponential_sums.hpp"
#include "oscillab/highprec.hpp"
#include "oscillab/oscillation.hpp"
#include "oscillab/whitney.hpp"

#include <map>
#include <variant>
#include <vector>

namespace oscillab {

/// x -> x + alpha mod 1 on the circle with Lebesgue measure.
struct CircleRotation {
    real_hp alpha;
};
/// x -> x + 1 on the integers with counting measure.
struct IntegerShift {};
using MeasurePreservingSystem = std::variant<CircleRotation, IntegerShift>;

/// f(x) = sum_j c_j e(k_j x) on the circle.
struct TrigPolynomial {
    std::vector<std::pair<long, cplx>> modes; // (frequency, coefficient)
};
/// 1_{[lo, hi)} on the circle; 0 <= lo < hi <= 1.
struct Indicator {
    double lo = 0.0;
    double hi = 1.0;
};
/// finitely supported function on the integers.
struct FiniteSupport {
    std::map<long, cplx> values;
};
using Observable = std::variant<TrigPolynomial, Indicator, FiniteSupport>;

/// Exact floor(P(n)). All-rational coefficient lists go through exact
/// integer arithmetic; otherwise the value is evaluated in high precision
/// and the call refuses (std::runtime_error) when P(n) sits within 2^{-40}
/// of an integer, because a wrong branch would change the orbit.
long floor_poly(const RealPolynomial& P, long n);

/// Evaluate a circle observable at x (reduced mod 1). FiniteSupport is not
/// a circle observable and is rejected.
cplx circle_value(const Observable& f, double x);

/// A_N f(x) = (1/N) sum_{n<=N} f(x + floor(P(n)) alpha); the psi weight
/// replaces the flat window with tail_bump(n/N) over n <= 2N.
cplx ergodic_average(const CircleRotation& rot, const Observable& f, double x,
                     const RealPolynomial& P, long N, SumWeight weight);

struct AverageSeries {
    std::vector<long> times; // strictly increasing
    std::vector<cplx> values;
};

/// floor(2^{k/R}) for k >= 1, clipped to [1, n_max], deduplicated.
std::vector<long> lacunary_times(int R, long n_max);

AverageSeries average_series(const CircleRotation& rot, const Observable& f, double x,
                             const RealPolynomial& P, int R, long n_max, SumWeight weight);

/// The same series over a whole grid of base points: values[t][i] is the
/// average at time times[t] and point grid[i]. The orbit positions are
/// precomputed once and shared across the grid.
struct SeriesGrid {
    std::vector<long> times;
    std::vector<double> grid;
    std::vector<std::vector<cplx>> values;
};

SeriesGrid average_series_grid(const CircleRotation& rot, const Observable& f,
                               const std::vector<double>& grid, const RealPolynomial& P,
                               int R, long n_max, SumWeight weight);

enum class SeriesStat { jump, variation, diameter };

/// Per-point oscillation statistic of the series plus normalized grid norms
/// (the grid plays the role of the measure on the base space).
struct OscillationReport {
    SeriesStat stat = SeriesStat::diameter;
    double param = 0.0;
    std::vector<double> per_point;
    double grid_l1 = 0.0;
    double grid_l2 = 0.0;
    double grid_linf = 0.0;
};

OscillationReport oscillation_report(const SeriesGrid& g, SeriesStat stat, double param);

/// diam{A_N : N >= n0} per grid point, aggregated as grid mean and max; the
/// Cauchy-tail proxy for pointwise convergence.
struct TailDiameters {
    std::vector<long> n0;
    std::vector<double> grid_mean;
    std::vector<double> grid_max;
};

TailDiameters tail_diameters(const SeriesGrid& g, const std::vector<long>& n0_list);

// --- integer shift model ---

/// (T^m f)(x) = f(x + m)
FiniteSupport shift_apply(const FiniteSupport& f, long m);

/// ell^p norm; p = infinity gives the sup norm.
double lp_norm(const FiniteSupport& f, double p);

/// A_N f as a function on the integers.
FiniteSupport ergodic_average(const IntegerShift& sys, const FiniteSupport& f,
                              const RealPolynomial& P, long N, SumWeight weight);

/// One Whitney component of the average:
///   sum_k (1/N) sum_{n<=N} phi_J(P(n) - k) T^k f,
/// evaluated exactly (only k near floor(P(n)) can contribute). Summing over
/// all intervals reconstructs A_N wherever the fractional parts {P(n)} stay
/// inside the partition-of-unity interior.
FiniteSupport whitney_average(const IntegerShift& sys, const FiniteSupport& f,
                              const WhitneyDecomposition& dec, std::size_t interval_index,
                              const RealPolynomial& P, long N, SumWeight weight);

/// Mean over the grid of |A_{n_max} f(x) - integral of f|; the
/// equidistribution deviation at the final time.
double weyl_limit_check(const CircleRotation& rot, const Observable& f,
                        const RealPolynomial& P, long n_max, const std::vector<double>& grid);

} // namespace oscillab
