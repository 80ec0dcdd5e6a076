#include "oscillab/ergodic.hpp"

#include "oscillab/smooth_bump.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace oscillab {

namespace {

constexpr double tau = 2.0 * std::numbers::pi;

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

// strict decimal parser: [+-]digits[.digits][e[+-]digits] -> exact rational
cpp_rational parse_decimal(const std::string& s) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    cpp_int mant = 0;
    long frac_digits = 0;
    bool any = false, dot = false;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '.') {
            if (dot) throw std::domain_error("bad decimal literal: " + s);
            dot = true;
            continue;
        }
        if (c == 'e' || c == 'E') break;
        if (c < '0' || c > '9') throw std::domain_error("bad decimal literal: " + s);
        mant = mant * 10 + (c - '0');
        any = true;
        if (dot) ++frac_digits;
    }
    if (!any) throw std::domain_error("bad decimal literal: " + s);
    long exp10 = 0;
    if (i < s.size()) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
        if (i >= s.size()) throw std::domain_error("bad decimal literal: " + s);
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw std::domain_error("bad decimal literal: " + s);
            exp10 = exp10 * 10 + (s[i] - '0');
            if (exp10 > 1000000) throw std::domain_error("exponent out of range: " + s);
        }
        if (eneg) exp10 = -exp10;
    }
    cpp_rational r(mant);
    const long net = exp10 - frac_digits;
    if (net > 0)
        r *= cpp_rational(boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(net)));
    else if (net < 0)
        r /= cpp_rational(boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(-net)));
    return neg ? cpp_rational(-r) : r;
}

cpp_int floor_rational(const cpp_rational& r) {
    const cpp_int num = boost::multiprecision::numerator(r);
    const cpp_int den = boost::multiprecision::denominator(r); // canonical, > 0
    cpp_int q = num / den;                                     // truncates toward zero
    if (num < 0 && q * den != num) --q;
    return q;
}

void kahan_add(cplx& sum, cplx& comp, const cplx& term) {
    const cplx y = term - comp;
    const cplx t = sum + y;
    comp = (t - sum) - y;
    sum = t;
}

// orbit data shared across base points: floor(P(n)) and frac(floor(P(n)) alpha)
struct OrbitTable {
    std::vector<long> m;
    std::vector<double> z;
};

OrbitTable orbit_table(const CircleRotation& rot, const RealPolynomial& P, long top) {
    OrbitTable t;
    t.m.reserve(static_cast<std::size_t>(top));
    t.z.reserve(static_cast<std::size_t>(top));
    const real_hp a = frac(rot.alpha);
    for (long n = 1; n <= top; ++n) {
        const long m = floor_poly(P, n);
        t.m.push_back(m);
        t.z.push_back(static_cast<double>(frac(real_hp(m) * a)));
    }
    return t;
}

double wrap_unit(double x) {
    x -= std::floor(x);
    return x >= 1.0 ? 0.0 : x;
}

} // namespace

long floor_poly(const RealPolynomial& P, long n) {
    if (n < 1) throw std::domain_error("floor_poly: n must be >= 1");
    if (P.all_rational()) {
        cpp_rational acc = 0;
        const cpp_rational x(n);
        for (int j = P.degree(); j >= 0; --j) acc = acc * x + parse_decimal(P.digits(j));
        const cpp_int fl = floor_rational(acc);
        if (boost::multiprecision::abs(fl) > cpp_int(long{1} << 62))
            throw std::overflow_error("floor_poly: value exceeds the integer range");
        return static_cast<long>(fl);
    }
    const real_hp v = P.eval(n);
    if (boost::multiprecision::fabs(v) > real_hp(4.0e18))
        throw std::overflow_error("floor_poly: value exceeds the integer range");
    const real_hp fl = boost::multiprecision::floor(v);
    const real_hp residual = v - fl;
    const real_hp dist = residual < real_hp(0.5) ? residual : real_hp(1) - residual;
    static const real_hp ambiguity = real_hp(1) / real_hp(std::uint64_t{1} << 40);
    if (dist < ambiguity) {
        std::ostringstream os;
        os << "floor_poly: P(" << n << ") lies within " << static_cast<double>(dist)
           << " of an integer; refusing to pick a branch";
        throw std::runtime_error(os.str());
    }
    return static_cast<long>(fl);
}

cplx circle_value(const Observable& f, double x) {
    x = wrap_unit(x);
    if (const auto* tp = std::get_if<TrigPolynomial>(&f)) {
        cplx acc{0.0, 0.0};
        for (const auto& [k, c] : tp->modes)
            acc += c * std::polar(1.0, tau * static_cast<double>(k) * x);
        return acc;
    }
    if (const auto* ind = std::get_if<Indicator>(&f)) {
        if (!(ind->lo >= 0.0 && ind->lo < ind->hi && ind->hi <= 1.0))
            throw std::domain_error("indicator: need 0 <= lo < hi <= 1");
        return x >= ind->lo && x < ind->hi ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
    }
    throw std::domain_error("finite-support observables live on the integer shift");
}

cplx ergodic_average(const CircleRotation& rot, const Observable& f, double x,
                     const RealPolynomial& P, long N, SumWeight weight) {
    if (N < 1) throw std::domain_error("ergodic average: N must be >= 1");
    const long top = weight == SumWeight::flat ? N : 2 * N;
    const OrbitTable tab = orbit_table(rot, P, top);
    const double x0 = wrap_unit(x);
    cplx sum{0.0, 0.0}, comp{0.0, 0.0};
    for (long n = 1; n <= top; ++n) {
        double w = 1.0;
        if (weight == SumWeight::psi) {
            w = tail_bump()(static_cast<double>(n) / static_cast<double>(N));
            if (w == 0.0) continue;
        }
        double y = x0 + tab.z[static_cast<std::size_t>(n - 1)];
        if (y >= 1.0) y -= 1.0;
        kahan_add(sum, comp, w * circle_value(f, y));
    }
    return sum / static_cast<double>(N);
}

std::vector<long> lacunary_times(int R, long n_max) {
    if (R < 1) throw std::domain_error("lacunary times: R must be >= 1");
    if (n_max < 1) throw std::domain_error("lacunary times: empty horizon");
    std::vector<long> out;
    for (long k = 1;; ++k) {
        const long t = static_cast<long>(
            std::floor(std::exp2(static_cast<double>(k) / static_cast<double>(R))));
        if (t > n_max) break;
        if (out.empty() || out.back() != t) out.push_back(t);
    }
    return out;
}

SeriesGrid average_series_grid(const CircleRotation& rot, const Observable& f,
                               const std::vector<double>& grid, const RealPolynomial& P,
                               int R, long n_max, SumWeight weight) {
    if (grid.empty()) throw std::domain_error("series grid: empty base-point grid");
    SeriesGrid g;
    g.times = lacunary_times(R, n_max);
    g.grid = grid;
    g.values.assign(g.times.size(), std::vector<cplx>(grid.size()));
    const long horizon = g.times.back();
    const long top = weight == SumWeight::flat ? horizon : 2 * horizon;
    const OrbitTable tab = orbit_table(rot, P, top);

    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x0 = wrap_unit(grid[i]);
        if (weight == SumWeight::flat) {
            // one pass with running prefix sums, snapshots at the sample times
            cplx sum{0.0, 0.0}, comp{0.0, 0.0};
            std::size_t ti = 0;
            for (long n = 1; n <= horizon; ++n) {
                double y = x0 + tab.z[static_cast<std::size_t>(n - 1)];
                if (y >= 1.0) y -= 1.0;
                kahan_add(sum, comp, circle_value(f, y));
                while (ti < g.times.size() && g.times[ti] == n)
                    g.values[ti++][i] = sum / static_cast<double>(n);
            }
        } else {
            for (std::size_t ti = 0; ti < g.times.size(); ++ti) {
                const long N = g.times[ti];
                cplx sum{0.0, 0.0}, comp{0.0, 0.0};
                for (long n = 1; n <= 2 * N; ++n) {
                    const double w =
                        tail_bump()(static_cast<double>(n) / static_cast<double>(N));
                    if (w == 0.0) continue;
                    double y = x0 + tab.z[static_cast<std::size_t>(n - 1)];
                    if (y >= 1.0) y -= 1.0;
                    kahan_add(sum, comp, w * circle_value(f, y));
                }
                g.values[ti][i] = sum / static_cast<double>(N);
            }
        }
    }
    return g;
}

AverageSeries average_series(const CircleRotation& rot, const Observable& f, double x,
                             const RealPolynomial& P, int R, long n_max, SumWeight weight) {
    const SeriesGrid g = average_series_grid(rot, f, {x}, P, R, n_max, weight);
    AverageSeries s;
    s.times = g.times;
    s.values.reserve(g.times.size());
    for (const auto& row : g.values) s.values.push_back(row.front());
    return s;
}

OscillationReport oscillation_report(const SeriesGrid& g, SeriesStat stat, double param) {
    if (g.grid.empty() || g.times.empty())
        throw std::domain_error("oscillation report: empty series grid");
    OscillationReport rep;
    rep.stat = stat;
    rep.param = param;
    rep.per_point.reserve(g.grid.size());
    std::vector<cplx> seq(g.times.size());
    for (std::size_t i = 0; i < g.grid.size(); ++i) {
        for (std::size_t t = 0; t < g.times.size(); ++t) seq[t] = g.values[t][i];
        double v = 0.0;
        switch (stat) {
        case SeriesStat::jump:
            v = static_cast<double>(jump_count(std::span<const cplx>(seq), param));
            break;
        case SeriesStat::variation:
            v = r_variation(std::span<const cplx>(seq), param);
            break;
        case SeriesStat::diameter:
            v = r_variation(std::span<const cplx>(seq), variation_infinity);
            break;
        }
        rep.per_point.push_back(v);
    }
    double l1 = 0.0, l2 = 0.0, linf = 0.0;
    for (const double v : rep.per_point) {
        l1 += std::abs(v);
        l2 += v * v;
        linf = std::max(linf, std::abs(v));
    }
    const double count = static_cast<double>(rep.per_point.size());
    rep.grid_l1 = l1 / count;
    rep.grid_l2 = std::sqrt(l2 / count);
    rep.grid_linf = linf;
    return rep;
}

TailDiameters tail_diameters(const SeriesGrid& g, const std::vector<long>& n0_list) {
    TailDiameters td;
    for (const long n0 : n0_list) {
        const auto it = std::lower_bound(g.times.begin(), g.times.end(), n0);
        if (it == g.times.end())
            throw std::domain_error("tail diameters: no sampling times past n0");
        const std::size_t t0 = static_cast<std::size_t>(it - g.times.begin());
        double mean = 0.0, worst = 0.0;
        std::vector<cplx> seq;
        for (std::size_t i = 0; i < g.grid.size(); ++i) {
            seq.clear();
            for (std::size_t t = t0; t < g.times.size(); ++t) seq.push_back(g.values[t][i]);
            const double diam = r_variation(std::span<const cplx>(seq), variation_infinity);
            mean += diam;
            worst = std::max(worst, diam);
        }
        td.n0.push_back(n0);
        td.grid_mean.push_back(mean / static_cast<double>(g.grid.size()));
        td.grid_max.push_back(worst);
    }
    return td;
}

FiniteSupport shift_apply(const FiniteSupport& f, long m) {
    FiniteSupport out;
    for (const auto& [p, v] : f.values) out.values.emplace_hint(out.values.end(), p - m, v);
    return out;
}

double lp_norm(const FiniteSupport& f, double p) {
    if (std::isinf(p)) {
        double worst = 0.0;
        for (const auto& [pos, v] : f.values) worst = std::max(worst, std::abs(v));
        return worst;
    }
    if (!(p >= 1.0)) throw std::domain_error("lp norm: p must be >= 1");
    double acc = 0.0;
    for (const auto& [pos, v] : f.values) acc += std::pow(std::abs(v), p);
    return std::pow(acc, 1.0 / p);
}

FiniteSupport ergodic_average(const IntegerShift&, const FiniteSupport& f,
                              const RealPolynomial& P, long N, SumWeight weight) {
    if (N < 1) throw std::domain_error("ergodic average: N must be >= 1");
    const long top = weight == SumWeight::flat ? N : 2 * N;
    FiniteSupport out;
    for (long n = 1; n <= top; ++n) {
        double w = 1.0;
        if (weight == SumWeight::psi) {
            w = tail_bump()(static_cast<double>(n) / static_cast<double>(N));
            if (w == 0.0) continue;
        }
        const long m = floor_poly(P, n);
        for (const auto& [p, v] : f.values) out.values[p - m] += w * v;
    }
    for (auto& [p, v] : out.values) v /= static_cast<double>(N);
    return out;
}

FiniteSupport whitney_average(const IntegerShift&, const FiniteSupport& f,
                              const WhitneyDecomposition& dec, std::size_t interval_index,
                              const RealPolynomial& P, long N, SumWeight weight) {
    if (interval_index >= dec.intervals().size())
        throw std::domain_error("whitney average: interval index out of range");
    if (N < 1) throw std::domain_error("whitney average: N must be >= 1");
    const long top = weight == SumWeight::flat ? N : 2 * N;
    FiniteSupport out;
    for (long n = 1; n <= top; ++n) {
        double w = 1.0;
        if (weight == SumWeight::psi) {
            w = tail_bump()(static_cast<double>(n) / static_cast<double>(N));
            if (w == 0.0) continue;
        }
        const real_hp pn = P.eval(n);
        const long m = floor_poly(P, n);
        // phi_J is supported in [0, 1], so only k with P(n) - k there matters
        for (long k = m - 1; k <= m + 1; ++k) {
            const double phi = dec.bump(interval_index, static_cast<double>(pn - real_hp(k)));
            if (phi == 0.0) continue;
            const double wphi = w * phi;
            for (const auto& [p, v] : f.values) out.values[p - k] += wphi * v;
        }
    }
    for (auto& [p, v] : out.values) v /= static_cast<double>(N);
    return out;
}

double weyl_limit_check(const CircleRotation& rot, const Observable& f,
                        const RealPolynomial& P, long n_max, const std::vector<double>& grid) {
    if (grid.empty()) throw std::domain_error("weyl check: empty grid");
    if (n_max < 1) throw std::domain_error("weyl check: N must be >= 1");
    cplx mean_f{0.0, 0.0};
    if (const auto* tp = std::get_if<TrigPolynomial>(&f)) {
        for (const auto& [k, c] : tp->modes)
            if (k == 0) mean_f += c;
    } else if (const auto* ind = std::get_if<Indicator>(&f)) {
        if (!(ind->lo >= 0.0 && ind->lo < ind->hi && ind->hi <= 1.0))
            throw std::domain_error("indicator: need 0 <= lo < hi <= 1");
        mean_f = cplx{ind->hi - ind->lo, 0.0};
    } else {
        throw std::domain_error("finite-support observables live on the integer shift");
    }
    const OrbitTable tab = orbit_table(rot, P, n_max);
    double acc = 0.0;
    for (const double x : grid) {
        const double x0 = wrap_unit(x);
        cplx sum{0.0, 0.0}, comp{0.0, 0.0};
        for (long n = 1; n <= n_max; ++n) {
            double y = x0 + tab.z[static_cast<std::size_t>(n - 1)];
            if (y >= 1.0) y -= 1.0;
            kahan_add(sum, comp, circle_value(f, y));
        }
        acc += std::abs(sum / static_cast<double>(n_max) - mean_f);
    }
    return acc / static_cast<double>(grid.size());
}

} // namespace oscillab
