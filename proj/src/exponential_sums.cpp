#include "oscillab/exponential_sums.hpp"

#include "oscillab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace oscillab {

namespace {

constexpr double tau = 2.0 * std::numbers::pi;

// cpp_bin_float_100 carries ~332 mantissa bits; a raw phase of magnitude
// 2^e leaves 332-e bits after the point, and we insist on 40 of them.
const real_hp max_reducible_phase("1e87");

double reduce_phase(const real_hp& raw) {
    if (boost::multiprecision::fabs(raw) > max_reducible_phase)
        throw std::runtime_error("phase reduction: magnitude exhausts working precision");
    return static_cast<double>(frac(raw));
}

} // namespace

RealPolynomial::RealPolynomial(std::vector<std::string> coeff_digits, std::vector<bool> irrational)
    : digits_(std::move(coeff_digits)), irr_(std::move(irrational)) {
    if (digits_.size() < 2) throw std::domain_error("polynomial must have degree >= 1");
    if (irr_.size() != digits_.size())
        throw std::domain_error("irrationality flags must match coefficient count");
    coeffs_.reserve(digits_.size());
    for (const auto& s : digits_) coeffs_.emplace_back(s);
    if (coeffs_.back() == 0) throw std::domain_error("leading coefficient must be nonzero");
}

bool RealPolynomial::all_rational() const {
    return std::none_of(irr_.begin(), irr_.end(), [](bool b) { return b; });
}

bool RealPolynomial::monomial() const {
    for (std::size_t j = 0; j + 1 < coeffs_.size(); ++j)
        if (coeffs_[j] != 0) return false;
    return true;
}

real_hp RealPolynomial::eval(long n) const {
    real_hp acc = 0;
    const real_hp x(n);
    for (std::size_t j = coeffs_.size(); j-- > 0;) acc = acc * x + coeffs_[j];
    return acc;
}

RealPolynomial RealPolynomial::monomial_poly(const std::string& bd_digits, int d, bool irrational) {
    if (d < 1) throw std::domain_error("degree must be >= 1");
    std::vector<std::string> c(static_cast<std::size_t>(d) + 1, "0");
    std::vector<bool> flags(static_cast<std::size_t>(d) + 1, false);
    c.back() = bd_digits;
    flags.back() = irrational;
    return RealPolynomial(std::move(c), std::move(flags));
}

RealPolynomial RealPolynomial::sqrt2_square() { return monomial_poly(sqrt2_60, 2, true); }

cplx weyl_sum(long q, const std::vector<long>& a) {
    if (q < 1) throw std::domain_error("weyl_sum: modulus must be positive");
    cplx acc{0.0, 0.0};
    for (long r = 1; r <= q; ++r) {
        long e = 0;  // exponent sum mod q
        long pw = 1; // r^j mod q
        for (long aj : a) {
            pw = (pw * (r % q)) % q;
            e = (e + ((aj % q + q) % q) * pw) % q;
        }
        acc += std::polar(1.0, -tau * static_cast<double>(e) / static_cast<double>(q));
    }
    return acc / static_cast<double>(q);
}

cplx multiplier_m(long N, long xi, double beta, const RealPolynomial& Q, SumWeight weight) {
    if (N < 1) throw std::domain_error("multiplier: N must be positive");
    const real_hp mult = real_hp(xi) - real_hp(beta);
    const long top = weight == SumWeight::flat ? N : 2 * N;
    cplx sum{0.0, 0.0}, comp{0.0, 0.0}; // Kahan over both components
    for (long n = 1; n <= top; ++n) {
        double w = 1.0;
        if (weight == SumWeight::psi) {
            w = tail_bump()(static_cast<double>(n) / static_cast<double>(N));
            if (w == 0.0) continue;
        }
        const double ph = reduce_phase(mult * Q.eval(n));
        const cplx term = w * std::polar(1.0, tau * ph);
        const cplx y = term - comp;
        const cplx t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum / static_cast<double>(N);
}

namespace {

// integral_0^1 e(-2 pi i c t^d) dt by adaptive panels, pre-cut at
// t_i = (i/n)^{1/d} so every panel spans at most an eighth of a cycle
cplx vdc_quadrature(double c, int d) {
    auto f = [&](double t) { return std::polar(1.0, -tau * c * std::pow(t, d)); };
    const int segments = static_cast<int>(std::ceil(std::max(1.0, 8.0 * std::abs(c))));
    cplx acc{0.0, 0.0};
    double prev = 0.0;
    for (int i = 1; i <= segments; ++i) {
        const double next =
            i == segments ? 1.0
                          : std::pow(static_cast<double>(i) / segments, 1.0 / static_cast<double>(d));
        acc += integrate_adaptive(f, prev, next, 1e-11 / segments);
        prev = next;
    }
    return acc;
}

// integration-by-parts expansion of (1/d) integral_0^1 s^{a-1} e^{-i omega s} ds
// (a = 1/d, omega = 2 pi c, c > 0 large); frac_c = c mod 1 in [0, 1) supplied
// from high precision so e^{-i omega} keeps full accuracy
cplx vdc_series(double c, double frac_c, int d) {
    const double a = 1.0 / static_cast<double>(d);
    const double omega = tau * c;
    const cplx head =
        std::tgamma(a) * std::pow(omega, -a) * std::polar(1.0, -0.5 * std::numbers::pi * a);
    const cplx i_omega{0.0, omega};
    cplx term = 1.0 / i_omega;
    cplx series = term;
    for (int k = 1; k <= 16; ++k) {
        term *= (a - static_cast<double>(k)) / i_omega;
        series += term;
        if (std::abs(term) < 1e-18) break;
    }
    const cplx tail = std::polar(1.0, -tau * frac_c) * series;
    return (head - tail) * a;
}

} // namespace

cplx vdc_phi_cycles(const real_hp& cycles, int d, VdcVariant variant) {
    if (d < 1) throw std::domain_error("vdc: degree must be >= 1");
    if (boost::multiprecision::fabs(cycles) > max_reducible_phase)
        throw std::runtime_error("vdc: cycle count exhausts working precision");
    const double c = static_cast<double>(cycles);
    if (variant == VdcVariant::schwartz) {
        const double lo = std::pow(0.25, d);
        const double hi = std::pow(2.0, d);
        auto amp = [&](double s) { return cplx{tail_profile(s, d), 0.0}; };
        return oscillatory_integral(amp, c, lo, hi, 1e-10);
    }
    if (std::abs(c) <= 50.0) return vdc_quadrature(c, d);
    // conjugation symmetry: phi(-c) = conj(phi(c))
    const real_hp cpos = cycles < 0 ? real_hp(-cycles) : cycles;
    const cplx v = vdc_series(static_cast<double>(cpos), static_cast<double>(frac(cpos)), d);
    return c < 0.0 ? std::conj(v) : v;
}

cplx vdc_phi(long N, double beta, const real_hp& b_d, int d, VdcVariant variant) {
    if (N < 1) throw std::domain_error("vdc: N must be positive");
    real_hp cycles = b_d;
    for (int j = 0; j < d; ++j) cycles *= N;
    cycles *= real_hp(beta);
    return vdc_phi_cycles(cycles, d, variant);
}

std::vector<MajorArcFrequency> major_arcs(int s, long xi, const real_hp& b_d, int d,
                                          double window_lo, double window_hi) {
    if (s < 0) throw std::domain_error("major arcs: scale index must be >= 0");
    if (d < 1) throw std::domain_error("major arcs: degree must be >= 1");
    if (b_d == 0) throw std::domain_error("major arcs: leading coefficient must be nonzero");
    if (!(window_lo < window_hi)) throw std::domain_error("major arcs: empty window");

    std::vector<MajorArcFrequency> out;
    const long q_lo = long{1} << s;
    const long q_hi = long{1} << (s + 1);
    for (long q = q_lo; q < q_hi; ++q) {
        const long a_lo = q == 1 ? 0 : 1;
        const long a_hi = q == 1 ? 1 : q;
        for (long a = a_lo; a < a_hi; ++a) {
            if (std::gcd(a, q) != 1) continue;
            // theta = xi - (a/q + m)/b_d lands in [lo, hi) for integers m
            // between the two (orientation-dependent) endpoint solutions
            const real_hp f = real_hp(a) / real_hp(q);
            const real_hp u = b_d * (real_hp(xi) - real_hp(window_lo)) - f;
            const real_hp v = b_d * (real_hp(xi) - real_hp(window_hi)) - f;
            const real_hp lo_m = u < v ? u : v;
            const real_hp hi_m = u < v ? v : u;
            const long m_first = static_cast<long>(boost::multiprecision::ceil(lo_m));
            const long m_last = static_cast<long>(boost::multiprecision::floor(hi_m));
            for (long m = m_first; m <= m_last; ++m) {
                const real_hp theta_hp = real_hp(xi) - (f + real_hp(m)) / b_d;
                const double theta = static_cast<double>(theta_hp);
                if (!(theta >= window_lo && theta < window_hi)) continue;
                MajorArcFrequency arc;
                arc.theta = theta;
                arc.theta_hp = theta_hp;
                arc.q = q;
                arc.a_d = a;
                // the multiplier's local amplitude is (1/q) sum_r e(+a r^d / q);
                // negate the residue so weyl_sum's minus convention matches
                std::vector<long> coeffs(static_cast<std::size_t>(d), 0);
                coeffs.back() = (q - a % q) % q;
                arc.weyl_value = weyl_sum(q, coeffs);
                out.push_back(std::move(arc));
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const MajorArcFrequency& x, const MajorArcFrequency& y) {
                  return x.theta < y.theta;
              });
    return out;
}

cplx approx_multiplier_L(long N, int s, double beta, const std::vector<MajorArcFrequency>& arcs,
                         const SmoothBump& chi, const real_hp& b_d, int d) {
    const double bd_abs = std::abs(static_cast<double>(b_d));
    const double scale = std::pow(10.0, s) * bd_abs;
    const double reach = chi.support_hi() / scale; // beyond this chi vanishes
    const auto first = std::lower_bound(
        arcs.begin(), arcs.end(), beta - reach,
        [](const MajorArcFrequency& arc, double v) { return arc.theta < v; });
    real_hp npow = 1;
    for (int j = 0; j < d; ++j) npow *= N;
    cplx acc{0.0, 0.0};
    for (auto it = first; it != arcs.end() && it->theta <= beta + reach; ++it) {
        const real_hp dbeta = real_hp(beta) - it->theta_hp;
        const double cut = chi(scale * static_cast<double>(dbeta));
        if (cut == 0.0) continue;
        acc += it->weyl_value * vdc_phi_cycles(b_d * npow * dbeta, d, VdcVariant::rough) * cut;
    }
    return acc;
}

ErrorScanResult error_scan(const RealPolynomial& Q, long xi, long N, double delta0,
                           int grid_size) {
    if (!Q.monomial())
        throw std::domain_error("error scan: only monomial polynomials are supported");
    if (grid_size < 2) throw std::domain_error("error scan: grid too small");
    if (!(delta0 > 0.0)) throw std::domain_error("error scan: delta0 must be positive");
    const int d = Q.degree();
    const real_hp& bd = Q.coeff(d);
    const double bd_abs = std::abs(static_cast<double>(bd));

    // m_N over the whole half-offset grid at once: for each n reduce the
    // phase at beta_0 and the per-bin increment mod 1 in high precision,
    // then march across the grid in doubles (drift stays ~1e-12)
    std::vector<cplx> m(static_cast<std::size_t>(grid_size), cplx{0.0, 0.0});
    const real_hp G(grid_size);
    for (long n = 1; n <= N; ++n) {
        const real_hp qn = Q.eval(n);
        const real_hp qn_over_G = qn / G;
        double ph = reduce_phase(real_hp(xi) * qn - qn_over_G / 2);
        const double step = reduce_phase(-qn_over_G);
        for (int g = 0; g < grid_size; ++g) {
            m[static_cast<std::size_t>(g)] += std::polar(1.0, tau * ph);
            ph += step;
            if (ph >= 1.0) ph -= 1.0;
        }
    }
    for (auto& z : m) z /= static_cast<double>(N);

    const int s_max = static_cast<int>(std::floor(delta0 * std::log2(static_cast<double>(N))));
    std::vector<std::vector<MajorArcFrequency>> arcs_by_s;
    arcs_by_s.reserve(static_cast<std::size_t>(s_max) + 1);
    for (int s = 0; s <= s_max; ++s) {
        const double pad = 0.5 / (std::pow(10.0, s) * bd_abs) + 1e-9;
        arcs_by_s.push_back(major_arcs(s, xi, bd, d, -pad, 1.0 + pad));
    }

    ErrorScanResult out;
    out.N = N;
    out.delta0 = delta0;
    out.grid_size = grid_size;
    for (int g = 0; g < grid_size; ++g) {
        const double beta = (static_cast<double>(g) + 0.5) / static_cast<double>(grid_size);
        cplx L{0.0, 0.0};
        for (int s = 0; s <= s_max; ++s)
            L += approx_multiplier_L(N, s, beta, arcs_by_s[static_cast<std::size_t>(s)],
                                     arc_bump(), bd, d);
        const double err = std::abs(m[static_cast<std::size_t>(g)] - L);
        if (err > out.sup_error) {
            out.sup_error = err;
            out.at_beta = beta;
        }
    }
    return out;
}

} // namespace oscillab
