#include "oscillab/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace oscillab {
namespace {

using cplx = std::complex<double>;

// 15-point Kronrod extension of 7-point Gauss on [-1, 1]; the Gauss nodes
// are the even-indexed abscissae.
constexpr double kx[8] = {0.0,
                          0.2077849550078985,
                          0.4058451513773972,
                          0.5860872354676911,
                          0.7415311855993945,
                          0.8648644233597691,
                          0.9491079123427585,
                          0.9914553711208126};
constexpr double kw[8] = {0.2094821410847278, 0.2044329400752989, 0.1903505780647854,
                          0.1690047266392679, 0.1406532597155259, 0.1047900103222502,
                          0.0630920926299785, 0.0229353220105292};
constexpr double gw[4] = {0.4179591836734694, 0.3818300505051189, 0.2797053914892767,
                          0.1294849661688697};

struct PanelResult {
    cplx kronrod;
    double err;
};

PanelResult panel(const std::function<cplx(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    cplx vals[15];
    vals[7] = f(mid);
    for (int i = 1; i < 8; ++i) {
        vals[7 - i] = f(mid - half * kx[i]);
        vals[7 + i] = f(mid + half * kx[i]);
    }
    cplx k = kw[0] * vals[7];
    cplx g = gw[0] * vals[7];
    for (int i = 1; i < 8; ++i) {
        k += kw[i] * (vals[7 - i] + vals[7 + i]);
        if (i % 2 == 0) g += gw[i / 2] * (vals[7 - i] + vals[7 + i]);
    }
    k *= half;
    g *= half;
    return {k, std::abs(k - g)};
}

cplx refine(const std::function<cplx(double)>& f, double a, double b, double tol, int depth,
            QuadratureDiagnostics* diag) {
    const auto r = panel(f, a, b);
    if (r.err <= tol || b - a <= 1e-15 * (std::abs(a) + 1.0)) {
        if (depth <= 0 && r.err > tol) {
            std::ostringstream msg;
            msg << "quadrature failed to converge on [" << a << ", " << b
                << "], embedded error " << r.err << " > " << tol;
            throw std::runtime_error(msg.str());
        }
        if (diag) {
            ++diag->panels;
            diag->error_estimate += r.err;
        }
        return r.kronrod;
    }
    if (depth <= 0) {
        std::ostringstream msg;
        msg << "quadrature depth exhausted on [" << a << ", " << b << "], embedded error "
            << r.err;
        throw std::runtime_error(msg.str());
    }
    const double mid = 0.5 * (a + b);
    return refine(f, a, mid, 0.5 * tol, depth - 1, diag) +
           refine(f, mid, b, 0.5 * tol, depth - 1, diag);
}

} // namespace

cplx integrate_adaptive(const std::function<cplx(double)>& f, double a, double b, double abs_tol,
                        QuadratureDiagnostics* diag) {
    if (!(abs_tol > 0.0)) throw std::domain_error("quadrature tolerance must be positive");
    if (a == b) return {0.0, 0.0};
    return refine(f, a, b, abs_tol, 48, diag);
}

cplx oscillatory_integral(const std::function<cplx(double)>& g, double c, double a, double b,
                          double abs_tol, QuadratureDiagnostics* diag) {
    if (!(abs_tol > 0.0)) throw std::domain_error("quadrature tolerance must be positive");
    if (a == b) return {0.0, 0.0};
    const double tau = 2.0 * std::numbers::pi;
    auto f = [&](double s) { return g(s) * std::polar(1.0, -tau * c * s); };
    // an eighth of a cycle per initial panel keeps the phase tame everywhere
    const double cycles = std::abs(c) * (b - a);
    const double want = std::ceil(std::max(1.0, 8.0 * cycles));
    if (want > 2e6) throw std::runtime_error("oscillatory integral: cycle count too large");
    const int segments = static_cast<int>(want);
    cplx acc{0.0, 0.0};
    for (int i = 0; i < segments; ++i) {
        const double lo = a + (b - a) * static_cast<double>(i) / segments;
        const double hi = a + (b - a) * static_cast<double>(i + 1) / segments;
        acc += refine(f, lo, hi, abs_tol / segments, 24, diag);
    }
    return acc;
}

} // namespace oscillab
