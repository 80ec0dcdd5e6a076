#pragma once

#include <complex>
#include <functional>

namespace oscillab {

struct QuadratureDiagnostics {
    int panels = 0;            // leaf panels accepted
    double error_estimate = 0; // summed embedded-rule discrepancy
};

/// Adaptive Gauss7/Kronrod15 on a complex integrand. Panels split until the
/// embedded error estimate is below the local share of abs_tol; depth
/// exhaustion throws std::runtime_error with the worst panel in the message.
std::complex<double> integrate_adaptive(const std::function<std::complex<double>(double)>& f,
                                        double a, double b, double abs_tol,
                                        QuadratureDiagnostics* diag = nullptr);

/// integral of g(s) e(-2 pi i c s) over [a, b]: the range is pre-split so no
/// panel sees more than an eighth of a cycle, then refined adaptively.
std::complex<double> oscillatory_integral(const std::function<std::complex<double>(double)>& g,
                                          double c, double a, double b, double abs_tol,
                                          QuadratureDiagnostics* diag = nullptr);

} // namespace oscillab
