#pragma once

#include "oscillab/highprec.hpp"
#include "oscillab/oscillation.hpp"
#include "oscillab/smooth_bump.hpp"

#include <string>
#include <vector>

namespace oscillab {

/// Real polynomial b_0 + b_1 t + ... + b_d t^d with coefficients carried as
/// decimal strings (>= 60 significant digits for the irrational surrogates)
/// and parsed once into high precision.
class RealPolynomial {
  public:
    RealPolynomial(std::vector<std::string> coeff_digits, std::vector<bool> irrational);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const real_hp& coeff(int j) const { return coeffs_.at(static_cast<std::size_t>(j)); }
    const std::string& digits(int j) const { return digits_.at(static_cast<std::size_t>(j)); }
    bool coefficient_irrational(int j) const { return irr_.at(static_cast<std::size_t>(j)); }
    bool all_rational() const;
    bool monomial() const; // b_j = 0 for all j < d

    real_hp eval(long n) const;

    /// b_d t^d with the coefficient given in decimal
    static RealPolynomial monomial_poly(const std::string& bd_digits, int d, bool irrational);
    /// the workhorse example: sqrt(2) t^2 (60-digit surrogate)
    static RealPolynomial sqrt2_square();

  private:
    std::vector<std::string> digits_;
    std::vector<real_hp> coeffs_;
    std::vector<bool> irr_;
};

/// Complete normalized Weyl sum (1/q) sum_{r=1..q} e(-(a_1 r + ... + a_d r^d)/q).
cplx weyl_sum(long q, const std::vector<long>& a);

enum class SumWeight { flat, psi };

/// (1/N) sum_{n<=N} e((xi - beta) Q(n)) with high-precision phase reduction
/// and compensated summation; psi weight replaces 1/N by tail_bump(n/N)/N.
cplx multiplier_m(long N, long xi, double beta, const RealPolynomial& Q, SumWeight weight);

enum class VdcVariant { rough, schwartz };

/// phi_N(beta) = integral_0^1 e(-b_d N^d beta t^d) dt (rough) or the
/// d-th-root profile transform (schwartz). Small cycle counts go through
/// adaptive quadrature at tolerance 1e-10; large ones through the
/// integration-by-parts series with the oscillation phase reduced mod 1 in
/// high precision.
cplx vdc_phi(long N, double beta, const real_hp& b_d, int d, VdcVariant variant);

/// same with the cycle count precomputed: cycles = b_d N^d beta
cplx vdc_phi_cycles(const real_hp& cycles, int d, VdcVariant variant);

struct MajorArcFrequency {
    double theta = 0.0; // double mirror of theta_hp
    real_hp theta_hp;
    long q = 1;
    long a_d = 0;
    cplx weyl_value;
};

/// Frequencies theta = xi - (a_d/q + m)/b_d with q in [2^s, 2^{s+1}),
/// gcd(a_d, q) = 1, landing in [window_lo, window_hi); each carries the
/// congruence-matched Weyl amplitude. Monomial Q only.
std::vector<MajorArcFrequency> major_arcs(int s, long xi, const real_hp& b_d, int d,
                                          double window_lo, double window_hi);

/// L_{N,s}(beta) = sum_theta S(theta) phi_N(beta - theta)
///                 chi(10^s |b_d| (beta - theta)), arcs sorted by theta.
cplx approx_multiplier_L(long N, int s, double beta, const std::vector<MajorArcFrequency>& arcs,
                         const SmoothBump& chi, const real_hp& b_d, int d);

struct ErrorScanResult {
    long N = 0;
    double delta0 = 0.0;
    double sup_error = 0.0;
    int grid_size = 0;
    double at_beta = 0.0; // argmax of the error over the grid
};

/// sup over the half-offset beta grid of |m_N(beta) - sum_{2^s <= N^delta0}
/// L_{N,s}(beta)| for the monomial Q; xi integer.
ErrorScanResult error_scan(const RealPolynomial& Q, long xi, long N, double delta0,
                           int grid_size);

} // namespace oscillab
