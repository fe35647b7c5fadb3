#pragma once

#include <array>
#include <cstdint>

#include "zml/ext_real.hpp"

namespace zml {

/// Riemann-Siegel theta function from its asymptotic expansion. t >= 10.
ExtReal rs_theta(const ExtReal& t);

/// theta(t) for any real t (odd in t). Uses the asymptotic series for
/// |t| >= 10 and a shifted Stirling series for log Gamma below.
ExtReal theta(const ExtReal& t);

enum class ZPath { automatic, euler_maclaurin, riemann_siegel };

/// Hardy's Z(t) = exp(i theta(t)) zeta(1/2 + it), real for real t.
/// The automatic path uses Euler-Maclaurin for |t| < 1000 and the
/// Riemann-Siegel formula with corrections C0..C4 above. |t| <= 1e7.
ExtReal hardy_z(const ExtReal& t, ZPath path = ZPath::automatic);

struct ZPrimeDetail {
    ExtReal value;
    std::array<ExtReal, 3> differences;   // central differences at h, h/2, h/4
    std::array<ExtReal, 2> first_order;   // first Richardson column
};

/// Z'(t) by Richardson-extrapolated central differences, h = 1e-4.
ExtReal hardy_z_prime(const ExtReal& t);
ZPrimeDetail hardy_z_prime_detail(const ExtReal& t, double h = 1e-4);

/// zeta(s) for 0 < Re s <= 2, |Im s| <= 1e7.
ExtComplex zeta_critical(const ExtComplex& s);

/// Euler-Maclaurin evaluation with N main-sum terms.
ExtComplex zeta_euler_maclaurin(const ExtComplex& s, std::int64_t N);

/// Riemann-Siegel remainder sum_{k<=4} C_k(p) (2pi/t)^{k/2}, without the
/// (-1)^{N-1} (2pi/t)^{1/4} prefactor. Exposed for testing.
double rs_remainder_series(double p, double t, int terms = 5);
/// C_k(p) for 0 <= k <= 4 and 0 <= p <= 1.
double rs_coefficient(int k, double p);

/// log n in double-word precision; small n come from a shared table.
ExtReal log_int(std::int64_t n);

}  // namespace zml
