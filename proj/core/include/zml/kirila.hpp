#pragma once

#include <cstdint>

#include "zml/ext_real.hpp"
#include "zml/zeros.hpp"

namespace zml {

/// Decomposition of log|zeta'(rho)| at sigma = 1/2 + alpha, alpha = 1/log T, T = gamma_n:
///   log|zeta'(rho)| = log|zeta(sigma + i gamma)| + alpha (log T / 2 + D)
///                     - log alpha - (1/2) sum_{rho' != rho} log(1 + alpha^2 / (gamma - gamma')^2).
/// The neighbour sum is exact for |gamma' - gamma| <= H (conjugate zeros included)
/// plus the tail estimate 2 alpha^2 (log(T/2pi)/2pi) / H. D is the measured O(1).
struct KirilaReport {
    std::uint64_t index = 0;
    ExtReal gamma;
    double T = 0.0;
    double alpha = 0.0;
    double H = 0.0;
    double lhs = 0.0;             // log|zeta'(rho)|
    double log_zeta_shift = 0.0;  // log|zeta(sigma + i gamma)|
    double linear_term = 0.0;     // alpha log T / 2
    double log_alpha = 0.0;       // -log alpha
    double m2_truncated = 0.0;    // sum over |gamma' - gamma| <= H of log(1 + alpha^2/(gamma-gamma')^2)
    double m2_tail = 0.0;
    std::int64_t m1 = 0;          // neighbours with |gamma' - gamma| < 1/log T
    std::int64_t neighbours = 0;
    double D = 0.0;
};

/// PaddingError if the cache does not cover [gamma - H, gamma + H].
KirilaReport kirila_decomposition_check(std::uint64_t n, const ZeroCache& cache, double H = 50.0);

struct PointwiseBound {
    ExtReal gamma;
    double eps = 0.0;
    double T = 0.0;
    double lhs = 0.0;  // |zeta(1/2 + 1/log T + i gamma)|^{-1}
    double rhs = 0.0;  // (1/(1 - (log T)^{-2/log T}))^{(1+eps) log T / (2 log log T)}
    double ratio = 0.0;
};

/// T = gamma; gamma must lie in the certified range.
PointwiseBound pointwise_bound_check(const ExtReal& gamma, double eps, const ZeroCache& cache);

}  // namespace zml
