#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "zml/arithmetic.hpp"
#include "zml/ext_real.hpp"
#include "zml/ladder.hpp"
#include "zml/rational.hpp"

namespace zml {

/// E_l(z) = sum_{s <= l} z^s / s! by Horner in long double.
std::complex<double> trunc_exp(int ell, std::complex<double> z);

struct TruncExpScan {
    int ell = 0;
    std::size_t samples = 0;
    double worst_ratio = 0.0;
    std::complex<double> witness;
};

/// max of e^{Re z} / max{1, |E_l(z)| (1 + 1/(15 e^l))} over samples with |z| <= l/e^2.
/// Uniform disk samples, or points on the circle |z| = l/e^2 when boundary is set.
/// PropertyError if the ratio exceeds 1 + 1e-12.
TruncExpScan trunc_exp_inequality_scan(int ell, std::size_t samples, bool boundary = false, std::uint64_t seed = 1);

struct IdentityCheck {
    bool equal = false;
    Rational lhs;
    Rational rhs;
    std::size_t monomials = 0;
};

/// (sum_{p in I} a(p))^s against s! sum_{p | n => p in I, Omega(n) = s} a(n) nu(n)
/// for a completely multiplicative a; I = (lo, hi].
IdentityCheck power_identity_check(std::int64_t lo, std::int64_t hi, int s, const std::map<std::int64_t, Rational>& a);

/// Endpoints of I_u = (T^{beta_{u-1}}, T^{beta_u}], with I_0 = (1, T^{beta_0}].
std::pair<double, double> prime_interval(const LadderParams& params, int u);

/// P_{u,v}(gamma) = sum_{p in I_u} b(p; Delta_v) / p^{1/2 + 1/log T + i gamma}.
std::complex<double> p_uv_eval(const ExtReal& gamma, int u, int v, const LadderParams& params,
                               const CoefficientModel& model, const ArithmeticTables& tables);

/// All P_{u,v} for 0 <= u <= v <= K, indexed [u][v].
std::vector<std::vector<std::complex<double>>> p_matrix(const ExtReal& gamma, const LadderParams& params,
                                                      const CoefficientModel& model, const ArithmeticTables& tables);

struct GammaClass {
    enum class Label { not_T0, T_prime, S_j };
    Label label = Label::T_prime;
    int j = -1;  // set for S_j
};

GammaClass classify_gamma(const ExtReal& gamma, const LadderParams& params, const CoefficientModel& model,
                          const ArithmeticTables& tables);

struct S1S2 {
    double S1 = 0.0;
    double S2 = 0.0;
    double o_constant = 1.0;           // every O(.) slot instantiated with this constant
    std::vector<double> o_exponent;    // per level j, the bracket inside exp(O(.))
};

S1S2 s1_s2_eval(const ExtReal& gamma, const LadderParams& params, const CoefficientModel& model,
                const ArithmeticTables& tables);

/// |zeta(1/2 + 1/log T + i gamma)|^{-2k} with T from the ladder.
double shifted_zeta_power(const ExtReal& gamma, const LadderParams& params);

}  // namespace zml
