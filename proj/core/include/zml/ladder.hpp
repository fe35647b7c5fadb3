#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "zml/ext_real.hpp"

namespace zml {

enum class Regime { small_k, large_k };  // small_k iff 2k(1 + eps) <= 1

std::string to_string(Regime regime);

struct LadderParams {
    Regime regime = Regime::small_k;
    double k = 0.0;
    double eps = 0.0;
    double delta = 0.0;
    double a = 0.0;
    double r = 0.0;
    double d = 0.0;
    double c = 0.0;
    int K = 0;
    std::vector<double> beta;
    std::vector<std::int64_t> s;
    std::vector<std::int64_t> ell;
    std::vector<double> Delta;  // T^{beta_j} = e^{2 pi Delta_j}
    ExtReal T;

    double log_T() const { return std::log(T.to_double()); }
    double loglog_ratio() const { return std::log(log_T()) / log_T(); }
};

/// a, r, d for the regime picked by (k, eps).
struct LadderExponents {
    Regime regime;
    double a, r, d;
};
LadderExponents ladder_exponents(double k, double eps);

/// beta_0 for the regime (needs T for the log log T / log T factor).
double ladder_beta0(const LadderExponents& e, double k, double eps, double delta, double T);

/// Grid of candidate c values 0.5, 0.45, ..., 0.05.
std::vector<double> ladder_c_grid();

/// Left side minus right side of the condition on c, as a slack (>= 0 means met).
double condition_c_slack(const LadderExponents& e, double c, double T);

LadderParams make_ladder(double k, double eps, double delta, const ExtReal& T);

struct ConstraintSlack {
    std::string name;
    double slack = 0.0;
    bool informational = false;  // reported but not part of the verdict
};

struct LadderValidation {
    bool ok = true;
    std::vector<ConstraintSlack> constraints;
    std::vector<std::string> violations;
};

LadderValidation validate_ladder(const LadderParams& params);

/// Coefficient model b(p; Delta_j) for the prime polynomials.
struct CoefficientModel {
    std::string name;
    std::function<double(std::int64_t p, int j)> b;

    /// 1 below the top level, 0 at level K.
    static int eta(const LadderParams& params, int j) { return j < params.K ? 1 : 0; }
    /// b(Delta_j): 1/2 + 0.01 when eta = 1, 1/(1 - e^{-beta_j}) when eta = 0.
    static double b_delta(const LadderParams& params, int j);
    /// b(Delta_j) (log(log T / Delta_j))^{eta}.
    static double cap(const LadderParams& params, int j);

    /// "surrogate" (b equal to its cap), "zero", "unit", "constant:<v>".
    static CoefficientModel by_name(const std::string& name, const LadderParams& params);
};

inline constexpr double kSurrogateEps = 0.01;

}  // namespace zml
