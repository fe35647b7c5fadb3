#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "zml/arithmetic.hpp"
#include "zml/ext_real.hpp"
#include "zml/rational.hpp"
#include "zml/zeros.hpp"

namespace zml {

/// a_n for 1 <= n <= x, stored densely with a[0] = a_1.
struct DirichletCoefficients {
    std::int64_t x = 0;
    std::vector<std::complex<double>> a;
    std::string name;

    const std::complex<double>& operator()(std::int64_t n) const { return a[static_cast<std::size_t>(n - 1)]; }

    /// Presets: "ones", "mobius", "indicator" (a_1 = 1, rest 0) and
    /// "random" or "random:<seed>" (uniform in the unit square, mt19937_64).
    static DirichletCoefficients preset(const std::string& spec, std::int64_t x, const ArithmeticTables* tables);
};

struct NamedValue {
    std::string name;
    ExtComplex value;
};

struct FormulaReport {
    std::string op;
    ExtComplex lhs;
    std::vector<NamedValue> main_terms;
    ExtReal residual;        // |lhs - sum of main terms|
    ExtReal error_budget;    // sum of budget_terms
    std::vector<std::pair<std::string, ExtReal>> budget_terms;
    double ratio = 0.0;      // residual / error_budget
    double imag_residue = 0.0;
    std::int64_t zero_count = 0;
};

/// Distance from y to the nearest prime power other than y (y > 1).
ExtReal prime_power_distance(const Rational& y);

/// Lambda(y) for rational y; 0 unless y is an integer prime power.
ExtReal lambda_rational(const Rational& y);

/// Sum over 0 < gamma <= T of y^{1/2 + i gamma} against -(T/2pi) Lambda(y).
FormulaReport landau_gonek_check(const Rational& y, const ExtReal& T, const ZeroCache& cache);

/// sum_{n <= x} a_n n^{-1/2} e^{-i gamma log n}.
ExtComplex dirichlet_poly_at_zero(const DirichletCoefficients& coeffs, const ExtReal& gamma);

/// Discrete mean value of |sum a_n n^{-rho}|^2 over 0 < gamma <= T.
FormulaReport mvt_check(const DirichletCoefficients& coeffs, const ExtReal& T, const ZeroCache& cache,
                        const ArithmeticTables& tables);

/// x (log xT)^2 sum |a_n|^2 / n.
ExtReal mvt_budget(const DirichletCoefficients& coeffs, const ExtReal& T);

}  // namespace zml
