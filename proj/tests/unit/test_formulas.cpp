#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "zml/arithmetic.hpp"
#include "zml/error.hpp"
#include "zml/formulas.hpp"
#include "zml/statistics.hpp"

using namespace zml;
using zml::test::shared_cache;

namespace {

const ZeroCache& cache() { return shared_cache(21000.0); }
const ArithmeticTables& tables() {
    static const ArithmeticTables t = sieve_tables(10000);
    return t;
}

ExtComplex main_sum(const FormulaReport& r) {
    ExtComplex s;
    for (const auto& m : r.main_terms) s += m.value;
    return s;
}

const NamedValue& term(const FormulaReport& r, const std::string& name) {
    for (const auto& m : r.main_terms) {
        if (m.name == name) return m;
    }
    throw std::runtime_error("no main term " + name);
}

}  // namespace

TEST(PrimePowerDistance, Examples) {
    EXPECT_EQ(prime_power_distance(Rational(2)).to_double(), 1.0);
    EXPECT_EQ(prime_power_distance(Rational(6)).to_double(), 1.0);
    EXPECT_EQ(prime_power_distance(Rational(5, 2)).to_double(), 0.5);
    EXPECT_EQ(prime_power_distance(Rational(8)).to_double(), 1.0);
    EXPECT_NEAR(prime_power_distance(Rational(24, 5)).to_double(), 0.2, 1e-30);
    EXPECT_THROW(prime_power_distance(Rational(1)), DomainError);
}

TEST(PrimePowerDistance, LambdaOfRationals) {
    EXPECT_EQ(lambda_rational(Rational(6)).to_double(), 0.0);
    EXPECT_EQ(lambda_rational(Rational(5, 2)).to_double(), 0.0);
    EXPECT_NEAR(lambda_rational(Rational(4)).to_double(), std::log(2.0), 1e-16);
    EXPECT_NEAR(lambda_rational(Rational(9)).to_double(), std::log(3.0), 1e-16);
}

TEST(LandauGonek, MainTerms) {
    const ExtReal T(1e4);
    EXPECT_EQ(term(landau_gonek_check(Rational(6), T, cache()), "main_Lambda_term").value.re().to_double(), 0.0);
    EXPECT_NEAR(term(landau_gonek_check(Rational(2), T, cache()), "main_Lambda_term").value.re().to_double(),
                -1e4 / (2 * M_PI) * std::log(2.0), 1e-9);
    EXPECT_NEAR(term(landau_gonek_check(Rational(4), T, cache()), "main_Lambda_term").value.re().to_double(),
                -1e4 / (2 * M_PI) * std::log(2.0), 1e-9);
}

TEST(LandauGonek, WithinBudget) {
    for (const Rational& y : {Rational(2), Rational(3), Rational(4), Rational(5), Rational(6), Rational(5, 2)}) {
        const auto r = landau_gonek_check(y, ExtReal(1e4), cache());
        EXPECT_EQ(r.budget_terms.size(), 3u);
        EXPECT_EQ(r.zero_count, 10142);
        EXPECT_LE(r.ratio, 1.0) << y.to_string();
        EXPECT_GT(r.error_budget.to_double(), 0.0);
    }
}

TEST(LandauGonek, MatchesNaiveSum) {
    const ExtReal T(3000.0);
    const auto r = landau_gonek_check(Rational(3), T, cache());
    std::complex<double> naive = 0.0;
    for (const auto& z : cache().records) {
        if (z.gamma > T) break;
        naive += std::sqrt(3.0) * std::exp(std::complex<double>(0.0, z.gamma.to_double() * std::log(3.0)));
    }
    EXPECT_NEAR(r.lhs.re().to_double(), naive.real(), 1e-8 * std::abs(naive) + 1e-6);
    EXPECT_NEAR(r.lhs.im().to_double(), naive.imag(), 1e-8 * std::abs(naive) + 1e-6);
}

TEST(LandauGonek, Domain) {
    EXPECT_THROW(landau_gonek_check(Rational(1), ExtReal(1e4), cache()), DomainError);
    EXPECT_THROW(landau_gonek_check(Rational(3, 1001), ExtReal(1e4), cache()), DomainError);
    EXPECT_THROW(landau_gonek_check(Rational(2), ExtReal(1e6), cache()), CertificationError);
}

TEST(DirichletPoly, IndicatorAndBand) {
    const auto ind = DirichletCoefficients::preset("indicator", 10, nullptr);
    const ExtComplex d = dirichlet_poly_at_zero(ind, cache().records[3].gamma);
    EXPECT_EQ(d.re().to_double(), 1.0);
    EXPECT_EQ(d.im().to_double(), 0.0);

    const auto two = DirichletCoefficients::preset("ones", 2, nullptr);
    for (std::size_t i = 0; i < 50; ++i) {
        const double m = abs(dirichlet_poly_at_zero(two, cache().records[i].gamma)).to_double();
        EXPECT_GE(m, 1.0 - 1.0 / std::sqrt(2.0) - 1e-14);
        EXPECT_LE(m, 1.0 + 1.0 / std::sqrt(2.0) + 1e-14);
    }
}

TEST(DirichletPoly, RandomMatchesNaive) {
    const auto c = DirichletCoefficients::preset("random:42", 200, nullptr);
    const auto c2 = DirichletCoefficients::preset("random:42", 200, nullptr);
    EXPECT_EQ(c.a, c2.a);
    for (std::size_t i : {0u, 100u, 5000u}) {
        const double g = cache().records[i].gamma.to_double();
        std::complex<double> naive = 0.0;
        for (std::int64_t n = 1; n <= 200; ++n) {
            naive += c(n) / std::sqrt(static_cast<double>(n)) * std::exp(std::complex<double>(0.0, -g * std::log(static_cast<double>(n))));
        }
        const auto got = dirichlet_poly_at_zero(c, cache().records[i].gamma).to_complex();
        EXPECT_LE(std::abs(got - naive), 1e-10 * std::max(1.0, std::abs(naive))) << i;
    }
    EXPECT_THROW(DirichletCoefficients::preset("bogus", 10, nullptr), ConfigError);
    EXPECT_THROW(DirichletCoefficients::preset("mobius", 10, nullptr), DomainError);
}

TEST(Mvt, IndicatorIsExact) {
    const auto c = DirichletCoefficients::preset("indicator", 20, &tables());
    const auto r = mvt_check(c, ExtReal(1e4), cache(), tables());
    EXPECT_EQ(r.lhs.re().to_double(), static_cast<double>(r.zero_count));
    EXPECT_LE(r.residual.to_double(), 1e-10 * static_cast<double>(r.zero_count));
    EXPECT_EQ(r.residual.to_double(), 0.0);
}

TEST(Mvt, RatiosWithinBudget) {
    const auto ones = mvt_check(DirichletCoefficients::preset("ones", 50, &tables()), ExtReal(1e4), cache(), tables());
    EXPECT_LE(ones.ratio, 1.0);
    const auto mob = mvt_check(DirichletCoefficients::preset("mobius", 100, &tables()), ExtReal(1e4), cache(), tables());
    EXPECT_LE(mob.ratio, 1.0);
    EXPECT_NE(term(mob, "main_Lambda_term").value.re().to_double(), 0.0);
    EXPECT_LE(ones.imag_residue, 1e-10 * ones.lhs.re().to_double());
}

TEST(Mvt, QuadraticInCoefficients) {
    auto c = DirichletCoefficients::preset("random:7", 30, &tables());
    const auto base = mvt_check(c, ExtReal(5000.0), cache(), tables());
    for (auto& v : c.a) v *= 3.0;
    const auto scaled = mvt_check(c, ExtReal(5000.0), cache(), tables());
    EXPECT_LE(std::fabs(scaled.lhs.re().to_double() - 9.0 * base.lhs.re().to_double()), 1e-9 * scaled.lhs.re().to_double());
    const double m0 = main_sum(base).re().to_double(), m1 = main_sum(scaled).re().to_double();
    EXPECT_LE(std::fabs(m1 - 9.0 * m0), 1e-9 * std::fabs(m1));
}

TEST(Mvt, AdditiveOverWindowsAndBudgetMonotone) {
    const auto c = DirichletCoefficients::preset("ones", 10, &tables());
    const auto lo = mvt_check(c, ExtReal(3000.0), cache(), tables());
    const auto hi = mvt_check(c, ExtReal(6000.0), cache(), tables());
    double band = 0.0;
    for (const auto& z : cache().records) {
        if (z.gamma <= ExtReal(3000.0)) continue;
        if (z.gamma > ExtReal(6000.0)) break;
        band += norm(dirichlet_poly_at_zero(c, z.gamma)).to_double();
    }
    EXPECT_LE(std::fabs(hi.lhs.re().to_double() - lo.lhs.re().to_double() - band), 1e-8 * band);
    double prev = 0.0;
    for (double T : {100.0, 1000.0, 1e4, 1e5}) {
        const double b = mvt_budget(c, ExtReal(T)).to_double();
        EXPECT_GT(b, prev);
        prev = b;
    }
}
