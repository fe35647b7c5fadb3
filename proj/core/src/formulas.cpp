#include "zml/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "zml/error.hpp"
#include "zml/special.hpp"
#include "zml/statistics.hpp"
#include "zml/summation.hpp"

namespace zml {

namespace {

// Smallest prime factor of n >= 2 by trial division.
std::int64_t smallest_factor(std::int64_t n) {
    if (n % 2 == 0) return 2;
    for (std::int64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return d;
    }
    return n;
}

ExtReal log_rational(const Rational& y) { return log_int(y.num()) - log_int(y.den()); }

std::vector<ZeroRecord>::const_iterator zeros_end(const ZeroCache& cache, const ExtReal& T) {
    return std::upper_bound(cache.records.begin(), cache.records.end(), T,
                            [](const ExtReal& v, const ZeroRecord& r) { return v < r.gamma; });
}

void finish(FormulaReport& rep) {
    ExtComplex main;
    for (const auto& m : rep.main_terms) main += m.value;
    rep.residual = abs(rep.lhs - main);
    ExtReal budget;
    for (const auto& b : rep.budget_terms) budget += b.second;
    rep.error_budget = budget;
    rep.ratio = budget.hi() > 0.0 ? (rep.residual / budget).to_double() : 0.0;
}

}  // namespace

DirichletCoefficients DirichletCoefficients::preset(const std::string& spec, std::int64_t x,
                                                    const ArithmeticTables* tables) {
    if (x < 1) throw DomainError("Dirichlet polynomial length must be >= 1");
    DirichletCoefficients c;
    c.x = x;
    c.name = spec;
    c.a.assign(static_cast<std::size_t>(x), {0.0, 0.0});
    if (spec == "ones") {
        std::fill(c.a.begin(), c.a.end(), std::complex<double>(1.0, 0.0));
    } else if (spec == "indicator") {
        c.a[0] = 1.0;
    } else if (spec == "mobius") {
        if (tables == nullptr || tables->limit() < x) throw DomainError("mobius coefficients need tables up to x");
        for (std::int64_t n = 1; n <= x; ++n) c.a[static_cast<std::size_t>(n - 1)] = tables->mu(n);
    } else if (spec == "random" || spec.rfind("random:", 0) == 0) {
        std::uint64_t seed = 1;
        if (spec.size() > 7) {
            try {
                seed = std::stoull(spec.substr(7));
            } catch (const std::exception&) {
                throw ConfigError("bad random seed in '" + spec + "'");
            }
        }
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (auto& v : c.a) {
            const double re = u(rng);
            v = {re, u(rng)};
        }
    } else {
        throw ConfigError("unknown coefficient preset '" + spec + "' (ones, mobius, indicator, random[:seed])");
    }
    return c;
}

ExtReal prime_power_distance(const Rational& y) {
    if (!(y > Rational(1))) throw DomainError("prime_power_distance requires y > 1");
    const std::int64_t fl = y.num() / y.den();
    Rational best(-1);
    std::int64_t q = y.is_integer() ? fl - 1 : fl;
    for (; q >= 2; --q) {
        if (is_prime_power(q)) {
            best = y - Rational(q);
            break;
        }
    }
    for (q = fl + 1;; ++q) {
        if (is_prime_power(q)) {
            const Rational d = Rational(q) - y;
            if (best < Rational(0) || d < best) best = d;
            break;
        }
    }
    return ExtReal::from_int(best.num()) / ExtReal::from_int(best.den());
}

ExtReal lambda_rational(const Rational& y) {
    if (!y.is_integer() || y.num() < 2 || !is_prime_power(y.num())) return {};
    return log_int(smallest_factor(y.num()));
}

FormulaReport landau_gonek_check(const Rational& y, const ExtReal& T, const ZeroCache& cache) {
    if (!(y > Rational(1))) throw DomainError("landau_gonek_check requires y > 1");
    if (y.den() > 1000) throw DomainError("landau_gonek_check restricts y to denominators <= 1000");
    if (!(T.hi() > 1.0)) throw DomainError("landau_gonek_check requires T > 1");
    FormulaReport rep;
    rep.op = "landau_gonek";
    rep.zero_count = count_N(T, cache);

    const ExtReal ly = log_rational(y);
    const ExtReal sy = sqrt(ExtReal::from_int(y.num()) / ExtReal::from_int(y.den()));
    const auto n = static_cast<std::size_t>(zeros_end(cache, T) - cache.records.begin());
    rep.lhs = sharded_sum_complex(n, [&](std::size_t i) {
        ExtReal s, c;
        sincos(reduce_two_pi(cache.records[i].gamma * ly), s, c);
        return ExtComplex(sy * c, sy * s);
    });
    rep.main_terms.push_back({"main_Lambda_term", -(T / constants::two_pi) * lambda_rational(y)});

    const double yd = y.to_double();
    const double Td = T.to_double();
    const double lyd = ly.to_double();
    const double dist = prime_power_distance(y).to_double();
    rep.budget_terms.emplace_back("y_log_2yT_loglog_3y", ExtReal(yd * std::log(2.0 * yd * Td) * std::log(std::log(3.0 * yd))));
    rep.budget_terms.emplace_back("log_y_min_T_y_over_dist", ExtReal(lyd * std::min(Td, yd / dist)));
    rep.budget_terms.emplace_back("log_2T_min_T_inv_log_y", ExtReal(std::log(2.0 * Td) * std::min(Td, 1.0 / lyd)));
    finish(rep);
    return rep;
}

ExtComplex dirichlet_poly_at_zero(const DirichletCoefficients& coeffs, const ExtReal& gamma) {
    if (!(gamma.hi() > 0.0)) throw DomainError("dirichlet_poly_at_zero requires gamma > 0");
    ComplexNeumaierSum acc;
    for (std::int64_t n = 1; n <= coeffs.x; ++n) {
        const auto& an = coeffs(n);
        if (an == std::complex<double>(0.0, 0.0)) continue;
        const ExtReal ln = log_int(n);
        const double ph = reduced_phase(gamma * ln);
        const double w = 1.0 / std::sqrt(static_cast<double>(n));
        acc.add(an * w * std::complex<double>(std::cos(ph), -std::sin(ph)));
    }
    return ExtComplex(acc.value());
}

ExtReal mvt_budget(const DirichletCoefficients& coeffs, const ExtReal& T) {
    NeumaierSum mass;
    for (std::int64_t n = 1; n <= coeffs.x; ++n) mass.add(std::norm(coeffs(n)) / static_cast<double>(n));
    const double l = std::log(static_cast<double>(coeffs.x) * T.to_double());
    return ExtReal(static_cast<double>(coeffs.x) * l * l) * ExtReal(mass.value());
}

FormulaReport mvt_check(const DirichletCoefficients& coeffs, const ExtReal& T, const ZeroCache& cache,
                        const ArithmeticTables& tables) {
    if (coeffs.x < 2) throw DomainError("mvt_check requires x >= 2");
    if (coeffs.x > tables.limit()) throw DomainError("mvt_check requires x <= tables.limit");
    if (!(T.hi() > 1.0)) throw DomainError("mvt_check requires T > 1");
    FormulaReport rep;
    rep.op = "mvt";
    rep.zero_count = count_N(T, cache);

    const auto n = static_cast<std::size_t>(zeros_end(cache, T) - cache.records.begin());
    rep.lhs = sharded_sum_complex(n, [&](std::size_t i) {
        const ExtComplex d = dirichlet_poly_at_zero(coeffs, cache.records[i].gamma);
        return d * conj(d);
    });
    const double lhs_abs = std::fabs(rep.lhs.re().to_double());
    rep.imag_residue = std::fabs(rep.lhs.im().to_double());
    if (rep.imag_residue > 1e-10 * std::max(lhs_abs, 1.0)) {
        throw NumericError("mean-value sum has imaginary residue " + std::to_string(rep.imag_residue));
    }

    NeumaierSum mass;
    for (std::int64_t m = 1; m <= coeffs.x; ++m) mass.add(std::norm(coeffs(m)) / static_cast<double>(m));
    const ExtReal n_term = ExtReal::from_int(rep.zero_count) * ExtReal(mass.value());

    // sum over kn <= x of conj(a_kn) a_n Lambda(k) / (kn); only prime powers k contribute
    NeumaierSum cross;
    for (std::int64_t k = 2; k <= coeffs.x; ++k) {
        const double lk = tables.lambda(k).to_double();
        if (lk == 0.0) continue;
        for (std::int64_t m = 1; k * m <= coeffs.x; ++m) {
            const std::complex<double> v = std::conj(coeffs(k * m)) * coeffs(m);
            cross.add(v.real() * lk / static_cast<double>(k * m));
        }
    }
    const ExtReal lambda_term = -(T / constants::pi) * ExtReal(cross.value());

    rep.main_terms.push_back({"main_N_term", n_term});
    rep.main_terms.push_back({"main_Lambda_term", lambda_term});
    rep.budget_terms.emplace_back("x_log2_xT_mass", mvt_budget(coeffs, T));
    finish(rep);
    return rep;
}

}  // namespace zml
