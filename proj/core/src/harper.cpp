#include "zml/harper.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "zml/error.hpp"
#include "zml/special.hpp"
#include "zml/summation.hpp"

namespace zml {

namespace {

constexpr double kE2 = 7.38905609893065;  // e^2

double e_factor(int ell, std::complex<double> z) {
    const double m = std::abs(trunc_exp(ell, z)) * (1.0 + 1.0 / (15.0 * std::exp(static_cast<double>(ell))));
    return std::max(1.0, m * m);
}

}  // namespace

std::complex<double> trunc_exp(int ell, std::complex<double> z) {
    if (ell < 0) throw DomainError("trunc_exp requires l >= 0");
    const std::complex<long double> zl(z.real(), z.imag());
    std::complex<long double> r = 1.0L;
    for (int s = ell; s >= 1; --s) r = 1.0L + zl * r / static_cast<long double>(s);
    return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

TruncExpScan trunc_exp_inequality_scan(int ell, std::size_t samples, bool boundary, std::uint64_t seed) {
    if (ell < 2 || ell % 2 != 0) throw DomainError("trunc_exp_inequality_scan requires even l >= 2");
    TruncExpScan out;
    out.ell = ell;
    out.samples = samples;
    const double R = ell / kE2;
    const double slack = 1.0 + 1.0 / (15.0 * std::exp(static_cast<double>(ell)));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t i = 0; i < samples; ++i) {
        const double rad = boundary ? R : R * std::sqrt(u(rng));
        const double ang = 6.283185307179586 * u(rng);
        const std::complex<double> z = std::polar(rad, ang);
        const double ratio = std::exp(z.real()) / std::max(1.0, std::abs(trunc_exp(ell, z)) * slack);
        if (ratio > out.worst_ratio) {
            out.worst_ratio = ratio;
            out.witness = z;
        }
    }
    if (out.worst_ratio > 1.0 + 1e-12) {
        std::ostringstream os;
        os.precision(17);
        os << "E_" << ell << " inequality fails at z = " << out.witness.real() << " + " << out.witness.imag()
           << "i (ratio " << out.worst_ratio << ")";
        throw PropertyError(os.str());
    }
    return out;
}

IdentityCheck power_identity_check(std::int64_t lo, std::int64_t hi, int s, const std::map<std::int64_t, Rational>& a) {
    if (s < 1 || s > 6) throw DomainError("power_identity_check requires 1 <= s <= 6");
    const auto primes = primes_in(lo, hi);
    if (primes.empty() || primes.size() > 8) throw DomainError("power_identity_check needs 1..8 primes in I");
    std::vector<Rational> ap;
    for (auto p : primes) {
        const auto it = a.find(p);
        if (it == a.end()) throw DomainError("no coefficient for prime " + std::to_string(p));
        ap.push_back(it->second);
    }
    IdentityCheck out;
    Rational sum;
    for (const auto& v : ap) sum += v;
    out.lhs = pow(sum, s);

    // every n with Omega(n) = s supported on I is an exponent vector summing to s
    Rational acc;
    std::vector<int> e(ap.size(), 0);
    const std::int64_t fact[] = {1, 1, 2, 6, 24, 120, 720};
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i + 1 == ap.size()) {
            e[i] = left;
            Rational term(1);
            for (std::size_t q = 0; q < ap.size(); ++q) {
                if (e[q] > 0) term *= pow(ap[q], e[q]) / Rational(fact[e[q]]);
            }
            acc += term;
            ++out.monomials;
            return;
        }
        for (int x = 0; x <= left; ++x) {
            e[i] = x;
            self(self, i + 1, left - x);
        }
    };
    rec(rec, 0, s);
    out.rhs = Rational(fact[s]) * acc;
    out.equal = out.lhs == out.rhs;
    return out;
}

std::pair<double, double> prime_interval(const LadderParams& params, int u) {
    if (u < 0 || u > params.K) throw DomainError("prime interval index out of range");
    const double T = params.T.to_double();
    const double lo = u == 0 ? 1.0 : std::pow(T, params.beta[static_cast<std::size_t>(u - 1)]);
    return {lo, std::pow(T, params.beta[static_cast<std::size_t>(u)])};
}

std::complex<double> p_uv_eval(const ExtReal& gamma, int u, int v, const LadderParams& params,
                               const CoefficientModel& model, const ArithmeticTables& tables) {
    if (u < 0 || u > v || v > params.K) throw DomainError("p_uv_eval requires 0 <= u <= v <= K");
    const auto [lo, hi] = prime_interval(params, u);
    if (hi > static_cast<double>(tables.limit())) {
        throw ResourceError("prime table limit " + std::to_string(tables.limit()) + " below T^beta_" +
                            std::to_string(u) + " = " + std::to_string(hi));
    }
    const double sigma = 0.5 + 1.0 / params.log_T();
    const auto& pr = tables.primes();
    auto it = std::upper_bound(pr.begin(), pr.end(), lo, [](double x, std::uint32_t p) { return x < p; });
    ComplexNeumaierSum acc;
    for (; it != pr.end() && static_cast<double>(*it) <= hi; ++it) {
        const std::int64_t p = *it;
        const double b = model.b(p, v);
        if (b == 0.0) continue;
        const ExtReal lp = log_int(p);
        const double mag = b * std::exp(-sigma * lp.to_double());
        const double ph = reduced_phase(gamma * lp);
        acc.add({mag * std::cos(ph), -mag * std::sin(ph)});
    }
    return acc.value();
}

std::vector<std::vector<std::complex<double>>> p_matrix(const ExtReal& gamma, const LadderParams& params,
                                                      const CoefficientModel& model, const ArithmeticTables& tables) {
    const auto n = static_cast<std::size_t>(params.K + 1);
    std::vector<std::vector<std::complex<double>>> P(n, std::vector<std::complex<double>>(n));
    for (int u = 0; u <= params.K; ++u) {
        for (int v = u; v <= params.K; ++v) P[u][v] = p_uv_eval(gamma, u, v, params, model, tables);
    }
    return P;
}

GammaClass classify_gamma(const ExtReal& gamma, const LadderParams& params, const CoefficientModel& model,
                          const ArithmeticTables& tables) {
    const auto P = p_matrix(gamma, params, model, tables);
    auto in_T = [&](int u) {
        double m = 0.0;
        for (int v = u; v <= params.K; ++v) m = std::max(m, std::abs(P[u][v]));
        return m <= static_cast<double>(params.ell[static_cast<std::size_t>(u)]) / (params.k * kE2);
    };
    GammaClass c;
    if (!in_T(0)) {
        c.label = GammaClass::Label::not_T0;
        return c;
    }
    for (int u = 1; u <= params.K; ++u) {
        if (!in_T(u)) {
            c.label = GammaClass::Label::S_j;
            c.j = u - 1;
            return c;
        }
    }
    c.label = GammaClass::Label::T_prime;
    return c;
}

S1S2 s1_s2_eval(const ExtReal& gamma, const LadderParams& params, const CoefficientModel& model,
                const ArithmeticTables& tables) {
    const auto P = p_matrix(gamma, params, model, tables);
    const double T = params.T.to_double();
    const double l = params.log_T();
    const double k = params.k;
    S1S2 out;
    const auto n = static_cast<std::size_t>(params.K + 1);
    std::vector<double> prefactor(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double beta = params.beta[j];
        const double D = params.Delta[j];
        const int eta = CoefficientModel::eta(params, static_cast<int>(j));
        const double o = D * D * std::exp(3.141592653589793 * D) / (1.0 + D * T) +
                         D * std::log(1.0 + D * std::sqrt(T)) / std::sqrt(T) + 1.0;
        out.o_exponent.push_back(o);
        prefactor[j] = std::pow(std::log(l), k) * std::pow(1.0 / (1.0 - std::exp(-beta)), 2.0 * k / beta) *
                       std::exp(2.0 * k * std::pow(std::log(l / D), eta)) * std::exp(out.o_constant * o);
    }
    auto product = [&](std::size_t upto, std::size_t col) {
        double prod = 1.0;
        for (std::size_t h = 0; h <= upto; ++h) {
            prod *= e_factor(static_cast<int>(params.ell[h]), k * P[h][col]);
        }
        return prod;
    };
    const std::size_t K = n - 1;
    out.S1 = prefactor[K] * product(K, K);
    double s2 = 0.0;
    for (std::size_t j = 0; j < K; ++j) {
        const double head = prefactor[j] * product(j, j);
        for (std::size_t v = j + 1; v <= K; ++v) {
            const double q = k * kE2 / static_cast<double>(params.ell[j + 1]) * std::abs(P[j + 1][v]);
            s2 += head * std::pow(q, 2.0 * static_cast<double>(params.s[j + 1]));
        }
    }
    out.S2 = s2;
    return out;
}

double shifted_zeta_power(const ExtReal& gamma, const LadderParams& params) {
    const ExtComplex s(ExtReal(0.5) + ExtReal(1.0 / params.log_T()), gamma);
    return std::pow(abs(zeta_critical(s)).to_double(), -2.0 * params.k);
}

}  // namespace zml
