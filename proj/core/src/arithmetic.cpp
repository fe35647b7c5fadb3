#include "zml/arithmetic.hpp"

#include "zml/error.hpp"

namespace zml {

std::size_t ArithmeticTables::index(std::int64_t n) const {
    if (n < 1 || n > limit_) {
        throw DomainError("n = " + std::to_string(n) + " outside arithmetic table range [1, " +
                          std::to_string(limit_) + "]");
    }
    return static_cast<std::size_t>(n);
}

PrimePower ArithmeticTables::lambda_parts(std::int64_t n) const {
    const std::size_t i = index(n);
    if (pp_exp_[i] == 0) return {};
    return {lpf_[i], pp_exp_[i]};
}

ExtReal ArithmeticTables::lambda(std::int64_t n) const {
    const PrimePower pp = lambda_parts(n);
    return pp.p == 0 ? ExtReal() : log(ExtReal(static_cast<double>(pp.p)));
}

std::vector<PrimePower> ArithmeticTables::factor(std::int64_t n) const {
    index(n);
    std::vector<PrimePower> out;
    while (n > 1) {
        const std::uint32_t p = lpf_[static_cast<std::size_t>(n)];
        std::uint32_t a = 0;
        while (n % p == 0) {
            n /= p;
            ++a;
        }
        out.push_back({p, a});
    }
    return out;
}

ArithmeticTables sieve_tables(std::int64_t limit, std::uint64_t memory_budget) {
    if (limit < 2 || limit > 100000000) throw DomainError("sieve limit must lie in [2, 1e8]");
    // lpf (4) + mu (1) + Omega (1) + prime-power exponent (1) per entry, plus the prime list.
    const std::uint64_t bytes = static_cast<std::uint64_t>(limit + 1) * 7 +
                                static_cast<std::uint64_t>(limit / 8) * 4;
    if (bytes > memory_budget) {
        throw ResourceError("sieve to " + std::to_string(limit) + " needs about " + std::to_string(bytes) +
                            " bytes, budget is " + std::to_string(memory_budget));
    }
    ArithmeticTables t;
    t.limit_ = limit;
    const auto size = static_cast<std::size_t>(limit) + 1;
    t.lpf_.assign(size, 0);
    t.mu_.assign(size, 0);
    t.omega_.assign(size, 0);
    t.pp_exp_.assign(size, 0);
    t.mu_[1] = 1;
    t.lpf_[1] = 1;
    for (std::size_t i = 2; i < size; ++i) {
        if (t.lpf_[i] == 0) {
            t.lpf_[i] = static_cast<std::uint32_t>(i);
            t.primes_.push_back(static_cast<std::uint32_t>(i));
            t.mu_[i] = -1;
            t.omega_[i] = 1;
            t.pp_exp_[i] = 1;
        }
        for (std::uint32_t p : t.primes_) {
            const std::size_t m = i * p;
            if (p > t.lpf_[i] || m >= size) break;
            t.lpf_[m] = p;
            t.omega_[m] = static_cast<std::uint8_t>(t.omega_[i] + 1);
            if (p == t.lpf_[i]) {
                t.mu_[m] = 0;
                // m = p^(a+1) exactly when i is the prime power p^a.
                t.pp_exp_[m] = t.pp_exp_[i] != 0 ? static_cast<std::uint8_t>(t.pp_exp_[i] + 1) : 0;
            } else {
                t.mu_[m] = static_cast<std::int8_t>(-t.mu_[i]);
                t.pp_exp_[m] = 0;
            }
        }
    }
    return t;
}

Rational nu(std::int64_t n, const ArithmeticTables& tables) {
    if (n < 1) throw DomainError("nu requires n >= 1");
    std::int64_t den = 1;
    for (const PrimePower& pp : tables.factor(n)) {
        std::int64_t f = 1;
        for (std::uint32_t j = 2; j <= pp.a; ++j) f *= j;
        if (__builtin_mul_overflow(den, f, &den)) throw ResourceError("nu denominator overflow");
    }
    return Rational(1, den);
}

ExtReal chebyshev_psi(std::int64_t x, const ArithmeticTables& tables) {
    ExtReal acc;
    for (std::int64_t n = 2; n <= x; ++n) {
        const PrimePower pp = tables.lambda_parts(n);
        if (pp.p != 0) acc += log(ExtReal(static_cast<double>(pp.p)));
    }
    return acc;
}

std::vector<std::int64_t> primes_in(std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> out;
    for (std::int64_t n = std::max<std::int64_t>(lo + 1, 2); n <= hi; ++n) {
        bool prime = true;
        for (std::int64_t d = 2; d * d <= n; ++d) {
            if (n % d == 0) {
                prime = false;
                break;
            }
        }
        if (prime) out.push_back(n);
    }
    return out;
}

bool is_prime_power(std::int64_t n) {
    if (n < 2) return false;
    std::int64_t p = 0;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) return true;
    while (n % p == 0) n /= p;
    return n == 1;
}

}  // namespace zml
