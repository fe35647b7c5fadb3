#pragma once

#include <cstdint>
#include <vector>

#include "zml/ext_real.hpp"
#include "zml/rational.hpp"

namespace zml {

struct PrimePower {
    std::uint32_t p = 0;  // 0 when n is not a prime power
    std::uint32_t a = 0;
};

/// Sieved arithmetic functions for 1 <= n <= limit. Immutable once built.
class ArithmeticTables {
public:
    std::int64_t limit() const { return limit_; }
    const std::vector<std::uint32_t>& primes() const { return primes_; }

    int mu(std::int64_t n) const { return mu_[index(n)]; }
    int omega_big(std::int64_t n) const { return omega_[index(n)]; }
    std::uint32_t least_prime_factor(std::int64_t n) const { return lpf_[index(n)]; }
    bool is_prime(std::int64_t n) const { return n >= 2 && lpf_[index(n)] == n; }
    PrimePower lambda_parts(std::int64_t n) const;
    /// von Mangoldt Lambda(n).
    ExtReal lambda(std::int64_t n) const;

    /// Factorization as (p, exponent) pairs in increasing p.
    std::vector<PrimePower> factor(std::int64_t n) const;

    friend ArithmeticTables sieve_tables(std::int64_t limit, std::uint64_t memory_budget);

private:
    std::size_t index(std::int64_t n) const;

    std::int64_t limit_ = 0;
    std::vector<std::uint32_t> primes_;
    std::vector<std::uint32_t> lpf_;
    std::vector<std::int8_t> mu_;
    std::vector<std::uint8_t> omega_;
    std::vector<std::uint8_t> pp_exp_;  // a when n = p^a, else 0
};

inline constexpr std::uint64_t kDefaultSieveBudget = 1ULL << 30;

/// Linear sieve. 2 <= limit <= 1e8; ResourceError if the tables would
/// exceed `memory_budget` bytes.
ArithmeticTables sieve_tables(std::int64_t limit, std::uint64_t memory_budget = kDefaultSieveBudget);

/// Multiplicative weight with nu(p^j) = 1/j!.
Rational nu(std::int64_t n, const ArithmeticTables& tables);

/// Chebyshev psi(x) = sum_{n <= x} Lambda(n).
ExtReal chebyshev_psi(std::int64_t x, const ArithmeticTables& tables);

/// Mertens function M(x) = sum_{n <= x} mu(n).
std::int64_t mertens_M(std::int64_t x, const ArithmeticTables& tables);

/// Primes in (lo, hi] by trial division, for callers without tables.
std::vector<std::int64_t> primes_in(std::int64_t lo, std::int64_t hi);
bool is_prime_power(std::int64_t n);

}  // namespace zml
