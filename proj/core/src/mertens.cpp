#include "zml/arithmetic.hpp"
#include "zml/error.hpp"

namespace zml {

std::int64_t mertens_M(std::int64_t x, const ArithmeticTables& tables) {
    if (x < 1) return 0;
    if (x > tables.limit()) throw DomainError("mertens_M: x exceeds the sieve limit");
    std::int64_t m = 0;
    for (std::int64_t n = 1; n <= x; ++n) m += tables.mu(n);
    return m;
}

}  // namespace zml
