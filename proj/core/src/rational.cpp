#include "zml/rational.hpp"

#include <numeric>

#include "zml/error.hpp"

namespace zml {

__extension__ typedef __int128 i128;

namespace {

[[noreturn]] void overflow(const char* op) {
    throw ResourceError(std::string("rational ") + op + " overflows 64-bit integers");
}

std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) overflow("multiplication");
    return r;
}

std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) overflow("addition");
    return r;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    if (num == INT64_MIN || den == INT64_MIN) overflow("normalization");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational& Rational::operator+=(const Rational& y) {
    const std::int64_t g = std::gcd(den_, y.den_);
    const std::int64_t d1 = den_ / g;
    const std::int64_t d2 = y.den_ / g;
    const std::int64_t n = add(mul(num_, d2), mul(y.num_, d1));
    return *this = Rational(n, mul(den_, d2));
}

Rational& Rational::operator*=(const Rational& y) {
    // Cross-cancel first to keep intermediates small.
    const std::int64_t g1 = std::gcd(num_, y.den_);
    const std::int64_t g2 = std::gcd(y.num_, den_);
    const std::int64_t n = mul(g1 ? num_ / g1 : 0, g2 ? y.num_ / g2 : 0);
    const std::int64_t d = mul(g2 ? den_ / g2 : den_, g1 ? y.den_ / g1 : y.den_);
    return *this = Rational(n, d);
}

Rational& Rational::operator/=(const Rational& y) {
    if (y.num_ == 0) throw DomainError("rational division by zero");
    return *this *= Rational(y.den_, y.num_);
}

bool operator<(const Rational& x, const Rational& y) {
    const i128 lhs = static_cast<i128>(x.num_) * y.den_;
    const i128 rhs = static_cast<i128>(y.num_) * x.den_;
    return lhs < rhs;
}

std::string Rational::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
    auto bad = [&] { return FormatError("not a rational: '" + text + "'"); };
    auto parse_int = [&](const std::string& s) {
        if (s.empty()) throw bad();
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &pos);
        } catch (const std::exception&) {
            throw bad();
        }
        if (pos != s.size()) throw bad();
        return static_cast<std::int64_t>(v);
    };
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(parse_int(text));
    const std::string frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 17) throw bad();
    for (char c : frac) {
        if (c < '0' || c > '9') throw bad();
    }
    std::string whole = text.substr(0, dot);
    const bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den = mul(den, 10);
    const std::int64_t w = parse_int(whole);
    const std::int64_t f = parse_int(frac);
    const std::int64_t n = add(mul(w < 0 ? -w : w, den), f);
    return Rational(negative ? -n : n, den);
}

Rational pow(const Rational& x, int n) {
    if (n < 0) return Rational(1) / pow(x, -n);
    Rational acc(1);
    Rational base = x;
    while (n > 0) {
        if (n & 1) acc *= base;
        n >>= 1;
        if (n > 0) base *= base;
    }
    return acc;
}

Rational abs(const Rational& x) { return x.num() < 0 ? -x : x; }

}  // namespace zml
