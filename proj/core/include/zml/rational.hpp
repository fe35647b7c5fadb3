#pragma once

#include <cstdint>
#include <string>

namespace zml {

/// Exact rational with 64-bit numerator and denominator, always reduced,
/// denominator positive. Any intermediate overflow raises ResourceError.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
    Rational(std::int64_t num, std::int64_t den);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string to_string() const;
    /// Accepts "p", "p/q" or a finite decimal such as "2.5".
    static Rational parse(const std::string& text);

    bool is_integer() const { return den_ == 1; }

    Rational operator-() const;
    Rational& operator+=(const Rational& y);
    Rational& operator-=(const Rational& y) { return *this += -y; }
    Rational& operator*=(const Rational& y);
    Rational& operator/=(const Rational& y);

    friend Rational operator+(Rational x, const Rational& y) { return x += y; }
    friend Rational operator-(Rational x, const Rational& y) { return x -= y; }
    friend Rational operator*(Rational x, const Rational& y) { return x *= y; }
    friend Rational operator/(Rational x, const Rational& y) { return x /= y; }

    friend bool operator==(const Rational& x, const Rational& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend bool operator!=(const Rational& x, const Rational& y) { return !(x == y); }
    friend bool operator<(const Rational& x, const Rational& y);
    friend bool operator>(const Rational& x, const Rational& y) { return y < x; }
    friend bool operator<=(const Rational& x, const Rational& y) { return !(y < x); }
    friend bool operator>=(const Rational& x, const Rational& y) { return !(x < y); }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

Rational pow(const Rational& x, int n);
Rational abs(const Rational& x);

}  // namespace zml
