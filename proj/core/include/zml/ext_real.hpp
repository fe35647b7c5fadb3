#pragma once

// Double-word ("double-double") real and complex scalars.
//
// A value is the unevaluated sum hi + lo of two doubles with |lo| <=
// ulp(hi)/2, giving about 106 bits of significand.  Basic arithmetic uses
// error-free transformations (two_sum, fma-based two_prod); the
// accurate-addition and division algorithms follow Joldes, Muller & Popescu,
// "Tight and rigorous error bounds for basic building blocks of double-word
// arithmetic" (ACM TOMS 2017).
//
// Results that overflow, or underflow below the range where the low word is
// still representable, raise SaturationError instead of clamping.

#include <cfloat>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include "zml/error.hpp"

namespace zml {

namespace eft {

inline double two_sum(double a, double b, double& err) {
    const double s = a + b;
    const double bb = s - a;
    err = (a - (s - bb)) + (b - bb);
    return s;
}

// Requires |a| >= |b| (or a == 0).
inline double quick_two_sum(double a, double b, double& err) {
    const double s = a + b;
    err = b - (s - a);
    return s;
}

inline double two_prod(double a, double b, double& err) {
    const double p = a * b;
    err = std::fma(a, b, -p);
    return p;
}

}  // namespace eft

class ExtReal {
public:
    constexpr ExtReal() = default;
    constexpr ExtReal(double x) : hi_(x), lo_(0.0) {}  // NOLINT(implicit)
    constexpr ExtReal(int x) : hi_(x), lo_(0.0) {}     // NOLINT(implicit)

    /// Assumes (hi, lo) is already normalized.
    static constexpr ExtReal from_parts(double hi, double lo) {
        ExtReal r;
        r.hi_ = hi;
        r.lo_ = lo;
        return r;
    }
    /// Exact for every 64-bit integer.
    static ExtReal from_int(std::int64_t n);
    static ExtReal from_uint(std::uint64_t n);
    /// Decimal literal, e.g. "14.134725141734693790457251983562".
    static ExtReal parse(std::string_view text);

    constexpr double hi() const { return hi_; }
    constexpr double lo() const { return lo_; }
    constexpr double to_double() const { return hi_ + lo_; }

    /// Scientific notation with `digits` significant digits (<= 34).
    std::string to_string(int digits = 32) const;

    ExtReal operator-() const { return from_parts(-hi_, -lo_); }

    ExtReal& operator+=(const ExtReal& y);
    ExtReal& operator-=(const ExtReal& y) { return *this += -y; }
    ExtReal& operator*=(const ExtReal& y);
    ExtReal& operator/=(const ExtReal& y);

    friend ExtReal operator+(ExtReal x, const ExtReal& y) { return x += y; }
    friend ExtReal operator-(ExtReal x, const ExtReal& y) { return x -= y; }
    friend ExtReal operator*(ExtReal x, const ExtReal& y) { return x *= y; }
    friend ExtReal operator/(ExtReal x, const ExtReal& y) { return x /= y; }

    friend bool operator==(const ExtReal& x, const ExtReal& y) {
        return x.hi_ == y.hi_ && x.lo_ == y.lo_;
    }
    friend bool operator<(const ExtReal& x, const ExtReal& y) {
        return x.hi_ < y.hi_ || (x.hi_ == y.hi_ && x.lo_ < y.lo_);
    }
    friend bool operator>(const ExtReal& x, const ExtReal& y) { return y < x; }
    friend bool operator<=(const ExtReal& x, const ExtReal& y) { return !(y < x); }
    friend bool operator>=(const ExtReal& x, const ExtReal& y) { return !(x < y); }

private:
    double hi_ = 0.0;
    double lo_ = 0.0;
};

namespace detail {

[[noreturn]] void raise_saturation(const char* op);

inline ExtReal checked(double hi, double lo, const char* op) {
    if (!std::isfinite(hi)) raise_saturation(op);
    if (hi != 0.0 && std::fabs(hi) < DBL_MIN * 0x1p53) raise_saturation(op);
    return ExtReal::from_parts(hi, lo);
}

}  // namespace detail

inline ExtReal& ExtReal::operator+=(const ExtReal& y) {
    double e1, e2;
    double s = eft::two_sum(hi_, y.hi_, e1);
    const double t = eft::two_sum(lo_, y.lo_, e2);
    e1 += t;
    s = eft::quick_two_sum(s, e1, e1);
    e1 += e2;
    s = eft::quick_two_sum(s, e1, e1);
    if (s == 0.0) e1 = 0.0;
    return *this = detail::checked(s, e1, "add");
}

inline ExtReal& ExtReal::operator*=(const ExtReal& y) {
    double e;
    double p = eft::two_prod(hi_, y.hi_, e);
    e += hi_ * y.lo_ + lo_ * y.hi_;
    p = eft::quick_two_sum(p, e, e);
    if (p == 0.0) {
        if (hi_ != 0.0 && y.hi_ != 0.0) detail::raise_saturation("mul");
        e = 0.0;
    }
    return *this = detail::checked(p, e, "mul");
}

inline ExtReal& ExtReal::operator/=(const ExtReal& y) {
    if (y.hi_ == 0.0) throw DomainError("ExtReal division by zero");
    const double q1 = hi_ / y.hi_;
    ExtReal r = *this - ExtReal(q1) * y;
    const double q2 = r.hi_ / y.hi_;
    r -= ExtReal(q2) * y;
    const double q3 = r.hi_ / y.hi_;
    double e;
    const double s = eft::quick_two_sum(q1, q2, e);
    return *this = ExtReal::from_parts(s, e) + ExtReal(q3);
}

// Exact product and sum of two doubles.
inline ExtReal mul_exact(double a, double b) {
    double e;
    const double p = eft::two_prod(a, b, e);
    return detail::checked(p, e, "mul");
}
inline ExtReal add_exact(double a, double b) {
    double e;
    const double s = eft::two_sum(a, b, e);
    return ExtReal::from_parts(s, e);
}

inline ExtReal abs(const ExtReal& x) { return x.hi() < 0.0 ? -x : x; }
inline ExtReal ldexp(const ExtReal& x, int e) {
    return detail::checked(std::ldexp(x.hi(), e), std::ldexp(x.lo(), e), "ldexp");
}
inline ExtReal sqr(const ExtReal& x) { return x * x; }

ExtReal floor(const ExtReal& x);
ExtReal round(const ExtReal& x);
ExtReal sqrt(const ExtReal& x);
ExtReal exp(const ExtReal& x);
ExtReal log(const ExtReal& x);
ExtReal sin(const ExtReal& x);
ExtReal cos(const ExtReal& x);
void sincos(const ExtReal& x, ExtReal& s, ExtReal& c);
ExtReal atan(const ExtReal& x);
ExtReal atan2(const ExtReal& y, const ExtReal& x);
ExtReal pow(const ExtReal& x, int n);
ExtReal pow10(int n);

/// x - 2*pi*k for the nearest integer k; exact reduction constant carries
/// about 160 bits so the result keeps full relative accuracy for |x| <= 1e10.
ExtReal reduce_two_pi(const ExtReal& x);
/// reduce_two_pi rounded to double; the fast path for phases of oscillating
/// sums that are then fed to std::sin/std::cos.
double reduced_phase(const ExtReal& x);

namespace constants {
inline constexpr ExtReal pi = ExtReal::from_parts(3.141592653589793, 1.2246467991473532e-16);
inline constexpr ExtReal two_pi = ExtReal::from_parts(6.283185307179586, 2.4492935982947064e-16);
inline constexpr ExtReal half_pi = ExtReal::from_parts(1.5707963267948966, 6.123233995736766e-17);
inline constexpr ExtReal pi_over_8 = ExtReal::from_parts(0.39269908169872414, 1.5308084989341915e-17);
inline constexpr ExtReal ln2 = ExtReal::from_parts(0.6931471805599453, 2.3190468138462996e-17);
inline constexpr ExtReal log_two_pi = ExtReal::from_parts(1.8378770664093456, -7.756588316134483e-17);
inline constexpr ExtReal log_pi = ExtReal::from_parts(1.1447298858494002, 1.0265951162707826e-17);
inline constexpr double two_pi_tail = -5.989539619436679e-33;
}  // namespace constants

/// Complex number over ExtReal components.
class ExtComplex {
public:
    constexpr ExtComplex() = default;
    constexpr ExtComplex(ExtReal re, ExtReal im = ExtReal()) : re_(re), im_(im) {}  // NOLINT
    constexpr ExtComplex(double re, double im = 0.0) : re_(re), im_(im) {}          // NOLINT
    explicit ExtComplex(std::complex<double> z) : re_(z.real()), im_(z.imag()) {}

    constexpr const ExtReal& re() const { return re_; }
    constexpr const ExtReal& im() const { return im_; }
    std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }

    ExtComplex operator-() const { return {-re_, -im_}; }
    ExtComplex& operator+=(const ExtComplex& w) {
        re_ += w.re_;
        im_ += w.im_;
        return *this;
    }
    ExtComplex& operator-=(const ExtComplex& w) {
        re_ -= w.re_;
        im_ -= w.im_;
        return *this;
    }
    ExtComplex& operator*=(const ExtComplex& w) {
        const ExtReal r = re_ * w.re_ - im_ * w.im_;
        im_ = re_ * w.im_ + im_ * w.re_;
        re_ = r;
        return *this;
    }
    ExtComplex& operator/=(const ExtComplex& w);

    friend ExtComplex operator+(ExtComplex z, const ExtComplex& w) { return z += w; }
    friend ExtComplex operator-(ExtComplex z, const ExtComplex& w) { return z -= w; }
    friend ExtComplex operator*(ExtComplex z, const ExtComplex& w) { return z *= w; }
    friend ExtComplex operator/(ExtComplex z, const ExtComplex& w) { return z /= w; }
    friend bool operator==(const ExtComplex& z, const ExtComplex& w) {
        return z.re_ == w.re_ && z.im_ == w.im_;
    }

private:
    ExtReal re_;
    ExtReal im_;
};

inline ExtComplex conj(const ExtComplex& z) { return {z.re(), -z.im()}; }
inline ExtReal norm(const ExtComplex& z) { return z.re() * z.re() + z.im() * z.im(); }
ExtReal abs(const ExtComplex& z);
inline ExtReal arg(const ExtComplex& z) { return atan2(z.im(), z.re()); }

}  // namespace zml
