#include "zml/ext_real.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <vector>

namespace zml {

__extension__ typedef __int128 i128;

namespace detail {

void raise_saturation(const char* op) {
    throw SaturationError(std::string("extended-precision ") + op +
                          " result outside representable range");
}

}  // namespace detail

namespace {

// Three-word splits of 2*pi, pi/2 and ln 2.
constexpr double kTwoPi1 = 6.283185307179586;
constexpr double kTwoPi2 = 2.4492935982947064e-16;
constexpr double kTwoPi3 = -5.989539619436679e-33;
constexpr double kInvTwoPi = 0.15915494309189535;
constexpr double kHalfPi3 = -1.4973849048591698e-33;
constexpr double kLn2_3 = 5.707708438416212e-34;

// 1/n! for n < 32, computed once in double-word arithmetic.
const std::array<ExtReal, 32>& inverse_factorials() {
    static const std::array<ExtReal, 32> table = [] {
        std::array<ExtReal, 32> t{};
        t[0] = ExtReal(1.0);
        for (int n = 1; n < 32; ++n) t[n] = t[n - 1] / ExtReal(n);
        return t;
    }();
    return table;
}

// Taylor kernels on |t| <= pi/4.
ExtReal sin_taylor(const ExtReal& t) {
    const auto& inv = inverse_factorials();
    const ExtReal t2 = t * t;
    ExtReal term = t;
    ExtReal sum = t;
    for (int n = 3; n < 32; n += 2) {
        term *= t2;
        const ExtReal add = term * inv[n];
        if (n % 4 == 3) sum -= add; else sum += add;
        if (std::fabs(add.hi()) < 1e-34 * std::fabs(sum.hi())) break;
    }
    return sum;
}

ExtReal cos_taylor(const ExtReal& t) {
    const auto& inv = inverse_factorials();
    const ExtReal t2 = t * t;
    ExtReal term(1.0);
    ExtReal sum(1.0);
    for (int n = 2; n < 32; n += 2) {
        term *= t2;
        const ExtReal add = term * inv[n];
        if (n % 4 == 2) sum -= add; else sum += add;
        if (std::fabs(add.hi()) < 1e-34) break;
    }
    return sum;
}

}  // namespace

ExtReal ExtReal::from_int(std::int64_t n) {
    const double hi = static_cast<double>(n);
    const double lo = static_cast<double>(static_cast<i128>(n) - static_cast<i128>(hi));
    return from_parts(hi, lo);
}

ExtReal ExtReal::from_uint(std::uint64_t n) {
    const double hi = static_cast<double>(n);
    const double lo = static_cast<double>(static_cast<i128>(n) - static_cast<i128>(hi));
    return from_parts(hi, lo);
}

ExtReal ExtReal::parse(std::string_view text) {
    std::size_t i = 0;
    auto fail = [&] { throw FormatError("not a decimal number: '" + std::string(text) + "'"); };
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
    ExtReal mantissa;
    int scale = 0;
    int digits = 0;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '.') {
            if (seen_point) fail();
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            mantissa = mantissa * ExtReal(10.0) + ExtReal(c - '0');
            ++digits;
            if (seen_point) --scale;
        } else if (c == '_') {
            continue;
        } else {
            break;
        }
    }
    if (digits == 0) fail();
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool exp_negative = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) exp_negative = text[i++] == '-';
        int e = 0;
        int exp_digits = 0;
        for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            e = e * 10 + (text[i] - '0');
            ++exp_digits;
            if (e > 100000) fail();
        }
        if (exp_digits == 0) fail();
        scale += exp_negative ? -e : e;
    }
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i != text.size()) fail();
    ExtReal value = scale >= 0 ? mantissa * pow10(scale) : mantissa / pow10(-scale);
    return negative ? -value : value;
}

std::string ExtReal::to_string(int digits) const {
    if (digits < 1) digits = 1;
    if (digits > 34) digits = 34;
    if (hi_ == 0.0) return "0";
    if (!std::isfinite(hi_)) return hi_ > 0 ? "inf" : (hi_ < 0 ? "-inf" : "nan");
    ExtReal y = zml::abs(*this);
    int e = static_cast<int>(std::floor(std::log10(y.hi())));
    y = e >= 0 ? y / pow10(e) : y * pow10(-e);
    while (y.hi() >= 10.0) { y /= ExtReal(10.0); ++e; }
    while (y.hi() < 1.0) { y *= ExtReal(10.0); --e; }

    std::vector<int> d(static_cast<std::size_t>(digits) + 1);
    for (auto& digit : d) {
        const double f = std::floor(y.hi());
        digit = static_cast<int>(f);
        y = (y - ExtReal(f)) * ExtReal(10.0);
    }
    if (d.back() >= 5) ++d[d.size() - 2];
    d.pop_back();
    for (std::size_t k = d.size() - 1; k > 0; --k) {
        while (d[k] < 0) { d[k] += 10; --d[k - 1]; }
        while (d[k] > 9) { d[k] -= 10; ++d[k - 1]; }
    }
    if (d[0] > 9) {
        d[0] -= 10;
        d.insert(d.begin(), 1);
        d.pop_back();
        ++e;
    }

    std::string out;
    if (hi_ < 0) out.push_back('-');
    out.push_back(static_cast<char>('0' + d[0]));
    if (d.size() > 1) {
        out.push_back('.');
        for (std::size_t k = 1; k < d.size(); ++k) out.push_back(static_cast<char>('0' + d[k]));
    }
    char buf[16];
    std::snprintf(buf, sizeof buf, "e%+03d", e);
    out += buf;
    return out;
}

ExtReal floor(const ExtReal& x) {
    double hi = std::floor(x.hi());
    double lo = 0.0;
    if (hi == x.hi()) {
        lo = std::floor(x.lo());
        hi = eft::quick_two_sum(hi, lo, lo);
    }
    return ExtReal::from_parts(hi, lo);
}

ExtReal round(const ExtReal& x) { return floor(x + ExtReal(0.5)); }

ExtReal sqrt(const ExtReal& a) {
    if (a.hi() < 0.0) throw DomainError("sqrt of negative ExtReal");
    if (a.hi() == 0.0) return ExtReal();
    const double x = 1.0 / std::sqrt(a.hi());
    const double ax = a.hi() * x;
    return mul_exact(ax, 1.0) + ExtReal((a - mul_exact(ax, ax)).hi() * (x * 0.5));
}

ExtReal exp(const ExtReal& x) {
    if (x.hi() > 709.0) detail::raise_saturation("exp");
    if (x.hi() < -670.0) detail::raise_saturation("exp");
    if (x.hi() == 0.0) return ExtReal(1.0);
    const double k = std::nearbyint(x.hi() / constants::ln2.hi());
    ExtReal r = x - ExtReal(k) * constants::ln2 - ExtReal(k * kLn2_3);
    r = ldexp(r, -9);
    if (r.hi() == 0.0) return ldexp(ExtReal(1.0), static_cast<int>(k));

    const auto& inv = inverse_factorials();
    ExtReal term = r;
    ExtReal s = r;
    for (int n = 2; n < 14; ++n) {
        term *= r;
        const ExtReal add = term * inv[n];
        s += add;
        if (std::fabs(add.hi()) < 1e-36) break;
    }
    // (1 + s)^512 - 1 via nine squarings of the expm1 form.
    for (int i = 0; i < 9; ++i) s = s * (s + ExtReal(2.0));
    s += ExtReal(1.0);
    return ldexp(s, static_cast<int>(k));
}

ExtReal log(const ExtReal& x) {
    if (x.hi() <= 0.0) throw DomainError("log of non-positive ExtReal");
    if (x.hi() == 1.0 && x.lo() == 0.0) return ExtReal();
    ExtReal y(std::log(x.hi()));
    y = y + x * exp(-y) - ExtReal(1.0);
    return y;
}

ExtReal reduce_two_pi(const ExtReal& x) {
    const double k = std::nearbyint(x.hi() * kInvTwoPi);
    if (std::fabs(k) > 0x1p52) throw DomainError("argument too large for 2*pi reduction");
    if (k == 0.0) return x;
    ExtReal r = x - mul_exact(k, kTwoPi1);
    r -= mul_exact(k, kTwoPi2);
    r -= ExtReal(k * kTwoPi3);
    return r;
}

double reduced_phase(const ExtReal& x) {
    const double k = std::nearbyint(x.hi() * kInvTwoPi);
    double e1;
    const double p = eft::two_prod(k, kTwoPi1, e1);
    double e2;
    const double s = eft::two_sum(x.hi(), -p, e2);
    return s + (e2 + x.lo() - e1 - k * kTwoPi2);
}

void sincos(const ExtReal& x, ExtReal& s, ExtReal& c) {
    if (!std::isfinite(x.hi())) throw DomainError("sincos of non-finite value");
    const ExtReal z = reduce_two_pi(x);
    const double j = std::nearbyint(z.hi() / constants::half_pi.hi());
    const ExtReal t = z - ExtReal(j) * constants::half_pi - ExtReal(j * kHalfPi3);
    const ExtReal st = sin_taylor(t);
    const ExtReal ct = cos_taylor(t);
    switch (static_cast<int>(j)) {
        case 0: s = st; c = ct; break;
        case 1: s = ct; c = -st; break;
        case -1: s = -ct; c = st; break;
        default: s = -st; c = -ct; break;  // j = +-2
    }
}

ExtReal sin(const ExtReal& x) {
    ExtReal s, c;
    sincos(x, s, c);
    return s;
}

ExtReal cos(const ExtReal& x) {
    ExtReal s, c;
    sincos(x, s, c);
    return c;
}

ExtReal atan2(const ExtReal& y, const ExtReal& x) {
    if (x.hi() == 0.0) {
        if (y.hi() == 0.0) return ExtReal();
        return y.hi() > 0.0 ? constants::half_pi : -constants::half_pi;
    }
    if (y.hi() == 0.0) return x.hi() > 0.0 ? ExtReal() : constants::pi;
    const ExtReal r = sqrt(x * x + y * y);
    const ExtReal xx = x / r;
    const ExtReal yy = y / r;
    ExtReal z(std::atan2(y.hi(), x.hi()));
    ExtReal sz, cz;
    sincos(z, sz, cz);
    if (std::fabs(xx.hi()) > std::fabs(yy.hi())) {
        z += (yy - sz) / cz;
    } else {
        z -= (xx - cz) / sz;
    }
    return z;
}

ExtReal atan(const ExtReal& x) { return atan2(x, ExtReal(1.0)); }

ExtReal pow(const ExtReal& x, int n) {
    if (n == 0) return ExtReal(1.0);
    unsigned m = static_cast<unsigned>(n < 0 ? -static_cast<long>(n) : n);
    ExtReal base = x;
    ExtReal acc(1.0);
    while (m != 0) {
        if (m & 1u) acc *= base;
        m >>= 1;
        if (m != 0) base *= base;
    }
    return n < 0 ? ExtReal(1.0) / acc : acc;
}

ExtReal pow10(int n) { return pow(ExtReal(10.0), n); }

ExtComplex& ExtComplex::operator/=(const ExtComplex& w) {
    const ExtReal den = norm(w);
    if (den.hi() == 0.0) throw DomainError("ExtComplex division by zero");
    const ExtReal r = (re_ * w.re() + im_ * w.im()) / den;
    im_ = (im_ * w.re() - re_ * w.im()) / den;
    re_ = r;
    return *this;
}

ExtReal abs(const ExtComplex& z) { return sqrt(norm(z)); }

}  // namespace zml
