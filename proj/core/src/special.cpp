#include "zml/special.hpp"

#include <algorithm>
#include <complex>
#include <vector>

#include "zml/error.hpp"
#include "zml/summation.hpp"

namespace zml {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr std::int64_t kLogTableSize = 1 << 16;
constexpr double kMaxHeight = 1e7;

const std::vector<ExtReal>& log_table() {
    static const std::vector<ExtReal> table = [] {
        std::vector<ExtReal> t(kLogTableSize);
        t[1] = ExtReal();
        for (std::int64_t n = 2; n < kLogTableSize; ++n) t[n] = log(ExtReal(static_cast<double>(n)));
        return t;
    }();
    return table;
}

// B_{2k} / (2k)! for k = 1..kBernoulliTerms, from 2 (-1)^{k+1} zeta(2k) / (2 pi)^{2k}.
constexpr int kBernoulliTerms = 40;

const std::array<double, kBernoulliTerms + 1>& bernoulli_over_factorial() {
    static const std::array<double, kBernoulliTerms + 1> table = [] {
        std::array<double, kBernoulliTerms + 1> b{};
        for (int k = 1; k <= kBernoulliTerms; ++k) {
            double zeta2k;
            if (k == 1) {
                zeta2k = kPi * kPi / 6.0;
            } else {
                const int N = 64;
                NeumaierSum s;
                for (int n = N - 1; n >= 1; --n) s.add(std::pow(static_cast<double>(n), -2.0 * k));
                const double Nd = N;
                s.add(std::pow(Nd, 1.0 - 2.0 * k) / (2.0 * k - 1.0));
                s.add(0.5 * std::pow(Nd, -2.0 * k));
                s.add(2.0 * k / 12.0 * std::pow(Nd, -2.0 * k - 1.0));
                zeta2k = s.value();
            }
            const double sign = (k % 2 == 1) ? 1.0 : -1.0;
            b[k] = sign * 2.0 * zeta2k / std::pow(2.0 * kPi, 2.0 * k);
        }
        return b;
    }();
    return table;
}

// Im log Gamma(1/4 + it/2) - (t/2) log pi, valid for every real t.
ExtReal theta_stirling(const ExtReal& t) {
    using C = std::complex<long double>;
    constexpr int kShift = 10;
    static constexpr std::array<long double, 8> c = {
        1.0L / 12, -1.0L / 360, 1.0L / 1260, -1.0L / 1680,
        1.0L / 1188, -691.0L / 360360, 1.0L / 156, -3617.0L / 122400};
    const long double td = static_cast<long double>(t.hi()) + t.lo();
    const C z(0.25L, td / 2);
    const C w = z + static_cast<long double>(kShift);
    C lg = (w - 0.5L) * std::log(w) - w;
    const C w2 = w * w;
    C wp = 1.0L / w;
    for (long double ck : c) {
        lg += ck * wp;
        wp /= w2;
    }
    long double im = lg.imag();
    for (int j = 0; j < kShift; ++j) im -= std::arg(z + static_cast<long double>(j));
    im -= td / 2 * 1.1447298858494001741434273513530587L;
    return ExtReal(static_cast<double>(im)) + ExtReal(static_cast<double>(im - static_cast<double>(im)));
}

}  // namespace

ExtReal log_int(std::int64_t n) {
    if (n <= 0) throw DomainError("log_int of non-positive integer");
    if (n < kLogTableSize) return log_table()[n];
    return log(ExtReal::from_int(n));
}

ExtReal rs_theta(const ExtReal& t) {
    if (!(t.hi() >= 10.0)) throw DomainError("rs_theta requires t >= 10");
    if (t.hi() > kMaxHeight) throw DomainError("rs_theta requires t <= 1e7");
    const ExtReal half_t = ldexp(t, -1);
    ExtReal main = half_t * (log(t) - constants::log_two_pi) - half_t - constants::pi_over_8;
    const double u = 1.0 / t.to_double();
    const double u2 = u * u;
    const double corr =
        u * (1.0 / 48 +
             u2 * (7.0 / 5760 +
                   u2 * (31.0 / 80640 +
                         u2 * (127.0 / 430080 +
                               u2 * (511.0 / 1216512 +
                                     u2 * (1414477.0 / 1476034560 + u2 * (8191.0 / 86507520)))))));
    return main + ExtReal(corr);
}

ExtReal theta(const ExtReal& t) {
    if (t.hi() < 0.0) return -theta(-t);
    if (t.hi() >= 10.0) return rs_theta(t);
    return theta_stirling(t);
}

ExtComplex zeta_euler_maclaurin(const ExtComplex& s, std::int64_t N) {
    if (N < 2) throw DomainError("Euler-Maclaurin needs N >= 2");
    const double sigma = s.re().to_double();
    const ExtReal& t = s.im();
    if (sigma == 1.0 && t.hi() == 0.0 && t.lo() == 0.0) throw DomainError("zeta pole at s = 1");

    ComplexNeumaierSum head;
    for (std::int64_t n = 1; n < N; ++n) {
        const ExtReal ln = log_int(n);
        const double mag = std::exp(-sigma * ln.to_double());
        const double ph = reduced_phase(t * ln);
        head.add({mag * std::cos(ph), -mag * std::sin(ph)});
    }

    const ExtReal lnN = log_int(N);
    const double Nd = static_cast<double>(N);
    const double magN = std::exp(-sigma * lnN.to_double());
    const double phN = reduced_phase(t * lnN);
    const std::complex<double> n_pow(magN * std::cos(phN), -magN * std::sin(phN));  // N^{-s}
    const std::complex<double> sd(sigma, t.to_double());

    ComplexNeumaierSum tail;
    tail.add(Nd * n_pow / (sd - 1.0));
    tail.add(0.5 * n_pow);

    const auto& b = bernoulli_over_factorial();
    // T_k = B_{2k}/(2k)! (s)_{2k-1} N^{-s-2k+1}
    std::complex<double> rising = sd;              // (s)_{2k-1}
    std::complex<double> power = n_pow / Nd;       // N^{-s-2k+1}
    const double inv_n2 = 1.0 / (Nd * Nd);
    double prev = std::numeric_limits<double>::infinity();
    const double scale = std::abs(head.value()) + std::abs(n_pow) + 1e-300;
    for (int k = 1; k <= kBernoulliTerms; ++k) {
        const std::complex<double> term = b[k] * rising * power;
        const double mag = std::abs(term);
        if (mag > prev) break;  // asymptotic series started to diverge
        tail.add(term);
        if (mag < 1e-19 * scale) break;
        prev = mag;
        rising *= (sd + (2.0 * k - 1.0)) * (sd + 2.0 * k);
        power *= inv_n2;
    }
    const std::complex<double> z = head.value() + tail.value();
    return ExtComplex(z);
}

ExtComplex zeta_critical(const ExtComplex& s) {
    const double sigma = s.re().to_double();
    const double tim = s.im().to_double();
    if (!(sigma > 0.0 && sigma <= 2.0)) throw DomainError("zeta_critical requires 0 < Re s <= 2");
    if (std::fabs(tim) > kMaxHeight) throw DomainError("zeta_critical requires |Im s| <= 1e7");
    if (sigma == 1.0 && tim == 0.0) throw DomainError("zeta pole at s = 1");
    if (tim < 0.0) return conj(zeta_critical(conj(s)));
    if (tim <= 1e4) {
        const auto N = std::max<std::int64_t>(50, static_cast<std::int64_t>(std::ceil(2.0 * tim)));
        return zeta_euler_maclaurin(s, N);
    }
    if (s.re() == ExtReal(0.5)) {
        const ExtReal z = hardy_z(s.im(), ZPath::riemann_siegel);
        const double ph = reduced_phase(theta(s.im()));
        return ExtComplex(z * ExtReal(std::cos(ph)), -(z * ExtReal(std::sin(ph))));
    }
    const auto N = static_cast<std::int64_t>(std::ceil(tim / 2.0)) + 50;
    return zeta_euler_maclaurin(s, N);
}

namespace detail {
ExtReal hardy_z_rs(const ExtReal& t);
}

ExtReal hardy_z(const ExtReal& t, ZPath path) {
    if (!std::isfinite(t.hi())) throw DomainError("hardy_z of non-finite t");
    if (t.hi() < 0.0) return hardy_z(-t, path);
    if (t.hi() > kMaxHeight) throw DomainError("hardy_z requires |t| <= 1e7");
    if (path == ZPath::automatic) path = t.hi() < 1000.0 ? ZPath::euler_maclaurin : ZPath::riemann_siegel;
    if (path == ZPath::riemann_siegel) return detail::hardy_z_rs(t);

    const double td = t.to_double();
    const auto N = std::max<std::int64_t>(50, static_cast<std::int64_t>(std::ceil(2.0 * td)));
    const std::complex<double> z = zeta_euler_maclaurin(ExtComplex(ExtReal(0.5), t), N).to_complex();
    const double ph = reduced_phase(theta(t));
    return ExtReal(std::cos(ph) * z.real() - std::sin(ph) * z.imag());
}

ZPrimeDetail hardy_z_prime_detail(const ExtReal& t, double h) {
    const ZPath path = std::fabs(t.hi()) < 1000.0 ? ZPath::euler_maclaurin : ZPath::riemann_siegel;
    ZPrimeDetail out;
    double step = h;
    for (int i = 0; i < 3; ++i, step *= 0.5) {
        const ExtReal hh(step);
        const ExtReal zp = hardy_z(t + hh, path);
        const ExtReal zm = hardy_z(t - hh, path);
        out.differences[i] = (zp - zm) / ExtReal(2.0 * step);
    }
    const auto& d = out.differences;
    out.first_order[0] = (ExtReal(4.0) * d[1] - d[0]) / ExtReal(3.0);
    out.first_order[1] = (ExtReal(4.0) * d[2] - d[1]) / ExtReal(3.0);
    out.value = (ExtReal(16.0) * out.first_order[1] - out.first_order[0]) / ExtReal(15.0);
    return out;
}

ExtReal hardy_z_prime(const ExtReal& t) { return hardy_z_prime_detail(t).value; }

}  // namespace zml
