#include <array>
#include <complex>
#include <limits>

#include "zml/error.hpp"
#include "zml/special.hpp"
#include "zml/summation.hpp"

namespace zml {

namespace {

using CL = std::complex<long double>;
constexpr long double kPiL = 3.14159265358979323846264338327950288L;

constexpr int kMaxDeriv = 12;
constexpr int kContour = 64;
constexpr long double kRadius = 0.5L;
constexpr int kChebNodes = 48;

CL psi(CL p) {
    return std::cos(2.0L * kPiL * (p * p - p - 1.0L / 16)) / std::cos(2.0L * kPiL * p);
}

// Psi^{(m)}(p) for m = 0..12 from the trapezoidal rule on a circle.
std::array<long double, kMaxDeriv + 1> psi_derivatives(long double p) {
    std::array<CL, kContour> samples;
    std::array<CL, kContour> units;
    for (int j = 0; j < kContour; ++j) {
        const long double phi = 2.0L * kPiL * (j + 0.5L) / kContour;
        units[j] = CL(std::cos(phi), std::sin(phi));
        samples[j] = psi(CL(p, 0.0L) + kRadius * units[j]);
    }
    std::array<long double, kMaxDeriv + 1> d{};
    long double fact = 1.0L;
    long double rpow = 1.0L;
    for (int m = 0; m <= kMaxDeriv; ++m) {
        if (m > 0) {
            fact *= m;
            rpow *= kRadius;
        }
        CL acc(0.0L, 0.0L);
        for (int j = 0; j < kContour; ++j) acc += samples[j] * std::pow(std::conj(units[j]), m);
        d[m] = (acc.real() / kContour) * fact / rpow;
    }
    return d;
}

std::array<long double, 5> coefficients_from_derivatives(const std::array<long double, kMaxDeriv + 1>& f) {
    const long double p2 = kPiL * kPiL;
    const long double p4 = p2 * p2;
    const long double p6 = p4 * p2;
    const long double p8 = p4 * p4;
    return {
        f[0],
        -f[3] / (96 * p2),
        f[2] / (64 * p2) + f[6] / (18432 * p4),
        -f[1] / (64 * p2) - f[5] / (3840 * p4) - f[9] / (5308416 * p6),
        f[0] / (128 * p2) + 19 * f[4] / (24576 * p4) + 11 * f[8] / (5898240 * p6) +
            f[12] / (2038431744.0L * p8),
    };
}

struct ChebyshevSet {
    std::array<std::array<double, kChebNodes>, 5> c{};
};

const ChebyshevSet& chebyshev() {
    static const ChebyshevSet set = [] {
        ChebyshevSet s;
        std::array<std::array<long double, 5>, kChebNodes> values;
        for (int j = 0; j < kChebNodes; ++j) {
            const long double x = std::cos(kPiL * (j + 0.5L) / kChebNodes);
            values[j] = coefficients_from_derivatives(psi_derivatives((x + 1.0L) / 2));
        }
        for (int k = 0; k < 5; ++k) {
            for (int i = 0; i < kChebNodes; ++i) {
                long double acc = 0.0L;
                for (int j = 0; j < kChebNodes; ++j) {
                    acc += values[j][k] * std::cos(kPiL * i * (j + 0.5L) / kChebNodes);
                }
                s.c[k][i] = static_cast<double>(2.0L * acc / kChebNodes);
            }
        }
        return s;
    }();
    return set;
}

}  // namespace

double rs_coefficient(int k, double p) {
    if (k < 0 || k > 4) throw DomainError("Riemann-Siegel coefficient index must be 0..4");
    const auto& c = chebyshev().c[k];
    const double x = 2.0 * p - 1.0;
    double b1 = 0.0;
    double b2 = 0.0;
    for (int i = kChebNodes - 1; i >= 1; --i) {
        const double b0 = 2.0 * x * b1 - b2 + c[i];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + 0.5 * c[0];
}

double rs_remainder_series(double p, double t, int terms) {
    const double w = std::sqrt(2.0 * 3.141592653589793 / t);
    double sum = 0.0;
    double wk = 1.0;
    for (int k = 0; k < terms && k <= 4; ++k) {
        sum += rs_coefficient(k, p) * wk;
        wk *= w;
    }
    return sum;
}

namespace detail {

ExtReal hardy_z_rs(const ExtReal& t) {
    if (!(t.hi() >= 10.0)) throw DomainError("Riemann-Siegel path requires t >= 10");
    const double td = t.to_double();
    const double a = std::sqrt(td / (2.0 * 3.141592653589793));
    const auto N = static_cast<std::int64_t>(std::floor(a));
    const double p = a - static_cast<double>(N);
    const ExtReal th = rs_theta(t);

    NeumaierSum sum;
    for (std::int64_t n = 1; n <= N; ++n) {
        const double ph = reduced_phase(th - t * log_int(n));
        sum.add(std::cos(ph) / std::sqrt(static_cast<double>(n)));
    }
    const double sign = (N % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N-1}
    const double rem = sign * std::pow(2.0 * 3.141592653589793 / td, 0.25) * rs_remainder_series(p, td);
    return ExtReal(2.0 * sum.value()) + ExtReal(rem);
}

}  // namespace detail

}  // namespace zml
