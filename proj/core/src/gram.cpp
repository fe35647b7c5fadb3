#include <cmath>

#include "zml/error.hpp"
#include "zml/special.hpp"
#include "zml/zeros.hpp"

namespace zml {

namespace {

// Principal branch of Lambert W for x >= 0 (Halley iteration).
double lambert_w(double x) {
    double w = x < 1.0 ? x : std::log(x) - std::log(std::log(x) + 1.0);
    if (w <= 0.0 && x > 0.0) w = 0.5 * x;
    for (int i = 0; i < 50; ++i) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double step = f / (ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0));
        w -= step;
        if (std::fabs(step) <= 1e-15 * (1.0 + std::fabs(w))) break;
    }
    return w;
}

double theta_prime_approx(double t) {
    const double u2 = 1.0 / (t * t);
    return 0.5 * std::log(t / (2.0 * 3.141592653589793)) - u2 / 48.0 - 7.0 * u2 * u2 / 1920.0;
}

}  // namespace

ExtReal gram_point_unchecked(std::int64_t n) {
    if (n < -1) throw DomainError("Gram points are defined for n >= -1");
    double guess;
    if (n < 0) {
        guess = 9.67;
    } else {
        const double m = static_cast<double>(n) + 0.125;
        guess = 2.0 * 3.141592653589793 * m / lambert_w(m / 2.718281828459045);
    }
    ExtReal t(guess);
    const ExtReal target = ExtReal::from_int(n) * constants::pi;
    for (int it = 0; it < 50; ++it) {
        const ExtReal f = theta(t) - target;
        double slope = theta_prime_approx(t.to_double());
        if (t.hi() < 12.0) {
            // The asymptotic derivative is poor this low; difference theta instead.
            const ExtReal h(1e-6);
            slope = ((theta(t + h) - theta(t - h)) / ExtReal(2e-6)).to_double();
        }
        const ExtReal step = f / ExtReal(slope);
        t -= step;
        // Below t = 10 theta comes from a long-double Stirling series.
        const double tol = t.hi() < 10.0 ? 1e-17 : 1e-27;
        if (std::fabs(step.to_double()) <= tol * t.to_double()) return t;
    }
    throw NumericError("Gram point g_" + std::to_string(n) + " did not converge in 50 Newton steps");
}

ExtReal gram_point(std::int64_t n) {
    if (n < 0) throw DomainError("gram_point requires n >= 0");
    return gram_point_unchecked(n);
}

std::int64_t gram_index_below(const ExtReal& t) {
    if (t.hi() < 9.6) throw DomainError("gram_index_below requires t >= 9.67");
    auto n = static_cast<std::int64_t>(std::floor((theta(t) / constants::pi).to_double()));
    if (n < -1) n = -1;
    while (gram_point_unchecked(n + 1) <= t) ++n;
    while (n > -1 && gram_point_unchecked(n) > t) --n;
    return n;
}

bool is_good_gram_point(std::int64_t n) {
    const double z = hardy_z(gram_point_unchecked(n)).to_double();
    return (n % 2 == 0) ? z > 0.0 : z < 0.0;
}

std::int64_t next_good_gram_index(std::int64_t n) {
    while (!is_good_gram_point(n)) ++n;
    return n;
}

}  // namespace zml
