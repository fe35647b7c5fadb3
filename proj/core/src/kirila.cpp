#include "zml/kirila.hpp"

#include <algorithm>
#include <cmath>

#include "zml/error.hpp"
#include "zml/special.hpp"
#include "zml/summation.hpp"

namespace zml {

namespace {
constexpr double kTwoPi = 6.283185307179586;
}

KirilaReport kirila_decomposition_check(std::uint64_t n, const ZeroCache& cache, double H) {
    if (!cache.certified) throw CertificationError("zero cache is not certified");
    if (!(H >= 10.0)) throw DomainError("kirila_decomposition_check requires H >= 10");
    if (cache.records.empty() || n < cache.records.front().index || n > cache.records.back().index) {
        throw DomainError("zero #" + std::to_string(n) + " is not in the cache");
    }
    const std::size_t i = static_cast<std::size_t>(n - cache.records.front().index);
    const ZeroRecord& z = cache.records[i];
    const ExtReal lo = z.gamma - ExtReal(H);
    const ExtReal hi = z.gamma + ExtReal(H);
    const bool bottom_ok = cache.height_lo.hi() == 0.0 || lo >= cache.height_lo;
    if (!bottom_ok || hi > cache.height_hi) {
        throw PaddingError("zero #" + std::to_string(n) + " needs the cache to cover gamma +/- " + std::to_string(H));
    }

    KirilaReport rep;
    rep.index = n;
    rep.gamma = z.gamma;
    rep.T = z.gamma.to_double();
    rep.H = H;
    const double logT = std::log(rep.T);
    rep.alpha = 1.0 / logT;
    const double a2 = rep.alpha * rep.alpha;

    NeumaierSum m2;
    auto add = [&](double gap) {
        m2.add(std::log1p(a2 / (gap * gap)));
        ++rep.neighbours;
        if (std::fabs(gap) < rep.alpha) ++rep.m1;
    };
    for (std::size_t j = i; j-- > 0 && cache.records[j].gamma >= lo;) add((z.gamma - cache.records[j].gamma).to_double());
    for (std::size_t j = i + 1; j < cache.records.size() && cache.records[j].gamma <= hi; ++j) {
        add((cache.records[j].gamma - z.gamma).to_double());
    }
    // conjugate zeros 1/2 - i gamma' within H
    for (std::size_t j = 0; j < cache.records.size(); ++j) {
        const double gap = (z.gamma + cache.records[j].gamma).to_double();
        if (gap > H) break;
        add(gap);
    }
    rep.m2_truncated = m2.value();
    rep.m2_tail = 2.0 * a2 * (std::log(rep.T / kTwoPi) / kTwoPi) / H;

    rep.lhs = std::log(z.zprime_abs.to_double());
    const ExtComplex s(ExtReal(0.5) + ExtReal(rep.alpha), z.gamma);
    rep.log_zeta_shift = std::log(abs(zeta_critical(s)).to_double());
    rep.linear_term = rep.alpha * logT / 2.0;
    rep.log_alpha = -std::log(rep.alpha);
    const double pieces = rep.log_zeta_shift + rep.linear_term + rep.log_alpha - 0.5 * (rep.m2_truncated + rep.m2_tail);
    rep.D = (rep.lhs - pieces) / rep.alpha;
    return rep;
}

PointwiseBound pointwise_bound_check(const ExtReal& gamma, double eps, const ZeroCache& cache) {
    if (!cache.certified) throw CertificationError("zero cache is not certified");
    if (gamma < cache.height_lo || gamma > cache.height_hi) {
        throw CertificationError("gamma outside the certified range");
    }
    if (!(eps > 0.0)) throw DomainError("pointwise_bound_check requires eps > 0");
    PointwiseBound out;
    out.gamma = gamma;
    out.eps = eps;
    out.T = gamma.to_double();
    const double l = std::log(out.T);
    if (!(std::log(l) > 0.0)) throw DomainError("pointwise bound needs log log T > 0");
    const ExtComplex s(ExtReal(0.5) + ExtReal(1.0 / l), gamma);
    out.lhs = 1.0 / abs(zeta_critical(s)).to_double();
    const double base = 1.0 / (1.0 - std::pow(l, -2.0 / l));
    out.rhs = std::pow(base, (1.0 + eps) * l / (2.0 * std::log(l)));
    out.ratio = out.lhs / out.rhs;
    return out;
}

}  // namespace zml
