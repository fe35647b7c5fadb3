#include "zml/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "zml/error.hpp"
#include "zml/special.hpp"
#include "zml/summation.hpp"

namespace zml {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kHazardFloor = 1e-8;

void require_certified(const ZeroCache& cache) {
    if (!cache.certified) throw CertificationError("zero cache is not certified");
}

void require_in_range(const ExtReal& t, const ZeroCache& cache, const char* what) {
    require_certified(cache);
    if (t < cache.height_lo || t > cache.height_hi) {
        throw CertificationError(std::string(what) + " " + t.to_string(17) + " outside certified range (" +
                                 cache.height_lo.to_string(17) + ", " + cache.height_hi.to_string(17) + "]");
    }
}

// Position of the first record with gamma > t.
std::size_t upper_index(const ZeroCache& cache, const ExtReal& t) {
    const auto it = std::upper_bound(cache.records.begin(), cache.records.end(), t,
                                     [](const ExtReal& v, const ZeroRecord& r) { return v < r.gamma; });
    return static_cast<std::size_t>(it - cache.records.begin());
}

std::int64_t base_count(const ZeroCache& cache) {
    return cache.records.empty() ? 0 : static_cast<std::int64_t>(cache.records.front().index) - 1;
}

ExtReal theta_over_pi(const ExtReal& t) { return theta(t) / constants::pi; }

}  // namespace

std::string to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::full: return "full";
        case FamilyKind::F: return "F";
        case FamilyKind::F_enl: return "F_enl";
    }
    return "?";
}

FamilyKind parse_family_kind(const std::string& name) {
    if (name == "full") return FamilyKind::full;
    if (name == "F") return FamilyKind::F;
    if (name == "F_enl" || name == "F-enl" || name == "enl") return FamilyKind::F_enl;
    throw ConfigError("unknown family '" + name + "' (expected full, F or F_enl)");
}

std::string to_string(WindowKind kind) { return kind == WindowKind::dyadic ? "(T,2T]" : "(0,T]"; }

double family_f(const std::string& f_choice, double T) {
    const double l = std::log(T);
    double f;
    if (f_choice == "logloglog") {
        f = l > 1.0 && std::log(l) > 0.0 ? std::log(std::log(l)) : 1.0;
    } else if (f_choice == "loglog") {
        f = l > 1.0 ? std::log(l) : 1.0;
    } else if (f_choice == "one") {
        f = 1.0;
    } else {
        throw ConfigError("unknown f_choice '" + f_choice + "' (expected logloglog, loglog or one)");
    }
    return std::max(1.0, f);
}

double family_threshold(const FamilySpec& spec, double T) {
    if (!(spec.c_gap > 0.0)) throw ConfigError("c_gap must be positive");
    if (!(T > std::exp(1.0))) throw DomainError("family threshold needs T > e");
    const double l = std::log(T);
    switch (spec.kind) {
        case FamilyKind::full: return 0.0;
        case FamilyKind::F: return spec.c_gap / l;
        case FamilyKind::F_enl:
            return spec.c_gap * std::exp(-std::sqrt(l) / (family_f(spec.f_choice, T) * std::sqrt(std::log(l))));
    }
    return 0.0;
}

std::int64_t count_N(const ExtReal& T, const ZeroCache& cache) {
    require_in_range(T, cache, "count_N height");
    return base_count(cache) + static_cast<std::int64_t>(upper_index(cache, T));
}

ExtReal s_of_t(const ExtReal& t, const ZeroCache& cache) {
    require_in_range(t, cache, "s_of_t point");
    const std::size_t u = upper_index(cache, t);
    for (std::size_t j : {u, u - 1}) {
        if (j < cache.records.size() && std::fabs((cache.records[j].gamma - t).to_double()) < 1e-10) {
            throw AmbiguityError("t = " + t.to_string(20) + " coincides with zero #" +
                                 std::to_string(cache.records[j].index));
        }
    }
    const std::int64_t n = base_count(cache) + static_cast<std::int64_t>(u);
    return ExtReal::from_int(n - 1) - theta_over_pi(t);
}

SMaxScan s_max_scan(const ExtReal& t_lo, const ExtReal& t_hi, const ZeroCache& cache) {
    require_in_range(t_lo, cache, "scan start");
    require_in_range(t_hi, cache, "scan end");
    if (!(t_lo.hi() >= 10.0)) throw DomainError("s_max_scan requires t_lo >= 10");
    SMaxScan out;
    out.max_s = -std::numeric_limits<double>::infinity();
    out.min_s = std::numeric_limits<double>::infinity();
    auto consider = [&](double s, const ExtReal& t, bool right) {
        out.max_s = std::max(out.max_s, s);
        out.min_s = std::min(out.min_s, s);
        if (std::fabs(s) > out.max_abs_s) {
            out.max_abs_s = std::fabs(s);
            out.argmax = t;
            out.one_sided_from_right = right;
        }
    };
    auto s_at = [&](const ExtReal& t) {
        const std::int64_t n = base_count(cache) + static_cast<std::int64_t>(upper_index(cache, t));
        return (ExtReal::from_int(n - 1) - theta_over_pi(t)).to_double();
    };
    consider(s_at(t_lo), t_lo, true);
    consider(s_at(t_hi), t_hi, false);
    const std::size_t i0 = upper_index(cache, t_lo);
    const std::size_t i1 = upper_index(cache, t_hi);
    for (std::size_t i = i0; i < i1; ++i) {
        const ExtReal& g = cache.records[i].gamma;
        const double right = (ExtReal::from_int(static_cast<std::int64_t>(cache.records[i].index) - 1) -
                              theta_over_pi(g)).to_double();
        consider(right, g, true);
        consider(right - 1.0, g, false);
    }
    const double l = std::log(out.argmax.to_double());
    out.ratio_conjectured = out.max_abs_s / std::sqrt(l * std::log(l));
    out.ratio_littlewood = out.max_abs_s / (l / std::log(l));
    return out;
}

double s_mean(const ExtReal& a, const ExtReal& b, const ZeroCache& cache) {
    require_in_range(a, cache, "s_mean start");
    require_in_range(b, cache, "s_mean end");
    if (!(b > a)) throw DomainError("s_mean needs a < b");
    const double len = (b - a).to_double();
    // integral of N(t) - 1
    ExtReal acc = ExtReal::from_int(base_count(cache) + static_cast<std::int64_t>(upper_index(cache, a)) - 1) *
                  ExtReal(len);
    for (std::size_t i = upper_index(cache, a); i < upper_index(cache, b); ++i) acc += b - cache.records[i].gamma;
    // integral of theta / pi by composite Simpson
    const int n = 2 * static_cast<int>(std::ceil(len * 5.0));
    const double h = len / n;
    ExtReal simpson;
    for (int i = 0; i <= n; ++i) {
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        simpson += ExtReal(w) * theta_over_pi(a + ExtReal(h * i));
    }
    acc -= simpson * ExtReal(h / 3.0);
    return acc.to_double() / len;
}

FamilyResult family_filter(const ZeroCache& cache, const FamilySpec& spec, const Window& window) {
    require_in_range(window.hi(), cache, "window end");
    if (window.lo() < cache.height_lo) {
        throw CertificationError("window start below certified range");
    }
    FamilyResult out;
    const std::size_t i0 = upper_index(cache, window.lo());
    const std::size_t i1 = upper_index(cache, window.hi());
    if (spec.kind == FamilyKind::full) {
        for (std::size_t i = i0; i < i1; ++i) out.included.push_back(cache.records[i].index);
        return out;
    }
    out.threshold = family_threshold(spec, window.T.to_double());
    if (i1 > i0) {
        const bool bottom_open = i0 == 0 && cache.height_lo.hi() == 0.0;
        if (i0 == 0 && !bottom_open) throw PaddingError("window needs a zero below its first ordinate");
        if (i1 >= cache.records.size()) throw PaddingError("window needs a zero above its last ordinate");
    }
    for (std::size_t i = i0; i < i1; ++i) {
        const ExtReal& g = cache.records[i].gamma;
        double gap = (cache.records[i + 1].gamma - g).to_double();
        if (i > 0) gap = std::min(gap, (g - cache.records[i - 1].gamma).to_double());
        (gap >= out.threshold ? out.included : out.excluded).push_back(cache.records[i].index);
    }
    const std::size_t total = out.included.size() + out.excluded.size();
    out.excluded_fraction = total ? static_cast<double>(out.excluded.size()) / static_cast<double>(total) : 0.0;
    return out;
}

MomentReport discrete_moment(const ZeroCache& cache, double k, const Window& window, const FamilySpec& spec) {
    const FamilyResult fam = family_filter(cache, spec, window);
    MomentReport rep;
    rep.k = k;
    rep.T = window.T;
    rep.family = spec;
    rep.window = window.kind;
    rep.zero_count_used = static_cast<std::int64_t>(fam.included.size());
    rep.zero_count_excluded = static_cast<std::int64_t>(fam.excluded.size());

    const std::int64_t first = cache.records.empty() ? 1 : static_cast<std::int64_t>(cache.records.front().index);
    auto zp = [&](std::size_t i) {
        return cache.records[static_cast<std::size_t>(static_cast<std::int64_t>(fam.included[i]) - first)].zprime_abs;
    };
    if (k > 0.0) {
        std::string offenders;
        for (std::size_t i = 0; i < fam.included.size(); ++i) {
            if (zp(i).to_double() <= kHazardFloor) {
                offenders += " #" + std::to_string(fam.included[i]);
            }
        }
        if (!offenders.empty()) {
            throw NumericHazardError("|zeta'(rho)| <= 1e-8 with k > 0 at zeros" + offenders);
        }
    }
    if (k == 0.0) {
        rep.J = ExtReal::from_int(rep.zero_count_used);
    } else {
        rep.J = sharded_sum(fam.included.size(), [&](std::size_t i) {
            return exp(ExtReal(-2.0 * k) * log(zp(i)));
        });
    }

    const double T = window.T.to_double();
    const double l = std::log(T);
    MomentComparison cmp;
    if (window.kind == WindowKind::initial && k == 1.0) {
        cmp.model_value = 3.0 / (kPi * kPi * kPi) * T;
    } else if (window.kind == WindowKind::initial && k == -1.0) {
        cmp.model_value = T * std::pow(l, 4) / (24.0 * kPi);
    } else {
        cmp.model_value = T * std::pow(l, (k - 1.0) * (k - 1.0));
    }
    cmp.ratio = rep.J.to_double() / cmp.model_value;
    rep.comparison = cmp;
    return rep;
}

double gonek_ratio(const ZeroCache& cache, const ExtReal& T) {
    const auto rep = discrete_moment(cache, 1.0, {WindowKind::initial, T}, FamilySpec{});
    return rep.J.to_double() / (3.0 / (kPi * kPi * kPi) * T.to_double());
}

double positive_moment_ratio(const ZeroCache& cache, const ExtReal& T) {
    const auto rep = discrete_moment(cache, -1.0, {WindowKind::initial, T}, FamilySpec{});
    const double l = std::log(T.to_double());
    return rep.J.to_double() / (T.to_double() * std::pow(l, 4) / (24.0 * kPi));
}

FitResult conjecture_fit(const ZeroCache& cache, double k, const std::vector<double>& T_grid,
                         const FamilySpec& spec, WindowKind window) {
    if (T_grid.size() < 3) throw ConditioningError("conjecture_fit needs at least 3 heights");
    FitResult fit;
    fit.k = k;
    fit.target = (k - 1.0) * (k - 1.0);
    std::vector<double> x;
    for (double T : T_grid) {
        const auto rep = discrete_moment(cache, k, {window, ExtReal(T)}, spec);
        const double J = rep.J.to_double();
        if (!(J > 0.0)) throw ConditioningError("empty moment at T = " + std::to_string(T));
        fit.T.push_back(T);
        fit.log_j_over_t.push_back(std::log(J / T));
        x.push_back(std::log(std::log(T)));
        fit.model_log_ratio.push_back(std::log(J / (T * std::pow(std::log(T), fit.target))));
    }
    const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
    if (*xmax - *xmin < 0.1) {
        throw ConditioningError("log log T spread " + std::to_string(*xmax - *xmin) + " < 0.1");
    }
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += fit.log_j_over_t[i];
        sxx += x[i] * x[i];
        sxy += x[i] * fit.log_j_over_t[i];
    }
    fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.exponent * sx) / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        fit.residuals.push_back(fit.log_j_over_t[i] - (fit.intercept + fit.exponent * x[i]));
    }
    return fit;
}

WmcResult wmc_integral(std::int64_t X, const ArithmeticTables& tables) {
    if (X < 1 || X > tables.limit()) throw DomainError("wmc_integral requires 1 <= X <= table limit");
    WmcResult out;
    out.X = X;
    std::int64_t M = 0;
    ExtReal acc;
    for (std::int64_t n = 1; n < X; ++n) {
        M += tables.mu(n);
        if (M != 0) {
            // integral_n^{n+1} M^2 / x^2 dx = M^2 / (n (n + 1))
            acc += ExtReal::from_int(M * M) / (ExtReal::from_int(n) * ExtReal::from_int(n + 1));
        }
    }
    out.integral = acc;
    out.ratio = X > 1 ? acc.to_double() / std::log(static_cast<double>(X)) : 0.0;
    return out;
}

ExtReal zero_sum_partial(const ZeroCache& cache, const ExtReal& T) {
    require_in_range(T, cache, "zero_sum_partial height");
    const std::size_t n = upper_index(cache, T);
    for (std::size_t i = 0; i < n; ++i) {
        if (cache.records[i].zprime_abs.to_double() <= kHazardFloor) {
            throw NumericHazardError("|zeta'(rho)| <= 1e-8 at zero #" + std::to_string(cache.records[i].index));
        }
    }
    return sharded_sum(n, [&](std::size_t i) {
        const auto& r = cache.records[i];
        return ExtReal(1.0) / ((ExtReal(0.25) + r.gamma * r.gamma) * r.zprime_abs * r.zprime_abs);
    });
}

}  // namespace zml
