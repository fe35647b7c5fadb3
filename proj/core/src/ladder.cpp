#include "zml/ladder.hpp"

#include <cmath>
#include <sstream>

#include "zml/error.hpp"

namespace zml {

namespace {

constexpr double kTwoPi = 6.283185307179586;

std::int64_t ell_of(std::int64_t s, double d) {
    return 2 * static_cast<std::int64_t>(std::ceil(std::pow(static_cast<double>(s), d) / 2.0));
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::string to_string(Regime regime) { return regime == Regime::small_k ? "small_k" : "large_k"; }

LadderExponents ladder_exponents(double k, double eps) {
    const double ke = k * eps;
    if (2.0 * k * (1.0 + eps) <= 1.0) {
        return {Regime::small_k, (4.0 - 3.0 * ke) / (2.0 * (2.0 - ke)), 2.0 / (2.0 - ke),
                (8.0 - 7.0 * ke) / (2.0 * (4.0 - 3.0 * ke))};
    }
    return {Regime::large_k, (1.0 - 3.0 * ke) / (1.0 - 2.0 * ke), 1.0 / (1.0 - 2.0 * ke),
            (2.0 - 7.0 * ke) / (2.0 * (1.0 - 3.0 * ke))};
}

double ladder_beta0(const LadderExponents& e, double k, double eps, double delta, double T) {
    const double l = std::log(T);
    const double ll = std::log(l);
    const double adr = e.a * (2.0 * e.d - 1.0) / e.r;
    if (e.regime == Regime::small_k) return e.a * (2.0 * e.d - 1.0) * ll / ((1.0 + 2.0 * eps) * k * l);
    return (2.0 * k + 2.0 * e.d - 1.0 - adr) * ll / ((1.0 + delta) * k * l);
}

std::vector<double> ladder_c_grid() {
    std::vector<double> g;
    for (int i = 10; i >= 1; --i) g.push_back(0.05 * i);
    return g;
}

double condition_c_slack(const LadderExponents& e, double c, double T) {
    const double l = std::log(T);
    const double r1d = std::pow(e.r, 1.0 - e.d);
    const double lhs = std::pow(c, 1.0 - e.d) * (std::pow(e.a, e.d) * r1d / (r1d - 1.0) + 2.0 * e.r / (e.r - 1.0));
    return (1.0 - e.a - std::log(l) / l) - lhs;
}

LadderParams make_ladder(double k, double eps, double delta, const ExtReal& T) {
    if (!(k > 0.0)) throw DomainError("make_ladder requires k > 0");
    if (!(eps > 0.0 && eps < std::min(1.0, 1.0 / (4.0 * k)))) {
        throw DomainError("make_ladder requires 0 < eps < min(1, 1/(4k))");
    }
    if (!(delta > 0.0)) throw DomainError("make_ladder requires delta > 0");
    if (!(T.to_double() >= 1e3)) throw DomainError("make_ladder requires T >= 1e3");

    const LadderExponents e = ladder_exponents(k, eps);
    LadderParams p;
    p.regime = e.regime;
    p.k = k;
    p.eps = eps;
    p.delta = delta;
    p.a = e.a;
    p.r = e.r;
    p.d = e.d;
    p.T = T;
    const double Td = T.to_double();
    const double l = std::log(Td);
    const double bound = 1.0 - std::log(l) / l;
    const double cmax = ladder_c_grid().front();

    const double beta0 = ladder_beta0(e, k, eps, delta, Td);
    auto s_at = [&](int j, double beta) {
        const double num = (j == 0 && e.regime == Regime::large_k) ? 1.0 : e.a;
        return static_cast<std::int64_t>(std::floor(num / beta));
    };

    // Grow the ladder while every level is admissible and both constraint
    // families still hold; K is the last admissible level.
    std::vector<double> beta;
    std::vector<std::int64_t> s, ell;
    double partial = 0.0;
    for (int j = 0;; ++j) {
        const double bj = j == 0 ? beta0 : beta.back() * e.r;
        const std::int64_t sj = s_at(j, bj);
        const std::int64_t lj = ell_of(sj, e.d);
        std::string why;
        if (bj > cmax) why = "beta_" + std::to_string(j) + " = " + fmt(bj) + " exceeds the largest c = " + fmt(cmax);
        else if (sj < 1) why = "s_" + std::to_string(j) + " = [a/beta] is 0";
        else if (partial + lj * bj > bound) {
            why = "sum_{h<=" + std::to_string(j) + "} l_h beta_h = " + fmt(partial + lj * bj) +
                  " exceeds 1 - loglogT/logT = " + fmt(bound);
        } else if (j > 0 && partial + sj * bj > bound) {
            why = "sum_{h<=" + std::to_string(j - 1) + "} l_h beta_h + s_" + std::to_string(j) + " beta_" +
                  std::to_string(j) + " = " + fmt(partial + sj * bj) + " exceeds " + fmt(bound);
        }
        if (!why.empty()) {
            if (j == 0) throw InfeasibleError("no admissible ladder at T = " + fmt(Td) + ": " + why);
            break;
        }
        beta.push_back(bj);
        s.push_back(sj);
        ell.push_back(lj);
        partial += lj * bj;
    }
    p.K = static_cast<int>(beta.size()) - 1;
    p.beta = beta;
    p.s = s;
    p.ell = ell;
    for (double b : beta) p.Delta.push_back(b * l / kTwoPi);
    p.c = cmax;
    for (double c : ladder_c_grid()) {
        if (c >= p.beta.back()) p.c = c;
    }
    return p;
}

LadderValidation validate_ladder(const LadderParams& p) {
    LadderValidation v;
    auto add = [&](std::string name, double slack, bool info = false) {
        if (!info && !(slack >= 0.0)) {
            v.ok = false;
            v.violations.push_back(name + " (slack " + fmt(slack) + ")");
        }
        v.constraints.push_back({std::move(name), slack, info});
    };
    const std::size_t n = static_cast<std::size_t>(p.K) + 1;
    if (p.beta.size() != n || p.s.size() != n || p.ell.size() != n || p.Delta.size() != n) {
        v.ok = false;
        v.violations.push_back("ladder vectors do not have K + 1 entries");
        return v;
    }
    const double l = p.log_T();
    const double bound = 1.0 - p.loglog_ratio();
    const double adr = p.a * (2.0 * p.d - 1.0) / p.r;
    const double adr_target = p.regime == Regime::small_k ? 1.0 - p.k * p.eps : 1.0 - 4.0 * p.k * p.eps;
    add("a(2d-1)/r identity", 1e-12 - std::fabs(adr - adr_target));

    for (std::size_t j = 0; j < n; ++j) {
        const std::string js = std::to_string(j);
        if (j > 0) add("beta_" + js + " = r beta_" + std::to_string(j - 1),
                       1e-12 - std::fabs(p.beta[j] / (p.r * p.beta[j - 1]) - 1.0));
        add("l_" + js + " even", p.ell[j] % 2 == 0 ? 0.0 : -1.0);
        add("l_" + js + " = 2 ceil(s^d / 2)", p.ell[j] == ell_of(p.s[j], p.d) ? 0.0 : -1.0);
        add("2 pi Delta_" + js + " = beta_" + js + " log T",
            1e-12 - std::fabs(kTwoPi * p.Delta[j] - p.beta[j] * l) / (p.beta[j] * l));
    }
    double partial = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j + 1 < n) {
            add("sum_{h<=" + std::to_string(j) + "} l_h beta_h + s_" + std::to_string(j + 1) + " beta_" +
                    std::to_string(j + 1),
                bound - (partial + p.ell[j] * p.beta[j] + p.s[j + 1] * p.beta[j + 1]));
        }
        partial += p.ell[j] * p.beta[j];
    }
    add("sum_{h<=K} l_h beta_h", bound - partial);
    add("beta_K <= c", p.c - p.beta.back());
    add("condition on c", condition_c_slack({p.regime, p.a, p.r, p.d}, p.c, p.T.to_double()), true);
    return v;
}

}  // namespace zml
