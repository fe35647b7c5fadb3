#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zml/arithmetic.hpp"
#include "zml/ext_real.hpp"
#include "zml/zeros.hpp"

namespace zml {

enum class FamilyKind { full, F, F_enl };

struct FamilySpec {
    FamilyKind kind = FamilyKind::full;
    double c_gap = 1.0;
    std::string f_choice = "logloglog";
};

std::string to_string(FamilyKind kind);
FamilyKind parse_family_kind(const std::string& name);

/// f(T) for the enlarged family, guarded to be >= 1.
double family_f(const std::string& f_choice, double T);
/// Minimal admissible nearest-neighbour gap for the family at height T.
double family_threshold(const FamilySpec& spec, double T);

enum class WindowKind { dyadic, initial };  // (T, 2T] and (0, T]

struct Window {
    WindowKind kind = WindowKind::dyadic;
    ExtReal T;

    ExtReal lo() const { return kind == WindowKind::dyadic ? T : ExtReal(); }
    ExtReal hi() const { return kind == WindowKind::dyadic ? ldexp(T, 1) : T; }
};

std::string to_string(WindowKind kind);

/// Number of stored ordinates in (0, T]. T must lie in the certified range.
std::int64_t count_N(const ExtReal& T, const ZeroCache& cache);

/// S(t) = N(t) - 1 - theta(t)/pi. AmbiguityError within 1e-10 of a zero.
ExtReal s_of_t(const ExtReal& t, const ZeroCache& cache);

struct SMaxScan {
    double max_abs_s = 0.0;
    ExtReal argmax;
    bool one_sided_from_right = false;  // supremum approached as t -> argmax+
    double ratio_conjectured = 0.0;     // max|S| / sqrt(log t log log t)
    double ratio_littlewood = 0.0;      // max|S| / (log t / log log t)
    double max_s = 0.0;
    double min_s = 0.0;
};

SMaxScan s_max_scan(const ExtReal& t_lo, const ExtReal& t_hi, const ZeroCache& cache);

/// (1/(b-a)) * integral of S over [a, b], exact in N and by quadrature in theta.
double s_mean(const ExtReal& a, const ExtReal& b, const ZeroCache& cache);

struct FamilyResult {
    std::vector<std::uint64_t> included;
    std::vector<std::uint64_t> excluded;
    double threshold = 0.0;
    double excluded_fraction = 0.0;
};

FamilyResult family_filter(const ZeroCache& cache, const FamilySpec& spec, const Window& window);

struct MomentComparison {
    double model_value = 0.0;
    double ratio = 0.0;
};

struct MomentReport {
    double k = 0.0;
    ExtReal T;
    FamilySpec family;
    WindowKind window = WindowKind::dyadic;
    ExtReal J;
    std::int64_t zero_count_used = 0;
    std::int64_t zero_count_excluded = 0;
    std::optional<MomentComparison> comparison;
};

/// J_{-k} = sum over the filtered window of |zeta'(rho)|^{-2k}.
MomentReport discrete_moment(const ZeroCache& cache, double k, const Window& window, const FamilySpec& spec);

/// J_{-1} over (0, T] divided by (3/pi^3) T.
double gonek_ratio(const ZeroCache& cache, const ExtReal& T);
/// J_1 over (0, T] divided by (1/(24 pi)) T (log T)^4.
double positive_moment_ratio(const ZeroCache& cache, const ExtReal& T);

struct FitResult {
    double k = 0.0;
    double exponent = 0.0;  // least-squares slope of log(J/T) against log log T
    double target = 0.0;    // (k - 1)^2
    double intercept = 0.0;
    std::vector<double> T;
    std::vector<double> log_j_over_t;
    std::vector<double> residuals;       // OLS residuals
    std::vector<double> model_log_ratio; // log(J / (T (log T)^{(k-1)^2}))
};

FitResult conjecture_fit(const ZeroCache& cache, double k, const std::vector<double>& T_grid,
                         const FamilySpec& spec, WindowKind window = WindowKind::dyadic);

struct WmcResult {
    std::int64_t X = 0;
    ExtReal integral;  // int_1^X (M(x)/x)^2 dx
    double ratio = 0.0;  // integral / log X (0 for X = 1)
};

WmcResult wmc_integral(std::int64_t X, const ArithmeticTables& tables);

/// sum_{0 < gamma <= T} 1 / ((1/4 + gamma^2) |zeta'(rho)|^2).
ExtReal zero_sum_partial(const ZeroCache& cache, const ExtReal& T);

}  // namespace zml
