#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zml/ext_real.hpp"

namespace zml {

struct ZeroRecord {
    std::uint64_t index = 0;  // 1-based: gamma_1 = 14.1347...
    ExtReal gamma;
    ExtReal zprime_abs;       // |Z'(gamma)| = |zeta'(1/2 + i gamma)|

    friend bool operator==(const ZeroRecord& a, const ZeroRecord& b) {
        return a.index == b.index && a.gamma == b.gamma && a.zprime_abs == b.zprime_abs;
    }
};

/// Ordered zeros with ordinates in (height_lo, height_hi].
struct ZeroCache {
    ExtReal height_lo;
    ExtReal height_hi;
    std::vector<ZeroRecord> records;
    bool certified = false;

    friend bool operator==(const ZeroCache& a, const ZeroCache& b) {
        return a.height_lo == b.height_lo && a.height_hi == b.height_hi && a.certified == b.certified &&
               a.records == b.records;
    }
};

/// Solution of theta(g_n) = n pi, n >= 0.
ExtReal gram_point(std::int64_t n);

/// Also accepts n = -1 (g_{-1} ~ 9.667), which opens the scan at the bottom.
ExtReal gram_point_unchecked(std::int64_t n);

/// Largest n >= -1 with g_n <= t.
std::int64_t gram_index_below(const ExtReal& t);

/// Zeros of Z in (t_lo, t_hi], refined to a bracket of width <= 1e-12.
/// 10 <= t_lo < t_hi <= 1e7.
std::vector<ZeroRecord> isolate_zeros(const ExtReal& t_lo, const ExtReal& t_hi);

struct BlockCount {
    std::int64_t n_lo = 0;  // block is [g_{n_lo}, g_{n_hi}]
    std::int64_t n_hi = 0;
    int expected = 0;
    int found = 0;
    std::vector<ExtReal> brackets;  // pairs (a, b) with a sign change of Z
};

/// Locates sign changes of Z in every Gram block between the good Gram
/// points g_{n_lo} and g_{n_hi}, subdividing where the count falls short.
/// With `strict`, a block that stays short raises CertificationError.
std::vector<BlockCount> scan_gram_blocks(std::int64_t n_lo, std::int64_t n_hi, bool strict);

/// True when (-1)^n Z(g_n) > 0.
bool is_good_gram_point(std::int64_t n);

struct TuringReport {
    bool certified = false;
    std::int64_t top_gram_index = 0;      // m with g_m = height_hi
    std::int64_t bottom_gram_index = -1;  // -1 when height_lo = 0
    std::int64_t stored_count = 0;
    std::int64_t expected_count = 0;
    int blocks_required = 0;
    int blocks_checked_above = 0;
    int blocks_checked_below = 0;
    double s_at_top = 0.0;                // S(g_m) = N(g_m) - 1 - m
    double turing_integral_bound = 0.0;   // 2.30 + 0.128 log(T / 2 pi)
    std::string failure;                  // first failing Gram block, if any
};

/// Turing / Brent completeness check of a cache whose ends are good Gram
/// points (or 0 at the bottom). Sets cache.certified.
TuringReport turing_certify(ZeroCache& cache);

/// Isolates all zeros in (0, T'] where T' is the first good Gram point >= T,
/// then certifies.
ZeroCache build_zero_cache(const ExtReal& height);

/// Extends a certified cache to at least `height` (the addition is itself
/// certified and joined contiguously).
ZeroCache extend_zero_cache(const ZeroCache& cache, const ExtReal& height);

/// Returns the first good Gram index >= n.
std::int64_t next_good_gram_index(std::int64_t n);

}  // namespace zml
