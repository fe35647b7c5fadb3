#include <cmath>

#include "zml/error.hpp"
#include "zml/special.hpp"
#include "zml/zeros.hpp"

namespace zml {

namespace {

int brent_blocks_required(double g) {
    const double l = std::log(g);
    return static_cast<int>(std::ceil(0.0061 * l * l + 0.08 * l));
}

// Index m with g_m == t (to within 1e-9), or throws.
std::int64_t gram_index_of(const ExtReal& t) {
    const auto m = static_cast<std::int64_t>(std::llround((theta(t) / constants::pi).to_double()));
    if (std::fabs((gram_point_unchecked(m) - t).to_double()) > 1e-9) {
        throw CertificationError("cache boundary " + t.to_string(20) + " is not a Gram point");
    }
    return m;
}

struct RosserRun {
    int blocks = 0;
    std::string failure;
};

// Checks consecutive Gram blocks that start at g_m (upward) for Rosser's rule
// until `needed` blocks pass, recomputing the requirement from the reached height.
RosserRun rosser_above(std::int64_t m, int needed) {
    RosserRun run;
    std::int64_t a = m;
    while (run.blocks < needed) {
        const std::int64_t b = next_good_gram_index(a + 1);
        const auto blocks = scan_gram_blocks(a, b, false);
        const BlockCount& blk = blocks.front();
        if (blk.found < blk.expected) {
            run.failure = "Gram block g_" + std::to_string(a) + "..g_" + std::to_string(b) +
                          " violates Rosser's rule (" + std::to_string(blk.found) + " of " +
                          std::to_string(blk.expected) + " zeros)";
            return run;
        }
        ++run.blocks;
        needed = std::max(needed, brent_blocks_required(gram_point_unchecked(b).to_double()));
        a = b;
    }
    return run;
}

RosserRun rosser_below(std::int64_t l, int needed) {
    RosserRun run;
    std::int64_t b = l;
    while (run.blocks < needed) {
        if (b <= -1) {
            // The bottom of the critical strip: nothing below g_{-1} to test.
            run.blocks = needed;
            return run;
        }
        std::int64_t a = b - 1;
        while (a > -1 && !is_good_gram_point(a)) --a;
        const auto blocks = scan_gram_blocks(a, b, false);
        const BlockCount& blk = blocks.front();
        if (blk.found < blk.expected) {
            run.failure = "Gram block g_" + std::to_string(a) + "..g_" + std::to_string(b) +
                          " violates Rosser's rule (" + std::to_string(blk.found) + " of " +
                          std::to_string(blk.expected) + " zeros)";
            return run;
        }
        ++run.blocks;
        b = a;
    }
    return run;
}

}  // namespace

TuringReport turing_certify(ZeroCache& cache) {
    TuringReport rep;
    cache.certified = false;
    if (cache.records.empty()) {
        rep.failure = "empty cache";
        return rep;
    }
    for (std::size_t i = 0; i < cache.records.size(); ++i) {
        const auto& r = cache.records[i];
        if (!(r.gamma > cache.height_lo) || r.gamma > cache.height_hi) {
            rep.failure = "zero #" + std::to_string(r.index) + " outside (height_lo, height_hi]";
            return rep;
        }
        if (i > 0 && (!(r.gamma > cache.records[i - 1].gamma) || r.index != cache.records[i - 1].index + 1)) {
            rep.failure = "zeros not strictly increasing / consecutive at #" + std::to_string(r.index);
            return rep;
        }
    }

    const std::int64_t m = gram_index_of(cache.height_hi);
    rep.top_gram_index = m;
    if (!is_good_gram_point(m)) {
        rep.failure = "top Gram point g_" + std::to_string(m) + " is not good";
        return rep;
    }
    std::int64_t l = -1;
    if (cache.height_lo.hi() > 0.0) {
        l = gram_index_of(cache.height_lo);
        if (!is_good_gram_point(l)) {
            rep.failure = "bottom Gram point g_" + std::to_string(l) + " is not good";
            return rep;
        }
    }
    rep.bottom_gram_index = l;
    rep.stored_count = static_cast<std::int64_t>(cache.records.size());
    rep.expected_count = m - l;
    rep.blocks_required = brent_blocks_required(cache.height_hi.to_double());
    rep.turing_integral_bound = 2.30 + 0.128 * std::log(cache.height_hi.to_double() / (2.0 * 3.141592653589793));

    const auto above = rosser_above(m, rep.blocks_required);
    rep.blocks_checked_above = above.blocks;
    if (!above.failure.empty()) {
        rep.failure = above.failure;
        return rep;
    }
    if (l >= 0) {
        const int need_below = brent_blocks_required(cache.height_lo.to_double());
        const auto below = rosser_below(l, need_below);
        rep.blocks_checked_below = below.blocks;
        if (!below.failure.empty()) {
            rep.failure = below.failure;
            return rep;
        }
    }
    if (cache.records.front().index != static_cast<std::uint64_t>(l + 2)) {
        rep.failure = "first stored index " + std::to_string(cache.records.front().index) + " does not follow N(g_" +
                      std::to_string(l) + ") = " + std::to_string(l + 1);
        return rep;
    }

    // N(g_m) implied by the stored zeros, and S there.
    const std::int64_t n_top = (l + 1) + rep.stored_count;
    rep.s_at_top = static_cast<double>(n_top - 1 - m);
    if (rep.stored_count != rep.expected_count) {
        rep.failure = "stored count " + std::to_string(rep.stored_count) + " on (g_" + std::to_string(l) + ", g_" +
                      std::to_string(m) + "] differs from Turing count " + std::to_string(rep.expected_count);
        return rep;
    }
    rep.certified = true;
    cache.certified = true;
    return rep;
}

ZeroCache build_zero_cache(const ExtReal& height) {
    if (!(height.hi() > 10.0)) throw DomainError("build_zero_cache requires height > 10");
    const std::int64_t m = next_good_gram_index(std::max<std::int64_t>(0, gram_index_below(height) + 1));
    ZeroCache cache;
    cache.height_lo = ExtReal();
    cache.height_hi = gram_point(m);
    cache.records = isolate_zeros(ExtReal(10.0), cache.height_hi);
    const TuringReport rep = turing_certify(cache);
    if (!rep.certified) throw CertificationError("zero cache to " + cache.height_hi.to_string(17) + ": " + rep.failure);
    return cache;
}

ZeroCache extend_zero_cache(const ZeroCache& cache, const ExtReal& height) {
    if (!cache.certified) throw CertificationError("cannot extend an uncertified cache");
    if (height <= cache.height_hi) return cache;
    const std::int64_t m = next_good_gram_index(gram_index_below(height) + 1);
    ZeroCache ext;
    ext.height_lo = cache.height_hi;
    ext.height_hi = gram_point(m);
    ext.records = isolate_zeros(ext.height_lo, ext.height_hi);
    const TuringReport rep = turing_certify(ext);
    if (!rep.certified) throw CertificationError("cache extension: " + rep.failure);
    ZeroCache merged = cache;
    merged.height_hi = ext.height_hi;
    merged.records.insert(merged.records.end(), ext.records.begin(), ext.records.end());
    merged.certified = true;
    return merged;
}

}  // namespace zml
