#include <algorithm>
#include <cmath>

#include "zml/error.hpp"
#include "zml/parallel.hpp"
#include "zml/special.hpp"
#include "zml/zeros.hpp"

namespace zml {

namespace {

constexpr int kMaxSubdivision = 64;
constexpr double kBracketTol = 1e-12;
constexpr double kSimplicityFloor = 1e-8;

struct Sample {
    ExtReal t;
    double z;
};

bool positive(double z) { return z >= 0.0; }

int count_sign_changes(const std::vector<Sample>& s) {
    int c = 0;
    for (std::size_t i = 1; i < s.size(); ++i) c += positive(s[i - 1].z) != positive(s[i].z);
    return c;
}

double z_of(const ExtReal& t) { return hardy_z(t).to_double(); }

// Minimizes sign * Z on [a, c] around an interior sample b (golden section).
Sample minimize_signed(const Sample& a, const Sample& c, double sign) {
    const double phi = 0.6180339887498949;
    const ExtReal base = a.t;
    double lo = 0.0;
    double hi = (c.t - a.t).to_double();
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    double f1 = sign * z_of(base + ExtReal(x1));
    double f2 = sign * z_of(base + ExtReal(x2));
    for (int i = 0; i < 60 && hi - lo > 1e-13; ++i) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = sign * z_of(base + ExtReal(x1));
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = sign * z_of(base + ExtReal(x2));
        }
        if (f1 < 0.0 || f2 < 0.0) break;
    }
    const double x = f1 < f2 ? x1 : x2;
    return {base + ExtReal(x), sign * std::min(f1, f2)};
}

void resolve_block(BlockCount& block, std::vector<Sample> samples) {
    block.found = count_sign_changes(samples);
    for (int sub = 2; block.found < block.expected && sub <= kMaxSubdivision; sub *= 2) {
        std::vector<Sample> finer;
        finer.reserve(samples.size() * 2);
        for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
            finer.push_back(samples[i]);
            const ExtReal mid = ldexp(samples[i].t + samples[i + 1].t, -1);
            finer.push_back({mid, z_of(mid)});
        }
        finer.push_back(samples.back());
        samples = std::move(finer);
        block.found = count_sign_changes(samples);
    }
    if (block.found < block.expected) {
        // Look for a pair of close zeros hiding between two samples of equal sign.
        std::vector<Sample> extra;
        for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
            const double zl = samples[i - 1].z, zm = samples[i].z, zr = samples[i + 1].z;
            if (positive(zl) != positive(zm) || positive(zm) != positive(zr)) continue;
            if (std::fabs(zm) >= std::fabs(zl) || std::fabs(zm) >= std::fabs(zr)) continue;
            const double sign = positive(zm) ? 1.0 : -1.0;
            const Sample m = minimize_signed(samples[i - 1], samples[i + 1], sign);
            if (positive(m.z) != positive(zm)) extra.push_back(m);
        }
        if (!extra.empty()) {
            samples.insert(samples.end(), extra.begin(), extra.end());
            std::sort(samples.begin(), samples.end(), [](const Sample& x, const Sample& y) { return x.t < y.t; });
            block.found = count_sign_changes(samples);
        }
    }
    block.brackets.clear();
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (positive(samples[i - 1].z) != positive(samples[i].z)) {
            block.brackets.push_back(samples[i - 1].t);
            block.brackets.push_back(samples[i].t);
        }
    }
}

// Bisection, then the Illinois variant of regula falsi.
ExtReal refine_zero(ExtReal a, ExtReal b) {
    double za = z_of(a);
    double zb = z_of(b);
    if (za == 0.0) return a;
    if (zb == 0.0) return b;
    for (int i = 0; i < 4; ++i) {
        const ExtReal m = ldexp(a + b, -1);
        const double zm = z_of(m);
        if (zm == 0.0) return m;
        if (positive(zm) == positive(za)) {
            a = m;
            za = zm;
        } else {
            b = m;
            zb = zm;
        }
    }
    int side = 0;
    for (int it = 0; it < 200; ++it) {
        const ExtReal width = b - a;
        if (width.to_double() <= kBracketTol) break;
        ExtReal c;
        if (it % 8 == 7) {
            c = ldexp(a + b, -1);  // guaranteed progress
        } else {
            c = a + width * ExtReal(za / (za - zb));
            if (!(c > a && c < b)) c = ldexp(a + b, -1);
        }
        const double zc = z_of(c);
        if (zc == 0.0) return c;
        if (positive(zc) == positive(za)) {
            a = c;
            za = zc;
            if (side == -1) zb *= 0.5;
            side = -1;
        } else {
            b = c;
            zb = zc;
            if (side == 1) za *= 0.5;
            side = 1;
        }
    }
    if ((b - a).to_double() > kBracketTol) throw NumericError("zero refinement did not reach 1e-12");
    return ldexp(a + b, -1);
}

}  // namespace

std::vector<BlockCount> scan_gram_blocks(std::int64_t n_lo, std::int64_t n_hi, bool strict) {
    if (n_hi <= n_lo) return {};
    const auto count = static_cast<std::size_t>(n_hi - n_lo + 1);
    std::vector<Sample> grams(count);
    parallel_for(count, [&](std::size_t i) {
        const ExtReal g = gram_point_unchecked(n_lo + static_cast<std::int64_t>(i));
        grams[i] = {g, z_of(g)};
    }, 64);

    auto good = [&](std::size_t i) {
        const std::int64_t n = n_lo + static_cast<std::int64_t>(i);
        return (n % 2 == 0) ? grams[i].z > 0.0 : grams[i].z < 0.0;
    };
    if (!good(0) || !good(count - 1)) throw DomainError("scan_gram_blocks needs good Gram points at both ends");

    std::vector<std::size_t> marks;
    for (std::size_t i = 0; i < count; ++i) {
        if (good(i)) marks.push_back(i);
    }
    std::vector<BlockCount> blocks(marks.size() - 1);
    parallel_for(blocks.size(), [&](std::size_t b) {
        const std::size_t i0 = marks[b];
        const std::size_t i1 = marks[b + 1];
        BlockCount& blk = blocks[b];
        blk.n_lo = n_lo + static_cast<std::int64_t>(i0);
        blk.n_hi = n_lo + static_cast<std::int64_t>(i1);
        blk.expected = static_cast<int>(i1 - i0);
        std::vector<Sample> s(grams.begin() + static_cast<std::ptrdiff_t>(i0),
                              grams.begin() + static_cast<std::ptrdiff_t>(i1) + 1);
        resolve_block(blk, std::move(s));
    }, 16);

    if (strict) {
        for (const auto& blk : blocks) {
            if (blk.found < blk.expected) {
                throw CertificationError(
                    "Gram block g_" + std::to_string(blk.n_lo) + ".." + "g_" + std::to_string(blk.n_hi) + " [" +
                    grams[static_cast<std::size_t>(blk.n_lo - n_lo)].t.to_string(17) + ", " +
                    grams[static_cast<std::size_t>(blk.n_hi - n_lo)].t.to_string(17) + "]: expected " +
                    std::to_string(blk.expected) + " zeros, found " + std::to_string(blk.found) +
                    " after 64-fold subdivision and minimum search");
            }
        }
    }
    return blocks;
}

std::vector<ZeroRecord> isolate_zeros(const ExtReal& t_lo, const ExtReal& t_hi) {
    if (!(t_lo.hi() >= 10.0) || !(t_hi > t_lo) || t_hi.hi() > 1e7) {
        throw DomainError("isolate_zeros requires 10 <= t_lo < t_hi <= 1e7");
    }
    std::int64_t n_lo = gram_index_below(t_lo);
    while (!is_good_gram_point(n_lo)) --n_lo;  // g_{-1} is always good
    const std::int64_t n_hi = next_good_gram_index(gram_index_below(t_hi) + 1);

    const auto blocks = scan_gram_blocks(n_lo, n_hi, true);
    std::vector<std::pair<ExtReal, ExtReal>> brackets;
    for (const auto& blk : blocks) {
        for (std::size_t i = 0; i < blk.brackets.size(); i += 2) {
            brackets.emplace_back(blk.brackets[i], blk.brackets[i + 1]);
        }
    }

    std::vector<ZeroRecord> all(brackets.size());
    parallel_for(brackets.size(), [&](std::size_t i) {
        const ExtReal g = refine_zero(brackets[i].first, brackets[i].second);
        all[i].index = static_cast<std::uint64_t>(n_lo + 2) + i;
        all[i].gamma = g;
        all[i].zprime_abs = abs(hardy_z_prime(g));
    }, 8);

    std::string offenders;
    std::vector<ZeroRecord> out;
    for (const auto& r : all) {
        if (!(r.gamma > t_lo) || r.gamma > t_hi) continue;
        if (r.zprime_abs.to_double() < kSimplicityFloor) {
            offenders += " #" + std::to_string(r.index) + " at " + r.gamma.to_string(20);
        }
        out.push_back(r);
    }
    if (!offenders.empty()) {
        throw NumericError("zeros with |Z'| < 1e-8 (possibly not simple):" + offenders);
    }
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (!(out[i].gamma > out[i - 1].gamma)) throw NumericError("refined zeros are not strictly increasing");
    }
    return out;
}

}  // namespace zml
