#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "golden_values.hpp"
#include "test_support.hpp"
#include "zml/cache_io.hpp"
#include "zml/error.hpp"
#include "zml/special.hpp"
#include "zml/statistics.hpp"
#include "zml/zeros.hpp"

using namespace zml;
using zml::test::ext;
using zml::test::shared_cache;

namespace {

std::string temp_path(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "zml_zero_engine";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

std::vector<std::uint8_t> slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST(Gram, GoldenPoints) {
    EXPECT_LE(zml::test::abs_err(gram_point(0), ext(golden::kGram0)), 1e-10);
    EXPECT_LE(zml::test::abs_err(gram_point(1000), ext(golden::kGram1000)), 1e-10);
}

TEST(Gram, ResidualAndMonotone) {
    ExtReal prev = gram_point(0);
    for (std::int64_t n = 1; n <= 2000; n += 7) {
        const ExtReal g = gram_point(n);
        const ExtReal target = ExtReal::from_int(n) * constants::pi;
        EXPECT_LE(std::fabs((theta(g) - target).to_double()), 1e-10) << n;
        EXPECT_GT(g, prev);
        prev = g;
    }
    EXPECT_EQ(gram_index_below(gram_point(500) + ExtReal(1e-9)), 500);
    EXPECT_THROW(gram_point(-1), DomainError);
}

TEST(Isolate, FirstZerosMatchOracle) {
    const auto z = isolate_zeros(ExtReal(10.0), ExtReal(50.0));
    ASSERT_EQ(z.size(), 10u);
    for (std::size_t i = 0; i < 10; ++i) {
        EXPECT_EQ(z[i].index, i + 1);
        EXPECT_LE(zml::test::abs_err(z[i].gamma, ext(golden::kFirstZeros[i])), 1e-9) << i;
        EXPECT_LE(zml::test::abs_err(z[i].zprime_abs, ext(golden::kFirstZetaPrime[i])), 1e-6) << i;
    }
}

TEST(Isolate, EmptyInterval) { EXPECT_TRUE(isolate_zeros(ExtReal(10.0), ExtReal(14.0)).empty()); }

TEST(Isolate, LehmerPairResolved) {
    const auto z = isolate_zeros(ExtReal(7004.5), ExtReal(7005.5));
    ASSERT_EQ(z.size(), 2u);
    EXPECT_EQ(z[0].index, 6709u);
    EXPECT_EQ(z[1].index, 6710u);
    EXPECT_LE(zml::test::abs_err(z[0].gamma, ext(golden::kLehmer6709)), 1e-9);
    EXPECT_LE(zml::test::abs_err(z[1].gamma, ext(golden::kLehmer6710)), 1e-9);
    EXPECT_NEAR((z[1].gamma - z[0].gamma).to_double(), 0.0377, 1e-4);
}

TEST(Isolate, DomainChecks) {
    EXPECT_THROW(isolate_zeros(ExtReal(5.0), ExtReal(50.0)), DomainError);
    EXPECT_THROW(isolate_zeros(ExtReal(50.0), ExtReal(40.0)), DomainError);
}

TEST(Cache, CountAndGolden) {
    const ZeroCache& c = shared_cache(1e4);
    EXPECT_TRUE(c.certified);
    EXPECT_EQ(count_N(ExtReal(100.0), c), 29);
    EXPECT_EQ(count_N(ExtReal(14.0), c), 0);
    ASSERT_GE(c.records.size(), 10000u);
    EXPECT_LE(zml::test::abs_err(c.records[9999].gamma, ext(golden::kZero10000)), 1e-9);
    for (std::size_t i = 0; i < c.records.size(); ++i) ASSERT_EQ(c.records[i].index, i + 1);
}

TEST(Cache, SignsAlternateAndZerosSimple) {
    // Z keeps one sign between consecutive zeros and flips across each one.
    const ZeroCache& c = shared_cache(1e4);
    double min_zp = 1e300;
    double prev = 0.0;
    for (std::size_t i = 0; i + 1 < c.records.size() && i < 10000; ++i) {
        ASSERT_GT(c.records[i + 1].gamma, c.records[i].gamma);
        const double z = hardy_z(ldexp(c.records[i].gamma + c.records[i + 1].gamma, -1)).to_double();
        if (i > 0) ASSERT_LT(prev * z, 0.0) << "around zero " << i + 1;
        prev = z;
        min_zp = std::min(min_zp, c.records[i].zprime_abs.to_double());
    }
    EXPECT_GT(min_zp, 1e-4);
}

TEST(Cache, CompletenessViaS) {
    const ZeroCache& c = shared_cache(1e4);
    for (double t = 20.0; t < c.height_hi.to_double() - 1; t += 9.731) {
        EXPECT_LT(std::fabs(s_of_t(ExtReal(t), c).to_double()), 2.5) << t;
    }
}

TEST(Cache, TuringReport) {
    ZeroCache c = shared_cache(1e4);
    const TuringReport r = turing_certify(c);
    EXPECT_TRUE(r.certified) << r.failure;
    EXPECT_EQ(r.stored_count, r.expected_count);
    EXPECT_GE(r.blocks_checked_above, r.blocks_required);
    EXPECT_EQ(r.bottom_gram_index, -1);
    EXPECT_LT(std::fabs(r.s_at_top), 1e-9);
    EXPECT_GT(r.turing_integral_bound, 2.3);

    // Dropping one zero must break certification.
    ZeroCache broken = c;
    broken.records.erase(broken.records.begin() + 5000);
    EXPECT_FALSE(turing_certify(broken).certified);
}

TEST(Cache, ExtendMatchesFreshBuild) {
    const ZeroCache low = build_zero_cache(ExtReal(500.0));
    const ZeroCache ext_c = extend_zero_cache(low, ExtReal(1500.0));
    const ZeroCache fresh = build_zero_cache(ExtReal(1500.0));
    ASSERT_EQ(ext_c.records.size(), fresh.records.size());
    EXPECT_EQ(ext_c.height_hi, fresh.height_hi);
    for (std::size_t i = 0; i < fresh.records.size(); ++i) {
        EXPECT_EQ(ext_c.records[i].index, fresh.records[i].index);
        EXPECT_LE(zml::test::abs_err(ext_c.records[i].gamma, fresh.records[i].gamma), 1e-12);
    }
}

TEST(CacheIo, RoundTrip) {
    const ZeroCache& c = shared_cache(1e4);
    const std::string path = temp_path("roundtrip.zmlc");
    write_cache(path, c);
    EXPECT_EQ(read_cache(path), c);
    EXPECT_EQ(cache_io(path, CacheMode::read), c);
    EXPECT_EQ(cache_checksum(read_cache(path)), cache_checksum(c));
}

TEST(CacheIo, AppendComposes) {
    const ZeroCache low = build_zero_cache(ExtReal(500.0));
    const ZeroCache full = extend_zero_cache(low, ExtReal(1500.0));
    ZeroCache upper;
    upper.height_lo = low.height_hi;
    upper.height_hi = full.height_hi;
    upper.certified = true;
    upper.records.assign(full.records.begin() + static_cast<std::ptrdiff_t>(low.records.size()), full.records.end());

    const std::string path = temp_path("append.zmlc");
    write_cache(path, low);
    const ZeroCache joined = append_cache(path, upper);
    EXPECT_EQ(joined, full);
    EXPECT_EQ(read_cache(path), full);

    // Re-appending the same range overlaps; a range starting higher leaves a gap.
    EXPECT_THROW(append_cache(path, upper), RangeOverlapError);
    write_cache(path, low);
    ZeroCache gap = upper;
    gap.height_lo = upper.height_lo + ExtReal(1.0);
    EXPECT_THROW(append_cache(path, gap), RangeGapError);
}

TEST(CacheIo, CorruptionDetected) {
    const ZeroCache& c = shared_cache(1e4);
    const std::string path = temp_path("corrupt.zmlc");
    write_cache(path, c);
    auto bytes = slurp(path);
    for (std::size_t off : {std::size_t{12}, std::size_t{100}, bytes.size() / 2, bytes.size() - 10}) {
        auto copy = bytes;
        copy[off] ^= 0x10;
        spit(path, copy);
        EXPECT_THROW(read_cache(path), ChecksumError) << "offset " << off;
    }
    auto bad_version = bytes;
    bad_version[8] = 9;
    spit(path, bad_version);
    EXPECT_THROW(read_cache(path), VersionError);
    auto bad_magic = bytes;
    bad_magic[0] = 'X';
    spit(path, bad_magic);
    EXPECT_THROW(read_cache(path), FormatError);
    bytes.resize(bytes.size() - 3);
    spit(path, bytes);
    EXPECT_THROW(read_cache(path), Error);
}

TEST(CacheIo, RefusesUncertified) {
    ZeroCache c = build_zero_cache(ExtReal(100.0));
    c.certified = false;
    EXPECT_THROW(write_cache(temp_path("uncertified.zmlc"), c), CertificationError);
}

TEST(CacheIo, CsvHas25Digits) {
    const ZeroCache c = build_zero_cache(ExtReal(100.0));
    const std::string path = temp_path("zeros.csv");
    export_csv(path, c);
    std::ifstream in(path);
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    EXPECT_EQ(header, "index,gamma,zprime_abs");
    const auto comma = first.find(',');
    const auto comma2 = first.find(',', comma + 1);
    const std::string gamma = first.substr(comma + 1, comma2 - comma - 1);
    EXPECT_LE(zml::test::rel_err(ExtReal::parse(gamma), c.records[0].gamma), 1e-24);
    int digits = 0;
    for (char ch : gamma.substr(0, gamma.find_first_of("eE"))) digits += std::isdigit(static_cast<unsigned char>(ch)) != 0;
    EXPECT_EQ(digits, 25);
}
