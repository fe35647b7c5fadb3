#include "zml/cache_io.hpp"

#include <zlib.h>

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "zml/error.hpp"

namespace zml {

namespace {

constexpr char kMagic[8] = {'Z', 'M', 'L', 'Z', 'C', 'A', 'C', 'H'};
constexpr std::size_t kHeaderSize = 16;
constexpr std::size_t kRecordSize = 40;
constexpr std::size_t kPageSize = 64 * 1024;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_f64(std::vector<std::uint8_t>& out, double d) {
    std::uint64_t v;
    std::memcpy(&v, &d, 8);
    put_u64(out, v);
}
std::uint32_t get_u32(const std::uint8_t* p) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}
std::uint64_t get_u64(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
    return v;
}
double get_f64(const std::uint8_t* p) {
    const std::uint64_t v = get_u64(p);
    double d;
    std::memcpy(&d, &v, 8);
    return d;
}

// The first page's CRC also covers the 16-byte header so flipped flag bits
// are caught as well.
std::uint32_t page_crc(const std::uint8_t* header, std::size_t page, const std::uint8_t* p, std::size_t n) {
    uLong c = crc32(0L, Z_NULL, 0);
    if (page == 0) c = crc32(c, header, static_cast<uInt>(kHeaderSize));
    c = crc32(c, p, static_cast<uInt>(n));
    return static_cast<std::uint32_t>(c);
}

void put_record(std::vector<std::uint8_t>& out, std::uint64_t index, const ExtReal& a, const ExtReal& b) {
    put_u64(out, index);
    put_f64(out, a.hi());
    put_f64(out, a.lo());
    put_f64(out, b.hi());
    put_f64(out, b.lo());
}

}  // namespace

std::vector<std::uint8_t> serialize_cache(const ZeroCache& cache) {
    std::vector<std::uint8_t> payload;
    payload.reserve((cache.records.size() + 1) * kRecordSize);
    put_record(payload, cache.records.size(), cache.height_lo, cache.height_hi);
    for (const auto& r : cache.records) put_record(payload, r.index, r.gamma, r.zprime_abs);

    std::vector<std::uint8_t> out(kMagic, kMagic + 8);
    put_u32(out, kCacheVersion);
    put_u32(out, cache.certified ? 1u : 0u);
    for (std::size_t off = 0; off < payload.size(); off += kPageSize) {
        const std::size_t len = std::min(kPageSize, payload.size() - off);
        out.insert(out.end(), payload.begin() + static_cast<std::ptrdiff_t>(off),
                   payload.begin() + static_cast<std::ptrdiff_t>(off + len));
        put_u32(out, page_crc(out.data(), off / kPageSize, payload.data() + off, len));
    }
    return out;
}

ZeroCache deserialize_cache(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < kHeaderSize || std::memcmp(bytes.data(), kMagic, 8) != 0) {
        throw FormatError("not a zero cache (bad magic)");
    }
    const std::uint32_t version = get_u32(bytes.data() + 8);
    if (version != kCacheVersion) {
        throw VersionError("zero cache version " + std::to_string(version) + ", expected " +
                           std::to_string(kCacheVersion));
    }
    const std::uint32_t flags = get_u32(bytes.data() + 12);

    // Verify every page before decoding anything.
    std::vector<std::uint8_t> payload;
    std::size_t pos = kHeaderSize;
    std::size_t page = 0;
    while (pos < bytes.size()) {
        const std::size_t remaining = bytes.size() - pos;
        if (remaining < 4) throw FormatError("truncated zero cache page");
        const std::size_t len = std::min(kPageSize, remaining - 4);
        if (len + 4 < remaining && len != kPageSize) throw FormatError("malformed page layout");
        const std::uint32_t stored = get_u32(bytes.data() + pos + len);
        if (page_crc(bytes.data(), page, bytes.data() + pos, len) != stored) {
            throw ChecksumError("CRC mismatch in zero cache page " + std::to_string(page));
        }
        payload.insert(payload.end(), bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                       bytes.begin() + static_cast<std::ptrdiff_t>(pos + len));
        pos += len + 4;
        ++page;
    }
    if (payload.size() < kRecordSize || payload.size() % kRecordSize != 0) {
        throw FormatError("zero cache payload is not a whole number of records");
    }
    const std::uint8_t* p = payload.data();
    const std::uint64_t count = get_u64(p);
    if (count != payload.size() / kRecordSize - 1) throw FormatError("zero cache record count mismatch");

    ZeroCache cache;
    cache.certified = (flags & 1u) != 0;
    cache.height_lo = ExtReal::from_parts(get_f64(p + 8), get_f64(p + 16));
    cache.height_hi = ExtReal::from_parts(get_f64(p + 24), get_f64(p + 32));
    cache.records.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint8_t* q = p + (i + 1) * kRecordSize;
        auto& r = cache.records[i];
        r.index = get_u64(q);
        r.gamma = ExtReal::from_parts(get_f64(q + 8), get_f64(q + 16));
        r.zprime_abs = ExtReal::from_parts(get_f64(q + 24), get_f64(q + 32));
    }
    return cache;
}

ZeroCache read_cache(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open zero cache '" + path + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize_cache(bytes);
}

void write_cache(const std::string& path, const ZeroCache& cache) {
    if (!cache.certified) throw CertificationError("refusing to write an uncertified zero cache");
    const auto bytes = serialize_cache(cache);
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw FormatError("cannot write zero cache '" + tmp + "'");
        out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw FormatError("short write to '" + tmp + "'");
    }
    std::filesystem::rename(tmp, path);
}

ZeroCache append_cache(const std::string& path, const ZeroCache& extension) {
    if (!extension.certified) throw CertificationError("refusing to append an uncertified range");
    ZeroCache base = read_cache(path);
    if (!base.certified) throw CertificationError("stored cache is not certified");
    if (extension.height_lo < base.height_hi) {
        throw RangeOverlapError("extension starts at " + extension.height_lo.to_string(20) +
                                " below stored height " + base.height_hi.to_string(20));
    }
    if (extension.height_lo > base.height_hi) {
        throw RangeGapError("extension starts at " + extension.height_lo.to_string(20) +
                            " above stored height " + base.height_hi.to_string(20));
    }
    if (!extension.records.empty() && !base.records.empty() &&
        extension.records.front().index != base.records.back().index + 1) {
        throw RangeGapError("extension indices do not continue the stored ones");
    }
    base.height_hi = extension.height_hi;
    base.records.insert(base.records.end(), extension.records.begin(), extension.records.end());
    write_cache(path, base);
    return base;
}

ZeroCache cache_io(const std::string& path, CacheMode mode, const ZeroCache& cache) {
    switch (mode) {
        case CacheMode::read: return read_cache(path);
        case CacheMode::write: write_cache(path, cache); return cache;
        case CacheMode::append: return append_cache(path, cache);
    }
    throw DomainError("unknown cache mode");
}

std::string cache_checksum(const ZeroCache& cache) {
    const auto bytes = serialize_cache(cache);
    uLong c = crc32(0L, Z_NULL, 0);
    for (std::size_t off = 0; off < bytes.size(); off += kPageSize) {
        const std::size_t len = std::min(kPageSize, bytes.size() - off);
        c = crc32(c, bytes.data() + off, static_cast<uInt>(len));
    }
    char buf[9];
    std::snprintf(buf, sizeof buf, "%08" PRIx32, static_cast<std::uint32_t>(c));
    return buf;
}

void export_csv(const std::string& path, const ZeroCache& cache) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write '" + path + "'");
    out << "index,gamma,zprime_abs\n";
    for (const auto& r : cache.records) {
        out << r.index << ',' << r.gamma.to_string(25) << ',' << r.zprime_abs.to_string(25) << '\n';
    }
}

}  // namespace zml
