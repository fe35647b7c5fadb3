#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zml/zeros.hpp"

namespace zml {

// Binary layout (all little-endian):
//   header   : "ZMLZCACH" (8 bytes), u32 version, u32 flags (bit 0 = certified)
//   payload  : 40-byte records; the first is a metadata record
//              {record count, height_lo.hi, height_lo.lo, height_hi.hi, height_hi.lo},
//              then {index, gamma.hi, gamma.lo, zprime.hi, zprime.lo} per zero
//   the payload is cut into 64 KiB pages, each followed by its CRC-32.
inline constexpr std::uint32_t kCacheVersion = 1;

enum class CacheMode { read, write, append };

std::vector<std::uint8_t> serialize_cache(const ZeroCache& cache);
ZeroCache deserialize_cache(const std::vector<std::uint8_t>& bytes);

ZeroCache read_cache(const std::string& path);
void write_cache(const std::string& path, const ZeroCache& cache);
/// Appends `extension`, which must start exactly at the stored height_hi.
ZeroCache append_cache(const std::string& path, const ZeroCache& extension);

/// Single entry point mirroring the three modes.
ZeroCache cache_io(const std::string& path, CacheMode mode, const ZeroCache& cache = {});

/// CRC-32 of the serialized cache, as 8 lowercase hex digits.
std::string cache_checksum(const ZeroCache& cache);

/// index,gamma,zprime_abs with 25 significant digits.
void export_csv(const std::string& path, const ZeroCache& cache);

}  // namespace zml
