#pragma once

#include <cstdint>
#include <filesystem>

#include "nielsen/group.hpp"
#include "nielsen/orbit.hpp"

namespace nielsen {

// Orbit cache file, version 1. Little-endian throughout:
//   "NOC1"                     4 bytes
//   version                    1 byte, 0x01
//   group fingerprint          u64
//   group spec                 u16 length + UTF-8 bytes (canonical spec text)
//   n                          1 byte
//   bits per entry             1 byte
//   mode                       1 byte (0 classify, 1 weak, 2 single orbit)
//   class count                u64
//   per class                  representative code u64, class size u64
//   mode 2 only                sorted member codes, u64 each
//   crc32 of all prior bytes   u32
// Saves are byte-deterministic; loads re-validate every invariant and throw
// CacheError with a kind describing the first violation found.

void save_partition(const FiniteGroup& g, const OrbitPartition& p,
                    const std::filesystem::path& path);

// weak selects which mode the caller expects; a file of the other mode is a
// mode mismatch, not a silent reinterpretation.
OrbitPartition load_partition(const std::filesystem::path& path, const FiniteGroup& g,
                              bool weak);

void save_orbit(const FiniteGroup& g, const OrbitSet& s, const std::filesystem::path& path);
OrbitSet load_orbit(const std::filesystem::path& path, const FiniteGroup& g);

// CRC-32 (reflected 0xEDB88320, as in zip/png); crc32("123456789") = 0xCBF43926.
std::uint32_t crc32(const void* data, std::size_t len);

}  // namespace nielsen
