#include "nielsen/cache.hpp"

#include <algorithm>
#include <array>
#include <fstream>

#include "nielsen/errors.hpp"
#include "nielsen/genvec.hpp"

namespace nielsen {

namespace {

std::array<std::uint32_t, 256> make_crc_table() {
  std::array<std::uint32_t, 256> t{};
  for (std::uint32_t i = 0; i < 256; ++i) {
    std::uint32_t c = i;
    for (int b = 0; b < 8; ++b) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
    t[i] = c;
  }
  return t;
}

constexpr char kMagic[4] = {'N', 'O', 'C', '1'};
constexpr std::uint8_t kVersion = 0x01;
constexpr std::uint8_t kModeClassify = 0;
constexpr std::uint8_t kModeWeak = 1;
constexpr std::uint8_t kModeOrbit = 2;

struct Writer {
  std::vector<std::uint8_t> bytes;

  void u8(std::uint8_t v) { bytes.push_back(v); }
  void u16(std::uint16_t v) {
    for (int i = 0; i < 2; ++i) bytes.push_back(std::uint8_t(v >> (8 * i)));
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes.push_back(std::uint8_t(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) bytes.push_back(std::uint8_t(v >> (8 * i)));
  }
};

struct Reader {
  const std::vector<std::uint8_t>& bytes;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (pos + n > bytes.size()) throw CacheError(CacheError::Kind::layout, "file truncated mid-field");
  }
  std::uint8_t u8() {
    need(1);
    return bytes[pos++];
  }
  std::uint16_t u16() {
    need(2);
    std::uint16_t v = 0;
    for (int i = 0; i < 2; ++i) v |= std::uint16_t(bytes[pos++]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(bytes[pos++]) << (8 * i);
    return v;
  }
};

void write_header(Writer& w, const FiniteGroup& g, std::uint32_t n, std::uint8_t mode) {
  const Packing packing = Packing::for_group(g, n);
  for (char c : kMagic) w.u8(std::uint8_t(c));
  w.u8(kVersion);
  w.u64(g.fingerprint());
  const std::string& spec = g.spec_text();
  if (spec.size() > 0xFFFF) throw ArgumentError("group spec text too long for the cache header");
  w.u16(std::uint16_t(spec.size()));
  for (char c : spec) w.u8(std::uint8_t(c));
  w.u8(std::uint8_t(n));
  w.u8(std::uint8_t(packing.bits));
  w.u8(mode);
}

void write_file(const Writer& w, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CacheError(CacheError::Kind::io, "cannot open for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(w.bytes.data()), std::streamsize(w.bytes.size()));
  out.flush();
  if (!out) throw CacheError(CacheError::Kind::io, "write failed: " + path.string());
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw CacheError(CacheError::Kind::io, "cannot open for reading: " + path.string());
  const std::streamsize size = in.tellg();
  in.seekg(0);
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(size));
  if (size > 0) in.read(reinterpret_cast<char*>(bytes.data()), size);
  if (!in) throw CacheError(CacheError::Kind::io, "read failed: " + path.string());
  return bytes;
}

// Shared header validation; returns the mode byte with the cursor placed at
// the class count.
std::uint8_t check_header(Reader& r, const FiniteGroup& g) {
  for (char c : kMagic)
    if (r.u8() != std::uint8_t(c)) throw CacheError(CacheError::Kind::magic, "not an orbit cache file");
  const std::uint8_t version = r.u8();
  if (version != kVersion)
    throw CacheError(CacheError::Kind::version,
                     "unsupported cache version " + std::to_string(version));
  const std::uint64_t fp = r.u64();
  if (fp != g.fingerprint())
    throw CacheError(CacheError::Kind::fingerprint, "cache was built for a different group");
  const std::uint16_t spec_len = r.u16();
  r.need(spec_len);
  const std::string spec(reinterpret_cast<const char*>(r.bytes.data()) + r.pos, spec_len);
  r.pos += spec_len;
  if (spec != g.spec_text())
    throw CacheError(CacheError::Kind::mismatch, "cache spec text differs: " + spec);
  const std::uint8_t n = r.u8();
  if (n < 1 || n > kMaxVectorLen)
    throw CacheError(CacheError::Kind::layout, "vector length out of range");
  const std::uint8_t bits = r.u8();
  if (bits != Packing::for_group(g, n).bits)
    throw CacheError(CacheError::Kind::mismatch, "bits per entry does not match the group");
  return r.u8();
}

// The file's n byte sits 3 bytes before the class count; re-read it after
// check_header by peeking backwards.
std::uint32_t header_n(const Reader& r) { return r.bytes[r.pos - 3]; }

void check_crc(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 4) throw CacheError(CacheError::Kind::layout, "file shorter than its checksum");
  std::uint32_t stored = 0;
  for (int i = 0; i < 4; ++i) stored |= std::uint32_t(bytes[bytes.size() - 4 + i]) << (8 * i);
  if (crc32(bytes.data(), bytes.size() - 4) != stored)
    throw CacheError(CacheError::Kind::crc, "checksum mismatch");
}

void check_code(std::uint64_t code, const Packing& packing, std::uint32_t order) {
  if (packing.bits * packing.n < 64 && (code >> (packing.bits * packing.n)) != 0)
    throw CacheError(CacheError::Kind::layout, "stray bits in a packed code");
  for (std::uint32_t i = 0; i < packing.n; ++i)
    if (((code >> (packing.bits * (packing.n - 1 - i))) & packing.entry_mask) >= order)
      throw CacheError(CacheError::Kind::layout, "packed entry outside the group");
}

}  // namespace

std::uint32_t crc32(const void* data, std::size_t len) {
  static const std::array<std::uint32_t, 256> table = make_crc_table();
  std::uint32_t c = 0xFFFFFFFFu;
  const auto* p = static_cast<const std::uint8_t*>(data);
  for (std::size_t i = 0; i < len; ++i) c = table[(c ^ p[i]) & 0xFF] ^ (c >> 8);
  return c ^ 0xFFFFFFFFu;
}

void save_partition(const FiniteGroup& g, const OrbitPartition& p,
                    const std::filesystem::path& path) {
  if (p.group_fingerprint != g.fingerprint())
    throw ArgumentError("partition belongs to a different group");
  Writer w;
  write_header(w, g, p.n, p.weak ? kModeWeak : kModeClassify);
  w.u64(p.classes.size());
  for (const OrbitClass& c : p.classes) {
    w.u64(c.representative);
    w.u64(c.size);
  }
  w.u32(crc32(w.bytes.data(), w.bytes.size()));
  write_file(w, path);
}

OrbitPartition load_partition(const std::filesystem::path& path, const FiniteGroup& g,
                              bool weak) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  check_crc(bytes);
  Reader r{bytes};
  const std::uint8_t mode = check_header(r, g);
  if (mode != kModeClassify && mode != kModeWeak)
    throw CacheError(CacheError::Kind::layout, "unknown mode byte");
  if (mode != (weak ? kModeWeak : kModeClassify))
    throw CacheError(CacheError::Kind::mismatch,
                     weak ? "file holds a plain classification, weak requested"
                          : "file holds a weak classification, plain requested");

  OrbitPartition p;
  p.group_label = g.label();
  p.group_fingerprint = g.fingerprint();
  p.n = header_n(r);
  p.weak = weak;
  const Packing packing = Packing::for_group(g, p.n);

  const std::uint64_t count = r.u64();
  if (count > bytes.size() / 16 || bytes.size() != r.pos + 16 * count + 4)
    throw CacheError(CacheError::Kind::layout, "file length does not match the class count");
  p.classes.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    OrbitClass c{r.u64(), r.u64()};
    check_code(c.representative, packing, g.order());
    if (c.size == 0) throw CacheError(CacheError::Kind::layout, "empty class");
    if (i > 0 && c.representative <= p.classes.back().representative)
      throw CacheError(CacheError::Kind::layout, "representatives not strictly increasing");
    p.total_generating += c.size;
    p.classes.push_back(c);
  }
  return p;
}

void save_orbit(const FiniteGroup& g, const OrbitSet& s, const std::filesystem::path& path) {
  Writer w;
  write_header(w, g, s.n, kModeOrbit);
  w.u64(1);
  w.u64(s.seed);
  w.u64(s.codes.size());
  for (std::uint64_t code : s.codes) w.u64(code);
  w.u32(crc32(w.bytes.data(), w.bytes.size()));
  write_file(w, path);
}

OrbitSet load_orbit(const std::filesystem::path& path, const FiniteGroup& g) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  check_crc(bytes);
  Reader r{bytes};
  const std::uint8_t mode = check_header(r, g);
  if (mode != kModeOrbit)
    throw CacheError(CacheError::Kind::mismatch, "file does not hold a single orbit");

  OrbitSet s;
  s.n = header_n(r);
  const Packing packing = Packing::for_group(g, s.n);
  if (r.u64() != 1) throw CacheError(CacheError::Kind::layout, "orbit file must hold one class");
  s.seed = r.u64();
  const std::uint64_t count = r.u64();
  if (count > bytes.size() / 8 || bytes.size() != r.pos + 8 * count + 4)
    throw CacheError(CacheError::Kind::layout, "file length does not match the member count");
  s.codes.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t code = r.u64();
    check_code(code, packing, g.order());
    if (i > 0 && code <= s.codes.back())
      throw CacheError(CacheError::Kind::layout, "member codes not strictly increasing");
    s.codes.push_back(code);
  }
  if (!std::binary_search(s.codes.begin(), s.codes.end(), s.seed))
    throw CacheError(CacheError::Kind::layout, "seed is not a member of the orbit");
  return s;
}

}  // namespace nielsen
