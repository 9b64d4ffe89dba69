#include "nielsen/genvec.hpp"

#include <bit>

namespace nielsen {

GenVector make_genvec(const FiniteGroup& g, std::vector<Elem> entries) {
  if (entries.empty() || entries.size() > kMaxVectorLen)
    throw ArgumentError("vector length must be between 1 and " + std::to_string(kMaxVectorLen));
  for (Elem e : entries)
    if (e >= g.order()) throw ArgumentError("vector entry out of range");
  return GenVector{g.fingerprint(), std::move(entries)};
}

bool is_generating(const FiniteGroup& g, const GenVector& v) {
  if (v.group_fingerprint != g.fingerprint())
    throw ArgumentError("vector belongs to a different group");
  return generates(g, v.entries);
}

static void check_move(const GenVector& v, const NielsenMove& m) {
  const std::uint32_t n = v.n();
  if (m.j >= n) throw ArgumentError("move slot j out of range");
  switch (m.kind) {
    case MoveKind::right_mul:
    case MoveKind::left_mul:
      if (m.k >= n) throw ArgumentError("move slot k out of range");
      if (m.k == m.j) throw ArgumentError("multiplication move needs distinct slots");
      if (m.sign != 1 && m.sign != -1) throw ArgumentError("move sign must be +1 or -1");
      break;
    case MoveKind::swap:
      if (m.k >= n) throw ArgumentError("move slot k out of range");
      if (m.k == m.j) throw ArgumentError("swap needs distinct slots");
      break;
    case MoveKind::invert:
      break;
  }
}

GenVector apply_move(const FiniteGroup& g, const GenVector& v, const NielsenMove& m) {
  if (v.group_fingerprint != g.fingerprint())
    throw ArgumentError("vector belongs to a different group");
  check_move(v, m);
  GenVector out = v;
  switch (m.kind) {
    case MoveKind::right_mul: {
      const Elem src = m.sign > 0 ? v.entries[m.k] : g.inv(v.entries[m.k]);
      out.entries[m.j] = g.mul(v.entries[m.j], src);
      break;
    }
    case MoveKind::left_mul: {
      const Elem src = m.sign > 0 ? v.entries[m.k] : g.inv(v.entries[m.k]);
      out.entries[m.j] = g.mul(src, v.entries[m.j]);
      break;
    }
    case MoveKind::swap:
      std::swap(out.entries[m.j], out.entries[m.k]);
      break;
    case MoveKind::invert:
      out.entries[m.j] = g.inv(v.entries[m.j]);
      break;
  }
  return out;
}

NielsenMove inverse_move(const NielsenMove& m) {
  NielsenMove r = m;
  if (m.kind == MoveKind::right_mul || m.kind == MoveKind::left_mul)
    r.sign = std::int8_t(-m.sign);
  return r;
}

std::vector<NielsenMove> enumerate_moves(std::uint32_t n) {
  std::vector<NielsenMove> moves;
  for (std::uint8_t j = 0; j < n; ++j)
    for (std::uint8_t k = 0; k < n; ++k) {
      if (k == j) continue;
      moves.push_back({MoveKind::right_mul, j, k, 1});
      moves.push_back({MoveKind::right_mul, j, k, -1});
      moves.push_back({MoveKind::left_mul, j, k, 1});
      moves.push_back({MoveKind::left_mul, j, k, -1});
    }
  for (std::uint8_t j = 0; j < n; ++j)
    for (std::uint8_t k = std::uint8_t(j + 1); k < n; ++k)
      moves.push_back({MoveKind::swap, j, k, 1});
  for (std::uint8_t j = 0; j < n; ++j) moves.push_back({MoveKind::invert, j, j, 1});
  return moves;
}

GenVector replay_trace(const FiniteGroup& g, const MoveTrace& t) {
  GenVector cur = t.start;
  if (cur.group_fingerprint != g.fingerprint())
    throw ArgumentError("trace belongs to a different group");
  for (const NielsenMove& m : t.moves) cur = apply_move(g, cur, m);
  return cur;
}

bool verify_trace(const FiniteGroup& g, const MoveTrace& t) {
  return replay_trace(g, t) == t.end;
}

GenVector stabilized(const GenVector& v, std::uint32_t extra) {
  if (v.n() + extra > kMaxVectorLen)
    throw CapacityError("stabilized vector length exceeds " + std::to_string(kMaxVectorLen));
  GenVector out = v;
  out.entries.resize(v.n() + extra, 0);
  return out;
}

Packing Packing::for_group(const FiniteGroup& g, std::uint32_t n) {
  if (n == 0 || n > kMaxVectorLen)
    throw ArgumentError("vector length must be between 1 and " + std::to_string(kMaxVectorLen));
  Packing p;
  p.n = n;
  p.bits = g.order() <= 2 ? 1 : std::uint32_t(std::bit_width(g.order() - 1));
  p.entry_mask = (p.bits == 64) ? ~0ULL : ((1ULL << p.bits) - 1);
  if (p.bits * n > 64)
    throw CapacityError("packed vector needs " + std::to_string(p.bits * n) + " bits");
  return p;
}

std::uint64_t pack_genvec(const FiniteGroup& g, const GenVector& v) {
  if (v.group_fingerprint != g.fingerprint())
    throw ArgumentError("vector belongs to a different group");
  return Packing::for_group(g, v.n()).pack(v.entries);
}

GenVector unpack_genvec(const FiniteGroup& g, std::uint32_t n, std::uint64_t code) {
  const Packing p = Packing::for_group(g, n);
  GenVector v;
  v.group_fingerprint = g.fingerprint();
  v.entries.resize(n);
  p.unpack(code, v.entries.data());
  for (Elem e : v.entries)
    if (e >= g.order()) throw ArgumentError("packed code decodes out of range");
  return v;
}

}  // namespace nielsen
