#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nielsen/group.hpp"

namespace nielsen {

inline constexpr std::uint32_t kMaxVectorLen = 8;

// Tuple of group elements tagged with the owning group's fingerprint.
struct GenVector {
  std::uint64_t group_fingerprint = 0;
  std::vector<Elem> entries;
  std::uint32_t n() const { return std::uint32_t(entries.size()); }
  bool operator==(const GenVector&) const = default;
};

GenVector make_genvec(const FiniteGroup& g, std::vector<Elem> entries);
bool is_generating(const FiniteGroup& g, const GenVector& v);

enum class MoveKind : std::uint8_t { right_mul, left_mul, swap, invert };

// Elementary move on slot j; right_mul/left_mul multiply by slot k's entry
// raised to sign, swap exchanges slots j and k, invert replaces slot j by
// its inverse.  k and sign are ignored by invert, sign by swap.
struct NielsenMove {
  MoveKind kind = MoveKind::invert;
  std::uint8_t j = 0;
  std::uint8_t k = 0;
  std::int8_t sign = 1;
  bool operator==(const NielsenMove&) const = default;
};

GenVector apply_move(const FiniteGroup& g, const GenVector& v, const NielsenMove& m);
NielsenMove inverse_move(const NielsenMove& m);

// The fixed move order used everywhere (neighbor generation, traces):
// for each j, for each k != j: right+1, right-1, left+1, left-1; then
// swaps with j < k; then inversions.
std::vector<NielsenMove> enumerate_moves(std::uint32_t n);

struct MoveTrace {
  GenVector start, end;
  std::vector<NielsenMove> moves;
};

// Applies trace.moves to trace.start; throws on group mismatch.
GenVector replay_trace(const FiniteGroup& g, const MoveTrace& t);
// True when the replay reproduces trace.end exactly.
bool verify_trace(const FiniteGroup& g, const MoveTrace& t);

// v with extra identity slots appended.
GenVector stabilized(const GenVector& v, std::uint32_t extra);

// Fixed-width packing of an n-vector into one 64-bit code, first entry in
// the most significant field, so numeric order on codes equals entrywise
// lexicographic order on vectors.
struct Packing {
  std::uint32_t bits = 0;
  std::uint32_t n = 0;
  std::uint64_t entry_mask = 0;

  static Packing for_group(const FiniteGroup& g, std::uint32_t n);

  std::uint64_t pack(std::span<const Elem> e) const {
    std::uint64_t code = 0;
    for (Elem x : e) code = (code << bits) | x;
    return code;
  }
  void unpack(std::uint64_t code, Elem* out) const {
    for (std::uint32_t i = n; i-- > 0;) {
      out[i] = Elem(code & entry_mask);
      code >>= bits;
    }
  }
};

std::uint64_t pack_genvec(const FiniteGroup& g, const GenVector& v);
GenVector unpack_genvec(const FiniteGroup& g, std::uint32_t n, std::uint64_t code);

}  // namespace nielsen
