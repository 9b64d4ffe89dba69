#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nielsen/genvec.hpp"
#include "nielsen/group.hpp"

namespace nielsen {

std::uint64_t euler_phi(std::uint64_t k);

// Unordered pair of conjugacy classes of the two commutators [t1,t2] and
// [t2,t1]; constant on the Nielsen class of a generating pair.
struct HigmanInvariant {
  std::uint16_t first, second;  // class ids, first <= second
  bool operator==(const HigmanInvariant&) const = default;
  auto operator<=>(const HigmanInvariant&) const = default;
};
HigmanInvariant higman_pair(const FiniteGroup& g, const ConjugacyClasses& cc, const GenVector& v);

// Surjection onto Z/d_1 x ... x Z/d_m (d_{i+1} | d_i) described by images
// of the group's default generators; extended to every element and checked
// to be a homomorphism at build time.
class AbelianQuotient {
 public:
  static AbelianQuotient build(const FiniteGroup& g, std::vector<std::uint32_t> moduli,
                               std::vector<std::vector<std::uint32_t>> generator_images);
  std::uint32_t rank() const { return std::uint32_t(moduli_.size()); }
  const std::vector<std::uint32_t>& moduli() const { return moduli_; }
  const std::vector<std::uint32_t>& image(Elem e) const { return images_[e]; }

 private:
  std::vector<std::uint32_t> moduli_;
  std::vector<std::vector<std::uint32_t>> images_;
};

// Row i = image of v_i, reduced mod d_m (legal since d_m divides every d_j).
std::vector<std::vector<std::uint32_t>> abelianized_matrix(const FiniteGroup& g,
                                                           const AbelianQuotient& q,
                                                           const GenVector& v);

// Determinant of the abelianized matrix mod d_m, folded to min(r, d_m - r):
// moves can only negate the determinant, so the folded value is constant on
// the Nielsen class.
struct DetInvariant {
  std::uint32_t modulus = 0;
  std::uint32_t value = 0;
  bool operator==(const DetInvariant&) const = default;
  auto operator<=>(const DetInvariant&) const = default;
};
DetInvariant det_invariant(const FiniteGroup& g, const AbelianQuotient& q, const GenVector& v);

// Orbit of the determinant value under unit-square scaling mod 8 (the extra
// freedom weak equivalence adds), each element folded to its canonical
// min(r, 8 - r) form; only modulus 8 is supported. Disjoint orbits certify
// weak inequivalence.
std::vector<std::uint32_t> weak_det_orbit(const DetInvariant& d);

struct LowerBoundOptions {
  std::uint64_t exhaustive_cap = 1ULL << 24;
  std::uint64_t samples = 50000;
  std::uint64_t seed = 0x4D3C2B1A;
};

struct LowerBound {
  std::uint64_t count = 0;
  bool exhaustive = false;
};

// Number of distinct (Higman, determinant) invariant values over generating
// n-vectors: a lower bound for the Nielsen class count, exact as a bound
// when the scan is exhaustive.  quotient may be null; Higman applies only
// at n == 2, the determinant only when n matches the quotient rank.
LowerBound invariant_lower_bound(const FiniteGroup& g, std::uint32_t n,
                                 const AbelianQuotient* quotient,
                                 const LowerBoundOptions& opts = {});

}  // namespace nielsen
