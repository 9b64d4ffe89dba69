#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nielsen/group.hpp"

namespace nielsen {

enum class GroupKind : std::uint8_t {
  cyclic, abelian, dihedral, quaternion, sym, alt, psl2, bgroup, perm
};

// Parsed "name:args" group description.  canonical is re-parsable text with
// abelian parameters normalized to invariant factors d_{i+1} | d_i and perm
// generators in sorted cycle form.
struct GroupSpec {
  GroupKind kind;
  std::vector<std::uint32_t> params;
  // perm only: generator -> cycles -> 0-based points.
  std::vector<std::vector<std::vector<std::uint16_t>>> perm_gens;
  std::string canonical;
};

GroupSpec parse_group_spec(const std::string& text);

FiniteGroup build_group(const GroupSpec& spec);
FiniteGroup build_group(const std::string& text);

// Projective special linear group on the q+1 points of the projective line,
// point 0 = infinity, point 1+e = field element e.  q odd >= 3 or 4, 8, 16.
FiniteGroup build_psl2(std::uint32_t q);

// Normal form (a, b, c) with 0 <= a,b < 8, 0 <= c < 64 for the order-4096
// presentation x^8 = y^8 = z^64 = 1, z central, [x, y] = z^8; the element is
// x^a y^b z^c and products follow (a1,b1,c1)(a2,b2,c2) =
// (a1+a2, b1+b2, c1+c2-8*a2*b1).  Exposed so tests can cross-check the
// generated table against the closed formula.
struct BTriple {
  std::uint32_t a, b, c;
  bool operator==(const BTriple&) const = default;
};
BTriple bgroup_multiply(BTriple lhs, BTriple rhs);
BTriple bgroup_inverse(BTriple t);
Elem bgroup_index(BTriple t);
BTriple bgroup_decode(Elem e);

}  // namespace nielsen
