#pragma once

#include <cstdint>
#include <vector>

#include "nielsen/genvec.hpp"
#include "nielsen/group.hpp"

namespace nielsen {

// G >= G' >= G'' >= ... down to the first repetition; ends at the trivial
// subgroup exactly when G is solvable.
std::vector<Subgroup> derived_series(const FiniteGroup& g);
bool is_solvable(const FiniteGroup& g);

// Strictly descending chain levels[0] = G, ..., levels.back() = {1} with
// every levels[i+1] normal in levels[i] and cyclic quotient generated by
// the image of coset_gens[i].  Built by refining the derived series.
struct CyclicTower {
  std::vector<Subgroup> levels;
  std::vector<Elem> coset_gens;
  std::uint32_t length() const { return std::uint32_t(coset_gens.size()); }
};

CyclicTower cyclic_tower(const FiniteGroup& g);  // DomainError when not solvable

struct ReduceResult {
  GenVector reduced;
  MoveTrace trace;
};

// Euclidean reduction along the tower intersected with <v>: the result has
// entry i inside level i of the intersected tower and identity entries past
// its length, and generates the same subgroup.  The trace replays from v.
ReduceResult tower_reduce(const FiniteGroup& g, const GenVector& v, const CyclicTower& tower);

// Collapse of a generating m-vector with m > ell(G) onto (s, 1, ..., 1)
// for a designated minimal generating vector s, by repeatedly locating a
// redundant slot, clearing it through shortest positive words, and
// rebuilding the next entry of s in place.
ReduceResult supraminimal_reduce(const FiniteGroup& g, const GenVector& v, const GenVector& s);

// Explicit move path from (v, 1^mu) to (w, 1^mu) for any two generating
// n-vectors, mu = mu(G); both stabilized vectors pass through (s, 1, ...).
MoveTrace stabilization_equivalence(const FiniteGroup& g, const GenVector& v, const GenVector& w);

}  // namespace nielsen
