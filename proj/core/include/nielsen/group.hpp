#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nielsen/errors.hpp"

namespace nielsen {

using Elem = std::uint16_t;

// Hard caps.  Orders above kMaxGroupOrder never construct; the two
// smaller thresholds gate the quadratic/lattice searches.
inline constexpr std::uint32_t kMaxGroupOrder = 65535;
inline constexpr std::uint32_t kMaxAutOrder = 512;
inline constexpr std::uint32_t kMaxLatticeOrder = 384;

// Finite group as a dense multiplication table over 0..order-1, element 0
// the identity.  Construction validates the table (identity, Latin square,
// inverses, associativity) and fingerprints it; instances are immutable.
class FiniteGroup {
 public:
  static FiniteGroup from_mul_table(std::string label, std::string spec_text,
                                    std::uint32_t order, std::vector<Elem> mul,
                                    std::vector<Elem> default_generators,
                                    std::vector<std::string> element_names = {});

  std::uint32_t order() const { return order_; }
  Elem mul(Elem a, Elem b) const { return mul_[std::size_t(a) * order_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  Elem conjugate(Elem g, Elem h) const;  // h g h^-1
  Elem commutator(Elem g, Elem h) const; // g h g^-1 h^-1
  Elem power(Elem g, std::int64_t e) const;
  std::uint32_t element_order(Elem g) const { return elem_order_[g]; }

  // FNV-1a over the table bytes (entries little endian, row major).
  std::uint64_t fingerprint() const { return fingerprint_; }

  const std::string& label() const { return label_; }
  // Canonical spec string, re-parsable; used in cache headers.
  const std::string& spec_text() const { return spec_text_; }
  const std::vector<Elem>& default_generators() const { return default_gens_; }

  // Display name for an element; empty when names were not generated.
  const std::string& element_name(Elem g) const;
  bool has_element_names() const { return !names_.empty(); }

 private:
  FiniteGroup() = default;
  std::uint32_t order_ = 0;
  std::vector<Elem> mul_, inv_;
  std::vector<std::uint32_t> elem_order_;
  std::uint64_t fingerprint_ = 0;
  std::string label_, spec_text_;
  std::vector<Elem> default_gens_;
  std::vector<std::string> names_;
};

// Subgroup as a membership bitset plus the generating set it was built from.
struct Subgroup {
  std::vector<std::uint64_t> mask;
  std::vector<Elem> generators;
  std::uint32_t size = 0;
  bool contains(Elem g) const { return (mask[g >> 6] >> (g & 63)) & 1; }
  bool operator==(const Subgroup& o) const { return mask == o.mask; }
};

// Smallest subgroup containing seed; BFS over left multiplication.
Subgroup closure(const FiniteGroup& g, std::span<const Elem> seed);
bool generates(const FiniteGroup& g, std::span<const Elem> entries);

struct ConjugacyClasses {
  std::vector<Elem> representative;        // ascending; index = class id
  std::vector<std::uint16_t> class_index;  // per element
  std::vector<std::uint32_t> class_size;   // per class
  std::uint32_t count() const { return std::uint32_t(representative.size()); }
};
ConjugacyClasses conjugacy_classes(const FiniteGroup& g);

Subgroup center(const FiniteGroup& g);

struct Automorphism {
  std::vector<Elem> image;  // per element
  Elem operator()(Elem g) const { return image[g]; }
  bool operator==(const Automorphism& o) const { return image == o.image; }
};

// Complete automorphism group, found by scanning images of a minimal
// generating vector filtered by element order.  Capped at order 512.
std::vector<Automorphism> automorphisms(const FiniteGroup& g);

// Shortest positive words over a generating list, breadth first; ties break
// toward the lower generator index.  Letters are indices into gens.
class WordTable {
 public:
  static WordTable build(const FiniteGroup& g, std::span<const Elem> gens);
  bool reaches(Elem g) const { return g < parent_.size() && (depth_[g] != kUnset || g == 0); }
  std::vector<std::uint8_t> word(Elem g) const;
  std::uint32_t reached_count() const { return reached_; }
  // BFS discovery order (identity first) with per-element back pointers,
  // for callers that extend a map generator image by generator image.
  const std::vector<Elem>& bfs_order() const { return order_; }
  Elem parent(Elem g) const { return parent_[g]; }
  std::uint8_t letter(Elem g) const { return letter_[g]; }

 private:
  static constexpr std::uint32_t kUnset = 0xFFFFFFFF;
  std::vector<Elem> parent_, order_;
  std::vector<std::uint8_t> letter_;
  std::vector<std::uint32_t> depth_;
  std::uint32_t reached_ = 0;
};

// Smallest n admitting a generating n-vector, with the first such vector
// found (first entry scans conjugacy-class representatives only, which is
// sound because entrywise conjugation preserves generation).
std::pair<std::uint32_t, std::vector<Elem>> minimal_generating_vector(
    const FiniteGroup& g, int threads = 0);
std::uint32_t mu(const FiniteGroup& g, int threads = 0);

// All subgroups, by closing unions with cyclic subgroups to a fixed point.
// Capped at order 384.
std::vector<Subgroup> subgroup_lattice(const FiniteGroup& g);

// Length of the longest strictly descending chain of nontrivial subgroups
// G = G_1 > G_2 > ... > G_l > 1.  Capped at order 384.
std::uint32_t ell(const FiniteGroup& g);

}  // namespace nielsen
