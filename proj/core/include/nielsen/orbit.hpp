#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nielsen/genvec.hpp"
#include "nielsen/group.hpp"

namespace nielsen {

// State-space caps (number of n-vectors, i.e. order^n).
inline constexpr std::uint64_t kMaxClassifyStates = 1ULL << 27;
inline constexpr std::uint64_t kMaxOrbitStates = 1ULL << 28;
// Membership maps and predecessor (trace) arrays are dense, so they carry
// a tighter cap.
inline constexpr std::uint64_t kMaxDenseAuxStates = 1ULL << 24;

struct OrbitOptions {
  int threads = 0;  // 0 = hardware concurrency
  bool build_membership = false;
};

struct OrbitClass {
  std::uint64_t representative;  // lexicographically smallest packed code
  std::uint64_t size;
};

// Dense state-index -> class-id lookup captured during classification.
class Membership {
 public:
  Membership(std::uint32_t order, std::uint32_t n, std::vector<std::int32_t> table)
      : order_(order), n_(n), table_(std::move(table)) {}
  // -1 when the code is not a generating vector.
  std::int32_t class_of_code(std::uint64_t code) const;
  std::int32_t class_of_index(std::uint64_t index) const { return table_[index]; }

 private:
  std::uint32_t order_, n_;
  std::vector<std::int32_t> table_;
};

struct OrbitPartition {
  std::string group_label;
  std::uint64_t group_fingerprint = 0;
  std::uint32_t n = 0;
  bool weak = false;
  std::vector<OrbitClass> classes;  // representatives strictly increasing
  std::uint64_t total_generating = 0;
  std::shared_ptr<const Membership> membership;
};

// Partition of all generating n-vectors into Nielsen classes.  Seeds are
// found by an ascending scan, so every representative is the smallest
// packed code of its class.  Result is independent of the thread count.
OrbitPartition classify(const FiniteGroup& g, std::uint32_t n, const OrbitOptions& opts = {});

// classify followed by merging classes linked by an entrywise automorphism.
OrbitPartition weak_classify(const FiniteGroup& g, std::uint32_t n, const OrbitOptions& opts = {});

struct OrbitSet {
  std::uint64_t seed = 0;  // packed code of the BFS seed
  std::uint32_t n = 0;
  std::vector<std::uint64_t> codes;  // sorted members
  bool contains(std::uint64_t code) const;
};

// Full move orbit of one generating vector.
OrbitSet orbit(const FiniteGroup& g, const GenVector& v, const OrbitOptions& opts = {});

struct EquivalenceResult {
  bool equivalent = false;
  std::optional<MoveTrace> trace;
};

// Move-reachability of w from v; both must generate.  With want_trace the
// search runs single threaded and returns a replayable move path.
EquivalenceResult are_equivalent(const FiniteGroup& g, const GenVector& v, const GenVector& w,
                                 bool want_trace = false, const OrbitOptions& opts = {});

struct RedundancyResult {
  bool redundant = false;
  std::optional<MoveTrace> trace;  // ends at a vector with an identity entry
};

// Whether some vector in v's orbit carries the identity in one slot.
RedundancyResult is_redundant(const FiniteGroup& g, const GenVector& v, bool want_trace = false,
                              const OrbitOptions& opts = {});

}  // namespace nielsen
