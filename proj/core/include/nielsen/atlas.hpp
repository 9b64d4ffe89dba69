#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nielsen/group.hpp"
#include "nielsen/invariants.hpp"
#include "nielsen/orbit.hpp"

namespace nielsen {

// Genus of the handlebody carrying the free action built from an n-vector:
// 1 + |G|(n - 1).
std::uint64_t genus_for_n(const FiniteGroup& g, std::uint32_t n);

// Inverse of genus_for_n. DomainError when (genus - 1) is not a multiple of
// |G| or the resulting n falls below mu(G): no free action exists there.
std::uint32_t n_for_genus(const FiniteGroup& g, std::uint64_t genus);

// Minimal genus of a handlebody admitting a free action: 1 + |G|(mu - 1).
std::uint64_t psi(const FiniteGroup& g);
std::uint64_t psi(const FiniteGroup& g, std::uint32_t mu_value);

struct ClassCount {
  std::uint64_t count = 0;
  bool exact = false;  // false: a lower bound from invariants only
};

struct GenusRow {
  std::uint32_t k = 0;
  std::uint32_t n = 0;  // mu + k
  std::uint64_t genus = 0;
  ClassCount e;  // equivalence classes of actions
  ClassCount w;  // weak equivalence classes
};

struct GenusRecord {
  std::string group;
  std::uint64_t fingerprint = 0;
  std::uint32_t mu = 0;
  std::optional<std::uint32_t> ell;  // empty: lattice cap exceeded
  std::uint64_t psi = 0;
  std::vector<GenusRow> rows;
};

struct CountOptions {
  int threads = 0;
  std::uint32_t mu = 0;  // 0: computed on demand
  // Enables the determinant lower bound when exhaustive classification is
  // over cap and the quotient rank matches the vector length.
  const AbelianQuotient* quotient = nullptr;
};

// e(k) and w(k) at n = mu + k. Exact counts where the orbit engine fits its
// caps; otherwise invariant lower bounds with exact = false.
GenusRow action_class_counts(const FiniteGroup& g, std::uint32_t k,
                             const CountOptions& opts = {});

struct RecordOptions {
  int threads = 0;
  std::optional<std::uint32_t> kmax;  // default min(2, ell - mu + 1), 0 if no ell
  const AbelianQuotient* quotient = nullptr;
};

GenusRecord genus_record(const FiniteGroup& g, const RecordOptions& opts = {});

struct StabilizationMap {
  OrbitPartition from;  // classes at n
  OrbitPartition to;    // classes at n + 1
  // class_map[i]: index into to.classes of the class holding the
  // stabilization of from.classes[i].
  std::vector<std::uint32_t> class_map;
};

// Where each class at n lands after one stabilization (appending an
// identity entry). Needs either a dense membership table at n + 1 or a
// single class there; CapacityError otherwise.
StabilizationMap stabilization_map(const FiniteGroup& g, std::uint32_t n,
                                   const OrbitOptions& opts = {});

enum class ClaimStatus { pass, fail, skip };
enum class ClaimSuite { fast, full };

struct ClaimRow {
  int criterion = 0;
  std::string id;
  ClaimStatus status = ClaimStatus::skip;
  std::string detail;
  double seconds = 0.0;
};

struct ClaimsOptions {
  ClaimSuite suite = ClaimSuite::full;
  int threads = 0;
  double budget_seconds = 0.0;  // 0: no budget; exhausted -> remaining rows skip
};

struct ClaimsReport {
  std::vector<ClaimRow> claims;
  std::vector<GenusRecord> records;
  bool all_pass = true;  // no claim failed (skips do not count against it)
};

// Runs the verification suite: every headline classification result this
// library claims to reproduce, as one pass/fail row each, plus genus
// records for a fixed selection of groups. The fast suite trims the
// long-running rows and notes what it skipped.
ClaimsReport claims_report(const ClaimsOptions& opts = {});

const char* to_string(ClaimStatus s);

}  // namespace nielsen
