#include "nielsen/orbit.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <thread>

namespace nielsen {

namespace {

int resolve_threads(int threads) {
  if (threads > 0) return std::min(threads, 64);
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? int(std::min(hw, 64u)) : 1;
}

std::uint64_t checked_state_count(const FiniteGroup& g, std::uint32_t n, std::uint64_t cap,
                                  const char* what) {
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    total *= g.order();
    if (total > cap)
      throw CapacityError(std::string(what) + " capped at " + std::to_string(cap) +
                          " states; order^" + std::to_string(n) + " exceeds it");
  }
  return total;
}

// Precomputed move table: per move, the affected slot(s) and how the new
// entry is produced.  Index deltas are applied incrementally via strides.
struct MoveTable {
  std::vector<NielsenMove> moves;
  std::vector<std::uint64_t> stride;  // stride[i] = order^(n-1-i)

  MoveTable(const FiniteGroup& g, std::uint32_t n, std::uint64_t /*total*/)
      : moves(enumerate_moves(n)), stride(n, 1) {
    for (std::uint32_t i = n; i-- > 1;) stride[i - 1] = stride[i] * g.order();
  }
};

struct EngineContext {
  const FiniteGroup& g;
  std::uint32_t n;
  std::uint64_t total;
  Packing packing;
  MoveTable table;

  EngineContext(const FiniteGroup& grp, std::uint32_t len, std::uint64_t cap, const char* what)
      : g(grp), n(len), total(checked_state_count(grp, len, cap, what)),
        packing(Packing::for_group(grp, len)), table(grp, len, total) {}

  void entries_of_index(std::uint64_t idx, Elem* out) const {
    for (std::uint32_t i = 0; i < n; ++i) {
      out[i] = Elem(idx / table.stride[i]);
      idx %= table.stride[i];
    }
  }
  std::uint64_t index_of_entries(const Elem* e) const {
    std::uint64_t idx = 0;
    for (std::uint32_t i = 0; i < n; ++i) idx += std::uint64_t(e[i]) * table.stride[i];
    return idx;
  }
  std::uint64_t code_of_index(std::uint64_t idx) const {
    Elem e[kMaxVectorLen];
    entries_of_index(idx, e);
    return packing.pack({e, n});
  }
  std::uint64_t index_of_code(std::uint64_t code) const {
    Elem e[kMaxVectorLen];
    packing.unpack(code, e);
    return index_of_entries(e);
  }

  // Neighbor state index under move m, starting from entries e with index idx.
  std::uint64_t neighbor(std::uint64_t idx, const Elem* e, const NielsenMove& m) const {
    switch (m.kind) {
      case MoveKind::right_mul: {
        const Elem src = m.sign > 0 ? e[m.k] : g.inv(e[m.k]);
        const Elem nj = g.mul(e[m.j], src);
        return idx + (std::int64_t(nj) - e[m.j]) * std::int64_t(table.stride[m.j]);
      }
      case MoveKind::left_mul: {
        const Elem src = m.sign > 0 ? e[m.k] : g.inv(e[m.k]);
        const Elem nj = g.mul(src, e[m.j]);
        return idx + (std::int64_t(nj) - e[m.j]) * std::int64_t(table.stride[m.j]);
      }
      case MoveKind::swap:
        return idx + (std::int64_t(e[m.k]) - e[m.j]) * std::int64_t(table.stride[m.j]) +
               (std::int64_t(e[m.j]) - e[m.k]) * std::int64_t(table.stride[m.k]);
      case MoveKind::invert: {
        const Elem nj = g.inv(e[m.j]);
        return idx + (std::int64_t(nj) - e[m.j]) * std::int64_t(table.stride[m.j]);
      }
    }
    return idx;
  }
};

class VisitedSet {
 public:
  explicit VisitedSet(std::uint64_t total) : words_((total + 63) / 64) {
    for (auto& w : words_) w.store(0, std::memory_order_relaxed);
  }
  // Returns true when the bit was freshly set.
  bool test_and_set(std::uint64_t idx) {
    const std::uint64_t bit = 1ULL << (idx & 63);
    return (words_[idx >> 6].fetch_or(bit, std::memory_order_relaxed) & bit) == 0;
  }
  bool test(std::uint64_t idx) const {
    return (words_[idx >> 6].load(std::memory_order_relaxed) >> (idx & 63)) & 1;
  }

 private:
  std::vector<std::atomic<std::uint64_t>> words_;
};

// Parallel frontier BFS from seed over all Nielsen moves.  on_discover is
// called for every newly visited state (including the seed) from worker
// threads; it must be thread safe.  Returns the orbit size.
template <class Discover>
std::uint64_t bfs(const EngineContext& ctx, VisitedSet& visited, std::uint64_t seed_idx,
                  int nthreads, std::atomic<bool>* stop, Discover&& on_discover) {
  std::vector<std::uint32_t> frontier, next;
  if (!visited.test_and_set(seed_idx)) return 0;  // already part of an earlier orbit
  on_discover(seed_idx);
  std::uint64_t size = 1;
  frontier.push_back(std::uint32_t(seed_idx));

  std::vector<std::vector<std::uint32_t>> outs(nthreads);
  while (!frontier.empty() && !(stop && stop->load(std::memory_order_relaxed))) {
    std::atomic<std::size_t> cursor{0};
    std::atomic<std::uint64_t> found{0};
    auto worker = [&](int wid) {
      auto& out = outs[wid];
      out.clear();
      std::uint64_t local = 0;
      Elem e[kMaxVectorLen];
      constexpr std::size_t kChunk = 512;
      while (true) {
        if (stop && stop->load(std::memory_order_relaxed)) break;
        const std::size_t lo = cursor.fetch_add(kChunk, std::memory_order_relaxed);
        if (lo >= frontier.size()) break;
        const std::size_t hi = std::min(frontier.size(), lo + kChunk);
        for (std::size_t s = lo; s < hi; ++s) {
          const std::uint64_t idx = frontier[s];
          ctx.entries_of_index(idx, e);
          for (const NielsenMove& m : ctx.table.moves) {
            const std::uint64_t nb = ctx.neighbor(idx, e, m);
            if (visited.test_and_set(nb)) {
              ++local;
              on_discover(nb);
              out.push_back(std::uint32_t(nb));
            }
          }
        }
      }
      found.fetch_add(local, std::memory_order_relaxed);
    };

    if (frontier.size() < 2048 || nthreads == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker, t);
      worker(0);
      for (auto& th : pool) th.join();
    }
    size += found.load();
    next.clear();
    for (auto& out : outs) {
      next.insert(next.end(), out.begin(), out.end());
      out.clear();
    }
    frontier.swap(next);
  }
  return size;
}

// Single-threaded BFS that records predecessors for trace reconstruction.
// Returns the orbit size; stops early when stop_at returns true for a
// discovered state (that state is still recorded).
template <class Pred>
std::uint64_t bfs_traced(const EngineContext& ctx, std::vector<std::uint32_t>& parent,
                         std::vector<std::uint16_t>& via, std::uint64_t seed_idx,
                         Pred&& stop_at, std::uint64_t& hit) {
  constexpr std::uint32_t kUnset = 0xFFFFFFFF;
  parent.assign(ctx.total, kUnset);
  via.assign(ctx.total, 0);
  hit = ~0ULL;
  std::vector<std::uint32_t> frontier{std::uint32_t(seed_idx)}, next;
  parent[seed_idx] = std::uint32_t(seed_idx);
  std::uint64_t size = 1;
  if (stop_at(seed_idx)) {
    hit = seed_idx;
    return size;
  }
  Elem e[kMaxVectorLen];
  while (!frontier.empty()) {
    next.clear();
    for (std::uint32_t idx : frontier) {
      ctx.entries_of_index(idx, e);
      for (std::size_t mi = 0; mi < ctx.table.moves.size(); ++mi) {
        const std::uint64_t nb = ctx.neighbor(idx, e, ctx.table.moves[mi]);
        if (parent[nb] != kUnset) continue;
        parent[nb] = idx;
        via[nb] = std::uint16_t(mi);
        ++size;
        if (stop_at(nb)) {
          hit = nb;
          return size;
        }
        next.push_back(std::uint32_t(nb));
      }
    }
    frontier.swap(next);
  }
  return size;
}

MoveTrace build_trace(const EngineContext& ctx, const std::vector<std::uint32_t>& parent,
                      const std::vector<std::uint16_t>& via, std::uint64_t seed_idx,
                      std::uint64_t hit_idx, const GenVector& start) {
  MoveTrace t;
  t.start = start;
  std::vector<std::uint16_t> path;
  std::uint64_t cur = hit_idx;
  while (cur != seed_idx) {
    path.push_back(via[cur]);
    cur = parent[cur];
  }
  std::reverse(path.begin(), path.end());
  for (std::uint16_t mi : path) t.moves.push_back(ctx.table.moves[mi]);
  t.end = unpack_genvec(ctx.g, ctx.n, ctx.code_of_index(hit_idx));
  return t;
}

void require_generating(const FiniteGroup& g, const GenVector& v, const char* who) {
  if (!is_generating(g, v))
    throw ArgumentError(std::string(who) + " requires a generating vector");
}

}  // namespace

std::int32_t Membership::class_of_code(std::uint64_t code) const {
  std::uint64_t idx = 0;
  const std::uint32_t bits = order_ <= 2 ? 1 : std::uint32_t(std::bit_width(order_ - 1));
  const std::uint64_t mask = (1ULL << bits) - 1;
  Elem e[kMaxVectorLen];
  for (std::uint32_t i = n_; i-- > 0;) {
    e[i] = Elem(code & mask);
    code >>= bits;
  }
  for (std::uint32_t i = 0; i < n_; ++i) idx = idx * order_ + e[i];
  return table_[idx];
}

OrbitPartition classify(const FiniteGroup& g, std::uint32_t n, const OrbitOptions& opts) {
  EngineContext ctx(g, n, kMaxClassifyStates, "classification");
  const int nthreads = resolve_threads(opts.threads);
  VisitedSet visited(ctx.total);

  std::vector<std::int32_t> member_table;
  if (opts.build_membership) {
    if (ctx.total > kMaxDenseAuxStates)
      throw CapacityError("membership map capped at " + std::to_string(kMaxDenseAuxStates) +
                          " states");
    member_table.assign(ctx.total, -1);
  }

  OrbitPartition part;
  part.group_label = g.label();
  part.group_fingerprint = g.fingerprint();
  part.n = n;

  // Ascending scan for unvisited generating states; each one seeds a class.
  std::uint64_t pos = 0;
  const std::uint64_t chunk = 16384;
  const std::uint64_t block = chunk * std::uint64_t(nthreads) * 4;
  while (pos < ctx.total) {
    const std::uint64_t block_end = std::min(ctx.total, pos + block);
    std::atomic<std::uint64_t> next{pos};
    std::atomic<std::uint64_t> best{~0ULL};
    auto scan_worker = [&]() {
      Elem e[kMaxVectorLen];
      while (true) {
        const std::uint64_t lo = next.fetch_add(chunk, std::memory_order_relaxed);
        if (lo >= block_end || best.load(std::memory_order_relaxed) < lo) return;
        const std::uint64_t hi = std::min(block_end, lo + chunk);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
          if (visited.test(idx)) continue;
          ctx.entries_of_index(idx, e);
          if (!generates(g, {e, ctx.n})) continue;
          std::uint64_t prev = best.load(std::memory_order_relaxed);
          while (idx < prev && !best.compare_exchange_weak(prev, idx)) {}
          return;
        }
      }
    };
    if (block_end - pos <= chunk || nthreads == 1) {
      scan_worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 1; t < nthreads; ++t) pool.emplace_back(scan_worker);
      scan_worker();
      for (auto& th : pool) th.join();
    }

    const std::uint64_t seed = best.load();
    if (seed == ~0ULL) {
      pos = block_end;
      continue;
    }
    const std::int32_t class_id = std::int32_t(part.classes.size());
    std::uint64_t size;
    if (member_table.empty()) {
      size = bfs(ctx, visited, seed, nthreads, nullptr, [](std::uint64_t) {});
    } else {
      std::int32_t* table = member_table.data();
      size = bfs(ctx, visited, seed, nthreads, nullptr,
                 [table, class_id](std::uint64_t idx) { table[idx] = class_id; });
    }
    part.classes.push_back({ctx.code_of_index(seed), size});
    part.total_generating += size;
    pos = seed + 1;
  }

  if (!member_table.empty())
    part.membership = std::make_shared<Membership>(g.order(), n, std::move(member_table));
  return part;
}

OrbitPartition weak_classify(const FiniteGroup& g, std::uint32_t n, const OrbitOptions& opts) {
  // The automorphism merge needs a membership map; build it alongside the
  // strong classification when it fits.
  std::uint64_t total = 1;
  bool membership_fits = true;
  for (std::uint32_t i = 0; i < n && membership_fits; ++i) {
    total *= g.order();
    membership_fits = total <= kMaxDenseAuxStates;
  }
  OrbitOptions strong_opts = opts;
  strong_opts.build_membership = membership_fits;
  OrbitPartition strong = classify(g, n, strong_opts);
  if (strong.classes.size() <= 1) {
    // A single class cannot split further; no merge work needed.
    strong.weak = true;
    strong.membership.reset();
    return strong;
  }
  if (!membership_fits)
    throw CapacityError("weak classification needs a membership map, capped at " +
                        std::to_string(kMaxDenseAuxStates) + " states");

  const std::vector<Automorphism> auts = automorphisms(g);
  const std::size_t k = strong.classes.size();
  std::vector<std::int32_t> dsu(k);
  for (std::size_t i = 0; i < k; ++i) dsu[i] = std::int32_t(i);
  auto find = [&](std::int32_t x) {
    while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
    return x;
  };

  EngineContext ctx(g, n, kMaxClassifyStates, "classification");
  Elem e[kMaxVectorLen], me[kMaxVectorLen];
  for (std::size_t ci = 0; ci < k; ++ci) {
    ctx.packing.unpack(strong.classes[ci].representative, e);
    for (const Automorphism& a : auts) {
      for (std::uint32_t i = 0; i < n; ++i) me[i] = a(e[i]);
      const std::int32_t cj = strong.membership->class_of_index(ctx.index_of_entries(me));
      if (cj < 0) throw Error("automorphism image escaped the generating set");
      std::int32_t ra = find(std::int32_t(ci)), rb = find(cj);
      if (ra != rb) dsu[std::max(ra, rb)] = std::min(ra, rb);
    }
  }

  OrbitPartition weak;
  weak.group_label = strong.group_label;
  weak.group_fingerprint = strong.group_fingerprint;
  weak.n = n;
  weak.weak = true;
  std::vector<std::int32_t> root_class(k, -1);
  for (std::size_t ci = 0; ci < k; ++ci) {
    const std::int32_t r = find(std::int32_t(ci));
    if (root_class[r] < 0) {
      root_class[r] = std::int32_t(weak.classes.size());
      weak.classes.push_back({strong.classes[r].representative, 0});
    }
    weak.classes[root_class[r]].size += strong.classes[ci].size;
  }
  weak.total_generating = strong.total_generating;
  return weak;
}

bool OrbitSet::contains(std::uint64_t code) const {
  return std::binary_search(codes.begin(), codes.end(), code);
}

OrbitSet orbit(const FiniteGroup& g, const GenVector& v, const OrbitOptions& opts) {
  require_generating(g, v, "orbit");
  EngineContext ctx(g, v.n(), kMaxOrbitStates, "orbit enumeration");
  const int nthreads = resolve_threads(opts.threads);
  VisitedSet visited(ctx.total);

  const std::uint64_t seed = ctx.index_of_entries(v.entries.data());
  std::vector<std::vector<std::uint64_t>> buckets(64);
  std::vector<std::mutex> locks(64);
  OrbitSet result;
  result.n = v.n();
  result.seed = pack_genvec(g, v);

  std::atomic<std::uint64_t> counter{0};
  bfs(ctx, visited, seed, nthreads, nullptr, [&](std::uint64_t idx) {
    const std::size_t b = (idx >> 6) & 63;
    std::lock_guard<std::mutex> lk(locks[b]);
    buckets[b].push_back(idx);
    counter.fetch_add(1, std::memory_order_relaxed);
  });

  result.codes.reserve(counter.load());
  for (auto& bucket : buckets)
    for (std::uint64_t idx : bucket) result.codes.push_back(ctx.code_of_index(idx));
  std::sort(result.codes.begin(), result.codes.end());
  return result;
}

EquivalenceResult are_equivalent(const FiniteGroup& g, const GenVector& v, const GenVector& w,
                                 bool want_trace, const OrbitOptions& opts) {
  if (v.n() != w.n()) throw ArgumentError("vectors have different lengths");
  require_generating(g, v, "equivalence");
  require_generating(g, w, "equivalence");

  EngineContext ctx(g, v.n(), kMaxOrbitStates, "orbit enumeration");
  const std::uint64_t from = ctx.index_of_entries(v.entries.data());
  const std::uint64_t to = ctx.index_of_entries(w.entries.data());

  EquivalenceResult res;
  if (want_trace) {
    if (ctx.total > kMaxDenseAuxStates)
      throw CapacityError("trace search capped at " + std::to_string(kMaxDenseAuxStates) +
                          " states");
    std::vector<std::uint32_t> parent;
    std::vector<std::uint16_t> via;
    std::uint64_t hit;
    bfs_traced(ctx, parent, via, from, [to](std::uint64_t idx) { return idx == to; }, hit);
    res.equivalent = hit != ~0ULL;
    if (res.equivalent) res.trace = build_trace(ctx, parent, via, from, hit, v);
    return res;
  }

  if (from == to) {
    res.equivalent = true;
    return res;
  }
  VisitedSet visited(ctx.total);
  std::atomic<bool> stop{false};
  bfs(ctx, visited, from, resolve_threads(opts.threads), &stop, [&](std::uint64_t idx) {
    if (idx == to) stop.store(true, std::memory_order_relaxed);
  });
  res.equivalent = stop.load();
  return res;
}

RedundancyResult is_redundant(const FiniteGroup& g, const GenVector& v, bool want_trace,
                              const OrbitOptions& opts) {
  require_generating(g, v, "redundancy check");
  EngineContext ctx(g, v.n(), kMaxOrbitStates, "orbit enumeration");
  const std::uint64_t from = ctx.index_of_entries(v.entries.data());

  // A state has an identity slot iff some mixed-radix digit is zero.
  auto has_identity_slot = [&ctx](std::uint64_t idx) {
    Elem e[kMaxVectorLen];
    ctx.entries_of_index(idx, e);
    for (std::uint32_t i = 0; i < ctx.n; ++i)
      if (e[i] == 0) return true;
    return false;
  };

  RedundancyResult res;
  if (want_trace) {
    if (ctx.total > kMaxDenseAuxStates)
      throw CapacityError("trace search capped at " + std::to_string(kMaxDenseAuxStates) +
                          " states");
    std::vector<std::uint32_t> parent;
    std::vector<std::uint16_t> via;
    std::uint64_t hit;
    bfs_traced(ctx, parent, via, from, has_identity_slot, hit);
    res.redundant = hit != ~0ULL;
    if (res.redundant) res.trace = build_trace(ctx, parent, via, from, hit, v);
    return res;
  }

  VisitedSet visited(ctx.total);
  std::atomic<bool> stop{false};
  bfs(ctx, visited, from, resolve_threads(opts.threads), &stop, [&](std::uint64_t idx) {
    if (has_identity_slot(idx)) stop.store(true, std::memory_order_relaxed);
  });
  res.redundant = stop.load();
  return res;
}

}  // namespace nielsen
