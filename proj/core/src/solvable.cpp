#include "nielsen/solvable.hpp"

#include <algorithm>
#include <bit>

namespace nielsen {

namespace {

bool mask_contains(const std::vector<std::uint64_t>& mask, Elem e) {
  return (mask[e >> 6] >> (e & 63)) & 1;
}

std::vector<Elem> mask_members(const std::vector<std::uint64_t>& mask, std::uint32_t order) {
  std::vector<Elem> out;
  for (std::uint32_t e = 0; e < order; ++e)
    if (mask_contains(mask, e)) out.push_back(Elem(e));
  return out;
}

// Subgroup from a membership mask, with a small generating set rebuilt
// greedily (smallest element outside the running closure).
Subgroup subgroup_from_mask(const FiniteGroup& g, std::vector<std::uint64_t> mask) {
  Subgroup sub;
  sub.size = 0;
  for (std::uint64_t w : mask) sub.size += std::uint32_t(std::popcount(w));
  sub.mask = std::move(mask);
  Subgroup running = closure(g, {});
  while (running.size < sub.size) {
    Elem next = 0;
    while (!mask_contains(sub.mask, next) || running.contains(next)) ++next;
    sub.generators.push_back(next);
    running = closure(g, sub.generators);
  }
  return sub;
}

Subgroup full_subgroup(const FiniteGroup& g) {
  Subgroup sub;
  sub.mask.assign((g.order() + 63) / 64, ~0ULL);
  const std::uint32_t tail = g.order() & 63;
  if (tail) sub.mask.back() = (1ULL << tail) - 1;
  sub.size = g.order();
  sub.generators = g.default_generators();
  return sub;
}

Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& h) {
  const std::uint32_t n = g.order();
  std::vector<std::uint64_t> comm((n + 63) / 64, 0);
  const std::vector<Elem> members = mask_members(h.mask, n);
  for (Elem a : members)
    for (Elem b : members) {
      const Elem c = g.commutator(a, b);
      comm[c >> 6] |= 1ULL << (c & 63);
    }
  return closure(g, mask_members(comm, n));
}

}  // namespace

std::vector<Subgroup> derived_series(const FiniteGroup& g) {
  std::vector<Subgroup> series = {full_subgroup(g)};
  while (true) {
    Subgroup next = commutator_subgroup(g, series.back());
    if (next.size == series.back().size) break;
    series.push_back(std::move(next));
    if (series.back().size == 1) break;
  }
  return series;
}

bool is_solvable(const FiniteGroup& g) { return derived_series(g).back().size == 1; }

CyclicTower cyclic_tower(const FiniteGroup& g) {
  const std::vector<Subgroup> series = derived_series(g);
  if (series.back().size != 1) throw DomainError("cyclic towers exist only for solvable groups");

  CyclicTower tower;
  tower.levels.push_back(series.front());
  for (std::size_t j = 0; j + 1 < series.size(); ++j) {
    const Subgroup& upper = series[j];
    const Subgroup& lower = series[j + 1];
    // Ascend from lower to upper one cyclic quotient at a time; every
    // intermediate subgroup is normal in upper because upper/lower is
    // abelian, so adjacent normality is automatic.
    std::vector<Subgroup> ascent = {lower};
    std::vector<Elem> steps;
    while (ascent.back().size < upper.size) {
      Elem t = 0;
      while (!mask_contains(upper.mask, t) || ascent.back().contains(t)) ++t;
      std::vector<Elem> gens = ascent.back().generators;
      gens.push_back(t);
      ascent.push_back(closure(g, gens));
      steps.push_back(t);
    }
    for (std::size_t i = ascent.size() - 1; i-- > 0;) {
      tower.levels.push_back(ascent[i]);
      tower.coset_gens.push_back(steps[i]);
    }
  }

  // Guard: adjacent normality and cyclic quotients are relied on later.
  for (std::size_t i = 0; i + 1 < tower.levels.size(); ++i) {
    const std::vector<Elem> uppers = mask_members(tower.levels[i].mask, g.order());
    for (Elem u : uppers)
      for (Elem x : mask_members(tower.levels[i + 1].mask, g.order()))
        if (!tower.levels[i + 1].contains(g.conjugate(x, u)))
          throw Error("tower level fails normality");
  }
  return tower;
}

namespace {

struct TraceBuilder {
  const FiniteGroup& g;
  GenVector cur;
  std::vector<NielsenMove> moves;

  void push(const NielsenMove& m) {
    cur = apply_move(g, cur, m);
    moves.push_back(m);
  }
  void right_mul(std::uint8_t j, std::uint8_t k, std::int8_t sign) {
    push({MoveKind::right_mul, j, k, sign});
  }
  void swap(std::uint8_t j, std::uint8_t k) { push({MoveKind::swap, j, k, 1}); }
};

// Exponent of x relative to the designated generator d in the cyclic
// quotient level/next: smallest e >= 0 with x in d^e * next.
std::uint32_t coset_exponent(const FiniteGroup& g, const Subgroup& next, Elem d, Elem x,
                             std::uint32_t quotient_order) {
  Elem pw = 0;
  for (std::uint32_t e = 0; e < quotient_order; ++e) {
    if (next.contains(g.mul(g.inv(pw), x))) return e;
    pw = g.mul(pw, d);
  }
  throw Error("element missing from the cyclic quotient");
}

}  // namespace

ReduceResult tower_reduce(const FiniteGroup& g, const GenVector& v, const CyclicTower& tower) {
  if (v.group_fingerprint != g.fingerprint())
    throw ArgumentError("vector belongs to a different group");
  if (tower.levels.empty() || tower.levels.front().size != g.order())
    throw ArgumentError("tower does not start at the whole group");

  // Intersect the tower with the subgroup the entries generate, dropping
  // repeated levels; quotients stay cyclic because they embed in the
  // original ones.
  const Subgroup h = closure(g, v.entries);
  std::vector<Subgroup> levels;
  for (const Subgroup& lvl : tower.levels) {
    std::vector<std::uint64_t> mask(lvl.mask.size());
    for (std::size_t w = 0; w < mask.size(); ++w) mask[w] = lvl.mask[w] & h.mask[w];
    Subgroup cut = subgroup_from_mask(g, std::move(mask));
    if (levels.empty() || cut.size != levels.back().size) levels.push_back(std::move(cut));
  }

  TraceBuilder tb{g, v, {}};
  const std::uint32_t n = v.n();
  const std::uint32_t depth = std::uint32_t(levels.size()) - 1;
  for (std::uint32_t li = 0; li < std::min(depth, n); ++li) {
    const Subgroup& next = levels[li + 1];
    const std::uint32_t qord = levels[li].size / next.size;
    // Designated generator: smallest element whose coset generates the
    // quotient.
    Elem d = 0;
    {
      bool found = false;
      for (Elem cand : mask_members(levels[li].mask, g.order())) {
        if (next.contains(cand)) continue;
        std::vector<Elem> gens = next.generators;
        gens.push_back(cand);
        if (closure(g, gens).size == levels[li].size) {
          d = cand;
          found = true;
          break;
        }
      }
      if (!found) throw Error("cyclic quotient has no generating coset");
    }

    std::vector<std::uint32_t> expo(n, 0);
    for (std::uint32_t p = li; p < n; ++p)
      expo[p] = coset_exponent(g, next, d, tb.cur.entries[p], qord);

    while (true) {
      std::uint32_t p = n, q = n;
      for (std::uint32_t i = li; i < n; ++i)
        if (expo[i]) {
          if (p == n) p = i;
          else { q = i; break; }
        }
      if (q == n) {
        if (p != n && p != li) {
          tb.swap(std::uint8_t(li), std::uint8_t(p));
          std::swap(expo[li], expo[p]);
        }
        break;
      }
      if (expo[p] >= expo[q]) {
        tb.right_mul(std::uint8_t(p), std::uint8_t(q), -1);
        expo[p] -= expo[q];
      } else {
        tb.right_mul(std::uint8_t(q), std::uint8_t(p), -1);
        expo[q] -= expo[p];
      }
    }
  }

  for (std::uint32_t i = 0; i < n; ++i) {
    const Subgroup& lvl = levels[std::min<std::size_t>(i, depth)];
    if (!lvl.contains(tb.cur.entries[i]))
      throw Error("reduced entry escaped its tower level");
    if (i >= depth && tb.cur.entries[i] != 0)
      throw Error("entry beyond the tower depth did not reduce to the identity");
  }

  MoveTrace trace{v, tb.cur, std::move(tb.moves)};
  return {trace.end, std::move(trace)};
}

ReduceResult supraminimal_reduce(const FiniteGroup& g, const GenVector& v, const GenVector& s) {
  if (!is_generating(g, v)) throw ArgumentError("vector must generate the group");
  if (!is_generating(g, s)) throw ArgumentError("target vector must generate the group");
  const std::uint32_t m = mu(g);
  if (s.n() != m) throw ArgumentError("target vector must be a minimal generating vector");
  const std::uint32_t len = v.n();
  const std::uint32_t chain = ell(g);
  if (len <= chain)
    throw ArgumentError("vector length " + std::to_string(len) +
                        " must exceed the subgroup chain length " + std::to_string(chain));

  TraceBuilder tb{g, v, {}};
  for (std::uint32_t k = 0; k < m; ++k) {
    if (tb.cur.entries[k] == s.entries[k]) continue;

    // A redundant slot q >= k exists because the prefix chain of a vector
    // longer than ell(G) cannot be strict everywhere past the (strict)
    // prefix of s already in place.
    std::uint32_t q = len;
    {
      Subgroup prefix = closure(g, std::span<const Elem>(tb.cur.entries.data(), k));
      for (std::uint32_t cand = k; cand < len; ++cand) {
        if (prefix.contains(tb.cur.entries[cand])) { q = cand; break; }
        std::vector<Elem> gens(tb.cur.entries.begin(), tb.cur.entries.begin() + cand + 1);
        prefix = closure(g, gens);
      }
      if (q == len) throw Error("no redundant slot found despite the length bound");
    }

    // Clear slot q through its shortest positive word over the prefix.
    if (tb.cur.entries[q] != 0) {
      const std::span<const Elem> prefix(tb.cur.entries.data(), q);
      const WordTable wt = WordTable::build(g, prefix);
      std::vector<std::uint8_t> word = wt.word(tb.cur.entries[q]);
      for (std::size_t i = word.size(); i-- > 0;)
        tb.right_mul(std::uint8_t(q), word[i], -1);
      if (tb.cur.entries[q] != 0) throw Error("slot failed to clear");
    }

    // Rebuild s_k in the cleared slot from the other entries.
    {
      std::vector<Elem> gens;
      std::vector<std::uint8_t> pos;
      for (std::uint32_t p = 0; p < len; ++p)
        if (p != q) {
          gens.push_back(tb.cur.entries[p]);
          pos.push_back(std::uint8_t(p));
        }
      const WordTable wt = WordTable::build(g, gens);
      if (wt.reached_count() != g.order())
        throw Error("remaining entries stopped generating the group");
      for (std::uint8_t letter : wt.word(s.entries[k]))
        tb.right_mul(std::uint8_t(q), pos[letter], 1);
    }
    if (std::uint32_t(q) != k) tb.swap(std::uint8_t(k), std::uint8_t(q));
    if (tb.cur.entries[k] != s.entries[k]) throw Error("slot rebuild mismatch");
  }

  // Clear everything after the minimal prefix.
  for (std::uint32_t q = m; q < len; ++q) {
    if (tb.cur.entries[q] == 0) continue;
    const WordTable wt = WordTable::build(g, std::span<const Elem>(s.entries.data(), m));
    std::vector<std::uint8_t> word = wt.word(tb.cur.entries[q]);
    for (std::size_t i = word.size(); i-- > 0;)
      tb.right_mul(std::uint8_t(q), word[i], -1);
    if (tb.cur.entries[q] != 0) throw Error("tail slot failed to clear");
  }

  MoveTrace trace{v, tb.cur, std::move(tb.moves)};
  return {trace.end, std::move(trace)};
}

MoveTrace stabilization_equivalence(const FiniteGroup& g, const GenVector& v, const GenVector& w) {
  if (v.n() != w.n()) throw ArgumentError("vectors have different lengths");
  if (!is_generating(g, v) || !is_generating(g, w))
    throw ArgumentError("both vectors must generate the group");
  const auto [m, s] = minimal_generating_vector(g);
  const std::uint32_t len = v.n();
  if (len + m > kMaxVectorLen)
    throw CapacityError("stabilized vector length exceeds " + std::to_string(kMaxVectorLen));

  // From (u, 1^m): synthesize s in the fresh slots, clear the original
  // slots against it, then swap s to the front, ending at (s, 1, ..., 1).
  auto phase = [&](const GenVector& u) {
    TraceBuilder tb{g, stabilized(u, m), {}};
    {
      const std::span<const Elem> originals(tb.cur.entries.data(), len);
      const WordTable wt = WordTable::build(g, originals);
      for (std::uint32_t i = 0; i < m; ++i)
        for (std::uint8_t letter : wt.word(s[i]))
          tb.right_mul(std::uint8_t(len + i), letter, 1);
    }
    {
      const WordTable wt = WordTable::build(g, s);
      for (std::uint32_t p = 0; p < len; ++p) {
        std::vector<std::uint8_t> word = wt.word(tb.cur.entries[p]);
        for (std::size_t i = word.size(); i-- > 0;)
          tb.right_mul(std::uint8_t(p), std::uint8_t(len + word[i]), -1);
      }
    }
    for (std::uint32_t i = 0; i < m; ++i) tb.swap(std::uint8_t(i), std::uint8_t(len + i));
    return tb;
  };

  TraceBuilder fwd = phase(v);
  TraceBuilder bwd = phase(w);
  if (fwd.cur != bwd.cur) throw Error("stabilization phases disagree on the midpoint");

  MoveTrace trace;
  trace.start = stabilized(v, m);
  trace.moves = std::move(fwd.moves);
  for (std::size_t i = bwd.moves.size(); i-- > 0;)
    trace.moves.push_back(inverse_move(bwd.moves[i]));
  trace.end = stabilized(w, m);
  if (!verify_trace(g, trace)) throw Error("stabilization trace failed to replay");
  return trace;
}

}  // namespace nielsen
