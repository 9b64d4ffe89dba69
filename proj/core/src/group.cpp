#include "nielsen/group.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <thread>
#include <unordered_map>

namespace nielsen {

namespace {

int resolve_threads(int threads) {
  if (threads > 0) return std::min(threads, 64);
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? int(std::min(hw, 64u)) : 1;
}

std::uint64_t fnv1a(const std::vector<Elem>& table) {
  std::uint64_t h = 1469598103934665603ULL;
  for (Elem e : table) {
    h = (h ^ (e & 0xFF)) * 1099511628211ULL;
    h = (h ^ (e >> 8)) * 1099511628211ULL;
  }
  return h;
}

// Reusable closure scratch; avoids reallocating masks in the hot search
// loops (mu on an order-4096 group runs millions of closures).
struct ClosureScratch {
  std::vector<std::uint64_t> mask;
  std::vector<Elem> queue;
};

std::uint32_t closure_count(const FiniteGroup& g, std::span<const Elem> seed,
                            ClosureScratch& s) {
  const std::uint32_t n = g.order();
  const std::size_t words = (n + 63) / 64;
  s.mask.assign(words, 0);
  s.queue.clear();
  s.mask[0] = 1;  // identity
  s.queue.push_back(0);
  std::uint32_t count = 1;
  for (Elem e : seed) {
    if (!((s.mask[e >> 6] >> (e & 63)) & 1)) {
      s.mask[e >> 6] |= 1ULL << (e & 63);
      s.queue.push_back(e);
      ++count;
    }
  }
  for (std::size_t i = 0; i < s.queue.size() && count < n; ++i) {
    const Elem cur = s.queue[i];
    for (Elem gen : seed) {
      const Elem nxt = g.mul(gen, cur);
      if (!((s.mask[nxt >> 6] >> (nxt & 63)) & 1)) {
        s.mask[nxt >> 6] |= 1ULL << (nxt & 63);
        s.queue.push_back(nxt);
        if (++count == n) break;
      }
    }
  }
  return count;
}

}  // namespace

FiniteGroup FiniteGroup::from_mul_table(std::string label, std::string spec_text,
                                        std::uint32_t order, std::vector<Elem> mul,
                                        std::vector<Elem> default_generators,
                                        std::vector<std::string> element_names) {
  if (order == 0) throw ArgumentError("group order must be positive");
  if (order > kMaxGroupOrder)
    throw CapacityError("group order " + std::to_string(order) +
                        " exceeds cap " + std::to_string(kMaxGroupOrder));
  const std::size_t n = order;
  if (mul.size() != n * n) throw ArgumentError("multiplication table size mismatch");
  for (Elem e : mul)
    if (e >= order) throw ArgumentError("multiplication table entry out of range");
  if (!element_names.empty() && element_names.size() != n)
    throw ArgumentError("element name list size mismatch");

  FiniteGroup g;
  g.order_ = order;
  g.mul_ = std::move(mul);

  // Identity must sit at index 0.
  for (std::uint32_t a = 0; a < order; ++a)
    if (g.mul(0, Elem(a)) != a || g.mul(Elem(a), 0) != a)
      throw ArgumentError("element 0 is not a two-sided identity");

  // Latin square: each row and each column is a permutation.
  {
    std::vector<std::uint8_t> seen(n);
    for (std::uint32_t a = 0; a < order; ++a) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::uint32_t b = 0; b < order; ++b) {
        Elem p = g.mul(Elem(a), Elem(b));
        if (seen[p]++) throw ArgumentError("row " + std::to_string(a) + " repeats a product");
      }
    }
    for (std::uint32_t b = 0; b < order; ++b) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::uint32_t a = 0; a < order; ++a) {
        Elem p = g.mul(Elem(a), Elem(b));
        if (seen[p]++) throw ArgumentError("column " + std::to_string(b) + " repeats a product");
      }
    }
  }

  // Inverses from rows; Latin square guarantees a unique right inverse,
  // check it works on the left too.
  g.inv_.resize(n);
  for (std::uint32_t a = 0; a < order; ++a) {
    Elem b = 0;
    while (g.mul(Elem(a), b) != 0) ++b;
    if (g.mul(b, Elem(a)) != 0) throw ArgumentError("one-sided inverse at element " + std::to_string(a));
    g.inv_[a] = b;
  }

  // Associativity: exhaustive through order 512, deterministic sample beyond.
  if (order <= 512) {
    for (std::uint32_t a = 0; a < order; ++a)
      for (std::uint32_t b = 0; b < order; ++b)
        for (std::uint32_t c = 0; c < order; ++c)
          if (g.mul(g.mul(Elem(a), Elem(b)), Elem(c)) != g.mul(Elem(a), g.mul(Elem(b), Elem(c))))
            throw ArgumentError("associativity fails");
  } else {
    std::mt19937_64 rng(0x5DEECE66DULL);
    std::uniform_int_distribution<std::uint32_t> dist(0, order - 1);
    for (int i = 0; i < 2000000; ++i) {
      Elem a = Elem(dist(rng)), b = Elem(dist(rng)), c = Elem(dist(rng));
      if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
        throw ArgumentError("associativity fails");
    }
  }

  // Element orders, one cyclic subgroup walk at a time.
  g.elem_order_.assign(n, 0);
  g.elem_order_[0] = 1;
  std::vector<Elem> cycle;
  for (std::uint32_t a = 1; a < order; ++a) {
    if (g.elem_order_[a]) continue;
    cycle.clear();
    Elem cur = Elem(a);
    while (cur != 0) {
      cycle.push_back(cur);
      cur = g.mul(cur, Elem(a));
    }
    const std::uint32_t m = std::uint32_t(cycle.size()) + 1;  // order of a
    for (std::uint32_t k = 1; k <= m - 1; ++k) {
      Elem e = cycle[k - 1];  // a^k
      if (!g.elem_order_[e]) g.elem_order_[e] = m / std::gcd(m, k);
    }
  }

  for (Elem e : default_generators)
    if (e >= order) throw ArgumentError("default generator out of range");
  g.default_gens_ = std::move(default_generators);
  g.names_ = std::move(element_names);
  g.label_ = std::move(label);
  g.spec_text_ = std::move(spec_text);
  g.fingerprint_ = fnv1a(g.mul_);
  return g;
}

Elem FiniteGroup::conjugate(Elem g, Elem h) const { return mul(mul(h, g), inv(h)); }

Elem FiniteGroup::commutator(Elem g, Elem h) const {
  return mul(mul(g, h), mul(inv(g), inv(h)));
}

Elem FiniteGroup::power(Elem g, std::int64_t e) const {
  const std::uint32_t m = element_order(g);
  std::int64_t r = e % std::int64_t(m);
  if (r < 0) r += m;
  Elem base = g, acc = 0;
  while (r) {
    if (r & 1) acc = mul(acc, base);
    base = mul(base, base);
    r >>= 1;
  }
  return acc;
}

const std::string& FiniteGroup::element_name(Elem g) const {
  static const std::string empty;
  if (names_.empty() || g >= names_.size()) return empty;
  return names_[g];
}

Subgroup closure(const FiniteGroup& g, std::span<const Elem> seed) {
  for (Elem e : seed)
    if (e >= g.order()) throw ArgumentError("closure seed element out of range");
  ClosureScratch s;
  std::uint32_t count = closure_count(g, seed, s);
  Subgroup sub;
  sub.mask = std::move(s.mask);
  sub.generators.assign(seed.begin(), seed.end());
  sub.size = count;
  return sub;
}

bool generates(const FiniteGroup& g, std::span<const Elem> entries) {
  thread_local ClosureScratch s;
  return closure_count(g, entries, s) == g.order();
}

ConjugacyClasses conjugacy_classes(const FiniteGroup& g) {
  const std::uint32_t n = g.order();
  ConjugacyClasses cc;
  cc.class_index.assign(n, 0xFFFF);
  for (std::uint32_t a = 0; a < n; ++a) {
    if (cc.class_index[a] != 0xFFFF) continue;
    const std::uint16_t id = std::uint16_t(cc.representative.size());
    cc.representative.push_back(Elem(a));
    std::uint32_t size = 0;
    for (std::uint32_t h = 0; h < n; ++h) {
      Elem c = g.conjugate(Elem(a), Elem(h));
      if (cc.class_index[c] == 0xFFFF) {
        cc.class_index[c] = id;
        ++size;
      }
    }
    cc.class_size.push_back(size);
  }
  return cc;
}

Subgroup center(const FiniteGroup& g) {
  const std::uint32_t n = g.order();
  std::vector<Elem> members;
  for (std::uint32_t a = 0; a < n; ++a) {
    bool central = true;
    for (std::uint32_t h = 0; h < n && central; ++h)
      central = g.mul(Elem(a), Elem(h)) == g.mul(Elem(h), Elem(a));
    if (central) members.push_back(Elem(a));
  }
  Subgroup sub;
  sub.mask.assign((n + 63) / 64, 0);
  for (Elem e : members) sub.mask[e >> 6] |= 1ULL << (e & 63);
  sub.generators = members;
  sub.size = std::uint32_t(members.size());
  return sub;
}

WordTable WordTable::build(const FiniteGroup& g, std::span<const Elem> gens) {
  if (gens.empty()) throw ArgumentError("word table needs at least one generator");
  if (gens.size() > 255) throw ArgumentError("word table capped at 255 generators");
  const std::uint32_t n = g.order();
  WordTable t;
  t.parent_.assign(n, 0);
  t.letter_.assign(n, 0);
  t.depth_.assign(n, kUnset);
  t.depth_[0] = 0;
  t.order_.push_back(0);
  t.reached_ = 1;
  for (std::size_t i = 0; i < t.order_.size(); ++i) {
    const Elem cur = t.order_[i];
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const Elem nxt = g.mul(cur, gens[j]);
      if (t.depth_[nxt] == kUnset && nxt != 0) {
        t.depth_[nxt] = t.depth_[cur] + 1;
        t.parent_[nxt] = cur;
        t.letter_[nxt] = std::uint8_t(j);
        t.order_.push_back(nxt);
        ++t.reached_;
      }
    }
  }
  return t;
}

std::vector<std::uint8_t> WordTable::word(Elem g) const {
  if (!reaches(g)) throw ArgumentError("element not reached by word table");
  std::vector<std::uint8_t> w;
  while (g != 0) {
    w.push_back(letter_[g]);
    g = parent_[g];
  }
  std::reverse(w.begin(), w.end());
  return w;
}

std::vector<Automorphism> automorphisms(const FiniteGroup& g) {
  const std::uint32_t n = g.order();
  if (n > kMaxAutOrder)
    throw CapacityError("automorphism search capped at order " + std::to_string(kMaxAutOrder));
  auto [m, gens] = minimal_generating_vector(g);
  WordTable wt = WordTable::build(g, gens);

  std::vector<std::vector<Elem>> candidates(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    const std::uint32_t want = g.element_order(gens[i]);
    for (std::uint32_t e = 0; e < n; ++e)
      if (g.element_order(Elem(e)) == want) candidates[i].push_back(Elem(e));
  }

  std::vector<Automorphism> auts;
  std::vector<std::uint32_t> pick(m, 0);
  std::vector<Elem> img(n), t(m);
  std::vector<std::uint8_t> seen(n);
  const auto& order = wt.bfs_order();
  while (true) {
    for (std::uint32_t i = 0; i < m; ++i) t[i] = candidates[i][pick[i]];
    img[0] = 0;
    for (std::size_t i = 1; i < order.size(); ++i) {
      const Elem e = order[i];
      img[e] = g.mul(img[wt.parent(e)], t[wt.letter(e)]);
    }
    bool ok = true;
    std::fill(seen.begin(), seen.end(), 0);
    for (std::uint32_t e = 0; e < n && ok; ++e) ok = !seen[img[e]]++;
    for (std::uint32_t e = 0; e < n && ok; ++e)
      for (std::uint32_t i = 0; i < m && ok; ++i)
        ok = img[g.mul(Elem(e), gens[i])] == g.mul(img[e], t[i]);
    if (ok) auts.push_back(Automorphism{img});

    std::uint32_t i = m;
    while (i > 0) {
      --i;
      if (++pick[i] < candidates[i].size()) break;
      pick[i] = 0;
      if (i == 0) return auts;
    }
  }
}

std::pair<std::uint32_t, std::vector<Elem>> minimal_generating_vector(
    const FiniteGroup& g, int threads) {
  const std::uint32_t n = g.order();
  if (n == 1) return {1, {0}};
  const int nthreads = resolve_threads(threads);
  ConjugacyClasses cc = conjugacy_classes(g);

  for (std::uint32_t len = 1; len <= 16; ++len) {
    // Entries after the first run an odometer over all elements.
    std::uint64_t tail_total = 1;
    bool overflow = false;
    for (std::uint32_t i = 1; i < len; ++i) {
      tail_total *= n;
      if (tail_total > (1ULL << 40)) { overflow = true; break; }
    }
    if (overflow)
      throw CapacityError("minimal generating vector search space too large");
    for (Elem rep : cc.representative) {
      if (len == 1) {
        thread_local ClosureScratch cs;
        Elem v[1] = {rep};
        if (closure_count(g, v, cs) == n) return {1, {rep}};
        continue;
      }
      // Parallel scan over the tail odometer; keep the smallest hit so the
      // result does not depend on the thread count.
      std::atomic<std::uint64_t> best{~0ULL};
      std::atomic<std::uint64_t> next{0};
      const std::uint64_t chunk = std::max<std::uint64_t>(1024, tail_total / (64 * nthreads) + 1);
      auto worker = [&]() {
        ClosureScratch cs;
        std::vector<Elem> v(len);
        v[0] = rep;
        while (true) {
          const std::uint64_t lo = next.fetch_add(chunk);
          if (lo >= tail_total || best.load() < lo) return;
          const std::uint64_t hi = std::min(tail_total, lo + chunk);
          for (std::uint64_t idx = lo; idx < hi; ++idx) {
            std::uint64_t x = idx;
            for (std::uint32_t i = len; i-- > 1;) {
              v[i] = Elem(x % n);
              x /= n;
            }
            if (closure_count(g, v, cs) == n) {
              std::uint64_t prev = best.load();
              while (idx < prev && !best.compare_exchange_weak(prev, idx)) {}
              return;
            }
          }
        }
      };
      std::vector<std::thread> pool;
      for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
      worker();
      for (auto& th : pool) th.join();
      const std::uint64_t hit = best.load();
      if (hit != ~0ULL) {
        std::vector<Elem> v(len);
        v[0] = rep;
        std::uint64_t x = hit;
        for (std::uint32_t i = len; i-- > 1;) {
          v[i] = Elem(x % n);
          x /= n;
        }
        return {len, v};
      }
    }
  }
  throw CapacityError("no generating vector found within length 16");
}

std::uint32_t mu(const FiniteGroup& g, int threads) {
  return minimal_generating_vector(g, threads).first;
}

std::vector<Subgroup> subgroup_lattice(const FiniteGroup& g) {
  const std::uint32_t n = g.order();
  if (n > kMaxLatticeOrder)
    throw CapacityError("subgroup lattice capped at order " + std::to_string(kMaxLatticeOrder));
  const std::size_t words = (n + 63) / 64;

  struct MaskHash {
    std::size_t operator()(const std::vector<std::uint64_t>& m) const {
      std::uint64_t h = 1469598103934665603ULL;
      for (std::uint64_t w : m) h = (h ^ w) * 1099511628211ULL;
      return std::size_t(h);
    }
  };
  std::unordered_map<std::vector<std::uint64_t>, std::uint32_t, MaskHash> index;
  std::vector<Subgroup> subs;

  auto add = [&](Subgroup s) {
    auto [it, fresh] = index.try_emplace(s.mask, std::uint32_t(subs.size()));
    if (fresh) subs.push_back(std::move(s));
    return fresh;
  };

  Subgroup trivial;
  trivial.mask.assign(words, 0);
  trivial.mask[0] = 1;
  trivial.size = 1;
  add(trivial);
  for (std::uint32_t a = 1; a < n; ++a) {
    Elem v[1] = {Elem(a)};
    add(closure(g, v));
  }
  for (std::size_t i = 0; i < subs.size(); ++i) {
    for (std::uint32_t a = 1; a < n; ++a) {
      if (subs[i].contains(Elem(a))) continue;
      std::vector<Elem> gens = subs[i].generators;
      gens.push_back(Elem(a));
      add(closure(g, gens));
    }
  }
  return subs;
}

std::uint32_t ell(const FiniteGroup& g) {
  const std::uint32_t n = g.order();
  if (n == 1) return 0;
  std::vector<Subgroup> subs = subgroup_lattice(g);
  std::sort(subs.begin(), subs.end(), [](const Subgroup& a, const Subgroup& b) {
    return a.size != b.size ? a.size < b.size : a.mask < b.mask;
  });

  auto subset = [](const Subgroup& a, const Subgroup& b) {
    for (std::size_t w = 0; w < a.mask.size(); ++w)
      if (a.mask[w] & ~b.mask[w]) return false;
    return true;
  };
  std::vector<std::uint32_t> depth(subs.size(), 0);
  std::uint32_t result = 0;
  for (std::size_t i = 1; i < subs.size(); ++i) {
    std::uint32_t best = 0;
    for (std::size_t j = 1; j < i; ++j)
      if (subs[j].size < subs[i].size && subs[i].size % subs[j].size == 0 &&
          subset(subs[j], subs[i]))
        best = std::max(best, depth[j]);
    depth[i] = best + 1;
    if (subs[i].size == n) result = depth[i];
  }

  // Sanity: mu <= ell <= sum of prime multiplicities of the order.
  std::uint32_t alpha = 0, m = n;
  for (std::uint32_t p = 2; p * p <= m; ++p)
    while (m % p == 0) { m /= p; ++alpha; }
  if (m > 1) ++alpha;
  if (result > alpha || mu(g) > result)
    throw Error("subgroup chain length inconsistent with order factorization");
  return result;
}

}  // namespace nielsen
