#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "nielsen/catalog.hpp"
#include "nielsen/orbit.hpp"

using namespace nielsen;

namespace {

// Independent oracle: union-find over all n-tuples, edges from the direct
// definition of the moves, no packing and no frontier search.
struct BruteClasses {
  std::uint64_t generating = 0;
  std::vector<std::uint64_t> sizes;  // descending
  std::uint64_t count() const { return sizes.size(); }
};

struct Dsu {
  std::vector<std::uint32_t> parent;
  explicit Dsu(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = std::uint32_t(i);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

BruteClasses brute_classify(const FiniteGroup& g, std::uint32_t n) {
  const std::uint32_t N = g.order();
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < n; ++i) total *= N;

  std::vector<Elem> e(n);
  auto decode = [&](std::uint64_t idx) {
    for (std::uint32_t i = n; i-- > 0;) {
      e[i] = Elem(idx % N);
      idx /= N;
    }
  };
  auto encode = [&]() {
    std::uint64_t idx = 0;
    for (std::uint32_t i = 0; i < n; ++i) idx = idx * N + e[i];
    return idx;
  };

  std::vector<std::uint8_t> gen(total);
  for (std::uint64_t s = 0; s < total; ++s) {
    decode(s);
    gen[s] = generates(g, e) ? 1 : 0;
  }

  Dsu dsu(total);
  for (std::uint64_t s = 0; s < total; ++s) {
    if (!gen[s]) continue;
    for (std::uint32_t j = 0; j < n; ++j) {
      decode(s);
      const Elem old = e[j];
      for (std::uint32_t k = 0; k < n; ++k) {
        if (k == j) continue;
        e[j] = g.mul(old, e[k]);
        dsu.unite(std::uint32_t(s), std::uint32_t(encode()));
        e[j] = g.mul(old, g.inv(e[k]));
        dsu.unite(std::uint32_t(s), std::uint32_t(encode()));
        e[j] = g.mul(e[k], old);
        dsu.unite(std::uint32_t(s), std::uint32_t(encode()));
        e[j] = g.mul(g.inv(e[k]), old);
        dsu.unite(std::uint32_t(s), std::uint32_t(encode()));
        e[j] = old;
        std::swap(e[j], e[k]);
        dsu.unite(std::uint32_t(s), std::uint32_t(encode()));
        std::swap(e[j], e[k]);
      }
      e[j] = g.inv(old);
      dsu.unite(std::uint32_t(s), std::uint32_t(encode()));
    }
  }

  std::map<std::uint32_t, std::uint64_t> buckets;
  BruteClasses out;
  for (std::uint64_t s = 0; s < total; ++s)
    if (gen[s]) {
      ++out.generating;
      ++buckets[dsu.find(std::uint32_t(s))];
    }
  for (const auto& [root, size] : buckets) out.sizes.push_back(size);
  std::sort(out.sizes.rbegin(), out.sizes.rend());
  return out;
}

std::vector<std::uint64_t> engine_sizes(const OrbitPartition& p) {
  std::vector<std::uint64_t> sizes;
  for (const OrbitClass& c : p.classes) sizes.push_back(c.size);
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

}  // namespace

TEST_CASE("classify matches the brute-force oracle") {
  for (const char* spec : {"dihedral:5", "alt:5", "cyclic:12", "abelian:4,2", "sym:3"}) {
    const FiniteGroup g = build_group(spec);
    const BruteClasses oracle = brute_classify(g, 2);
    const OrbitPartition p = classify(g, 2);
    CHECK(p.classes.size() == oracle.count());
    CHECK(p.total_generating == oracle.generating);
    CHECK(engine_sizes(p) == oracle.sizes);
  }
}

TEST_CASE("one-generator classes of cyclic groups") {
  // mu = 1; classes pair each generator with its inverse.
  const std::uint64_t expected[] = {1, 1, 1, 1, 2, 1, 3, 2, 3, 2, 5, 2,
                                    6, 3, 4, 4, 8, 3, 9, 4, 6, 5, 11, 4};
  for (std::uint32_t k = 1; k <= 24; ++k) {
    const FiniteGroup g = build_group("cyclic:" + std::to_string(k));
    CHECK(classify(g, 1).classes.size() == expected[k - 1]);
  }
}

TEST_CASE("representatives are class minima, sorted and generating") {
  const FiniteGroup g = build_group("dihedral:6");
  const OrbitPartition p = classify(g, 2);
  REQUIRE(!p.classes.empty());
  CHECK(p.n == 2);
  CHECK(!p.weak);
  CHECK(p.group_fingerprint == g.fingerprint());
  for (std::size_t i = 1; i < p.classes.size(); ++i)
    CHECK(p.classes[i - 1].representative < p.classes[i].representative);
  std::uint64_t total = 0;
  for (const OrbitClass& c : p.classes) {
    total += c.size;
    const GenVector rep = unpack_genvec(g, 2, c.representative);
    CHECK(is_generating(g, rep));
    // No orbit member packs below its representative.
    const OrbitSet o = orbit(g, rep);
    CHECK(*std::min_element(o.codes.begin(), o.codes.end()) == c.representative);
    CHECK(o.codes.size() == c.size);
  }
  CHECK(total == p.total_generating);
}

TEST_CASE("weak classification merges automorphic classes") {
  const FiniteGroup a5 = build_group("alt:5");
  CHECK(classify(a5, 2).classes.size() == 3);
  CHECK(weak_classify(a5, 2).classes.size() == 2);

  const FiniteGroup d10 = build_group("dihedral:5");
  CHECK(classify(d10, 2).classes.size() == 2);
  CHECK(weak_classify(d10, 2).classes.size() == 1);

  const OrbitPartition w = weak_classify(d10, 2);
  CHECK(w.weak);
  CHECK(w.total_generating == 60);
  CHECK(w.classes[0].size == 60);
}

TEST_CASE("are_equivalent agrees with the partition") {
  const FiniteGroup g = build_group("dihedral:5");
  const OrbitPartition p = classify(g, 2, OrbitOptions{0, true});
  REQUIRE(p.membership);
  const GenVector a = unpack_genvec(g, 2, p.classes[0].representative);
  const GenVector b = unpack_genvec(g, 2, p.classes[1].representative);
  CHECK(are_equivalent(g, a, a).equivalent);
  CHECK(!are_equivalent(g, a, b).equivalent);

  // Sample members of class 0 and confirm both directions.
  const OrbitSet o = orbit(g, a);
  for (std::size_t i = 0; i < o.codes.size(); i += 7) {
    const GenVector m = unpack_genvec(g, 2, o.codes[i]);
    CHECK(p.membership->class_of_code(o.codes[i]) == 0);
    CHECK(are_equivalent(g, a, m).equivalent);
  }
}

TEST_CASE("equivalence traces replay to the target") {
  const FiniteGroup g = build_group("dihedral:5");
  const GenVector v = make_genvec(g, {1, 5});
  const GenVector w = make_genvec(g, {4, 8});
  const EquivalenceResult r = are_equivalent(g, v, w, true);
  REQUIRE(r.equivalent);
  REQUIRE(r.trace.has_value());
  CHECK(r.trace->start == v);
  CHECK(r.trace->end == w);
  CHECK(verify_trace(g, *r.trace));
}

TEST_CASE("are_equivalent rejects non-generating input") {
  const FiniteGroup g = build_group("dihedral:5");
  CHECK_THROWS_AS(are_equivalent(g, make_genvec(g, {1, 2}), make_genvec(g, {1, 5})),
                  ArgumentError);
  CHECK_THROWS_AS(are_equivalent(g, make_genvec(g, {1, 5}), make_genvec(g, {1, 5, 0})),
                  ArgumentError);
}

TEST_CASE("membership table classifies every state") {
  const FiniteGroup g = build_group("dihedral:5");
  const OrbitPartition p = classify(g, 2, OrbitOptions{0, true});
  REQUIRE(p.membership);
  const Packing pk = Packing::for_group(g, 2);
  std::vector<std::uint64_t> per_class(p.classes.size(), 0);
  std::uint64_t non_generating = 0;
  for (std::uint32_t a = 0; a < 10; ++a)
    for (std::uint32_t b = 0; b < 10; ++b) {
      const Elem e[2] = {Elem(a), Elem(b)};
      const std::int32_t id = p.membership->class_of_code(pk.pack(e));
      if (id < 0) {
        ++non_generating;
        CHECK(!generates(g, e));
      } else {
        REQUIRE(std::size_t(id) < per_class.size());
        ++per_class[id];
        CHECK(generates(g, e));
      }
    }
  CHECK(non_generating == 100 - p.total_generating);
  for (std::size_t i = 0; i < p.classes.size(); ++i) CHECK(per_class[i] == p.classes[i].size);
}

TEST_CASE("redundancy detection") {
  const FiniteGroup g = build_group("dihedral:5");
  CHECK(!is_redundant(g, make_genvec(g, {1, 5})).redundant);  // mu = 2 forbids dropping a slot

  const RedundancyResult r = is_redundant(g, make_genvec(g, {1, 5, 7}), true);
  REQUIRE(r.redundant);
  REQUIRE(r.trace.has_value());
  CHECK(verify_trace(g, *r.trace));
  CHECK(std::count(r.trace->end.entries.begin(), r.trace->end.entries.end(), Elem(0)) >= 1);
}

TEST_CASE("thread count does not change the result") {
  const FiniteGroup g = build_group("dihedral:6");
  const OrbitPartition p1 = classify(g, 3, OrbitOptions{1, false});
  const OrbitPartition p4 = classify(g, 3, OrbitOptions{4, false});
  REQUIRE(p1.classes.size() == p4.classes.size());
  for (std::size_t i = 0; i < p1.classes.size(); ++i) {
    CHECK(p1.classes[i].representative == p4.classes[i].representative);
    CHECK(p1.classes[i].size == p4.classes[i].size);
  }
  CHECK(p1.total_generating == p4.total_generating);
}

TEST_CASE("orbit sets answer membership queries") {
  const FiniteGroup g = build_group("dihedral:5");
  const GenVector v = make_genvec(g, {1, 5});
  const OrbitSet o = orbit(g, v);
  CHECK(o.n == 2);
  CHECK(o.seed == pack_genvec(g, v));
  CHECK(std::is_sorted(o.codes.begin(), o.codes.end()));
  CHECK(o.contains(o.seed));
  CHECK(o.codes.size() == 30);
  // Complement check against the other class.
  const OrbitSet other = orbit(g, make_genvec(g, {2, 5}));
  for (std::uint64_t c : other.codes) CHECK(!o.contains(c));
}

TEST_CASE("state space caps trip cleanly") {
  const FiniteGroup g = build_group("cyclic:600");
  CHECK_THROWS_AS(classify(g, 4), CapacityError);  // 600^4 states
  CHECK_THROWS_AS(classify(build_group("cyclic:1"), 9), ArgumentError);  // length cap
}

TEST_CASE("empty partitions below mu") {
  const FiniteGroup g = build_group("dihedral:5");
  const OrbitPartition p = classify(g, 1);
  CHECK(p.classes.empty());
  CHECK(p.total_generating == 0);
}
