#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "nielsen/catalog.hpp"
#include "nielsen/group.hpp"

using namespace nielsen;

namespace {

std::multiset<std::uint32_t> sizes_of(const ConjugacyClasses& cc) {
  return {cc.class_size.begin(), cc.class_size.end()};
}

}  // namespace

TEST_CASE("table validation rejects a broken identity row") {
  // Row for element 1 maps 1*0 to 0, so 0 is not a two-sided identity.
  CHECK_THROWS_AS(FiniteGroup::from_mul_table("bad", "bad", 2, {0, 1, 0, 1}, {1}),
                  ArgumentError);
}

TEST_CASE("table validation rejects non-associative tables") {
  // Latin square with identity 0 that fails (1*1)*2 == 1*(1*2).
  CHECK_THROWS_AS(FiniteGroup::from_mul_table(
                      "bad", "bad", 5,
                      {0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0},
                      {1}),
                  ArgumentError);
}

TEST_CASE("element arithmetic on D10") {
  const FiniteGroup g = build_group("dihedral:5");
  REQUIRE(g.order() == 10);

  // 0 is the identity, 1..4 the nontrivial rotations, 5..9 reflections.
  CHECK(g.element_order(0) == 1);
  for (Elem r = 1; r <= 4; ++r) CHECK(g.element_order(r) == 5);
  for (Elem s = 5; s <= 9; ++s) CHECK(g.element_order(s) == 2);

  for (std::uint32_t a = 0; a < 10; ++a) {
    CHECK(g.mul(Elem(a), g.inv(Elem(a))) == 0);
    CHECK(g.mul(g.inv(Elem(a)), Elem(a)) == 0);
    CHECK(g.power(Elem(a), 0) == 0);
    CHECK(g.power(Elem(a), 1) == a);
    CHECK(g.power(Elem(a), -1) == g.inv(Elem(a)));
    CHECK(g.power(Elem(a), g.element_order(Elem(a))) == 0);
  }
  CHECK(g.power(1, 7) == g.power(1, 2));
  CHECK(g.power(1, -3) == g.power(1, 2));

  for (std::uint32_t a = 0; a < 10; ++a)
    for (std::uint32_t h = 0; h < 10; ++h) {
      CHECK(g.conjugate(Elem(a), Elem(h)) == g.mul(g.mul(Elem(h), Elem(a)), g.inv(Elem(h))));
      CHECK(g.commutator(Elem(a), Elem(h)) ==
            g.mul(g.mul(Elem(a), Elem(h)), g.mul(g.inv(Elem(a)), g.inv(Elem(h)))));
    }
}

TEST_CASE("closure and generates") {
  const FiniteGroup g = build_group("dihedral:5");
  CHECK(closure(g, std::vector<Elem>{}).size == 1);
  CHECK(closure(g, std::vector<Elem>{1}).size == 5);
  CHECK(closure(g, std::vector<Elem>{5}).size == 2);
  CHECK(closure(g, std::vector<Elem>{1, 5}).size == 10);
  CHECK(generates(g, std::vector<Elem>{2, 7}));
  CHECK(!generates(g, std::vector<Elem>{1, 4}));
  CHECK_THROWS_AS(closure(g, std::vector<Elem>{10}), ArgumentError);

  const Subgroup rot = closure(g, std::vector<Elem>{1});
  for (Elem e = 0; e < 10; ++e) CHECK(rot.contains(e) == (e <= 4));
}

TEST_CASE("conjugacy classes of D10 and S3") {
  const FiniteGroup d10 = build_group("dihedral:5");
  const ConjugacyClasses cc = conjugacy_classes(d10);
  REQUIRE(cc.count() == 4);
  CHECK(sizes_of(cc) == std::multiset<std::uint32_t>{1, 2, 2, 5});
  // Rotations pair up with their inverses; all reflections are conjugate.
  CHECK(cc.class_index[1] == cc.class_index[4]);
  CHECK(cc.class_index[2] == cc.class_index[3]);
  CHECK(cc.class_index[1] != cc.class_index[2]);
  for (Elem s = 6; s <= 9; ++s) CHECK(cc.class_index[s] == cc.class_index[5]);

  // class_index is consistent with actual conjugation orbits.
  for (std::uint32_t a = 0; a < 10; ++a)
    for (std::uint32_t h = 0; h < 10; ++h)
      CHECK(cc.class_index[d10.conjugate(Elem(a), Elem(h))] == cc.class_index[a]);

  CHECK(sizes_of(conjugacy_classes(build_group("sym:3"))) ==
        std::multiset<std::uint32_t>{1, 2, 3});
  CHECK(conjugacy_classes(build_group("cyclic:12")).count() == 12);
}

TEST_CASE("centers") {
  CHECK(center(build_group("dihedral:5")).size == 1);
  CHECK(center(build_group("dihedral:6")).size == 2);
  CHECK(center(build_group("quaternion")).size == 2);
  CHECK(center(build_group("cyclic:12")).size == 12);
  CHECK(center(build_group("sym:4")).size == 1);
}

TEST_CASE("automorphism group orders") {
  const struct {
    const char* spec;
    std::size_t count;
  } cases[] = {{"cyclic:12", 4}, {"sym:3", 6},  {"abelian:2,2", 6}, {"quaternion", 24},
               {"cyclic:5", 4},  {"alt:5", 120}};
  for (const auto& [spec, count] : cases) {
    const FiniteGroup g = build_group(spec);
    const std::vector<Automorphism> auts = automorphisms(g);
    CHECK(auts.size() == count);
    // Each is a homomorphism and a bijection, and no two coincide.
    for (const Automorphism& a : auts) {
      std::set<Elem> image;
      for (std::uint32_t x = 0; x < g.order(); ++x) image.insert(a(Elem(x)));
      CHECK(image.size() == g.order());
      for (std::uint32_t x = 0; x < g.order(); ++x)
        for (std::uint32_t y = 0; y < g.order(); ++y)
          CHECK(a(g.mul(Elem(x), Elem(y))) == g.mul(a(Elem(x)), a(Elem(y))));
    }
    std::set<std::vector<Elem>> distinct;
    for (const Automorphism& a : auts) distinct.insert(a.image);
    CHECK(distinct.size() == auts.size());
  }
}

TEST_CASE("automorphism group of A6 has order 1440") {
  CHECK(automorphisms(build_group("alt:6")).size() == 1440);
}

TEST_CASE("word table reaches everything and replays") {
  const FiniteGroup g = build_group("dihedral:5");
  const std::vector<Elem> gens = {1, 5};
  const WordTable wt = WordTable::build(g, gens);
  CHECK(wt.reached_count() == 10);
  for (Elem e = 0; e < 10; ++e) {
    REQUIRE(wt.reaches(e));
    Elem acc = 0;
    for (std::uint8_t letter : wt.word(e)) acc = g.mul(acc, gens[letter]);
    CHECK(acc == e);
  }
  CHECK(wt.word(0).empty());

  // A non-generating seed leaves the rest unreached.
  const WordTable partial = WordTable::build(g, std::vector<Elem>{1});
  CHECK(partial.reached_count() == 5);
  CHECK(!partial.reaches(5));
}

TEST_CASE("minimal generating vectors and mu") {
  const struct {
    const char* spec;
    std::uint32_t m;
  } cases[] = {{"cyclic:1", 1},  {"cyclic:12", 1},      {"dihedral:5", 2}, {"abelian:2,2", 2},
               {"quaternion", 2}, {"sym:4", 2},         {"alt:4", 2},      {"abelian:2,2,2", 3},
               {"alt:5", 2},      {"abelian:12,2,2", 3}};
  for (const auto& [spec, m] : cases) {
    const FiniteGroup g = build_group(spec);
    const auto [len, vec] = minimal_generating_vector(g);
    CHECK(len == m);
    CHECK(mu(g) == m);
    REQUIRE(vec.size() == m);
    CHECK(generates(g, vec));
  }
}

TEST_CASE("subgroup lattices") {
  CHECK(subgroup_lattice(build_group("cyclic:12")).size() == 6);
  CHECK(subgroup_lattice(build_group("sym:3")).size() == 6);
  CHECK(subgroup_lattice(build_group("quaternion")).size() == 6);
  CHECK(subgroup_lattice(build_group("dihedral:5")).size() == 8);
  CHECK(subgroup_lattice(build_group("alt:4")).size() == 10);
  CHECK(subgroup_lattice(build_group("sym:4")).size() == 30);

  // Every listed subgroup really is closed and generated by its listed set.
  const FiniteGroup g = build_group("sym:4");
  for (const Subgroup& s : subgroup_lattice(g)) {
    const Subgroup re = closure(g, s.generators);
    CHECK(re == s);
    CHECK(re.size == s.size);
  }
}

TEST_CASE("longest chains of subgroups") {
  const struct {
    const char* spec;
    std::uint32_t l;
  } cases[] = {{"cyclic:1", 0}, {"cyclic:4", 2},     {"cyclic:8", 3},  {"cyclic:12", 3},
               {"sym:3", 2},    {"dihedral:5", 2},   {"quaternion", 3}, {"alt:4", 3},
               {"sym:4", 4},    {"abelian:5,5", 2},  {"cyclic:30", 3}, {"abelian:6,6", 4}};
  for (const auto& [spec, l] : cases) CHECK(ell(build_group(spec)) == l);
}

TEST_CASE("fingerprints are stable and discriminating") {
  const FiniteGroup a = build_group("cyclic:4");
  const FiniteGroup b = build_group("cyclic:4");
  const FiniteGroup c = build_group("abelian:2,2");
  CHECK(a.fingerprint() == b.fingerprint());
  CHECK(a.fingerprint() != c.fingerprint());
  CHECK(a.fingerprint() != 0);
}

TEST_CASE("caps") {
  CHECK_THROWS_AS(build_group("cyclic:65536"), Error);
  CHECK_THROWS_AS(subgroup_lattice(build_group("psl2:13")), CapacityError);  // order 1092
  CHECK_THROWS_AS(ell(build_group("psl2:13")), CapacityError);
  CHECK_THROWS_AS(automorphisms(build_group("psl2:13")), CapacityError);
}
