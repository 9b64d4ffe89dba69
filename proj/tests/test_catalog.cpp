#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "nielsen/catalog.hpp"
#include "nielsen/group.hpp"

using namespace nielsen;

namespace {

std::multiset<std::uint32_t> class_sizes(const FiniteGroup& g) {
  const ConjugacyClasses cc = conjugacy_classes(g);
  return {cc.class_size.begin(), cc.class_size.end()};
}

std::map<std::uint32_t, std::uint32_t> order_census(const FiniteGroup& g) {
  std::map<std::uint32_t, std::uint32_t> census;
  for (std::uint32_t e = 0; e < g.order(); ++e) ++census[g.element_order(Elem(e))];
  return census;
}

}  // namespace

TEST_CASE("spec parsing and canonical text") {
  CHECK(parse_group_spec("cyclic:12").canonical == "cyclic:12");
  CHECK(parse_group_spec(" dihedral : 7 ").canonical == "dihedral:7");
  CHECK(parse_group_spec("quaternion").canonical == "quaternion");
  CHECK(parse_group_spec("abelian:2,4").canonical == "abelian:4,2");
  CHECK(parse_group_spec("abelian:6,4").canonical == "abelian:12,2");
  CHECK(parse_group_spec("abelian:2,3,5").canonical == "abelian:30");
  CHECK(parse_group_spec("abelian:1").canonical == "abelian:1");
  CHECK(parse_group_spec("perm:(2 1)").canonical == "perm:(1 2)");
  CHECK(parse_group_spec("perm:(3 4 5)(2 1)").canonical == "perm:(1 2)(3 4 5)");
  CHECK(parse_group_spec("perm:(1)").canonical == "perm:(1)");
}

TEST_CASE("spec parse errors carry positions") {
  CHECK_THROWS_AS(parse_group_spec(""), ParseError);
  CHECK_THROWS_AS(parse_group_spec("frobnitz:3"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("cyclic"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("cyclic:"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("cyclic:0"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("cyclic:3,4"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("dihedral:1"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("abelian:"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("abelian:4,0"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("quaternion:2"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("psl2:6"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("perm:"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("perm:(0 1)"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("perm:(1 1)"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("perm:(1 2"), ParseError);

  try {
    parse_group_spec("cyclic:x");
  } catch (const ParseError& e) {
    CHECK(e.position == 7);
  }
}

TEST_CASE("catalog orders") {
  const struct {
    const char* spec;
    std::uint32_t order;
  } cases[] = {{"cyclic:1", 1},    {"cyclic:24", 24}, {"abelian:4,2", 8}, {"abelian:12,2,2", 48},
               {"dihedral:2", 4},  {"dihedral:9", 18}, {"quaternion", 8},  {"sym:1", 1},
               {"sym:4", 24},      {"alt:3", 3},       {"alt:5", 60},      {"psl2:3", 12},
               {"psl2:4", 60},     {"psl2:5", 60},     {"psl2:7", 168},    {"psl2:8", 504},
               {"psl2:9", 360},    {"bgroup", 4096},   {"perm:(1 2)(3 4),(1 3)", 8}};
  for (const auto& [spec, order] : cases) {
    const FiniteGroup g = build_group(spec);
    CHECK(g.order() == order);
    CHECK(generates(g, g.default_generators()));
  }
}

TEST_CASE("spec text rebuilds the same group") {
  for (const char* spec : {"cyclic:9", "abelian:2,6", "dihedral:7", "quaternion", "sym:4",
                           "alt:5", "psl2:7", "perm:(1 2 3),(1 2)"}) {
    const FiniteGroup g = build_group(spec);
    const FiniteGroup h = build_group(g.spec_text());
    CHECK(g.fingerprint() == h.fingerprint());
    CHECK(g.spec_text() == h.spec_text());
  }
}

TEST_CASE("abelian groups are abelian, cyclic groups cyclic") {
  const FiniteGroup g = build_group("abelian:12,2");
  for (std::uint32_t a = 0; a < g.order(); ++a)
    for (std::uint32_t b = 0; b < g.order(); ++b)
      CHECK(g.mul(Elem(a), Elem(b)) == g.mul(Elem(b), Elem(a)));
  std::uint32_t max_order = 0;
  for (std::uint32_t a = 0; a < g.order(); ++a)
    max_order = std::max(max_order, g.element_order(Elem(a)));
  CHECK(max_order == 12);  // largest invariant factor

  const FiniteGroup c = build_group("cyclic:15");
  CHECK(c.element_order(c.default_generators()[0]) == 15);
}

TEST_CASE("dihedral structure") {
  const FiniteGroup g = build_group("dihedral:9");
  const Elem a = g.default_generators()[0], b = g.default_generators()[1];
  // One generator of order 2 and one of order 9 with a b a^-1 = b^-1.
  const Elem refl = g.element_order(a) == 2 ? a : b;
  const Elem rot = g.element_order(a) == 2 ? b : a;
  CHECK(g.element_order(refl) == 2);
  CHECK(g.element_order(rot) == 9);
  CHECK(g.conjugate(rot, refl) == g.inv(rot));
  CHECK(order_census(g) == std::map<std::uint32_t, std::uint32_t>{
                               {1, 1}, {2, 9}, {3, 2}, {9, 6}});
}

TEST_CASE("quaternion structure") {
  const FiniteGroup g = build_group("quaternion");
  CHECK(order_census(g) == std::map<std::uint32_t, std::uint32_t>{{1, 1}, {2, 1}, {4, 6}});
  // The unique involution is central.
  Elem minus_one = 0;
  for (std::uint32_t e = 1; e < 8; ++e)
    if (g.element_order(Elem(e)) == 2) minus_one = Elem(e);
  for (std::uint32_t e = 0; e < 8; ++e)
    CHECK(g.mul(minus_one, Elem(e)) == g.mul(Elem(e), minus_one));
  // i^2 = j^2 = -1 for any two order-4 generators.
  const Elem i = g.default_generators()[0];
  CHECK(g.power(i, 2) == minus_one);
}

TEST_CASE("symmetric and alternating censuses") {
  CHECK(order_census(build_group("sym:4")) ==
        std::map<std::uint32_t, std::uint32_t>{{1, 1}, {2, 9}, {3, 8}, {4, 6}});
  CHECK(order_census(build_group("alt:5")) ==
        std::map<std::uint32_t, std::uint32_t>{{1, 1}, {2, 15}, {3, 20}, {5, 24}});
  CHECK(class_sizes(build_group("alt:5")) == std::multiset<std::uint32_t>{1, 12, 12, 15, 20});
  CHECK(class_sizes(build_group("sym:3")) == class_sizes(build_group("dihedral:3")));
}

TEST_CASE("element names use cycle notation") {
  const FiniteGroup g = build_group("sym:3");
  REQUIRE(g.has_element_names());
  std::set<std::string> names;
  for (std::uint32_t e = 0; e < 6; ++e) names.insert(g.element_name(Elem(e)));
  CHECK(names == std::set<std::string>{"()", "(1 2)", "(1 3)", "(2 3)", "(1 2 3)", "(1 3 2)"});
}

TEST_CASE("projective special linear groups") {
  CHECK_THROWS_AS(build_psl2(2), ArgumentError);
  CHECK_THROWS_AS(build_psl2(6), ArgumentError);
  CHECK_THROWS_AS(build_psl2(32), ArgumentError);

  // The classical small coincidences.
  CHECK(class_sizes(build_group("psl2:3")) == class_sizes(build_group("alt:4")));
  CHECK(class_sizes(build_group("psl2:4")) == class_sizes(build_group("alt:5")));
  CHECK(class_sizes(build_group("psl2:5")) == class_sizes(build_group("alt:5")));
  CHECK(class_sizes(build_group("psl2:9")) == class_sizes(build_group("alt:6")));
  CHECK(class_sizes(build_group("psl2:9")) ==
        std::multiset<std::uint32_t>{1, 40, 40, 45, 72, 72, 90});

  // PSL(2,7): 6 classes, the largest a 56-element class of order-3 elements.
  const FiniteGroup psl7 = build_group("psl2:7");
  CHECK(conjugacy_classes(psl7).count() == 6);
  CHECK(order_census(psl7) ==
        std::map<std::uint32_t, std::uint32_t>{{1, 1}, {2, 21}, {3, 56}, {4, 42}, {7, 48}});
}

TEST_CASE("bgroup normal form and presentation") {
  const FiniteGroup g = build_group("bgroup");
  const Elem x = g.default_generators()[0];
  const Elem y = g.default_generators()[1];
  const Elem z = g.default_generators()[2];
  CHECK(x == bgroup_index({1, 0, 0}));
  CHECK(y == bgroup_index({0, 1, 0}));
  CHECK(z == bgroup_index({0, 0, 1}));
  CHECK(g.power(x, 8) == 0);
  CHECK(g.power(y, 8) == 0);
  CHECK(g.power(z, 64) == 0);
  CHECK(g.element_order(z) == 64);
  CHECK(g.commutator(x, y) == g.power(z, 8));

  for (std::uint32_t e = 0; e < 4096; e += 37) {
    const BTriple t = bgroup_decode(Elem(e));
    CHECK(bgroup_index(t) == e);
    CHECK(bgroup_index(bgroup_multiply(t, bgroup_inverse(t))) == 0);
    CHECK(g.inv(Elem(e)) == bgroup_index(bgroup_inverse(t)));
  }
}

TEST_CASE("perm groups build from explicit generators") {
  // <(1 2 3 4)> is C4; <(1 2),(3 4)> is V4; <(1 2 3),(1 2)> is S3.
  CHECK(build_group("perm:(1 2 3 4)").order() == 4);
  const FiniteGroup v4 = build_group("perm:(1 2),(3 4)");
  CHECK(v4.order() == 4);
  CHECK(order_census(v4) == std::map<std::uint32_t, std::uint32_t>{{1, 1}, {2, 3}});
  const FiniteGroup s3 = build_group("perm:(1 2 3),(1 2)");
  CHECK(class_sizes(s3) == class_sizes(build_group("sym:3")));
  CHECK(build_group("perm:(1)").order() == 1);
}
