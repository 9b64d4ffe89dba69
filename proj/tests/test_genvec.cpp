#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "nielsen/catalog.hpp"
#include "nielsen/genvec.hpp"

using namespace nielsen;

namespace {

GenVector random_vector(const FiniteGroup& g, std::uint32_t n, std::mt19937_64& rng) {
  std::vector<Elem> e(n);
  for (Elem& x : e) x = Elem(rng() % g.order());
  return make_genvec(g, std::move(e));
}

}  // namespace

TEST_CASE("make_genvec validates") {
  const FiniteGroup g = build_group("dihedral:5");
  CHECK_THROWS_AS(make_genvec(g, {}), ArgumentError);
  CHECK_THROWS_AS(make_genvec(g, {0, 10}), ArgumentError);
  CHECK_THROWS_AS(make_genvec(g, {0, 1, 2, 3, 4, 5, 6, 7, 8}), ArgumentError);
  const GenVector v = make_genvec(g, {1, 5});
  CHECK(v.n() == 2);
  CHECK(v.group_fingerprint == g.fingerprint());
  CHECK(is_generating(g, v));
  CHECK(!is_generating(g, make_genvec(g, {1, 2})));

  const FiniteGroup other = build_group("cyclic:10");
  CHECK_THROWS_AS(is_generating(other, v), ArgumentError);
  CHECK_THROWS_AS(apply_move(other, v, NielsenMove{MoveKind::invert, 0, 0, 1}), ArgumentError);
}

TEST_CASE("moves act as documented") {
  const FiniteGroup g = build_group("sym:4");
  std::mt19937_64 rng(7);
  for (int it = 0; it < 50; ++it) {
    const GenVector v = random_vector(g, 3, rng);
    for (std::uint8_t j = 0; j < 3; ++j) {
      for (std::uint8_t k = 0; k < 3; ++k) {
        if (j == k) continue;
        for (std::int8_t sign : {std::int8_t(1), std::int8_t(-1)}) {
          const Elem tk = sign > 0 ? v.entries[k] : g.inv(v.entries[k]);
          GenVector r = apply_move(g, v, NielsenMove{MoveKind::right_mul, j, k, sign});
          CHECK(r.entries[j] == g.mul(v.entries[j], tk));
          CHECK(r.entries[k] == v.entries[k]);
          GenVector l = apply_move(g, v, NielsenMove{MoveKind::left_mul, j, k, sign});
          CHECK(l.entries[j] == g.mul(tk, v.entries[j]));
        }
        GenVector s = apply_move(g, v, NielsenMove{MoveKind::swap, j, k, 1});
        CHECK(s.entries[j] == v.entries[k]);
        CHECK(s.entries[k] == v.entries[j]);
      }
      GenVector i = apply_move(g, v, NielsenMove{MoveKind::invert, j, 0, 1});
      CHECK(i.entries[j] == g.inv(v.entries[j]));
    }
  }
}

TEST_CASE("moves validate slots") {
  const FiniteGroup g = build_group("sym:3");
  const GenVector v = make_genvec(g, {1, 2});
  CHECK_THROWS_AS(apply_move(g, v, NielsenMove{MoveKind::invert, 2, 0, 1}), ArgumentError);
  CHECK_THROWS_AS(apply_move(g, v, NielsenMove{MoveKind::right_mul, 0, 0, 1}), ArgumentError);
  CHECK_THROWS_AS(apply_move(g, v, NielsenMove{MoveKind::right_mul, 0, 2, 1}), ArgumentError);
  CHECK_THROWS_AS(apply_move(g, v, NielsenMove{MoveKind::right_mul, 0, 1, 0}), ArgumentError);
  CHECK_THROWS_AS(apply_move(g, v, NielsenMove{MoveKind::swap, 1, 1, 1}), ArgumentError);
}

TEST_CASE("every move composed with its inverse is the identity") {
  const FiniteGroup g = build_group("sym:4");
  const std::vector<NielsenMove> moves = enumerate_moves(3);
  std::mt19937_64 rng(11);
  for (int it = 0; it < 50; ++it) {
    const GenVector v = random_vector(g, 3, rng);
    for (const NielsenMove& m : moves) {
      CHECK(apply_move(g, apply_move(g, v, m), inverse_move(m)) == v);
      CHECK(apply_move(g, apply_move(g, v, inverse_move(m)), m) == v);
    }
  }
}

TEST_CASE("moves preserve the generated subgroup") {
  const FiniteGroup g = build_group("sym:4");
  const std::vector<NielsenMove> moves = enumerate_moves(3);
  std::mt19937_64 rng(13);
  GenVector v = make_genvec(g, {g.default_generators()[0], g.default_generators()[1], 0});
  REQUIRE(is_generating(g, v));
  for (int step = 0; step < 500; ++step) {
    v = apply_move(g, v, moves[rng() % moves.size()]);
    REQUIRE(is_generating(g, v));
  }
}

TEST_CASE("move enumeration counts and fixed order") {
  CHECK(enumerate_moves(1).size() == 1);
  CHECK(enumerate_moves(2).size() == 11);
  CHECK(enumerate_moves(3).size() == 30);
  CHECK(enumerate_moves(6).size() == 141);

  const std::vector<NielsenMove> m = enumerate_moves(2);
  CHECK(m.front() == NielsenMove{MoveKind::right_mul, 0, 1, 1});
  CHECK(m.back() == NielsenMove{MoveKind::invert, 1, 1, 1});
  // Duplicates would break neighbor generation.
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) CHECK(!(m[i] == m[j]));
}

TEST_CASE("trace replay") {
  const FiniteGroup g = build_group("dihedral:5");
  MoveTrace t;
  t.start = make_genvec(g, {1, 5});
  t.moves = {NielsenMove{MoveKind::right_mul, 1, 0, 1}, NielsenMove{MoveKind::invert, 0, 0, 1}};
  t.end = apply_move(g, apply_move(g, t.start, t.moves[0]), t.moves[1]);
  CHECK(replay_trace(g, t) == t.end);
  CHECK(verify_trace(g, t));
  t.end.entries[0] = 0;
  CHECK(!verify_trace(g, t));
}

TEST_CASE("stabilized appends identity slots") {
  const FiniteGroup g = build_group("dihedral:5");
  const GenVector v = make_genvec(g, {1, 5});
  const GenVector s = stabilized(v, 2);
  CHECK(s.entries == std::vector<Elem>{1, 5, 0, 0});
  CHECK(s.group_fingerprint == v.group_fingerprint);
}

TEST_CASE("packing is lexicographic") {
  const FiniteGroup g = build_group("dihedral:5");
  const Packing p = Packing::for_group(g, 3);
  CHECK(p.bits == 4);  // max index 9 needs 4 bits

  std::mt19937_64 rng(17);
  for (int it = 0; it < 200; ++it) {
    const GenVector a = random_vector(g, 3, rng);
    const GenVector b = random_vector(g, 3, rng);
    const std::uint64_t ca = p.pack(a.entries), cb = p.pack(b.entries);
    CHECK((ca < cb) == std::lexicographical_compare(a.entries.begin(), a.entries.end(),
                                                    b.entries.begin(), b.entries.end()));
    Elem out[3];
    p.unpack(ca, out);
    CHECK(std::equal(out, out + 3, a.entries.begin()));
  }
}

TEST_CASE("pack round trip through the convenience wrappers") {
  const FiniteGroup g = build_group("sym:4");
  const GenVector v = make_genvec(g, {7, 0, 23});
  const std::uint64_t code = pack_genvec(g, v);
  CHECK(unpack_genvec(g, 3, code) == v);
}

TEST_CASE("packing width cap") {
  // 9 bits per entry and 8 entries would need 72 bits.
  const FiniteGroup g = build_group("cyclic:300");
  CHECK_THROWS_AS(Packing::for_group(g, 8), CapacityError);
  CHECK(Packing::for_group(g, 7).bits == 9);
  // 256 elements pack exactly into 8 bits, so length 8 still fits.
  const FiniteGroup g256 = build_group("cyclic:256");
  CHECK(Packing::for_group(g256, 8).bits == 8);
}

TEST_CASE("single element groups still pack") {
  const FiniteGroup g = build_group("cyclic:1");
  const Packing p = Packing::for_group(g, 2);
  CHECK(p.bits == 1);
  CHECK(p.pack(std::vector<Elem>{0, 0}) == 0);
}
