#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace msc2;
using namespace th;

namespace {

ParamVector pv(const FieldSpec& s, std::initializer_list<std::int64_t> vals) {
  ParamVector out;
  for (auto v : vals) out.push_back(fe(s, v));
  return out;
}

GL2Element random_gl2(const FieldSpec& s, SplitMix64& rng) {
  for (;;) {
    auto g = GL2Element::make(random_element(s, rng), random_element(s, rng),
                              random_element(s, rng), random_element(s, rng));
    if (g) return *g;
  }
}

Msc random_msc(const FieldSpec& s, SplitMix64& rng) {
  Mat m(s, 2, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j) m.at(i, j) = random_element(s, rng);
  return Msc{m};
}

}  // namespace

TEST_CASE("find_isomorphism examples") {
  const auto s = GF(5);
  SplitMix64 rng(101);
  {
    const Msc a = random_msc(s, rng);
    const auto g0 = random_gl2(s, rng);
    const Msc b = a.transformed(g0);
    const auto w = find_isomorphism(a, b);
    REQUIRE(w.has_value());
    REQUIRE(a.transformed(*w) == b);
  }
  {
    const FamilyId a2{2, CharClass::NotTwoThree};
    const Msc x = build(a2, pv(s, {0, 1, 0}), s);
    const Msc y = build(a2, pv(s, {0, -1, 0}), s);
    const auto w = find_isomorphism(x, y);
    REQUIRE(w.has_value());
    REQUIRE(x.transformed(*w) == y);
  }
  {
    const auto f3 = GF(3);
    const Msc a10 = build(FamilyId{10, CharClass::Three}, {}, f3);
    const Msc a11 = build(FamilyId{11, CharClass::Three}, {}, f3);
    REQUIRE(!find_isomorphism(a10, a11).has_value());  // exhausts all 48 elements
  }
  REQUIRE_THROWS_AS(
      find_isomorphism(random_msc(GF(5), rng), random_msc(GF(7), rng)), SpecMismatch);
}

TEST_CASE("witnesses invert") {
  SplitMix64 rng(103);
  const auto s = GF(5);
  for (int it = 0; it < 15; ++it) {
    const Msc a = random_msc(s, rng);
    const Msc b = a.transformed(random_gl2(s, rng));
    const auto w = find_isomorphism(a, b);
    REQUIRE(w.has_value());
    REQUIRE(b.transformed(inv2(*w)) == a);
  }
}

TEST_CASE("orbit examples") {
  const auto s = GF(3);
  const Msc a12 = build(FamilyId{12, CharClass::Three}, {}, s);
  const auto orb = orbit(a12);
  REQUIRE(orb.size() == 8);  // 48 / |Aut| = 48 / 6
  bool contains_self = false;
  for (const auto& m : orb) contains_self = contains_self || m == a12;
  REQUIRE(contains_self);
  REQUIRE(gl2_order(3) % orb.size() == 0);

  SplitMix64 rng(107);
  for (int it = 0; it < 5; ++it) {
    const Msc a = random_msc(s, rng);
    REQUIRE(gl2_order(3) % orbit(a).size() == 0);
  }
}

TEST_CASE("orbit-stabilizer identity") {
  const auto f3 = GF(3);
  {
    const Msc a = build(FamilyId{12, CharClass::Three}, {}, f3);
    REQUIRE(orbit(a).size() == 8);
    REQUIRE(automorphisms_bruteforce(a).size() == 6);
    REQUIRE(orbit_stabilizer_check(a));
  }
  {
    const Msc a = build(FamilyId{1, CharClass::Three}, pv(f3, {1, 0, 0, 1}), f3);
    REQUIRE(orbit(a).size() == 48);
    REQUIRE(automorphisms_bruteforce(a).size() == 1);
    REQUIRE(orbit_stabilizer_check(a));
  }
  SplitMix64 rng(109);
  for (int it = 0; it < 10; ++it) REQUIRE(orbit_stabilizer_check(random_msc(GF(2), rng)));
}

TEST_CASE("orbit preconditions") {
  SplitMix64 rng(113);
  REQUIRE_THROWS_AS(orbit(random_msc(GF(11), rng)), CapExceeded);  // default orbit cap is 7
  const Msc a = build(FamilyId{12, CharClass::NotTwoThree}, {}, Q());
  REQUIRE_THROWS_AS(orbit(a), InfiniteField);
}

TEST_CASE("distinct catalog cells are non-isomorphic (sampled)") {
  struct ClassSetup {
    FieldSpec s;
    int pairs;
  };
  for (const auto& [s, pairs] : {ClassSetup{GF(3), 10}, ClassSetup{GF(2), 10}, ClassSetup{GF(5), 10}}) {
    const CharClass cc = char_class_of(s);
    SplitMix64 rng(127 + *s.order());
    int made = 0;
    while (made < pairs) {
      const FamilyId fa{static_cast<int>(rng.below(12)) + 1, cc};
      const FamilyId fb{static_cast<int>(rng.below(12)) + 1, cc};
      ParamVector pa, pb;
      for (int j = 0; j < arity(fa); ++j) pa.push_back(random_element(s, rng));
      for (int j = 0; j < arity(fb); ++j) pb.push_back(random_element(s, rng));
      if (fa == fb && pa == pb) continue;
      if (fa == fb && has_sign_twin(fa) && twin_params(fa, pa) == pb) continue;
      const Msc a = build(fa, pa, s);
      const Msc b = build(fb, pb, s);
      if (a == b) continue;
      INFO(fa.name() << params_to_string(fa, pa) << " vs " << fb.name()
                     << params_to_string(fb, pb) << " over " << s.to_string());
      REQUIRE(!find_isomorphism(a, b).has_value());
      ++made;
    }
  }
}
