#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace msc2;
using namespace th;

namespace {

FamilyId fam(int index, const FieldSpec& s) { return FamilyId{index, char_class_of(s)}; }

ParamVector pv(const FieldSpec& s, std::initializer_list<std::int64_t> vals) {
  ParamVector out;
  for (auto v : vals) out.push_back(fe(s, v));
  return out;
}

}  // namespace

TEST_CASE("build examples") {
  // 1/3 = 2, 2/3 = 4, -1/3 = 3 over GF(5)
  REQUIRE(build(fam(9, GF(5)), {}, GF(5)) == msc_of(GF(5), {{{2, 0, 0, 0}, {1, 4, 3, 0}}}));
  REQUIRE(build(fam(12, GF(3)), {}, GF(3)) == msc_of(GF(3), {{{0, 0, 0, 0}, {1, 0, 0, 0}}}));
  REQUIRE_THROWS_AS(build(FamilyId{9, CharClass::NotTwoThree}, {}, GF(3)), CharMismatch);
}

TEST_CASE("A9 exists in characteristic 3 as its own matrix") {
  // (the char-3 catalog replaces the 1/3-matrix by [[0,1,1,0],[1,0,0,-1]])
  REQUIRE(build(fam(9, GF(3)), {}, GF(3)) == msc_of(GF(3), {{{0, 1, 1, 0}, {1, 0, 0, 2}}}));
}

TEST_CASE("corrected char-2 A3 matrix") {
  const auto f = GFx(2, 1);
  const auto a1 = fe(f, 1), b2 = fe(f, 0);
  const Msc m = build(fam(3, f), {a1, b2}, f);
  // rows (a1, 1, 1, 0) and (0, b2, 1 - a1, 1)
  REQUIRE(m.entry(0, 0) == a1);
  REQUIRE(m.entry(0, 1) == fe(f, 1));
  REQUIRE(m.entry(0, 2) == fe(f, 1));
  REQUIRE(m.entry(0, 3) == fe(f, 0));
  REQUIRE(m.entry(1, 0) == fe(f, 0));
  REQUIRE(m.entry(1, 1) == b2);
  REQUIRE(m.entry(1, 2) == fe(f, 1) - a1);
  REQUIRE(m.entry(1, 3) == fe(f, 1));
}

TEST_CASE("A1 matrix shape is identical in all three characteristic classes") {
  for (const auto& s : {GF(5), GF(2), GF(3)}) {
    const auto ps = pv(s, {1, 1, 1, 1});
    const Msc m = build(fam(1, s), ps, s);
    const auto one = fe(s, 1);
    REQUIRE(m.entry(0, 0) == one);
    REQUIRE(m.entry(0, 2) == one + one);      // a2 + 1
    REQUIRE(m.entry(1, 1) == -one);           // -a1
    REQUIRE(m.entry(1, 2) == fe(s, 0));       // 1 - a1 with a1 = 1
    REQUIRE(m.entry(1, 3) == -one);           // -a2
  }
}

TEST_CASE("arity errors") {
  REQUIRE_THROWS_AS(build(fam(1, GF(5)), pv(GF(5), {1, 2}), GF(5)), ArityError);
  REQUIRE_THROWS_AS(build(fam(12, GF(5)), pv(GF(5), {1}), GF(5)), ArityError);
  REQUIRE_THROWS_AS(expected_aut(fam(5, GF(5)), {}, GF(5)), ArityError);
  REQUIRE_THROWS_AS(expected_der(fam(4, GF(5)), pv(GF(5), {1}), GF(5)), ArityError);
}

TEST_CASE("expected_aut examples") {
  REQUIRE(expected_aut(fam(1, GF(5)), pv(GF(5), {1, 2, 3, 4}), GF(5)).shape ==
          GroupShape::Trivial);

  {  // Aut(A11) over Q(sqrt 3): six explicit matrices
    const auto s = Qsqrt(3);
    const auto desc = expected_aut(FamilyId{11, CharClass::NotTwoThree}, {}, s);
    REQUIRE(desc.shape == GroupShape::FiniteList);
    REQUIRE(desc.elements.size() == 6);
    REQUIRE(desc.omissions.empty());
    const auto half = frac(s, 1, 2);
    const auto root3_half = FieldElement::root(s) * half;
    const auto want = *GL2Element::make(half, root3_half, root3_half, -half);
    bool found = false;
    for (const auto& g : desc.elements) found = found || g == want;
    REQUIRE(found);
  }
  {  // over GF(5), 3 is a non-square: 2 rational points + 4 omissions
    const auto desc = expected_aut(fam(11, GF(5)), {}, GF(5));
    REQUIRE(desc.elements.size() == 2);
    REQUIRE(desc.omissions.size() == 4);
    REQUIRE(desc.rational_point_count() == 2);
  }
  {  // Aut(A12) over GF(3): parabolic shape with q(q-1) = 6 points
    const auto desc = expected_aut(fam(12, GF(3)), {}, GF(3));
    REQUIRE(desc.shape == GroupShape::Parabolic);
    const auto pts = desc.rational_points();
    REQUIRE(pts.size() == 6);
    for (const auto& g : pts) {
      REQUIRE(g.b.is_zero());
      REQUIRE(g.d == g.a * g.a);
    }
  }
}

TEST_CASE("expected_aut case splits") {
  const auto s = GF(7);
  // A2: trivial unless b1 = 0
  REQUIRE(expected_aut(fam(2, s), pv(s, {1, 3, 2}), s).shape == GroupShape::Trivial);
  REQUIRE(expected_aut(fam(2, s), pv(s, {1, 0, 2}), s).shape == GroupShape::OrderTwoDiag);
  // A4: Borel exactly at b2 = 2 a1 - 1
  REQUIRE(expected_aut(fam(4, s), pv(s, {2, 3}), s).shape == GroupShape::Borel);
  REQUIRE(expected_aut(fam(4, s), pv(s, {2, 4}), s).shape == GroupShape::Torus);
  // A8: Borel exactly at a1 = 1/3 = 5
  REQUIRE(expected_aut(fam(8, s), pv(s, {5}), s).shape == GroupShape::Borel);
  REQUIRE(expected_aut(fam(8, s), pv(s, {1}), s).shape == GroupShape::Torus);
  // A8 in characteristic 3 has no Borel case
  REQUIRE(expected_aut(fam(8, GF(3)), pv(GF(3), {1}), GF(3)).shape == GroupShape::Torus);
}

TEST_CASE("order-two diagonal group collapses in characteristic 2") {
  const auto s = GFx(2, 1);
  const auto desc = expected_aut(fam(2, s), pv(s, {1, 0, 1}), s);
  REQUIRE(desc.rational_point_count() == 1);  // diag(1,-1) = I
  const auto pts = desc.rational_points();
  REQUIRE(pts.size() == 1);
  REQUIRE(pts[0] == GL2Element::identity(s));
}

TEST_CASE("expected_der examples") {
  REQUIRE(expected_der(fam(11, GF(7)), {}, GF(7)).dim() == 0);

  const auto der12 = expected_der(FamilyId{12, CharClass::NotTwoThree}, {}, Q());
  REQUIRE(der12.dim() == 2);
  REQUIRE(der12.basis()[0] ==
          std::vector<FieldElement>{fe(Q(), 1), fe(Q(), 0), fe(Q(), 0), fe(Q(), 2)});
  REQUIRE(der12.basis()[1] ==
          std::vector<FieldElement>{fe(Q(), 0), fe(Q(), 0), fe(Q(), 1), fe(Q(), 0)});

  const auto der10_3 = expected_der(fam(10, GF(3)), {}, GF(3));
  REQUIRE(der10_3.dim() == 2);
  REQUIRE(der10_3.basis()[0] ==
          std::vector<FieldElement>{fe(GF(3), 1), fe(GF(3), 0), fe(GF(3), 0), fe(GF(3), 0)});
  REQUIRE(der10_3.basis()[1] ==
          std::vector<FieldElement>{fe(GF(3), 0), fe(GF(3), 1), fe(GF(3), 0), fe(GF(3), 0)});
}

TEST_CASE("every described automorphism satisfies the residual equation") {
  // soundness of the tables, pointwise: finite fields enumerate rational
  // points, infinite fields sample shape instantiations.  Quarantined cells
  // are the known table defects; their stated elements need not pass.
  const std::vector<FieldSpec> fields = {GF(5), GF(7), GF(2), GFx(2, 1), GF(3), GFx(3, 2),
                                         Q(), Qsqrt(3)};
  for (const auto& s : fields) {
    const CharClass cc = char_class_of(s);
    SplitMix64 rng(67);
    for (FamilyId f : all_families(cc)) {
      for (int it = 0; it < 5; ++it) {
        ParamVector ps;
        for (int j = 0; j < arity(f); ++j) ps.push_back(random_element(s, rng));
        if (quarantine_for(f, ps, s)) continue;
        const Msc a = build(f, ps, s);
        const auto desc = expected_aut(f, ps, s);
        for (const auto& g : desc.sample_points(4, 1234 + it)) {
          INFO(f.name() << " " << params_to_string(f, ps) << " over " << s.to_string()
                        << " element " << g.to_string());
          REQUIRE(is_automorphism(a, g));
        }
      }
    }
  }
}

TEST_CASE("every described derivation satisfies the residual equation") {
  const std::vector<FieldSpec> fields = {GF(5), GF(7), GF(2), GFx(2, 1), GF(3), GFx(3, 2),
                                         Q(), Qsqrt(3)};
  for (const auto& s : fields) {
    const CharClass cc = char_class_of(s);
    SplitMix64 rng(71);
    for (FamilyId f : all_families(cc)) {
      for (int it = 0; it < 5; ++it) {
        ParamVector ps;
        for (int j = 0; j < arity(f); ++j) ps.push_back(random_element(s, rng));
        const Msc a = build(f, ps, s);
        const Subspace der = expected_der(f, ps, s);
        for (int i = 0; i < der.dim(); ++i) {
          INFO(f.name() << " " << params_to_string(f, ps) << " over " << s.to_string());
          REQUIRE(der_residual(a, der.basis_matrix(i)).is_zero());
        }
      }
    }
  }
}

TEST_CASE("param sampler") {
  REQUIRE(param_sampler(fam(8, GF(3)), GF(3), SampleMode::all()).size() == 3);
  REQUIRE(param_sampler(fam(1, GF(2)), GF(2), SampleMode::all()).size() == 16);
  {
    const auto tuples = param_sampler(fam(12, GF(5)), GF(5), SampleMode::all());
    REQUIRE(tuples.size() == 1);
    REQUIRE(tuples[0].empty());
  }
  REQUIRE_THROWS_AS(param_sampler(FamilyId{1, CharClass::NotTwoThree}, Q(), SampleMode::all()),
                    InfiniteField);
  // random mode is deterministic for a fixed seed
  const auto r1 = param_sampler(fam(1, GF(7)), GF(7), SampleMode::random(10, 99));
  const auto r2 = param_sampler(fam(1, GF(7)), GF(7), SampleMode::random(10, 99));
  REQUIRE(r1.size() == 10);
  REQUIRE(r1 == r2);
}

TEST_CASE("family names and parsing") {
  REQUIRE(FamilyId{3, CharClass::Two}.name() == "A3@char2");
  REQUIRE(parse_family("A3@char2") == FamilyId{3, CharClass::Two});
  REQUIRE(parse_family("A9") == FamilyId{9, CharClass::NotTwoThree});  // bare = neq23
  REQUIRE(parse_family("A9@char3") == FamilyId{9, CharClass::Three});
  REQUIRE_THROWS_AS(parse_family("A13@char2"), ParseError);
  REQUIRE_THROWS_AS(parse_family("A3@char5"), ParseError);
  REQUIRE_THROWS_AS(parse_family("B3"), ParseError);
}

TEST_CASE("twin fixtures") {
  REQUIRE(has_sign_twin(FamilyId{2, CharClass::NotTwoThree}));
  REQUIRE(has_sign_twin(FamilyId{6, CharClass::Three}));
  REQUIRE(!has_sign_twin(FamilyId{2, CharClass::Two}));
  REQUIRE(!has_sign_twin(FamilyId{4, CharClass::NotTwoThree}));
  const auto s = GF(7);
  const auto ps = pv(s, {1, 3, 2});
  const auto tw = twin_params(fam(2, s), ps);
  REQUIRE(tw[0] == ps[0]);
  REQUIRE(tw[1] == -ps[1]);
  REQUIRE(tw[2] == ps[2]);
}
