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

}  // namespace

TEST_CASE("derivations examples") {
  {
    const auto s = GF(5);
    const Msc a = build(FamilyId{1, CharClass::NotTwoThree}, pv(s, {1, 1, 1, 1}), s);
    REQUIRE(derivations(a).dim() == 0);
  }
  {
    const Msc a = build(FamilyId{12, CharClass::NotTwoThree}, {}, Q());
    const Subspace d = derivations(a);
    REQUIRE(d.dim() == 2);
    REQUIRE(d.basis()[0] ==
            std::vector<FieldElement>{fe(Q(), 1), fe(Q(), 0), fe(Q(), 0), fe(Q(), 2)});
    REQUIRE(d.basis()[1] ==
            std::vector<FieldElement>{fe(Q(), 0), fe(Q(), 0), fe(Q(), 1), fe(Q(), 0)});
  }
  {
    const auto s = GF(7);
    const Msc a = build(FamilyId{5, CharClass::NotTwoThree}, pv(s, {2}), s);
    const Subspace d = derivations(a);
    REQUIRE(d.dim() == 1);
    REQUIRE(d.basis()[0] == std::vector<FieldElement>{fe(s, 0), fe(s, 0), fe(s, 1), fe(s, 0)});
  }
}

TEST_CASE("every computed derivation satisfies the residual equation") {
  SplitMix64 rng(73);
  for (const auto& s : {GF(5), GFx(2, 1), Q()}) {
    for (int it = 0; it < 40; ++it) {
      Mat m(s, 2, 4);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 4; ++j) m.at(i, j) = random_element(s, rng);
      const Msc a{m};
      const Subspace d = derivations(a);
      for (int i = 0; i < d.dim(); ++i) REQUIRE(der_residual(a, d.basis_matrix(i)).is_zero());
      REQUIRE(lie_closed(d));
    }
  }
}

TEST_CASE("lie_closed examples") {
  const auto q = Q();
  // dim <= 1 is always closed
  REQUIRE(lie_closed(Subspace::zero(q)));
  REQUIRE(lie_closed(Subspace::from_matrices(q, {mat22(q, 0, 1, 0, 0)})));

  {
    // commutator oracle: [[1,0],[0,2]] and [[0,0],[1,0]] commute into the span
    const Mat x = mat22(q, 1, 0, 0, 2), y = mat22(q, 0, 0, 1, 0);
    const Mat bracket = x * y - y * x;
    REQUIRE(bracket == mat22(q, 0, 0, 1, 0));  // frozen: equals E21, in the span
    const Subspace d12 = Subspace::from_matrices(q, {x, y});
    REQUIRE(d12.contains(bracket));
    REQUIRE(lie_closed(d12));
  }
  {
    // span{E12, E21} is not closed: [E12, E21] = E11 - E22
    const Subspace s = Subspace::from_matrices(q, {mat22(q, 0, 1, 0, 0), mat22(q, 0, 0, 1, 0)});
    const auto fail = lie_closed_failure(s);
    REQUIRE(fail.has_value());
    REQUIRE(fail->i == 0);
    REQUIRE(fail->j == 1);
  }
}

TEST_CASE("subspace equality") {
  const auto s = GF(5);
  const auto plane1 = Subspace::from_vectors(
      s, {{fe(s, 0), fe(s, 0), fe(s, 1), fe(s, 0)}, {fe(s, 0), fe(s, 0), fe(s, 0), fe(s, 1)}});
  const auto plane2 = Subspace::from_vectors(
      s, {{fe(s, 0), fe(s, 0), fe(s, 1), fe(s, 1)}, {fe(s, 0), fe(s, 0), fe(s, 1), fe(s, -1)}});
  REQUIRE(subspace_equal(plane1, plane2));

  REQUIRE(!subspace_equal(Subspace::zero(s), Subspace::from_vectors(
                                                 s, {{fe(s, 0), fe(s, 0), fe(s, 0), fe(s, 1)}})));
  REQUIRE_THROWS_AS(subspace_equal(Subspace::zero(GF(5)), Subspace::zero(GF(7))), SpecMismatch);

  // A4 at the jump parameter: expected vs computed
  const auto f7 = GF(7);
  const FamilyId a4{4, CharClass::NotTwoThree};
  const auto params = pv(f7, {3, 5});  // b2 = 2*3 - 1 = 5
  REQUIRE(subspace_equal(derivations(build(a4, params, f7)), expected_der(a4, params, f7)));
}

TEST_CASE("full desk-scale derivation tables over small fields") {
  for (const auto& s : {GF(2), GF(3), GFx(2, 1), GF(5)}) {
    const CharClass cc = char_class_of(s);
    for (FamilyId f : all_families(cc)) {
      for (const auto& params : param_sampler(f, s, SampleMode::all())) {
        const Msc a = build(f, params, s);
        INFO(f.name() << " " << params_to_string(f, params) << " over " << s.to_string());
        REQUIRE(subspace_equal(derivations(a), expected_der(f, params, s)));
      }
    }
  }
}

TEST_CASE("derivation algebra is isomorphism-invariant") {
  SplitMix64 rng(79);
  const auto s = GF(7);
  for (int it = 0; it < 60; ++it) {
    Mat m(s, 2, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 4; ++j) m.at(i, j) = random_element(s, rng);
    const Msc a{m};
    const auto g = random_gl2(s, rng);
    const Subspace da = derivations(a);
    const Subspace db = derivations(a.transformed(g));
    REQUIRE(da.dim() == db.dim());
    // conjugated basis spans the transformed space: D' = g D g^{-1}
    std::vector<Mat> conj;
    for (int i = 0; i < da.dim(); ++i)
      conj.push_back(g.to_mat() * da.basis_matrix(i) * g.inverse().to_mat());
    REQUIRE(Subspace::from_matrices(s, conj) == db);
  }
}
