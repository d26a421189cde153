#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "msc2/automorphisms.hpp"
#include "msc2/derivations.hpp"
#include "msc2/msc.hpp"

namespace msc2 {

// ---------------------------------------------------------------------------
// Family identifiers
// ---------------------------------------------------------------------------

/// The classification splits on the characteristic of the base field.
enum class CharClass { NotTwoThree, Two, Three };

inline CharClass char_class_of(const FieldSpec& s) {
  switch (s.characteristic()) {
    case 2:
      return CharClass::Two;
    case 3:
      return CharClass::Three;
    default:
      return CharClass::NotTwoThree;
  }
}

inline std::string char_class_suffix(CharClass cc) {
  switch (cc) {
    case CharClass::NotTwoThree:
      return "neq23";
    case CharClass::Two:
      return "char2";
    case CharClass::Three:
      return "char3";
  }
  return {};
}

/// One bullet of the classification: family index 1..12 within a
/// characteristic class.
struct FamilyId {
  int index;
  CharClass cc;

  friend bool operator==(const FamilyId&, const FamilyId&) = default;

  std::string name() const {
    return "A" + std::to_string(index) + "@" + char_class_suffix(cc);
  }
};

inline std::vector<FamilyId> all_families(CharClass cc) {
  std::vector<FamilyId> out;
  for (int i = 1; i <= 12; ++i) out.push_back({i, cc});
  return out;
}

/// `A<index>` with optional `@neq23|@char2|@char3` suffix.  A bare name means
/// the characteristic-not-2,3 family (so `A9` over GF(3) is a CharMismatch,
/// not the char-3 bullet; the latter is spelled `A9@char3`).
inline FamilyId parse_family(std::string_view text) {
  detail::Cursor c{text};
  if (!c.try_consume('A')) throw ParseError(c.pos, "expected family name A<index>");
  std::int64_t index = c.integer_i64();
  if (index < 1 || index > 12) throw ParseError(0, "family index must be 1..12");
  CharClass cc = CharClass::NotTwoThree;
  if (c.try_consume('@')) {
    if (c.try_keyword("neq23"))
      cc = CharClass::NotTwoThree;
    else if (c.try_keyword("char2"))
      cc = CharClass::Two;
    else if (c.try_keyword("char3"))
      cc = CharClass::Three;
    else
      throw ParseError(c.pos, "expected neq23, char2 or char3");
  }
  if (!c.eof()) throw ParseError(c.pos, "trailing input after family name");
  return FamilyId{static_cast<int>(index), cc};
}

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

enum class ParamName { a1, a2, a4, b1, b2 };

inline std::string param_name_str(ParamName p) {
  switch (p) {
    case ParamName::a1:
      return "a1";
    case ParamName::a2:
      return "a2";
    case ParamName::a4:
      return "a4";
    case ParamName::b1:
      return "b1";
    case ParamName::b2:
      return "b2";
  }
  return {};
}

/// Parameter signature of a family; values are passed positionally in this
/// order.
inline std::vector<ParamName> param_names(FamilyId f) {
  using P = ParamName;
  switch (f.index) {
    case 1:
      return {P::a1, P::a2, P::a4, P::b1};
    case 2:
      return {P::a1, P::b1, P::b2};
    case 3:
      return f.cc == CharClass::Two ? std::vector<P>{P::a1, P::b2}
                                    : std::vector<P>{P::b1, P::b2};
    case 4:
      return {P::a1, P::b2};
    case 5:
      return {P::a1};
    case 6:
      return {P::a1, P::b1};
    case 7:
      return f.cc == CharClass::Two ? std::vector<P>{P::a1} : std::vector<P>{P::b1};
    case 8:
      return {P::a1};
    default:
      return {};
  }
}

using ParamVector = std::vector<FieldElement>;

inline int arity(FamilyId f) { return static_cast<int>(param_names(f).size()); }

inline std::string params_to_string(FamilyId f, const ParamVector& params) {
  const auto names = param_names(f);
  std::string out = "(";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ",";
    out += param_name_str(names[i]) + "=" + params[i].to_string();
  }
  return out + ")";
}

namespace detail {

inline void check_family(FamilyId f, const ParamVector& params, const FieldSpec& spec) {
  if (char_class_of(spec) != f.cc)
    throw CharMismatch("family " + f.name() + " needs a field of class " +
                       char_class_suffix(f.cc) + ", got " + spec.to_string());
  const auto names = param_names(f);
  if (params.size() != names.size())
    throw ArityError("family " + f.name() + " takes " + std::to_string(names.size()) +
                     " parameters, got " + std::to_string(params.size()));
  for (const auto& p : params)
    if (!(p.spec() == spec)) throw SpecMismatch("parameter not in " + spec.to_string());
}

inline FieldElement param(FamilyId f, const ParamVector& params, ParamName name) {
  const auto names = param_names(f);
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return params[i];
  throw ArityError("family " + f.name() + " has no parameter " + param_name_str(name));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Canonical matrices
// ---------------------------------------------------------------------------

/// The canonical matrix of the (family, class) bullet with parameters
/// substituted.  The char-2 A3 matrix is the corrected one: rows
/// (a1, 1, 1, 0) and (0, b2, 1-a1, 1).
inline Msc build(FamilyId f, const ParamVector& params, const FieldSpec& spec) {
  detail::check_family(f, params, spec);
  const FieldElement zero = FieldElement::zero(spec), one = FieldElement::one(spec);
  const FieldElement two = FieldElement::from_int(spec, 2);
  auto P = [&](ParamName n) { return detail::param(f, params, n); };
  using Rows = std::array<std::array<FieldElement, 4>, 2>;
  Rows rows = {{{zero, zero, zero, zero}, {zero, zero, zero, zero}}};
  using PN = ParamName;
  switch (f.index) {
    case 1: {
      const FieldElement a1 = P(PN::a1), a2 = P(PN::a2), a4 = P(PN::a4), b1 = P(PN::b1);
      rows = {{{a1, a2, a2 + one, a4}, {b1, -a1, one - a1, -a2}}};
      break;
    }
    case 2: {
      const FieldElement a1 = P(PN::a1), b1 = P(PN::b1), b2 = P(PN::b2);
      rows = {{{a1, zero, zero, one}, {b1, b2, one - a1, zero}}};
      break;
    }
    case 3: {
      if (f.cc == CharClass::Two) {
        const FieldElement a1 = P(PN::a1), b2 = P(PN::b2);
        rows = {{{a1, one, one, zero}, {zero, b2, one - a1, one}}};
      } else {
        const FieldElement b1 = P(PN::b1), b2 = P(PN::b2);
        rows = {{{zero, one, one, zero}, {b1, b2, one, -one}}};
      }
      break;
    }
    case 4: {
      const FieldElement a1 = P(PN::a1), b2 = P(PN::b2);
      rows = {{{a1, zero, zero, zero}, {zero, b2, one - a1, zero}}};
      break;
    }
    case 5: {
      const FieldElement a1 = P(PN::a1);
      rows = {{{a1, zero, zero, zero}, {one, two * a1 - one, one - a1, zero}}};
      break;
    }
    case 6: {
      const FieldElement a1 = P(PN::a1), b1 = P(PN::b1);
      rows = {{{a1, zero, zero, one}, {b1, one - a1, -a1, zero}}};
      break;
    }
    case 7: {
      if (f.cc == CharClass::Two) {
        const FieldElement a1 = P(PN::a1);
        rows = {{{a1, one, one, zero}, {zero, one - a1, -a1, -one}}};
      } else {
        const FieldElement b1 = P(PN::b1);
        rows = {{{zero, one, one, zero}, {b1, one, zero, -one}}};
      }
      break;
    }
    case 8: {
      const FieldElement a1 = P(PN::a1);
      rows = {{{a1, zero, zero, zero}, {zero, one - a1, -a1, zero}}};
      break;
    }
    case 9: {
      if (f.cc == CharClass::Three) {
        rows = {{{zero, one, one, zero}, {one, zero, zero, -one}}};
      } else {
        const FieldElement third = FieldElement::from_fraction(spec, 1, 3);
        rows = {{{third, zero, zero, zero}, {one, two * third, -third, zero}}};
      }
      break;
    }
    case 10:
      rows = {{{zero, one, one, zero}, {zero, zero, zero, -one}}};
      break;
    case 11: {
      switch (f.cc) {
        case CharClass::NotTwoThree:
          rows = {{{zero, one, one, zero}, {one, zero, zero, -one}}};
          break;
        case CharClass::Two:
          rows = {{{one, one, one, zero}, {zero, -one, -one, -one}}};
          break;
        case CharClass::Three:
          rows = {{{one, zero, zero, zero}, {one, -one, -one, zero}}};
          break;
      }
      break;
    }
    case 12:
      rows = {{{zero, zero, zero, zero}, {one, zero, zero, zero}}};
      break;
    default:
      throw ArityError("family index must be 1..12");
  }
  Mat m(spec, 2, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j)
      m.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return Msc(std::move(m));
}

// ---------------------------------------------------------------------------
// Expected automorphism groups
// ---------------------------------------------------------------------------

namespace detail {

inline GL2Element lower_unipotent(const FieldSpec& s, const FieldElement& c) {
  const FieldElement one = FieldElement::one(s), zero = FieldElement::zero(s);
  return *GL2Element::make(one, zero, c, one);
}

/// The six-element group of the char-0-style A11: two diagonal elements plus
/// four built from sqrt(3)/2; the latter are omitted (and recorded) when 3 has
/// no square root in the field.
inline GroupDescription a11_group(const FieldSpec& s) {
  const FieldElement one = FieldElement::one(s), zero = FieldElement::zero(s);
  std::vector<GL2Element> elems = {*GL2Element::make(one, zero, zero, one),
                                   *GL2Element::make(-one, zero, zero, one)};
  std::vector<std::string> omitted;
  const auto root3 = msc2::sqrt(FieldElement::from_int(s, 3));
  if (root3) {
    const FieldElement half = FieldElement::from_fraction(s, 1, 2);
    const FieldElement h = *root3 * half;  // sqrt(3)/2
    // (a, b, c, d) with d = -1/2, b = +-sqrt(3)/2, a = +-1/2, c = b / (2a)
    elems.push_back(*GL2Element::make(half, h, h, -half));
    elems.push_back(*GL2Element::make(half, -h, -h, -half));
    elems.push_back(*GL2Element::make(-half, h, -h, -half));
    elems.push_back(*GL2Element::make(-half, -h, h, -half));
  } else {
    for (int i = 0; i < 4; ++i) omitted.push_back("needs sqrt(3)");
  }
  return GroupDescription::finite_list(s, std::move(elems), std::move(omitted));
}

inline GroupDescription a11_char2_group(const FieldSpec& s) {
  const FieldElement one = FieldElement::one(s), zero = FieldElement::zero(s);
  std::vector<GL2Element> elems = {
      *GL2Element::make(one, zero, zero, one),  *GL2Element::make(zero, one, one, zero),
      *GL2Element::make(zero, one, one, one),   *GL2Element::make(one, zero, one, one),
      *GL2Element::make(one, one, one, zero),   *GL2Element::make(one, one, zero, one)};
  return GroupDescription::finite_list(s, std::move(elems));
}

}  // namespace detail

/// The classification's automorphism group for this (family, parameters,
/// field) cell, as rational points of the closed-form description.  The
/// order-two diagonal groups collapse to {I} in characteristic 2, which keeps
/// the char-2 A2/A6 entries consistent with the generic ones.
inline GroupDescription expected_aut(FamilyId f, const ParamVector& params,
                                     const FieldSpec& spec) {
  detail::check_family(f, params, spec);
  const FieldElement one = FieldElement::one(spec), zero = FieldElement::zero(spec);
  const FieldElement two = FieldElement::from_int(spec, 2);
  auto P = [&](ParamName n) { return detail::param(f, params, n); };
  using PN = ParamName;
  switch (f.index) {
    case 1:
    case 3:
    case 7: {
      if (f.cc == CharClass::Two && (f.index == 3 || f.index == 7)) {
        const FieldElement t = f.index == 3 ? P(PN::b2) : P(PN::a1);
        return GroupDescription::finite_list(
            spec, {GL2Element::identity(spec), detail::lower_unipotent(spec, one + t)});
      }
      return GroupDescription::trivial(spec);
    }
    case 2:
    case 6:
      return P(PN::b1).is_zero() ? GroupDescription::of_shape(GroupShape::OrderTwoDiag, spec)
                                 : GroupDescription::trivial(spec);
    case 4:
      return P(PN::b2) == two * P(PN::a1) - one
                 ? GroupDescription::of_shape(GroupShape::Borel, spec)
                 : GroupDescription::of_shape(GroupShape::Torus, spec);
    case 5:
    case 9:
      return GroupDescription::of_shape(GroupShape::UnipotentLower, spec);
    case 8: {
      if (f.cc != CharClass::Three && P(PN::a1) == FieldElement::from_fraction(spec, 1, 3))
        return GroupDescription::of_shape(GroupShape::Borel, spec);
      return GroupDescription::of_shape(GroupShape::Torus, spec);
    }
    case 10:
      return GroupDescription::of_shape(GroupShape::ScaleFirst, spec);
    case 11:
      switch (f.cc) {
        case CharClass::NotTwoThree:
          return detail::a11_group(spec);
        case CharClass::Two:
          return detail::a11_char2_group(spec);
        case CharClass::Three:
          return GroupDescription::of_shape(GroupShape::UnipotentLower, spec);
      }
      break;
    case 12:
      return GroupDescription::of_shape(GroupShape::Parabolic, spec);
  }
  throw ArityError("family index must be 1..12");
}

// ---------------------------------------------------------------------------
// Expected derivation algebras
// ---------------------------------------------------------------------------

/// The classification's derivation algebra for this cell, as a canonical
/// subspace of 2x2 matrices.
inline Subspace expected_der(FamilyId f, const ParamVector& params, const FieldSpec& spec) {
  detail::check_family(f, params, spec);
  const FieldElement one = FieldElement::one(spec), zero = FieldElement::zero(spec);
  const FieldElement two = FieldElement::from_int(spec, 2);
  auto P = [&](ParamName n) { return detail::param(f, params, n); };
  using PN = ParamName;
  auto span = [&](std::vector<std::vector<FieldElement>> vecs) {
    return Subspace::from_vectors(spec, vecs);
  };
  const std::vector<FieldElement> e11 = {one, zero, zero, zero};
  const std::vector<FieldElement> e12 = {zero, one, zero, zero};
  const std::vector<FieldElement> e21 = {zero, zero, one, zero};
  const std::vector<FieldElement> e22 = {zero, zero, zero, one};
  switch (f.index) {
    case 1:
      return Subspace::zero(spec);
    case 2:
    case 6:
      if (f.cc == CharClass::Two && P(PN::b1).is_zero()) return span({e22});
      return Subspace::zero(spec);
    case 3:
      if (f.cc == CharClass::Two && P(PN::b2) == one) return span({e21});
      return Subspace::zero(spec);
    case 4:
      return P(PN::b2) == two * P(PN::a1) - one ? span({e21, e22}) : span({e22});
    case 5:
      return span({e21});
    case 7:
      if (f.cc == CharClass::Two && P(PN::a1) == one) return span({e21});
      return Subspace::zero(spec);
    case 8:
      if (f.cc != CharClass::Three && P(PN::a1) == FieldElement::from_fraction(spec, 1, 3))
        return span({e21, e22});
      return span({e22});
    case 9:
      if (f.cc == CharClass::Three) return span({{zero, two, one, zero}});
      return span({e21});
    case 10:
      switch (f.cc) {
        case CharClass::NotTwoThree:
          return span({e11});
        case CharClass::Two:
          return span({e11, e21});
        case CharClass::Three:
          return span({e11, e12});
      }
      break;
    case 11:
      return f.cc == CharClass::Three ? span({e21}) : Subspace::zero(spec);
    case 12:
      return span({{one, zero, zero, two}, e21});
  }
  throw ArityError("family index must be 1..12");
}

// ---------------------------------------------------------------------------
// Parameter sampling
// ---------------------------------------------------------------------------

struct SampleMode {
  bool exhaustive = true;
  int n = 0;
  std::uint64_t seed = 0;

  static SampleMode all() { return {true, 0, 0}; }
  static SampleMode random(int n, std::uint64_t seed) { return {false, n, seed}; }
};

inline constexpr std::uint64_t kExhaustiveParamCap = 10'000'000;

/// Deterministic parameter tuples: every q^arity tuple in exhaustive mode
/// (ascending mixed-radix order over element encodings), or n seeded random
/// tuples.  Zero-arity families yield the single empty tuple either way.
inline std::vector<ParamVector> param_sampler(FamilyId f, const FieldSpec& spec,
                                              const SampleMode& mode) {
  const int k = arity(f);
  if (k == 0) return {ParamVector{}};
  std::vector<ParamVector> out;
  if (mode.exhaustive) {
    auto q = spec.order();
    if (!q) throw InfiniteField("exhaustive parameter sweep over " + spec.to_string());
    std::uint64_t total = 1;
    for (int i = 0; i < k; ++i) {
      if (total > kExhaustiveParamCap / *q)
        throw CapExceeded("exhaustive sweep of " + f.name() + " over " + spec.to_string());
      total *= *q;
    }
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      ParamVector p;
      std::uint64_t rest = idx;
      for (int i = 0; i < k; ++i) {
        p.push_back(element_at(spec, rest % *q));
        rest /= *q;
      }
      out.push_back(std::move(p));
    }
  } else {
    SplitMix64 rng(mode.seed);
    for (int i = 0; i < mode.n; ++i) {
      ParamVector p;
      for (int j = 0; j < k; ++j) p.push_back(random_element(spec, rng));
      out.push_back(std::move(p));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Twin fixtures
// ---------------------------------------------------------------------------

/// A2 and A6 (outside characteristic 2) are displayed with a twin: negating
/// b1 yields an isomorphic algebra.
inline bool has_sign_twin(FamilyId f) {
  return (f.index == 2 || f.index == 6) && f.cc != CharClass::Two;
}

inline ParamVector twin_params(FamilyId f, const ParamVector& params) {
  if (!has_sign_twin(f)) throw ArityError("family " + f.name() + " has no sign twin");
  ParamVector out = params;
  out[1] = -out[1];  // b1 sits at position 1 for both A2 and A6
  return out;
}

}  // namespace msc2
