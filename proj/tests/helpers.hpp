#pragma once

#include "msc2/msc2.hpp"

namespace th {

inline msc2::FieldSpec Q() { return msc2::FieldSpec::rationals(); }
inline msc2::FieldSpec Qsqrt(std::int64_t d) { return msc2::FieldSpec::quad_rationals(d); }
inline msc2::FieldSpec GF(std::int64_t p) { return msc2::FieldSpec::prime_field(p); }
inline msc2::FieldSpec GFx(std::int64_t p, std::int64_t n) {
  return msc2::FieldSpec::quad_ext_field(p, n);
}

inline msc2::FieldElement fe(const msc2::FieldSpec& s, std::int64_t v) {
  return msc2::FieldElement::from_int(s, v);
}
inline msc2::FieldElement frac(const msc2::FieldSpec& s, std::int64_t n, std::int64_t d) {
  return msc2::FieldElement::from_fraction(s, n, d);
}

inline msc2::Mat mat22(const msc2::FieldSpec& s, std::int64_t a, std::int64_t b, std::int64_t c,
                       std::int64_t d) {
  msc2::Mat m(s, 2, 2);
  m.at(0, 0) = fe(s, a);
  m.at(0, 1) = fe(s, b);
  m.at(1, 0) = fe(s, c);
  m.at(1, 1) = fe(s, d);
  return m;
}

inline msc2::Msc msc_of(const msc2::FieldSpec& s,
                        const std::array<std::array<std::int64_t, 4>, 2>& rows) {
  return msc2::Msc::from_ints(s, rows);
}

/// Fields covering all four kinds plus both finite flavours; used by the
/// cross-kind property sweeps.
inline std::vector<msc2::FieldSpec> sample_specs() {
  return {Q(), Qsqrt(3), Qsqrt(-1), GF(2), GF(5), GF(7), GFx(2, 1), GFx(3, 2), GFx(5, 2)};
}

}  // namespace th
