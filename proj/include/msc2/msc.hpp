#pragma once

#include <array>
#include <string>
#include <string_view>

#include "msc2/linalg.hpp"

namespace msc2 {

/// A 2-dimensional algebra represented by its 2x4 matrix of structure
/// constants A = [[a1,a2,a3,a4],[b1,b2,b3,b4]]: the product of coordinate
/// vectors u, v is A (u (x) v) with u (x) v = (u1v1, u1v2, u2v1, u2v2)^T.
class Msc {
 public:
  explicit Msc(Mat m) : m_(std::move(m)) {
    if (m_.rows() != 2 || m_.cols() != 4) throw InvalidSpec("Msc: matrix must be 2x4");
  }

  static Msc from_ints(const FieldSpec& spec,
                       const std::array<std::array<std::int64_t, 4>, 2>& rows) {
    Mat m(spec, 2, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 4; ++j) m.at(i, j) = FieldElement::from_int(spec, rows[i][j]);
    return Msc(std::move(m));
  }

  const FieldSpec& spec() const { return m_.spec(); }
  const Mat& mat() const { return m_; }
  const FieldElement& entry(int i, int j) const { return m_.at(i, j); }

  friend bool operator==(const Msc& x, const Msc& y) { return x.m_ == y.m_; }

  /// u . v = A (u (x) v); bilinear in both arguments.
  std::array<FieldElement, 2> product(const std::array<FieldElement, 2>& u,
                                      const std::array<FieldElement, 2>& v) const {
    for (const auto& x : {u[0], u[1], v[0], v[1]})
      if (!(x.spec() == spec())) throw SpecMismatch("product: field mismatch");
    const std::array<FieldElement, 4> uv = {u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]};
    std::array<FieldElement, 2> out = {FieldElement::zero(spec()), FieldElement::zero(spec())};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 4; ++j)
        out[static_cast<std::size_t>(i)] =
            out[static_cast<std::size_t>(i)] + m_.at(i, j) * uv[static_cast<std::size_t>(j)];
    return out;
  }

  /// Basis-change action A' = g A (g^{-1}) (x) (g^{-1}); two MSCs are
  /// isomorphic algebras exactly when they lie in one orbit of this action.
  Msc transformed(const GL2Element& g) const {
    if (!(g.spec() == spec())) throw SpecMismatch("transform: field mismatch");
    const Mat gi = g.inverse().to_mat();
    return Msc(g.to_mat() * m_ * kron(gi, gi));
  }

  std::string to_string() const {
    return "MSC(" + spec().to_string() + "; " + m_.to_string() + ")";
  }

  static Msc parse(std::string_view text);

 private:
  Mat m_;
};

/// g A - A (g (x) g); zero together with det(g) != 0 characterizes the
/// automorphisms of A.  g may be singular (the solvers need the raw residual).
inline Mat aut_residual(const Msc& a, const Mat& g) {
  if (!(g.spec() == a.spec())) throw SpecMismatch("aut_residual: field mismatch");
  if (g.rows() != 2 || g.cols() != 2) throw InvalidSpec("aut_residual: g must be 2x2");
  return g * a.mat() - a.mat() * kron(g, g);
}

/// A (D (x) I + I (x) D) - D A; zero characterizes the derivations of A.
/// Linear in D.
inline Mat der_residual(const Msc& a, const Mat& d) {
  if (!(d.spec() == a.spec())) throw SpecMismatch("der_residual: field mismatch");
  if (d.rows() != 2 || d.cols() != 2) throw InvalidSpec("der_residual: D must be 2x2");
  const Mat id = Mat::identity(a.spec(), 2);
  return a.mat() * (kron(d, id) + kron(id, d)) - d * a.mat();
}

inline Msc Msc::parse(std::string_view text) {
  detail::Cursor c{text};
  if (!c.try_keyword("MSC")) throw ParseError(c.pos, "expected 'MSC('");
  c.expect('(');
  FieldSpec spec = detail::field_spec_from(c);
  c.expect(';');
  Mat m = detail::matrix_from(c, spec);
  c.expect(')');
  if (!c.eof()) throw ParseError(c.pos, "trailing input after MSC literal");
  if (m.rows() != 2 || m.cols() != 4) throw ParseError(0, "MSC literal must be 2x4");
  return Msc(std::move(m));
}

}  // namespace msc2
