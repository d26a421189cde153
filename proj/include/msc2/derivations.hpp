#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "msc2/msc.hpp"

namespace msc2 {

/// Linear subspace of 2x2 matrices, vectorized row-major as (a,b,c,d).
/// The stored basis is the reduced row echelon form of any spanning set, so
/// equal subspaces have identical representations.
class Subspace {
 public:
  static Subspace zero(const FieldSpec& spec) { return Subspace(spec, {}); }

  static Subspace from_vectors(const FieldSpec& spec,
                               const std::vector<std::vector<FieldElement>>& vecs) {
    for (const auto& v : vecs)
      if (v.size() != 4) throw InvalidSpec("Subspace: vectors must have length 4");
    if (vecs.empty()) return zero(spec);
    Mat m(spec, static_cast<int>(vecs.size()), 4);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < 4; ++j) m.at(i, j) = vecs[static_cast<std::size_t>(i)]
                                                   [static_cast<std::size_t>(j)];
    RrefResult rr = rref(m);
    std::vector<std::vector<FieldElement>> basis;
    for (int i = 0; i < rr.rank; ++i) {
      std::vector<FieldElement> row;
      for (int j = 0; j < 4; ++j) row.push_back(rr.r.at(i, j));
      basis.push_back(std::move(row));
    }
    return Subspace(spec, std::move(basis));
  }

  static Subspace from_matrices(const FieldSpec& spec, const std::vector<Mat>& mats) {
    std::vector<std::vector<FieldElement>> vecs;
    for (const Mat& m : mats) {
      if (m.rows() != 2 || m.cols() != 2) throw InvalidSpec("Subspace: matrices must be 2x2");
      vecs.push_back({m.at(0, 0), m.at(0, 1), m.at(1, 0), m.at(1, 1)});
    }
    return from_vectors(spec, vecs);
  }

  const FieldSpec& spec() const { return spec_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<std::vector<FieldElement>>& basis() const { return basis_; }

  Mat basis_matrix(int i) const {
    const auto& v = basis_[static_cast<std::size_t>(i)];
    Mat m(spec_, 2, 2);
    m.at(0, 0) = v[0];
    m.at(0, 1) = v[1];
    m.at(1, 0) = v[2];
    m.at(1, 1) = v[3];
    return m;
  }

  /// Membership test by reduction against the rref basis.
  bool contains(const std::vector<FieldElement>& vec) const {
    if (vec.size() != 4) throw InvalidSpec("Subspace::contains: vector must have length 4");
    std::vector<FieldElement> v = vec;
    for (const auto& row : basis_) {
      int pivot = -1;
      for (int j = 0; j < 4; ++j)
        if (!row[static_cast<std::size_t>(j)].is_zero()) {
          pivot = j;
          break;
        }
      const FieldElement f = v[static_cast<std::size_t>(pivot)];
      if (f.is_zero()) continue;
      for (int j = 0; j < 4; ++j)
        v[static_cast<std::size_t>(j)] =
            v[static_cast<std::size_t>(j)] - f * row[static_cast<std::size_t>(j)];
    }
    for (const auto& x : v)
      if (!x.is_zero()) return false;
    return true;
  }

  bool contains(const Mat& m) const {
    return contains(std::vector<FieldElement>{m.at(0, 0), m.at(0, 1), m.at(1, 0), m.at(1, 1)});
  }

  friend bool operator==(const Subspace& x, const Subspace& y) {
    return x.spec_ == y.spec_ && x.basis_ == y.basis_;
  }

  /// `dim=k; basis=[(..);(..)]`, or just `dim=0` for the zero space.
  std::string to_string() const {
    std::string out = "dim=" + std::to_string(dim());
    if (basis_.empty()) return out;
    out += "; basis=[";
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      out += i ? ";(" : "(";
      for (int j = 0; j < 4; ++j) {
        if (j) out += ",";
        out += basis_[i][static_cast<std::size_t>(j)].to_string();
      }
      out += ")";
    }
    return out + "]";
  }

 private:
  Subspace(const FieldSpec& spec, std::vector<std::vector<FieldElement>> basis)
      : spec_(spec), basis_(std::move(basis)) {}

  FieldSpec spec_;
  std::vector<std::vector<FieldElement>> basis_;
};

inline bool subspace_equal(const Subspace& x, const Subspace& y) {
  if (!(x.spec() == y.spec())) throw SpecMismatch("subspace_equal: field mismatch");
  return x == y;
}

/// Der(A) as the kernel of D -> A (D (x) I + I (x) D) - D A.  The 8x4
/// coefficient matrix is assembled by evaluating the residual at the four
/// basis matrices E11, E12, E21, E22 (valid by linearity).
inline Subspace derivations(const Msc& a) {
  const FieldSpec& s = a.spec();
  Mat coeff(s, 8, 4);
  for (int col = 0; col < 4; ++col) {
    Mat e(s, 2, 2);
    e.at(col / 2, col % 2) = FieldElement::one(s);
    const Mat res = der_residual(a, e);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 4; ++j) coeff.at(i * 4 + j, col) = res.at(i, j);
  }
  return Subspace::from_vectors(s, kernel_basis(coeff));
}

/// Offending basis pair when a subspace is not closed under the commutator.
struct LieWitness {
  int i, j;
};

/// Checks closure of the subspace under [X,Y] = XY - YX.
inline std::optional<LieWitness> lie_closed_failure(const Subspace& sp) {
  for (int i = 0; i < sp.dim(); ++i)
    for (int j = i + 1; j < sp.dim(); ++j) {
      const Mat x = sp.basis_matrix(i), y = sp.basis_matrix(j);
      if (!sp.contains(x * y - y * x)) return LieWitness{i, j};
    }
  return std::nullopt;
}

inline bool lie_closed(const Subspace& sp) { return !lie_closed_failure(sp); }

}  // namespace msc2
