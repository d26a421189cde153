#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "msc2/fields.hpp"

namespace msc2 {

// ---------------------------------------------------------------------------
// Dense matrices
// ---------------------------------------------------------------------------

/// Small dense row-major matrix over one field.  Everything in this project is
/// at most 8x16, so there is no sparsity and no pivot-size heuristics.
class Mat {
 public:
  Mat(const FieldSpec& spec, int rows, int cols)
      : spec_(spec), rows_(rows), cols_(cols),
        e_(static_cast<std::size_t>(rows * cols), FieldElement::zero(spec)) {
    if (rows < 1 || cols < 1 || rows > 16 || cols > 16)
      throw InvalidSpec("Mat: dimensions must be within 1..16");
  }

  static Mat identity(const FieldSpec& spec, int n) {
    Mat m(spec, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = FieldElement::one(spec);
    return m;
  }

  static Mat from_rows(const FieldSpec& spec,
                       const std::vector<std::vector<FieldElement>>& rows) {
    if (rows.empty() || rows[0].empty()) throw InvalidSpec("Mat: empty literal");
    Mat m(spec, static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i) {
      if (static_cast<int>(rows[i].size()) != m.cols())
        throw InvalidSpec("Mat: ragged rows");
      for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][static_cast<std::size_t>(j)];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const FieldSpec& spec() const { return spec_; }

  FieldElement& at(int i, int j) { return e_[static_cast<std::size_t>(i * cols_ + j)]; }
  const FieldElement& at(int i, int j) const {
    return e_[static_cast<std::size_t>(i * cols_ + j)];
  }

  bool is_zero() const {
    for (const auto& x : e_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.spec_ == y.spec_ && x.e_ == y.e_;
  }

  Mat operator+(const Mat& o) const {
    require_same_shape(o);
    Mat r(spec_, rows_, cols_);
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] + o.e_[k];
    return r;
  }

  Mat operator-(const Mat& o) const {
    require_same_shape(o);
    Mat r(spec_, rows_, cols_);
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] - o.e_[k];
    return r;
  }

  Mat operator*(const Mat& o) const {
    if (!(spec_ == o.spec_)) throw SpecMismatch("Mat product: field mismatch");
    if (cols_ != o.rows_) throw InvalidSpec("Mat product: inner dimensions differ");
    Mat r(spec_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const FieldElement& aik = at(i, k);
        if (aik.is_zero()) continue;
        for (int j = 0; j < o.cols_; ++j) r.at(i, j) = r.at(i, j) + aik * o.at(k, j);
      }
    return r;
  }

  Mat scaled(const FieldElement& c) const {
    Mat r(spec_, rows_, cols_);
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] * c;
    return r;
  }

  Mat negated() const {
    Mat r(spec_, rows_, cols_);
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] = -e_[k];
    return r;
  }

  std::string to_string() const {
    std::string out = "[";
    for (int i = 0; i < rows_; ++i) {
      out += i ? ",[" : "[";
      for (int j = 0; j < cols_; ++j) {
        if (j) out += ",";
        out += at(i, j).to_string();
      }
      out += "]";
    }
    return out + "]";
  }

 private:
  void require_same_shape(const Mat& o) const {
    if (!(spec_ == o.spec_)) throw SpecMismatch("Mat: field mismatch");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidSpec("Mat: shape mismatch");
  }

  FieldSpec spec_;
  int rows_, cols_;
  std::vector<FieldElement> e_;
};

/// Kronecker product: block (i,j) of the result is a_ij * B.
inline Mat kron(const Mat& a, const Mat& b) {
  if (!(a.spec() == b.spec())) throw SpecMismatch("kron: field mismatch");
  Mat r(a.spec(), a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const FieldElement& aij = a.at(i, j);
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          r.at(i * b.rows() + k, j * b.cols() + l) = aij * b.at(k, l);
    }
  return r;
}

// ---------------------------------------------------------------------------
// Row reduction and kernels
// ---------------------------------------------------------------------------

struct RrefResult {
  Mat r;
  int rank;
  std::vector<int> pivot_cols;
};

/// Unique reduced row echelon form.  Pivoting rule: leftmost nonzero column,
/// topmost unprocessed row; no pivot-magnitude heuristics (exact arithmetic).
inline RrefResult rref(const Mat& m) {
  Mat r = m;
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < r.cols() && row < r.rows(); ++col) {
    int sel = -1;
    for (int i = row; i < r.rows(); ++i)
      if (!r.at(i, col).is_zero()) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != row)
      for (int j = 0; j < r.cols(); ++j) std::swap(r.at(sel, j), r.at(row, j));
    const FieldElement piv_inv = r.at(row, col).inv();
    for (int j = col; j < r.cols(); ++j) r.at(row, j) = r.at(row, j) * piv_inv;
    for (int i = 0; i < r.rows(); ++i) {
      if (i == row || r.at(i, col).is_zero()) continue;
      const FieldElement f = r.at(i, col);
      for (int j = col; j < r.cols(); ++j) r.at(i, j) = r.at(i, j) - f * r.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return RrefResult{std::move(r), row, std::move(pivots)};
}

/// Basis of the right kernel {v : Mv = 0} in the canonical free-variable order
/// induced by rref: one vector per free column (ascending), with value 1 at
/// its own free position.
inline std::vector<std::vector<FieldElement>> kernel_basis(const Mat& m) {
  RrefResult rr = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (int c : rr.pivot_cols) is_pivot[static_cast<std::size_t>(c)] = true;

  std::vector<std::vector<FieldElement>> basis;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    std::vector<FieldElement> v(static_cast<std::size_t>(m.cols()),
                                FieldElement::zero(m.spec()));
    v[static_cast<std::size_t>(free)] = FieldElement::one(m.spec());
    for (int prow = 0; prow < rr.rank; ++prow) {
      int pc = rr.pivot_cols[static_cast<std::size_t>(prow)];
      v[static_cast<std::size_t>(pc)] = -rr.r.at(prow, free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// 2x2 specifics and GL(2, q)
// ---------------------------------------------------------------------------

inline FieldElement det2(const Mat& g) {
  if (g.rows() != 2 || g.cols() != 2) throw InvalidSpec("det2: matrix is not 2x2");
  return g.at(0, 0) * g.at(1, 1) - g.at(0, 1) * g.at(1, 0);
}

inline Mat inv2(const Mat& g) {
  FieldElement det = det2(g);
  if (det.is_zero()) throw Singular("inv2: singular matrix");
  const FieldElement dinv = det.inv();
  Mat r(g.spec(), 2, 2);
  r.at(0, 0) = g.at(1, 1) * dinv;
  r.at(0, 1) = -g.at(0, 1) * dinv;
  r.at(1, 0) = -g.at(1, 0) * dinv;
  r.at(1, 1) = g.at(0, 0) * dinv;
  return r;
}

/// Invertible 2x2 matrix [[a,b],[c,d]] with its determinant cached.
struct GL2Element {
  FieldElement a, b, c, d;
  FieldElement det;

  static std::optional<GL2Element> make(const FieldElement& a, const FieldElement& b,
                                        const FieldElement& c, const FieldElement& d) {
    FieldElement dt = a * d - b * c;
    if (dt.is_zero()) return std::nullopt;
    return GL2Element{a, b, c, d, std::move(dt)};
  }

  static GL2Element identity(const FieldSpec& s) {
    return *make(FieldElement::one(s), FieldElement::zero(s), FieldElement::zero(s),
                 FieldElement::one(s));
  }

  static GL2Element from_mat(const Mat& m) {
    auto g = make(m.at(0, 0), m.at(0, 1), m.at(1, 0), m.at(1, 1));
    if (!g) throw Singular("GL2Element: singular matrix");
    return *g;
  }

  const FieldSpec& spec() const { return a.spec(); }

  Mat to_mat() const {
    Mat m(spec(), 2, 2);
    m.at(0, 0) = a;
    m.at(0, 1) = b;
    m.at(1, 0) = c;
    m.at(1, 1) = d;
    return m;
  }

  GL2Element inverse() const {
    const FieldElement i = det.inv();
    return *make(d * i, -b * i, -c * i, a * i);
  }

  GL2Element operator*(const GL2Element& o) const {
    return *make(a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d);
  }

  friend bool operator==(const GL2Element& x, const GL2Element& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }

  /// Lexicographic sort key over finite fields (enumeration order).
  std::array<std::uint64_t, 4> enc_key() const {
    return {a.enc(), b.enc(), c.enc(), d.enc()};
  }

  std::string to_string() const {
    return "[[" + a.to_string() + "," + b.to_string() + "],[" + c.to_string() + "," +
           d.to_string() + "]]";
  }
};

inline FieldElement det2(const GL2Element& g) { return g.det; }
inline GL2Element inv2(const GL2Element& g) { return g.inverse(); }

inline constexpr std::uint64_t kDefaultGlCap = 31;
inline constexpr std::uint64_t kDefaultOrbitCap = 7;

inline std::uint64_t gl2_order(std::uint64_t q) {
  return (q * q - 1) * (q * q - q);
}

inline std::uint64_t field_order_for_enumeration(const FieldSpec& s, std::uint64_t cap) {
  auto q = s.order();
  if (!q) throw InfiniteField("GL(2) enumeration needs a finite field, got " + s.to_string());
  if (*q > cap)
    throw CapExceeded("GL(2," + std::to_string(*q) + ") exceeds enumeration cap q <= " +
                      std::to_string(cap));
  return *q;
}

/// Visits the GL(2,q) elements whose tuple index lies in [lo, hi), where the
/// index runs lexicographically over encodings of (a,b,c,d) in [0,q)^4 and
/// singular tuples are skipped.  Disjoint ranges can be scanned by parallel
/// workers and merged in range order.
template <class Fn>
void gl2_for_each_range(const FieldSpec& s, std::uint64_t q, std::uint64_t lo, std::uint64_t hi,
                        Fn&& fn) {
  std::vector<FieldElement> elems = enumerate(s);
  for (std::uint64_t idx = lo; idx < hi; ++idx) {
    const std::uint64_t ai = idx / (q * q * q);
    const std::uint64_t bi = idx / (q * q) % q;
    const std::uint64_t ci = idx / q % q;
    const std::uint64_t di = idx % q;
    auto g = GL2Element::make(elems[ai], elems[bi], elems[ci], elems[di]);
    if (g) fn(*g);
  }
}

template <class Fn>
void gl2_for_each(const FieldSpec& s, Fn&& fn, std::uint64_t cap = kDefaultGlCap) {
  const std::uint64_t q = field_order_for_enumeration(s, cap);
  gl2_for_each_range(s, q, 0, q * q * q * q, fn);
}

/// Materializes all of GL(2,q) in enumeration order.  Use gl2_for_each for
/// scans; this is meant for small q (tests, explicit group listings).
inline std::vector<GL2Element> gl2_enumerate(const FieldSpec& s,
                                             std::uint64_t cap = kDefaultGlCap) {
  std::vector<GL2Element> out;
  gl2_for_each(s, [&](const GL2Element& g) { out.push_back(g); }, cap);
  return out;
}

// ---------------------------------------------------------------------------
// Matrix literals
// ---------------------------------------------------------------------------

namespace detail {

inline Mat matrix_from(Cursor& c, const FieldSpec& spec) {
  c.expect('[');
  std::vector<std::vector<FieldElement>> rows;
  do {
    c.expect('[');
    std::vector<FieldElement> row;
    do {
      row.push_back(element_from(c, spec));
    } while (c.try_consume(','));
    c.expect(']');
    rows.push_back(std::move(row));
  } while (c.try_consume(','));
  c.expect(']');
  std::size_t at = c.pos;
  try {
    return Mat::from_rows(spec, rows);
  } catch (const InvalidSpec& e) {
    throw ParseError(at, e.what());
  }
}

}  // namespace detail

/// Parses `[[e,e,...],[e,e,...]]` with the element grammar of the field.
inline Mat parse_matrix(const FieldSpec& spec, std::string_view text) {
  detail::Cursor c{text};
  Mat m = detail::matrix_from(c, spec);
  if (!c.eof()) throw ParseError(c.pos, "trailing input after matrix");
  return m;
}

}  // namespace msc2
