#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "msc2/errors.hpp"

namespace msc2 {

// ---------------------------------------------------------------------------
// Small number-theory helpers (all arguments < 2^31, trial division is fine).
// ---------------------------------------------------------------------------

inline bool is_prime_i64(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t f = 3; f * f <= n; f += 2)
    if (n % f == 0) return false;
  return true;
}

inline bool is_squarefree_i64(std::int64_t n) {
  if (n == 0) return false;
  n = n < 0 ? -n : n;
  for (std::int64_t f = 2; f * f <= n; ++f) {
    if (n % (f * f) == 0) return false;
    while (n % f == 0) n /= f;
  }
  return true;
}

inline std::int64_t mod_pow_i64(std::int64_t base, std::uint64_t exp, std::int64_t p) {
  std::int64_t acc = 1 % p;
  base %= p;
  if (base < 0) base += p;
  while (exp) {
    if (exp & 1) acc = acc * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return acc;
}

/// Smallest quadratic non-residue modulo an odd prime p.  For p = 2 returns 1,
/// the conventional marker selecting GF(4) = GF(2)[t]/(t^2 + t + 1); no
/// non-residue of the form t^2 = n exists in characteristic 2.
inline std::int64_t smallest_nonresidue(std::int64_t p) {
  if (!is_prime_i64(p)) throw InvalidSpec("smallest_nonresidue: p is not prime");
  if (p == 2) return 1;
  for (std::int64_t n = 2; n < p; ++n)
    if (mod_pow_i64(n, static_cast<std::uint64_t>((p - 1) / 2), p) == p - 1) return n;
  throw InvalidSpec("smallest_nonresidue: none found");  // unreachable for p > 2
}

// ---------------------------------------------------------------------------
// FieldSpec
// ---------------------------------------------------------------------------

enum class FieldKind : std::uint8_t {
  Rationals,      ///< Q
  QuadRationals,  ///< Q(sqrt d), d squarefree, d != 0, 1
  PrimeField,     ///< GF(p)
  QuadExtField,   ///< GF(p^2) = GF(p)[t] with t^2 = n (odd p) or t^2 = t + 1 (p = 2)
};

/// Identifies one of the four supported exact fields.  Values are validated at
/// construction; afterwards a FieldSpec is a plain comparable value.
struct FieldSpec {
  FieldKind kind = FieldKind::Rationals;
  std::int64_t d = 0;  ///< QuadRationals only
  std::int64_t p = 0;  ///< finite kinds only
  std::int64_t n = 0;  ///< QuadExtField only

  static FieldSpec rationals() { return FieldSpec{}; }

  static FieldSpec quad_rationals(std::int64_t d) {
    if (d == 0 || d == 1) throw InvalidSpec("Q(sqrt d): d must differ from 0 and 1");
    if (!is_squarefree_i64(d)) throw InvalidSpec("Q(sqrt d): d must be squarefree");
    FieldSpec s;
    s.kind = FieldKind::QuadRationals;
    s.d = d;
    return s;
  }

  static FieldSpec prime_field(std::int64_t p) {
    if (p < 2 || p >= (std::int64_t{1} << 31) || !is_prime_i64(p))
      throw InvalidSpec("GF(p): p must be a prime below 2^31");
    FieldSpec s;
    s.kind = FieldKind::PrimeField;
    s.p = p;
    return s;
  }

  static FieldSpec quad_ext_field(std::int64_t p, std::int64_t n) {
    if (p < 2 || p >= (std::int64_t{1} << 31) || !is_prime_i64(p))
      throw InvalidSpec("GF(p^2): p must be a prime below 2^31");
    FieldSpec s;
    s.kind = FieldKind::QuadExtField;
    s.p = p;
    if (p == 2) {
      // GF(4) is GF(2)[t]/(t^2 + t + 1); n = 1 is the only accepted marker.
      if (n != 1) throw InvalidSpec("GF(2^2,n): only n = 1 is supported (t^2 = t + 1)");
      s.n = 1;
      return s;
    }
    if (n <= 0 || n >= p) throw InvalidSpec("GF(p^2,n): need 0 < n < p");
    if (mod_pow_i64(n, static_cast<std::uint64_t>((p - 1) / 2), p) != p - 1)
      throw InvalidSpec("GF(p^2,n): n is a quadratic residue mod p");
    s.n = n;
    return s;
  }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

  bool finite() const {
    return kind == FieldKind::PrimeField || kind == FieldKind::QuadExtField;
  }

  std::int64_t characteristic() const { return finite() ? p : 0; }

  /// Number of elements; empty for the infinite kinds.
  std::optional<std::uint64_t> order() const {
    switch (kind) {
      case FieldKind::PrimeField:
        return static_cast<std::uint64_t>(p);
      case FieldKind::QuadExtField:
        return static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(p);
      default:
        return std::nullopt;
    }
  }

  /// Reduction rule t^2 = s*t + m for the quadratic extension.
  std::int64_t ext_s() const { return p == 2 ? 1 : 0; }
  std::int64_t ext_m() const { return p == 2 ? 1 : n; }

  std::string to_string() const {
    switch (kind) {
      case FieldKind::Rationals:
        return "Q";
      case FieldKind::QuadRationals:
        return "Q(sqrt " + std::to_string(d) + ")";
      case FieldKind::PrimeField:
        return "GF(" + std::to_string(p) + ")";
      case FieldKind::QuadExtField:
        return "GF(" + std::to_string(p) + "^2," + std::to_string(n) + ")";
    }
    return {};
  }
};

// ---------------------------------------------------------------------------
// FieldElement
// ---------------------------------------------------------------------------

/// Residue pair a + b*t over a finite field; b = 0 for prime fields.
struct ResPair {
  std::int64_t a = 0;
  std::int64_t b = 0;
  friend bool operator==(const ResPair&, const ResPair&) = default;
};

/// Fraction pair a + b*sqrt(d) over a rational field; b = 0 for plain Q.
struct RatPair {
  mpq_class a{0};
  mpq_class b{0};
  friend bool operator==(const RatPair& x, const RatPair& y) {
    return x.a == y.a && x.b == y.b;
  }
};

/// One exact field element.  Immutable after construction; all operations are
/// pure.  Fractions are kept canonical (lowest terms, positive denominator) by
/// GMP, residues in [0, p).
class FieldElement {
 public:
  FieldElement() = default;

  static FieldElement zero(const FieldSpec& s) { return from_int(s, 0); }
  static FieldElement one(const FieldSpec& s) { return from_int(s, 1); }

  static FieldElement from_int(const FieldSpec& s, std::int64_t v) {
    if (s.finite()) {
      std::int64_t a = v % s.p;
      if (a < 0) a += s.p;
      return FieldElement(s, ResPair{a, 0});
    }
    RatPair r;
    r.a = v;
    return FieldElement(s, std::move(r));
  }

  /// num/den evaluated in the field (finite fields use the modular inverse).
  static FieldElement from_fraction(const FieldSpec& s, std::int64_t num, std::int64_t den) {
    return from_int(s, num) * from_int(s, den).inv();
  }

  static FieldElement from_residues(const FieldSpec& s, std::int64_t a, std::int64_t b) {
    if (!s.finite()) throw SpecMismatch("from_residues: field is not finite");
    if (b != 0 && s.kind != FieldKind::QuadExtField)
      throw SpecMismatch("from_residues: prime field has no adjoined root");
    auto red = [&](std::int64_t v) {
      v %= s.p;
      return v < 0 ? v + s.p : v;
    };
    return FieldElement(s, ResPair{red(a), red(b)});
  }

  static FieldElement from_rationals(const FieldSpec& s, mpq_class a, mpq_class b) {
    if (s.finite()) throw SpecMismatch("from_rationals: field is finite");
    if (b != 0 && s.kind != FieldKind::QuadRationals)
      throw SpecMismatch("from_rationals: Q has no adjoined root");
    a.canonicalize();
    b.canonicalize();
    return FieldElement(s, RatPair{std::move(a), std::move(b)});
  }

  /// The adjoined root (sqrt d, or t); only for the quadratic kinds.
  static FieldElement root(const FieldSpec& s) {
    switch (s.kind) {
      case FieldKind::QuadRationals:
        return from_rationals(s, 0, 1);
      case FieldKind::QuadExtField:
        return from_residues(s, 0, 1);
      default:
        throw SpecMismatch("root: field has no adjoined root");
    }
  }

  const FieldSpec& spec() const { return spec_; }
  bool is_zero() const { return *this == zero(spec_); }
  bool is_one() const { return *this == one(spec_); }

  const ResPair& res() const { return std::get<ResPair>(v_); }
  const RatPair& rat() const { return std::get<RatPair>(v_); }

  friend bool operator==(const FieldElement& x, const FieldElement& y) {
    return x.spec_ == y.spec_ && x.v_ == y.v_;
  }

  FieldElement operator-() const {
    if (spec_.finite()) {
      const auto& r = res();
      return FieldElement(spec_, ResPair{r.a ? spec_.p - r.a : 0, r.b ? spec_.p - r.b : 0});
    }
    const auto& r = rat();
    return FieldElement(spec_, RatPair{-r.a, -r.b});
  }

  FieldElement operator+(const FieldElement& o) const {
    check(o);
    if (spec_.finite()) {
      const auto &x = res(), &y = o.res();
      return FieldElement(spec_, ResPair{addm(x.a, y.a), addm(x.b, y.b)});
    }
    const auto &x = rat(), &y = o.rat();
    return FieldElement(spec_, RatPair{x.a + y.a, x.b + y.b});
  }

  FieldElement operator-(const FieldElement& o) const {
    check(o);
    if (spec_.finite()) {
      const auto &x = res(), &y = o.res();
      return FieldElement(spec_, ResPair{subm(x.a, y.a), subm(x.b, y.b)});
    }
    const auto &x = rat(), &y = o.rat();
    return FieldElement(spec_, RatPair{x.a - y.a, x.b - y.b});
  }

  FieldElement operator*(const FieldElement& o) const {
    check(o);
    if (spec_.finite()) {
      const auto &x = res(), &y = o.res();
      const std::int64_t p = spec_.p;
      if (spec_.kind == FieldKind::PrimeField)
        return FieldElement(spec_, ResPair{x.a * y.a % p, 0});
      // (x.a + x.b t)(y.a + y.b t) with t^2 = s t + m; every product is
      // reduced before summing so intermediates stay below 2^33.
      const std::int64_t s = spec_.ext_s(), m = spec_.ext_m();
      const std::int64_t bb = x.b * y.b % p;
      std::int64_t ca = (x.a * y.a % p + m * bb % p) % p;
      std::int64_t cb = (x.a * y.b % p + x.b * y.a % p + s * bb % p) % p;
      return FieldElement(spec_, ResPair{ca, cb});
    }
    const auto &x = rat(), &y = o.rat();
    if (spec_.kind == FieldKind::Rationals)
      return FieldElement(spec_, RatPair{x.a * y.a, 0});
    mpq_class ca = x.a * y.a + mpq_class(spec_.d) * x.b * y.b;
    mpq_class cb = x.a * y.b + x.b * y.a;
    return FieldElement(spec_, RatPair{std::move(ca), std::move(cb)});
  }

  FieldElement inv() const {
    if (is_zero()) throw DivisionByZero("inverse of zero in " + spec_.to_string());
    if (spec_.finite()) {
      const auto& x = res();
      const std::int64_t p = spec_.p;
      if (spec_.kind == FieldKind::PrimeField)
        return FieldElement(spec_, ResPair{inv_mod(x.a, p), 0});
      // conj(a + b t) = (a + s b) - b t; norm = a^2 + s a b - m b^2 lies in GF(p).
      const std::int64_t s = spec_.ext_s(), m = spec_.ext_m();
      std::int64_t norm = (x.a * x.a % p + s * x.a % p * x.b % p + (p - m) * x.b % p * x.b) % p;
      const std::int64_t ninv = inv_mod(norm, p);
      std::int64_t ca = (x.a + s * x.b) % p * ninv % p;
      std::int64_t cb = (p - x.b) % p * ninv % p;
      return FieldElement(spec_, ResPair{ca, cb});
    }
    const auto& x = rat();
    if (spec_.kind == FieldKind::Rationals)
      return FieldElement(spec_, RatPair{1 / x.a, 0});
    mpq_class norm = x.a * x.a - mpq_class(spec_.d) * x.b * x.b;
    return FieldElement(spec_, RatPair{x.a / norm, -x.b / norm});
  }

  FieldElement operator/(const FieldElement& o) const { return *this * o.inv(); }

  FieldElement pow(std::uint64_t e) const {
    FieldElement acc = one(spec_);
    FieldElement base = *this;
    while (e) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  /// Canonical integer encoding, defined for finite fields only:
  /// enc(a) = a over GF(p), enc(a + b t) = b*p + a over GF(p^2).  enumerate()
  /// yields elements in ascending encoding, so the prime subfield comes first.
  std::uint64_t enc() const {
    const auto& x = res();
    return static_cast<std::uint64_t>(x.b) * static_cast<std::uint64_t>(spec_.p) +
           static_cast<std::uint64_t>(x.a);
  }

  std::string to_string() const;

 private:
  FieldElement(FieldSpec s, ResPair r) : spec_(s), v_(r) {}
  FieldElement(FieldSpec s, RatPair r) : spec_(s), v_(std::move(r)) {}

  void check(const FieldElement& o) const {
    if (!(spec_ == o.spec_))
      throw SpecMismatch("field mismatch: " + spec_.to_string() + " vs " + o.spec_.to_string());
  }

  std::int64_t addm(std::int64_t x, std::int64_t y) const {
    std::int64_t r = x + y;
    return r >= spec_.p ? r - spec_.p : r;
  }
  std::int64_t subm(std::int64_t x, std::int64_t y) const {
    std::int64_t r = x - y;
    return r < 0 ? r + spec_.p : r;
  }
  static std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    // extended Euclid; a in [1, p)
    std::int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr) {
      std::int64_t q = r / nr;
      t -= q * nt;
      std::swap(t, nt);
      r -= q * nr;
      std::swap(r, nr);
    }
    return t < 0 ? t + p : t;
  }

  FieldSpec spec_;
  std::variant<ResPair, RatPair> v_;
};

/// Named operation form used by tests and the CLI; `y` is ignored for neg.
enum class ArithOp { Add, Sub, Mul, Neg };

inline FieldElement arith(ArithOp op, const FieldElement& x, const FieldElement& y) {
  switch (op) {
    case ArithOp::Add:
      return x + y;
    case ArithOp::Sub:
      return x - y;
    case ArithOp::Mul:
      return x * y;
    case ArithOp::Neg:
      return -x;
  }
  throw std::logic_error("arith: bad op");
}

inline FieldElement inv(const FieldElement& x) { return x.inv(); }

// ---------------------------------------------------------------------------
// Enumeration of finite fields
// ---------------------------------------------------------------------------

/// Element with encoding idx (see FieldElement::enc).
inline FieldElement element_at(const FieldSpec& s, std::uint64_t idx) {
  if (!s.finite()) throw InfiniteField("element_at over " + s.to_string());
  if (s.kind == FieldKind::PrimeField)
    return FieldElement::from_residues(s, static_cast<std::int64_t>(idx), 0);
  const auto p = static_cast<std::uint64_t>(s.p);
  return FieldElement::from_residues(s, static_cast<std::int64_t>(idx % p),
                                     static_cast<std::int64_t>(idx / p));
}

/// All q elements in ascending canonical encoding.
inline std::vector<FieldElement> enumerate(const FieldSpec& s) {
  auto q = s.order();
  if (!q) throw InfiniteField("enumerate over " + s.to_string());
  std::vector<FieldElement> out;
  out.reserve(*q);
  for (std::uint64_t i = 0; i < *q; ++i) out.push_back(element_at(s, i));
  return out;
}

inline std::int64_t characteristic(const FieldSpec& s) { return s.characteristic(); }

// ---------------------------------------------------------------------------
// Square roots
// ---------------------------------------------------------------------------

namespace detail {

/// Nonnegative rational square root, if one exists.
inline std::optional<mpq_class> rat_sqrt(const mpq_class& x) {
  if (x < 0) return std::nullopt;
  const mpz_class num = x.get_num(), den = x.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  mpq_class r(rn, rd);
  r.canonicalize();
  return r;
}

inline bool euler_is_square(const FieldElement& x) {
  const auto q = *x.spec().order();
  if (x.is_zero()) return true;
  return x.pow((q - 1) / 2).is_one();
}

/// Tonelli–Shanks over any odd-order finite field, generic in the element ops.
inline std::optional<FieldElement> tonelli_shanks(const FieldElement& x) {
  const FieldSpec& s = x.spec();
  const std::uint64_t q = *s.order();
  if (x.is_zero()) return x;
  if (!euler_is_square(x)) return std::nullopt;
  std::uint64_t m = q - 1;
  unsigned e = 0;
  while ((m & 1) == 0) {
    m >>= 1;
    ++e;
  }
  // first non-residue in encoding order
  FieldElement z = FieldElement::one(s);
  for (std::uint64_t i = 1; i < q; ++i) {
    z = element_at(s, i);
    if (!euler_is_square(z)) break;
  }
  FieldElement c = z.pow(m);
  FieldElement t = x.pow(m);
  FieldElement r = x.pow((m + 1) / 2);
  unsigned se = e;
  while (!t.is_one()) {
    FieldElement tt = t;
    unsigned i = 0;
    while (!tt.is_one()) {
      tt = tt * tt;
      ++i;
    }
    FieldElement b = c;
    for (unsigned k = 0; k + i + 1 < se; ++k) b = b * b;
    r = r * b;
    c = b * b;
    t = t * c;
    se = i;
  }
  return r;
}

}  // namespace detail

/// Canonical square root: empty result is the NotASquare marker.  Finite
/// fields pick the root with the smaller canonical encoding; rational kinds
/// pick the root whose leading fraction is positive.
inline std::optional<FieldElement> sqrt(const FieldElement& x) {
  const FieldSpec& s = x.spec();
  switch (s.kind) {
    case FieldKind::Rationals: {
      auto r = detail::rat_sqrt(x.rat().a);
      if (!r) return std::nullopt;
      return FieldElement::from_rationals(s, *r, 0);
    }
    case FieldKind::QuadRationals: {
      const mpq_class &a = x.rat().a, &b = x.rat().b;
      const mpq_class d(s.d);
      if (b == 0) {
        if (auto r = detail::rat_sqrt(a)) return FieldElement::from_rationals(s, *r, 0);
        if (auto r = detail::rat_sqrt(a / d)) {
          mpq_class y = *r;
          return FieldElement::from_rationals(s, 0, y > 0 ? y : mpq_class(-y));
        }
        return std::nullopt;
      }
      // (u + v sqrt d)^2 = a + b sqrt d  =>  u^2 is a root of z^2 - a z + d b^2 / 4.
      auto disc = detail::rat_sqrt(a * a - d * b * b);
      if (!disc) return std::nullopt;
      for (int sign : {+1, -1}) {
        mpq_class u2 = (a + sign * *disc) / 2;
        auto u = detail::rat_sqrt(u2);
        if (!u || *u == 0) continue;
        mpq_class v = b / (2 * *u);
        if (*u * *u + d * v * v == a && 2 * *u * v == b) {
          if (*u < 0 || (*u == 0 && v < 0)) return FieldElement::from_rationals(s, -*u, -v);
          return FieldElement::from_rationals(s, *u, v);
        }
      }
      return std::nullopt;
    }
    case FieldKind::PrimeField: {
      if (s.p == 2) return x;  // x^2 = x over GF(2)
      auto r = detail::tonelli_shanks(x);
      if (!r) return std::nullopt;
      FieldElement neg = -*r;
      return neg.enc() < r->enc() ? neg : *r;
    }
    case FieldKind::QuadExtField: {
      if (s.p == 2) return x * x;  // Frobenius inverse over GF(4)
      auto r = detail::tonelli_shanks(x);
      if (!r) return std::nullopt;
      FieldElement neg = -*r;
      return neg.enc() < r->enc() ? neg : *r;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Formatting and parsing
// ---------------------------------------------------------------------------

namespace detail {

inline std::string rat_to_string(const mpq_class& v) { return v.get_str(); }

/// Renders a + b*r with the sign of b folded into the separator.
inline std::string pair_to_string(const std::string& a, bool a_zero, bool b_zero,
                                  bool b_negative, const std::string& b_abs, bool b_abs_one) {
  if (b_zero) return a;
  std::string rt = b_abs_one ? "r" : b_abs + "*r";
  if (a_zero) return (b_negative ? "-" : "") + rt;
  return a + (b_negative ? "-" : "+") + rt;
}

/// Minimal cursor over a literal; all parsers in the library share it so that
/// error offsets refer to the original input string.
struct Cursor {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool try_consume(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!try_consume(c))
      throw ParseError(pos, std::string("expected '") + c + "'");
  }
  bool try_keyword(std::string_view kw) {
    skip_ws();
    if (s.substr(pos, kw.size()) == kw) {
      pos += kw.size();
      return true;
    }
    return false;
  }
  mpz_class integer() {
    skip_ws();
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    std::size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) throw ParseError(start, "expected integer");
    return mpz_class(std::string(s.substr(start, pos - start)), 10);
  }
  std::int64_t integer_i64() {
    std::size_t at = pos;
    mpz_class v = integer();
    if (!v.fits_slong_p()) throw ParseError(at, "integer out of range");
    return v.get_si();
  }
};

inline mpq_class rational_from(Cursor& c) {
  mpz_class num = c.integer();
  if (c.try_consume('/')) {
    std::size_t at = c.pos;
    mpz_class den = c.integer();
    if (den == 0) throw ParseError(at, "zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  return mpq_class(num);
}

inline FieldElement element_from(Cursor& c, const FieldSpec& spec) {
  const bool quad = spec.kind == FieldKind::QuadRationals || spec.kind == FieldKind::QuadExtField;
  mpq_class a(0), b(0);
  bool saw_const = false, saw_root = false;

  auto term = [&](bool negate) {
    c.skip_ws();
    std::size_t at = c.pos;
    mpq_class coeff(1);
    bool has_root = false;
    if (c.try_consume('r')) {
      has_root = true;
    } else {
      coeff = rational_from(c);
      if (c.try_consume('*')) {
        c.expect('r');
        has_root = true;
      } else if (c.try_consume('r')) {  // tolerate "2r"
        has_root = true;
      }
    }
    if (negate) coeff = -coeff;
    if (has_root) {
      if (!quad) throw ParseError(at, "field " + spec.to_string() + " has no adjoined root");
      if (saw_root) throw ParseError(at, "duplicate root term");
      saw_root = true;
      b = coeff;
    } else {
      if (saw_const) throw ParseError(at, "duplicate constant term");
      saw_const = true;
      a = coeff;
    }
  };

  bool neg = c.try_consume('-');
  if (!neg) c.try_consume('+');
  term(neg);
  while (true) {
    if (c.try_consume('+')) {
      term(false);
    } else if (c.try_consume('-')) {
      term(true);
    } else {
      break;
    }
  }

  if (!spec.finite()) return FieldElement::from_rationals(spec, a, b);

  auto to_residue = [&](const mpq_class& v) {
    mpz_class num = v.get_num() % spec.p;
    if (num < 0) num += spec.p;
    FieldElement x = FieldElement::from_residues(spec, num.get_si(), 0);
    mpz_class den = v.get_den() % spec.p;
    if (den != 1) {
      FieldElement d = FieldElement::from_residues(spec, den.get_si(), 0);
      if (d.is_zero()) throw ParseError(c.pos, "denominator vanishes in " + spec.to_string());
      x = x * d.inv();
    }
    return x;
  };
  FieldElement out = to_residue(a);
  if (b != 0) out = out + to_residue(b) * FieldElement::root(spec);
  return out;
}

inline FieldSpec field_spec_from(Cursor& c) {
  c.skip_ws();
  std::size_t at = c.pos;
  if (c.try_keyword("Q")) {
    if (c.try_consume('(')) {
      if (!c.try_keyword("sqrt")) throw ParseError(c.pos, "expected 'sqrt'");
      std::int64_t d = c.integer_i64();
      c.expect(')');
      try {
        return FieldSpec::quad_rationals(d);
      } catch (const InvalidSpec& e) {
        throw ParseError(at, e.what());
      }
    }
    return FieldSpec::rationals();
  }
  if (c.try_keyword("GF")) {
    c.expect('(');
    std::int64_t p = c.integer_i64();
    std::int64_t deg = 1, n = 0;
    if (c.try_consume('^')) {
      deg = c.integer_i64();
      if (deg != 2) throw ParseError(c.pos, "only GF(p) and GF(p^2,n) are supported");
      c.expect(',');
      n = c.integer_i64();
    }
    c.expect(')');
    try {
      return deg == 1 ? FieldSpec::prime_field(p) : FieldSpec::quad_ext_field(p, n);
    } catch (const InvalidSpec& e) {
      throw ParseError(at, e.what());
    }
  }
  throw ParseError(at, "expected field spec: Q | Q(sqrt D) | GF(P) | GF(P^2,N)");
}

}  // namespace detail

inline std::string FieldElement::to_string() const {
  if (spec_.finite()) {
    const auto& x = res();
    return detail::pair_to_string(std::to_string(x.a), x.a == 0, x.b == 0, false,
                                  std::to_string(x.b), x.b == 1);
  }
  const auto& x = rat();
  const mpq_class babs = x.b < 0 ? mpq_class(-x.b) : x.b;
  return detail::pair_to_string(x.a.get_str(), x.a == 0, x.b == 0, x.b < 0, babs.get_str(),
                                babs == 1);
}

inline FieldSpec parse_field_spec(std::string_view text) {
  detail::Cursor c{text};
  FieldSpec s = detail::field_spec_from(c);
  if (!c.eof()) throw ParseError(c.pos, "trailing input after field spec");
  return s;
}

inline FieldElement parse_element(const FieldSpec& spec, std::string_view text) {
  detail::Cursor c{text};
  FieldElement e = detail::element_from(c, spec);
  if (!c.eof()) throw ParseError(c.pos, "trailing input after element");
  return e;
}

// ---------------------------------------------------------------------------
// Deterministic random sampling (tests, parameter sweeps)
// ---------------------------------------------------------------------------

/// xorshift-style generator with a fully specified sequence; used instead of
/// <random> distributions so golden outputs are identical on every platform.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

/// Uniform element of a finite field; small random fractions over Q-kinds.
inline FieldElement random_element(const FieldSpec& s, SplitMix64& rng) {
  if (auto q = s.order()) return element_at(s, rng.below(*q));
  auto small = [&] {
    std::int64_t num = static_cast<std::int64_t>(rng.below(19)) - 9;
    std::int64_t den = static_cast<std::int64_t>(rng.below(9)) + 1;
    mpq_class v(num, den);
    v.canonicalize();
    return v;
  };
  if (s.kind == FieldKind::Rationals) return FieldElement::from_rationals(s, small(), 0);
  return FieldElement::from_rationals(s, small(), small());
}

inline FieldElement random_nonzero(const FieldSpec& s, SplitMix64& rng) {
  for (;;) {
    FieldElement e = random_element(s, rng);
    if (!e.is_zero()) return e;
  }
}

}  // namespace msc2
