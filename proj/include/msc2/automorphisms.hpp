#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "msc2/msc.hpp"

namespace msc2 {

// ---------------------------------------------------------------------------
// Group descriptions (right-hand sides of the classification tables)
// ---------------------------------------------------------------------------

enum class GroupShape {
  Trivial,         ///< {I}
  OrderTwoDiag,    ///< {I, diag(1,-1)}; collapses to {I} in characteristic 2
  Torus,           ///< {diag(1,d) : d != 0}
  ScaleFirst,      ///< {[[a,0],[0,1]] : a != 0}
  UnipotentLower,  ///< {[[1,0],[c,1]] : c}
  Borel,           ///< {[[1,0],[c,d]] : d != 0}
  Parabolic,       ///< {[[a,0],[c,a^2]] : a != 0}
  FiniteList,      ///< explicit element list
};

inline std::string shape_name(GroupShape s) {
  switch (s) {
    case GroupShape::Trivial: return "Trivial";
    case GroupShape::OrderTwoDiag: return "OrderTwoDiag";
    case GroupShape::Torus: return "Torus";
    case GroupShape::ScaleFirst: return "ScaleFirst";
    case GroupShape::UnipotentLower: return "UnipotentLower";
    case GroupShape::Borel: return "Borel";
    case GroupShape::Parabolic: return "Parabolic";
    case GroupShape::FiniteList: return "FiniteList";
  }
  return {};
}

/// Symbolic description of an automorphism group: a shape tag plus, for
/// FiniteList, the explicit elements.  Elements of the closed-form tables that
/// need a root missing from the field (sqrt 3) are not representable; they are
/// recorded in `omissions` so that point-count differences stay explained.
struct GroupDescription {
  GroupShape shape;
  FieldSpec spec;
  std::vector<GL2Element> elements;    ///< FiniteList only
  std::vector<std::string> omissions;  ///< notes for unrepresentable elements

  static GroupDescription trivial(const FieldSpec& s) {
    return {GroupShape::Trivial, s, {}, {}};
  }
  static GroupDescription of_shape(GroupShape sh, const FieldSpec& s) {
    return {sh, s, {}, {}};
  }
  static GroupDescription finite_list(const FieldSpec& s, std::vector<GL2Element> elems,
                                      std::vector<std::string> omitted = {}) {
    // dedup (the order-two shapes collapse in characteristic 2)
    std::vector<GL2Element> uniq;
    for (const auto& g : elems) {
      bool seen = false;
      for (const auto& h : uniq) seen = seen || h == g;
      if (!seen) uniq.push_back(g);
    }
    return {GroupShape::FiniteList, s, std::move(uniq), std::move(omitted)};
  }

  bool contains(const GL2Element& g) const {
    if (!(g.spec() == spec)) throw SpecMismatch("GroupDescription::contains: field mismatch");
    const FieldElement one = FieldElement::one(spec);
    const FieldElement zero = FieldElement::zero(spec);
    switch (shape) {
      case GroupShape::Trivial:
        return g == GL2Element::identity(spec);
      case GroupShape::OrderTwoDiag:
        return g.b == zero && g.c == zero && g.a == one && (g.d == one || g.d == -one);
      case GroupShape::Torus:
        return g.a == one && g.b == zero && g.c == zero;
      case GroupShape::ScaleFirst:
        return g.b == zero && g.c == zero && g.d == one;
      case GroupShape::UnipotentLower:
        return g.a == one && g.b == zero && g.d == one;
      case GroupShape::Borel:
        return g.a == one && g.b == zero;
      case GroupShape::Parabolic:
        return g.b == zero && g.d == g.a * g.a;
      case GroupShape::FiniteList:
        for (const auto& h : elements)
          if (h == g) return true;
        return false;
    }
    return false;
  }

  /// All elements lying in the (finite) base field, sorted by encoding.
  std::vector<GL2Element> rational_points() const {
    if (!spec.finite())
      throw InfiniteField("rational points over " + spec.to_string() +
                          ": use sample_points / contains");
    const FieldElement one = FieldElement::one(spec);
    const FieldElement zero = FieldElement::zero(spec);
    std::vector<GL2Element> out;
    const std::vector<FieldElement> elems = enumerate(spec);
    auto push = [&](const FieldElement& a, const FieldElement& b, const FieldElement& c,
                    const FieldElement& d) {
      auto g = GL2Element::make(a, b, c, d);
      if (g) out.push_back(*g);
    };
    switch (shape) {
      case GroupShape::Trivial:
        push(one, zero, zero, one);
        break;
      case GroupShape::OrderTwoDiag:
        push(one, zero, zero, one);
        if (!(-one == one)) push(one, zero, zero, -one);
        break;
      case GroupShape::Torus:
        for (const auto& d : elems)
          if (!d.is_zero()) push(one, zero, zero, d);
        break;
      case GroupShape::ScaleFirst:
        for (const auto& a : elems)
          if (!a.is_zero()) push(a, zero, zero, one);
        break;
      case GroupShape::UnipotentLower:
        for (const auto& c : elems) push(one, zero, c, one);
        break;
      case GroupShape::Borel:
        for (const auto& c : elems)
          for (const auto& d : elems)
            if (!d.is_zero()) push(one, zero, c, d);
        break;
      case GroupShape::Parabolic:
        for (const auto& a : elems) {
          if (a.is_zero()) continue;
          for (const auto& c : elems) push(a, zero, c, a * a);
        }
        break;
      case GroupShape::FiniteList:
        out = elements;
        break;
    }
    std::sort(out.begin(), out.end(),
              [](const GL2Element& x, const GL2Element& y) { return x.enc_key() < y.enc_key(); });
    return out;
  }

  std::uint64_t rational_point_count() const {
    return static_cast<std::uint64_t>(rational_points().size());
  }

  /// Finite fields: all rational points.  Infinite fields: n deterministic
  /// random instantiations of the shape parameters (plus the explicit
  /// elements), for inclusion checks.
  std::vector<GL2Element> sample_points(int n, std::uint64_t seed) const {
    if (spec.finite()) return rational_points();
    const FieldElement one = FieldElement::one(spec);
    const FieldElement zero = FieldElement::zero(spec);
    SplitMix64 rng(seed);
    std::vector<GL2Element> out;
    auto push = [&](const FieldElement& a, const FieldElement& b, const FieldElement& c,
                    const FieldElement& d) {
      auto g = GL2Element::make(a, b, c, d);
      if (g) out.push_back(*g);
    };
    switch (shape) {
      case GroupShape::Trivial:
        push(one, zero, zero, one);
        break;
      case GroupShape::OrderTwoDiag:
        push(one, zero, zero, one);
        push(one, zero, zero, -one);
        break;
      case GroupShape::Torus:
        for (int i = 0; i < n; ++i) push(one, zero, zero, random_nonzero(spec, rng));
        break;
      case GroupShape::ScaleFirst:
        for (int i = 0; i < n; ++i) push(random_nonzero(spec, rng), zero, zero, one);
        break;
      case GroupShape::UnipotentLower:
        for (int i = 0; i < n; ++i) push(one, zero, random_element(spec, rng), one);
        break;
      case GroupShape::Borel:
        for (int i = 0; i < n; ++i)
          push(one, zero, random_element(spec, rng), random_nonzero(spec, rng));
        break;
      case GroupShape::Parabolic:
        for (int i = 0; i < n; ++i) {
          FieldElement a = random_nonzero(spec, rng);
          push(a, zero, random_element(spec, rng), a * a);
        }
        break;
      case GroupShape::FiniteList:
        out = elements;
        break;
    }
    return out;
  }

  std::string to_string() const {
    std::string out = shape_name(shape);
    if (shape == GroupShape::FiniteList) {
      out += "{";
      for (std::size_t i = 0; i < elements.size(); ++i) {
        if (i) out += ",";
        out += elements[i].to_string();
      }
      out += "}";
    }
    for (const auto& note : omissions) out += " [" + note + "]";
    return out;
  }
};

// ---------------------------------------------------------------------------
// Membership predicate and brute-force oracle
// ---------------------------------------------------------------------------

inline bool is_automorphism(const Msc& a, const Mat& g) {
  return !det2(g).is_zero() && aut_residual(a, g).is_zero();
}

inline bool is_automorphism(const Msc& a, const GL2Element& g) {
  return aut_residual(a, g.to_mat()).is_zero();
}

namespace detail {

/// Machine-word models of the two finite-field kinds, used by the enumeration
/// oracle so the inner loop never touches FieldElement.  The scan results are
/// pinned against the generic predicate by property tests.
struct FpCtx {
  std::int64_t p;
  using E = std::int64_t;
  E decode(std::uint64_t enc) const { return static_cast<std::int64_t>(enc); }
  E add(E x, E y) const {
    std::int64_t r = x + y;
    return r >= p ? r - p : r;
  }
  E sub(E x, E y) const {
    std::int64_t r = x - y;
    return r < 0 ? r + p : r;
  }
  E mul(E x, E y) const { return x * y % p; }
  bool nonzero(E x) const { return x != 0; }
};

struct Fp2Ctx {
  std::int64_t p, s, m;
  struct E {
    std::int64_t u, v;
  };
  E decode(std::uint64_t enc) const {
    return {static_cast<std::int64_t>(enc % static_cast<std::uint64_t>(p)),
            static_cast<std::int64_t>(enc / static_cast<std::uint64_t>(p))};
  }
  E add(E x, E y) const {
    std::int64_t u = x.u + y.u, v = x.v + y.v;
    return {u >= p ? u - p : u, v >= p ? v - p : v};
  }
  E sub(E x, E y) const {
    std::int64_t u = x.u - y.u, v = x.v - y.v;
    return {u < 0 ? u + p : u, v < 0 ? v + p : v};
  }
  E mul(E x, E y) const {
    const std::int64_t bb = x.v * y.v % p;
    return {(x.u * y.u % p + m * bb % p) % p,
            (x.u * y.v % p + x.v * y.u % p + s * bb % p) % p};
  }
  bool nonzero(E x) const { return x.u != 0 || x.v != 0; }
};

/// Scans tuple indices [lo, hi) of GL(2,q) candidates and reports the indices
/// whose matrix satisfies g A = A (g (x) g).  Early-exits on the first nonzero
/// residual entry, column by column.
template <class Ctx>
void aut_scan(const Ctx& fx, const std::array<typename Ctx::E, 8>& A, std::uint64_t q,
              std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& hits) {
  using E = typename Ctx::E;
  for (std::uint64_t idx = lo; idx < hi; ++idx) {
    const E g00 = fx.decode(idx / (q * q * q));
    const E g01 = fx.decode(idx / (q * q) % q);
    const E g10 = fx.decode(idx / q % q);
    const E g11 = fx.decode(idx % q);
    if (!fx.nonzero(fx.sub(fx.mul(g00, g11), fx.mul(g01, g10)))) continue;
    const E g[2][2] = {{g00, g01}, {g10, g11}};
    bool ok = true;
    for (int j = 0; j < 4 && ok; ++j) {
      E col[4];
      for (int l = 0; l < 4; ++l)
        col[l] = fx.mul(g[l >> 1][j >> 1], g[l & 1][j & 1]);  // (g (x) g) column j
      for (int i = 0; i < 2 && ok; ++i) {
        E r = fx.add(fx.mul(g[i][0], A[static_cast<std::size_t>(j)]),
                     fx.mul(g[i][1], A[static_cast<std::size_t>(4 + j)]));
        for (int l = 0; l < 4; ++l)
          r = fx.sub(r, fx.mul(A[static_cast<std::size_t>(i * 4 + l)], col[l]));
        ok = !fx.nonzero(r);
      }
    }
    if (ok) hits.push_back(idx);
  }
}

template <class Ctx>
std::array<typename Ctx::E, 8> msc_entries(const Ctx& fx, const Msc& a) {
  std::array<typename Ctx::E, 8> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j)
      out[static_cast<std::size_t>(i * 4 + j)] = fx.decode(a.entry(i, j).enc());
  return out;
}

template <class Ctx>
std::vector<std::uint64_t> aut_scan_all(const Ctx& fx, const Msc& a, std::uint64_t q,
                                        int jobs) {
  const auto entries = msc_entries(fx, a);
  const std::uint64_t total = q * q * q * q;
  if (jobs <= 1) {
    std::vector<std::uint64_t> hits;
    aut_scan(fx, entries, q, 0, total, hits);
    return hits;
  }
  const auto n = static_cast<std::uint64_t>(jobs);
  std::vector<std::vector<std::uint64_t>> parts(n);
  std::vector<std::thread> workers;
  for (std::uint64_t w = 0; w < n; ++w) {
    const std::uint64_t lo = total * w / n, hi = total * (w + 1) / n;
    workers.emplace_back(
        [&, w, lo, hi] { aut_scan(fx, entries, q, lo, hi, parts[w]); });
  }
  for (auto& t : workers) t.join();
  std::vector<std::uint64_t> hits;
  for (auto& part : parts) hits.insert(hits.end(), part.begin(), part.end());
  return hits;
}

inline GL2Element gl2_at_index(const FieldSpec& s, std::uint64_t q, std::uint64_t idx) {
  return *GL2Element::make(element_at(s, idx / (q * q * q)), element_at(s, idx / (q * q) % q),
                           element_at(s, idx / q % q), element_at(s, idx % q));
}

}  // namespace detail

/// All automorphisms of A over its (finite) field, by exhaustive enumeration
/// of GL(2,q) in lexicographic encoding order.  Enumeration cannot be wrong:
/// this is the independent oracle the closed-form tables are checked against.
inline std::vector<GL2Element> automorphisms_bruteforce(const Msc& a,
                                                        std::uint64_t cap = kDefaultGlCap,
                                                        int jobs = 1) {
  const FieldSpec& s = a.spec();
  const std::uint64_t q = field_order_for_enumeration(s, cap);
  std::vector<std::uint64_t> hits;
  if (s.kind == FieldKind::PrimeField) {
    hits = detail::aut_scan_all(detail::FpCtx{s.p}, a, q, jobs);
  } else {
    hits = detail::aut_scan_all(detail::Fp2Ctx{s.p, s.ext_s(), s.ext_m()}, a, q, jobs);
  }
  std::vector<GL2Element> out;
  out.reserve(hits.size());
  for (std::uint64_t idx : hits) out.push_back(detail::gl2_at_index(s, q, idx));
  return out;
}

// ---------------------------------------------------------------------------
// Group sanity and table comparison
// ---------------------------------------------------------------------------

struct GroupSanityFailure {
  std::string reason;
  GL2Element witness;
};

/// A set of invertible matrices is accepted when it contains the identity and
/// is closed under products and inverses.
inline std::optional<GroupSanityFailure> group_sanity_failure(
    const std::vector<GL2Element>& elems) {
  if (elems.empty())
    return GroupSanityFailure{"missing identity", GL2Element::identity(FieldSpec::rationals())};
  const FieldSpec& s = elems.front().spec();
  std::set<std::string> keys;
  for (const auto& g : elems) keys.insert(g.to_string());
  const GL2Element id = GL2Element::identity(s);
  if (!keys.count(id.to_string())) return GroupSanityFailure{"missing identity", id};
  for (const auto& g : elems)
    for (const auto& h : elems) {
      GL2Element gh = g * h;
      if (!keys.count(gh.to_string()))
        return GroupSanityFailure{"product " + g.to_string() + " * " + h.to_string() + " missing",
                                  gh};
    }
  for (const auto& g : elems) {
    GL2Element gi = g.inverse();
    if (!keys.count(gi.to_string()))
      return GroupSanityFailure{"inverse of " + g.to_string() + " missing", gi};
  }
  return std::nullopt;
}

inline bool group_sanity(const std::vector<GL2Element>& elems) {
  return !group_sanity_failure(elems);
}

/// Symmetric-difference verdict between a brute-force element list and a
/// description's rational points.
struct MatchResult {
  std::vector<GL2Element> oracle_extra;       ///< found by enumeration, not described
  std::vector<GL2Element> description_extra;  ///< described, not found by enumeration

  bool equal() const { return oracle_extra.empty() && description_extra.empty(); }
  std::string verdict() const {
    if (equal()) return "Equal";
    std::string v;
    if (!oracle_extra.empty()) v += "OracleExtra(" + std::to_string(oracle_extra.size()) + ")";
    if (!description_extra.empty()) {
      if (!v.empty()) v += "+";
      v += "DescriptionExtra(" + std::to_string(description_extra.size()) + ")";
    }
    return v;
  }
};

inline MatchResult match_description(const std::vector<GL2Element>& oracle,
                                     const GroupDescription& desc) {
  std::vector<GL2Element> described = desc.rational_points();
  auto key = [](const GL2Element& g) { return g.enc_key(); };
  std::vector<GL2Element> o = oracle;
  std::sort(o.begin(), o.end(),
            [&](const GL2Element& x, const GL2Element& y) { return key(x) < key(y); });
  MatchResult res;
  std::size_t i = 0, j = 0;
  while (i < o.size() || j < described.size()) {
    if (j == described.size() || (i < o.size() && key(o[i]) < key(described[j]))) {
      res.oracle_extra.push_back(o[i++]);
    } else if (i == o.size() || key(described[j]) < key(o[i])) {
      res.description_extra.push_back(described[j++]);
    } else {
      ++i;
      ++j;
    }
  }
  return res;
}

}  // namespace msc2
