#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "msc2/automorphisms.hpp"
#include "msc2/msc.hpp"

namespace msc2 {

/// First g in GL(2,q) enumeration order with g A (g^{-1})^(x2) = B, if any.
/// Exhaustive, so a None answer is a proof of non-isomorphism over this field.
inline std::optional<GL2Element> find_isomorphism(const Msc& a, const Msc& b,
                                                  std::uint64_t cap = kDefaultGlCap) {
  if (!(a.spec() == b.spec())) throw SpecMismatch("find_isomorphism: field mismatch");
  std::optional<GL2Element> witness;
  const std::uint64_t q = field_order_for_enumeration(a.spec(), cap);
  gl2_for_each_range(a.spec(), q, 0, q * q * q * q, [&](const GL2Element& g) {
    if (!witness && a.transformed(g) == b) witness = g;
  });
  return witness;
}

/// The orbit {g A (g^{-1})^(x2) : g in GL(2,q)} as a deduplicated set of
/// MSCs, in first-seen enumeration order.  Deduplication goes through the
/// canonical serialization, so no hashing of field elements is involved.
inline std::vector<Msc> orbit(const Msc& a, std::uint64_t cap = kDefaultOrbitCap) {
  const std::uint64_t q = field_order_for_enumeration(a.spec(), cap);
  std::vector<Msc> out;
  std::set<std::string> seen;
  gl2_for_each_range(a.spec(), q, 0, q * q * q * q, [&](const GL2Element& g) {
    Msc img = a.transformed(g);
    if (seen.insert(img.to_string()).second) out.push_back(std::move(img));
  });
  return out;
}

/// Orbit-stabilizer identity |orbit(A)| * |Aut(A)| = |GL(2,q)|; the stabilizer
/// of A under the basis-change action is exactly Aut(A).
inline bool orbit_stabilizer_check(const Msc& a, std::uint64_t cap = kDefaultOrbitCap) {
  const std::uint64_t q = field_order_for_enumeration(a.spec(), cap);
  const auto orb = orbit(a, cap);
  const auto aut = automorphisms_bruteforce(a, cap);
  return orb.size() * aut.size() == gl2_order(q);
}

}  // namespace msc2
