#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace msc2 {

/// Error taxonomy shared across the library. The CLI maps these onto
/// process exit codes, so new failure modes should reuse one of these
/// types rather than throwing std::runtime_error directly.

/// Operands belong to different fields.
struct SpecMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Inverse of zero requested.
struct DivisionByZero : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An enumeration was requested over an infinite field.
struct InfiniteField : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An enumeration would exceed the configured size cap.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Matrix inversion on a singular matrix.
struct Singular : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A catalog family was instantiated over a field of the wrong characteristic.
struct CharMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Wrong number (or set) of parameters for a catalog family.
struct ArityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid construction data (bad prime, residue instead of non-residue, ...).
struct InvalidSpec : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Text input rejected; carries the byte offset of the first bad character.
struct ParseError : std::runtime_error {
  std::size_t offset;
  ParseError(std::size_t off, const std::string& what)
      : std::runtime_error(what + " (byte " + std::to_string(off) + ")"),
        offset(off) {}
};

}  // namespace msc2
