#pragma once

#include "ckrice/real.hpp"

namespace ckrice {

// Working precision plus the relative truncation tolerance used by every
// adaptive series in the library.
struct PrecisionContext {
  long precision_bits;
  Real series_eps;

  [[nodiscard]] Precision bits() const { return precision_bits; }
  // Same tolerance policy at a higher working precision.
  [[nodiscard]] PrecisionContext widened(long extra_bits) const;
};

// series_eps = 2^-(precision_bits - 8). Throws DomainError for precision_bits < 64.
PrecisionContext make_context(long precision_bits);

// Smallest context carrying at least `digits` significant decimal digits.
PrecisionContext context_for_digits(int digits);

inline constexpr long kMinPrecisionBits = 64;

}  // namespace ckrice
