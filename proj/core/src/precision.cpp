#include "ckrice/precision.hpp"

#include <cmath>
#include <string>

#include "ckrice/errors.hpp"

namespace ckrice {

PrecisionContext make_context(long precision_bits) {
  if (precision_bits < kMinPrecisionBits) {
    throw DomainError("precision_bits must be >= 64, got " + std::to_string(precision_bits));
  }
  return {precision_bits, ldexp(Real(1, 64), -(precision_bits - 8))};
}

PrecisionContext PrecisionContext::widened(long extra_bits) const { return make_context(precision_bits + extra_bits); }

PrecisionContext context_for_digits(int digits) {
  const auto bits = static_cast<long>(std::ceil(digits * 3.321928094887362));
  return make_context(bits < kMinPrecisionBits ? kMinPrecisionBits : bits);
}

}  // namespace ckrice
