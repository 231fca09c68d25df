#pragma once

#include <string>
#include <string_view>

#include "ckrice/real.hpp"

namespace ckrice {

// A value stored as log10 of its magnitude plus a phase, for quantities far
// outside the MPFR exponent range (e.g. beta factors at heights 1e21).
// Real values use phase 0 (positive) or pi (negative); zero has magnitude -inf.
class LogScaled {
 public:
  enum class Kind { kReal, kComplex };

  LogScaled() = default;
  LogScaled(Real log10_magnitude, Real phase, Kind kind);

  static LogScaled from_real(const Real& x);
  static LogScaled from_complex(const Complex& z);
  // From a natural logarithm log(z) = log|z| + i arg z; the phase is reduced to (-pi, pi].
  static LogScaled from_log(const Complex& log_value, Kind kind = Kind::kComplex);

  [[nodiscard]] const Real& log10_magnitude() const { return log10_magnitude_; }
  [[nodiscard]] const Real& phase() const { return phase_; }
  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] bool is_zero() const;
  // -1, 0, +1; for complex values the sign of the real part direction cos(phase).
  [[nodiscard]] int sign() const;

  // True when to_complex() would return a finite, nonzero-if-nonzero MPFR number.
  [[nodiscard]] bool representable() const;
  // Throws RangeError when not representable.
  [[nodiscard]] Complex to_complex(Precision prec) const;
  [[nodiscard]] Real to_real(Precision prec) const;

  friend LogScaled operator*(const LogScaled& a, const LogScaled& b);
  friend LogScaled operator/(const LogScaled& a, const LogScaled& b);

  // "log10=<d>;phase=<d>"
  [[nodiscard]] std::string serialize() const;
  static LogScaled parse(std::string_view text, Precision prec);

 private:
  Real log10_magnitude_;
  Real phase_;
  Kind kind_ = Kind::kReal;
};

}  // namespace ckrice
