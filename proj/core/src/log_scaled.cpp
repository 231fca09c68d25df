#include "ckrice/log_scaled.hpp"

#include <mpfr.h>

#include <string>

#include "ckrice/errors.hpp"

namespace ckrice {

namespace {

Real ln10(Precision prec) { return log(Real(10, prec)); }

}  // namespace

LogScaled::LogScaled(Real log10_magnitude, Real phase, Kind kind)
    : log10_magnitude_(std::move(log10_magnitude)), phase_(std::move(phase)), kind_(kind) {}

LogScaled LogScaled::from_real(const Real& x) {
  const Precision prec = x.precision();
  if (x.is_zero()) return {Real::infinity(-1, prec), Real(prec), Kind::kReal};
  return {log10(abs(x)), x.sign() < 0 ? pi(prec) : Real(prec), Kind::kReal};
}

LogScaled LogScaled::from_complex(const Complex& z) {
  const Precision prec = z.precision();
  if (z.is_zero()) return {Real::infinity(-1, prec), Real(prec), Kind::kComplex};
  return {log10(abs(z)), arg(z), Kind::kComplex};
}

LogScaled LogScaled::from_log(const Complex& log_value, Kind kind) {
  const Precision prec = log_value.precision();
  Real phase = reduce_phase(log_value.im());
  if (kind == Kind::kReal) {
    // Snap to 0 or pi; callers only pass real-valued logarithms here.
    phase = abs(phase) * 2 > pi(prec) ? pi(prec) : Real(prec);
  }
  return {log_value.re() / ln10(prec), std::move(phase), kind};
}

bool LogScaled::is_zero() const { return mpfr_inf_p(log10_magnitude_.get()) && log10_magnitude_.sign() < 0; }

int LogScaled::sign() const {
  if (is_zero()) return 0;
  const Real c = cos(phase_);
  return c.sign() < 0 ? -1 : 1;
}

bool LogScaled::representable() const {
  if (is_zero()) return true;
  if (!log10_magnitude_.is_finite()) return false;
  // log2 of the magnitude must sit inside MPFR's exponent range with margin.
  const double log2_mag = log10_magnitude_.to_double() * 3.321928094887362;
  return log2_mag > static_cast<double>(mpfr_get_emin()) + 64 && log2_mag < static_cast<double>(mpfr_get_emax()) - 64;
}

Complex LogScaled::to_complex(Precision prec) const {
  if (is_zero()) return Complex(prec);
  if (!representable()) throw RangeError("LogScaled value outside representable range: " + serialize());
  const Real magnitude = exp(log10_magnitude_.rounded(prec + 64) * ln10(prec + 64)).rounded(prec);
  return unit_phase(phase_.rounded(prec)) * magnitude;
}

Real LogScaled::to_real(Precision prec) const {
  if (is_zero()) return Real(prec);
  if (!representable()) throw RangeError("LogScaled value outside representable range: " + serialize());
  Real magnitude = exp(log10_magnitude_.rounded(prec + 64) * ln10(prec + 64)).rounded(prec);
  return sign() < 0 ? -magnitude : magnitude;
}

LogScaled operator*(const LogScaled& a, const LogScaled& b) {
  const auto kind = (a.kind_ == LogScaled::Kind::kComplex || b.kind_ == LogScaled::Kind::kComplex)
                        ? LogScaled::Kind::kComplex
                        : LogScaled::Kind::kReal;
  if (a.is_zero() || b.is_zero()) {
    const Precision prec = std::max(a.log10_magnitude_.precision(), b.log10_magnitude_.precision());
    return {Real::infinity(-1, prec), Real(prec), kind};
  }
  return {a.log10_magnitude_ + b.log10_magnitude_, reduce_phase(a.phase_ + b.phase_), kind};
}

LogScaled operator/(const LogScaled& a, const LogScaled& b) {
  if (b.is_zero()) throw DomainError("LogScaled division by zero");
  const auto kind = (a.kind_ == LogScaled::Kind::kComplex || b.kind_ == LogScaled::Kind::kComplex)
                        ? LogScaled::Kind::kComplex
                        : LogScaled::Kind::kReal;
  if (a.is_zero()) return a;
  return {a.log10_magnitude_ - b.log10_magnitude_, reduce_phase(a.phase_ - b.phase_), kind};
}

std::string LogScaled::serialize() const {
  return "log10=" + to_shortest_string(log10_magnitude_) + ";phase=" + to_shortest_string(phase_);
}

LogScaled LogScaled::parse(std::string_view text, Precision prec) {
  constexpr std::string_view kMag = "log10=";
  constexpr std::string_view kPhase = ";phase=";
  const auto split = text.find(kPhase);
  if (!text.starts_with(kMag) || split == std::string_view::npos) {
    throw ParseError("malformed LogScaled: '" + std::string(text) + "'", 0);
  }
  const std::string_view mag = text.substr(kMag.size(), split - kMag.size());
  const std::string_view phase = text.substr(split + kPhase.size());
  Real log10_mag(prec);
  if (mag == "-inf") {
    log10_mag = Real::infinity(-1, prec);
  } else {
    log10_mag = Real::from_string(mag, prec);
  }
  Real ph = Real::from_string(phase, prec);
  // A bare sign phase (0 or pi) round-trips as a real value.
  const bool real_phase = ph.is_zero() || abs(ph - pi(prec)) < ldexp(Real(1, prec), -static_cast<long>(prec) + 8);
  return {std::move(log10_mag), std::move(ph), real_phase ? Kind::kReal : Kind::kComplex};
}

}  // namespace ckrice
