#pragma once

// Arbitrary-precision real and complex scalars backed by MPFR.
//
// Every Real carries its own precision. Binary operations produce a result at
// the larger of the two operand precisions; operations with machine integers
// keep the precision of the Real operand. All rounding is to nearest.

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace ckrice {

using Precision = mpfr_prec_t;

class Real {
 public:
  Real() : Real(Precision{64}) {}
  explicit Real(Precision prec);
  Real(long value, Precision prec);

  static Real from_double(double value, Precision prec);
  static Real from_string(std::string_view text, Precision prec);
  static Real from_mpz(const mpz_class& value, Precision prec);
  static Real from_mpq(const mpq_class& value, Precision prec);
  static Real infinity(int sign, Precision prec);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  [[nodiscard]] Precision precision() const { return mpfr_get_prec(value_); }
  // Rounds in place to `prec` bits.
  void set_precision(Precision prec);
  [[nodiscard]] Real rounded(Precision prec) const;

  [[nodiscard]] double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  [[nodiscard]] long to_long() const { return mpfr_get_si(value_, MPFR_RNDN); }
  [[nodiscard]] int sign() const { return mpfr_sgn(value_); }
  [[nodiscard]] bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  [[nodiscard]] bool is_finite() const { return mpfr_number_p(value_) != 0; }
  [[nodiscard]] bool is_integer() const { return mpfr_integer_p(value_) != 0; }
  // Binary exponent e with 0.5 <= |x|/2^e < 1; meaningless for zero.
  [[nodiscard]] long exponent2() const { return mpfr_get_exp(value_); }

  mpfr_ptr get() { return value_; }
  [[nodiscard]] mpfr_srcptr get() const { return value_; }

  Real operator-() const;
  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real& operator+=(long rhs);
  Real& operator-=(long rhs);
  Real& operator*=(long rhs);
  Real& operator/=(long rhs);

  friend Real operator+(Real lhs, const Real& rhs);
  friend Real operator-(Real lhs, const Real& rhs);
  friend Real operator*(Real lhs, const Real& rhs);
  friend Real operator/(Real lhs, const Real& rhs);
  friend Real operator+(Real lhs, long rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, long rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, long rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, long rhs) { return lhs /= rhs; }
  friend Real operator+(long lhs, Real rhs) { return rhs += lhs; }
  friend Real operator*(long lhs, Real rhs) { return rhs *= lhs; }
  friend Real operator-(long lhs, const Real& rhs);
  friend Real operator/(long lhs, const Real& rhs);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.value_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, long b);

 private:
  mpfr_t value_;
};

// Precision-aware constants.
Real pi(Precision prec);
Real euler_gamma(Precision prec);
Real log_two_pi(Precision prec);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real expm1(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real log10(const Real& x);
Real log2(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& base, const Real& exponent);
Real pow(const Real& base, long exponent);
Real floor(const Real& x);
Real round(const Real& x);
// x * 2^k, exact.
Real ldexp(const Real& x, long k);
Real hypot(const Real& x, const Real& y);
const Real& max_abs(const Real& a, const Real& b);

// Scientific notation with up to `digits` significant digits, e.g. "-1.7750244e-9";
// trailing zeros are dropped and zero prints as "0".
std::string to_scientific(const Real& x, int digits);
// Shortest decimal string that parses back to the same value at x's precision.
std::string to_shortest_string(const Real& x);

class Complex {
 public:
  Complex() = default;
  explicit Complex(Precision prec) : re_(prec), im_(prec) {}
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit Complex(Real re) : re_(std::move(re)), im_(re_.precision()) {}

  static Complex from_doubles(double re, double im, Precision prec);

  [[nodiscard]] const Real& re() const { return re_; }
  [[nodiscard]] const Real& im() const { return im_; }
  Real& re() { return re_; }
  Real& im() { return im_; }

  [[nodiscard]] Precision precision() const;
  void set_precision(Precision prec);
  [[nodiscard]] Complex rounded(Precision prec) const;
  [[nodiscard]] bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  [[nodiscard]] bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
  [[nodiscard]] bool is_real() const { return im_.is_zero(); }

  Complex operator-() const { return {-re_, -im_}; }
  Complex& operator+=(const Complex& rhs);
  Complex& operator-=(const Complex& rhs);
  Complex& operator*=(const Complex& rhs);
  Complex& operator/=(const Complex& rhs);
  Complex& operator+=(const Real& rhs);
  Complex& operator-=(const Real& rhs);
  Complex& operator*=(const Real& rhs);
  Complex& operator/=(const Real& rhs);
  Complex& operator+=(long rhs);
  Complex& operator-=(long rhs);
  Complex& operator*=(long rhs);
  Complex& operator/=(long rhs);

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator+(Complex a, const Real& b) { return a += b; }
  friend Complex operator-(Complex a, const Real& b) { return a -= b; }
  friend Complex operator*(Complex a, const Real& b) { return a *= b; }
  friend Complex operator/(Complex a, const Real& b) { return a /= b; }
  friend Complex operator+(const Real& a, Complex b) { return b += a; }
  friend Complex operator*(const Real& a, Complex b) { return b *= a; }
  friend Complex operator-(const Real& a, const Complex& b) { return Complex(a - b.re_, -b.im_); }
  friend Complex operator/(const Real& a, const Complex& b);
  friend Complex operator+(Complex a, long b) { return a += b; }
  friend Complex operator-(Complex a, long b) { return a -= b; }
  friend Complex operator*(Complex a, long b) { return a *= b; }
  friend Complex operator/(Complex a, long b) { return a /= b; }
  friend Complex operator*(long a, Complex b) { return b *= a; }
  friend Complex operator-(long a, const Complex& b);
  friend Complex operator/(long a, const Complex& b);
  friend bool operator==(const Complex& a, const Complex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

 private:
  Real re_;
  Real im_;
};

Complex conj(const Complex& z);
Real abs(const Complex& z);
Real norm(const Complex& z);  // |z|^2
// Principal argument in (-pi, pi].
Real arg(const Complex& z);
Complex exp(const Complex& z);
// Principal branch.
Complex log(const Complex& z);
Complex sin(const Complex& z);
// base^exponent = exp(exponent * log(base)), base > 0.
Complex pow(const Real& base, const Complex& exponent);
Complex pow(const Complex& base, const Complex& exponent);
// exp(i * theta)
Complex unit_phase(const Real& theta);

// Reduces an angle to (-pi, pi].
Real reduce_phase(const Real& theta);

}  // namespace ckrice
