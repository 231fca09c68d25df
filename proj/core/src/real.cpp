#include "ckrice/real.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

namespace ckrice {

namespace {

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

Precision max_prec(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

// Brings `x` up to at least `prec` bits without changing its value.
void widen(Real& x, Precision prec) {
  if (x.precision() < prec) mpfr_prec_round(x.get(), prec, kRnd);
}

template <typename Fn>
Real unary(const Real& x, Fn fn) {
  Real out(x.precision());
  fn(out.get(), x.get(), kRnd);
  return out;
}

}  // namespace

Real::Real(Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

Real::Real(long value, Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_si(value_, value, kRnd);
}

Real Real::from_double(double value, Precision prec) {
  Real out(prec);
  mpfr_set_d(out.value_, value, kRnd);
  return out;
}

Real Real::from_string(std::string_view text, Precision prec) {
  Real out(prec);
  const std::string owned(text);
  char* end = nullptr;
  if (!owned.empty()) mpfr_strtofr(out.value_, owned.c_str(), &end, 10, kRnd);
  if (owned.empty() || end == owned.c_str() || *end != '\0') {
    throw std::invalid_argument("not a decimal number: '" + owned + "'");
  }
  return out;
}

Real Real::from_mpz(const mpz_class& value, Precision prec) {
  Real out(prec);
  mpfr_set_z(out.value_, value.get_mpz_t(), kRnd);
  return out;
}

Real Real::from_mpq(const mpq_class& value, Precision prec) {
  Real out(prec);
  mpfr_set_q(out.value_, value.get_mpq_t(), kRnd);
  return out;
}

Real Real::infinity(int sign, Precision prec) {
  Real out(prec);
  mpfr_set_inf(out.value_, sign);
  return out;
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, kRnd);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, kRnd);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

void Real::set_precision(Precision prec) { mpfr_prec_round(value_, prec, kRnd); }

Real Real::rounded(Precision prec) const {
  Real out(prec);
  mpfr_set(out.value_, value_, kRnd);
  return out;
}

Real Real::operator-() const {
  Real out(precision());
  mpfr_neg(out.value_, value_, kRnd);
  return out;
}

Real& Real::operator+=(const Real& rhs) {
  widen(*this, rhs.precision());
  mpfr_add(value_, value_, rhs.value_, kRnd);
  return *this;
}
Real& Real::operator-=(const Real& rhs) {
  widen(*this, rhs.precision());
  mpfr_sub(value_, value_, rhs.value_, kRnd);
  return *this;
}
Real& Real::operator*=(const Real& rhs) {
  widen(*this, rhs.precision());
  mpfr_mul(value_, value_, rhs.value_, kRnd);
  return *this;
}
Real& Real::operator/=(const Real& rhs) {
  widen(*this, rhs.precision());
  mpfr_div(value_, value_, rhs.value_, kRnd);
  return *this;
}
Real& Real::operator+=(long rhs) {
  mpfr_add_si(value_, value_, rhs, kRnd);
  return *this;
}
Real& Real::operator-=(long rhs) {
  mpfr_sub_si(value_, value_, rhs, kRnd);
  return *this;
}
Real& Real::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, kRnd);
  return *this;
}
Real& Real::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, kRnd);
  return *this;
}

Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }

Real operator-(long lhs, const Real& rhs) {
  Real out(rhs.precision());
  mpfr_si_sub(out.value_, lhs, rhs.value_, kRnd);
  return out;
}

Real operator/(long lhs, const Real& rhs) {
  Real out(rhs.precision());
  mpfr_si_div(out.value_, lhs, rhs.value_, kRnd);
  return out;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

std::partial_ordering operator<=>(const Real& a, long b) {
  if (mpfr_nan_p(a.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_si(a.value_, b);
  return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

Real pi(Precision prec) {
  Real out(prec);
  mpfr_const_pi(out.get(), kRnd);
  return out;
}

Real euler_gamma(Precision prec) {
  Real out(prec);
  mpfr_const_euler(out.get(), kRnd);
  return out;
}

Real log_two_pi(Precision prec) { return log(pi(prec + 8) * 2).rounded(prec); }

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real expm1(const Real& x) { return unary(x, mpfr_expm1); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real log1p(const Real& x) { return unary(x, mpfr_log1p); }
Real log10(const Real& x) { return unary(x, mpfr_log10); }
Real log2(const Real& x) { return unary(x, mpfr_log2); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }

Real atan2(const Real& y, const Real& x) {
  Real out(max_prec(y, x));
  mpfr_atan2(out.get(), y.get(), x.get(), kRnd);
  return out;
}

Real pow(const Real& base, const Real& exponent) {
  Real out(max_prec(base, exponent));
  mpfr_pow(out.get(), base.get(), exponent.get(), kRnd);
  return out;
}

Real pow(const Real& base, long exponent) {
  Real out(base.precision());
  mpfr_pow_si(out.get(), base.get(), exponent, kRnd);
  return out;
}

Real floor(const Real& x) {
  Real out(x.precision());
  mpfr_floor(out.get(), x.get());
  return out;
}

Real round(const Real& x) {
  Real out(x.precision());
  mpfr_round(out.get(), x.get());
  return out;
}

Real ldexp(const Real& x, long k) {
  Real out(x.precision());
  mpfr_mul_2si(out.get(), x.get(), k, kRnd);
  return out;
}

Real hypot(const Real& x, const Real& y) {
  Real out(max_prec(x, y));
  mpfr_hypot(out.get(), x.get(), y.get(), kRnd);
  return out;
}

const Real& max_abs(const Real& a, const Real& b) { return mpfr_cmpabs(a.get(), b.get()) >= 0 ? a : b; }

namespace {

std::string format_digits(const Real& x, std::size_t digits) {
  if (mpfr_nan_p(x.get())) return "nan";
  if (mpfr_inf_p(x.get())) return x.sign() < 0 ? "-inf" : "inf";
  if (x.is_zero()) return mpfr_signbit(x.get()) ? "-0" : "0";
  mpfr_exp_t exp10 = 0;
  std::unique_ptr<char, void (*)(char*)> raw(mpfr_get_str(nullptr, &exp10, 10, digits, x.get(), kRnd),
                                            mpfr_free_str);
  std::string mantissa(raw.get());
  std::string out;
  if (mantissa.front() == '-') {
    out.push_back('-');
    mantissa.erase(0, 1);
  }
  while (mantissa.size() > 1 && mantissa.back() == '0') mantissa.pop_back();
  out.push_back(mantissa.front());
  if (mantissa.size() > 1) {
    out.push_back('.');
    out.append(mantissa, 1);
  }
  const long e = static_cast<long>(exp10) - 1;
  if (e != 0) {
    out.push_back('e');
    out += std::to_string(e);
  }
  return out;
}

}  // namespace

std::string to_scientific(const Real& x, int digits) {
  if (x.is_zero()) return "0";
  return format_digits(x, static_cast<std::size_t>(std::max(1, digits)));
}

std::string to_shortest_string(const Real& x) {
  if (!x.is_finite() || x.is_zero()) return format_digits(x, 1);
  const std::size_t upper = mpfr_get_str_ndigits(10, x.precision());
  const auto lower = static_cast<std::size_t>(std::max<double>(1.0, std::floor(x.precision() * 0.30103) - 2));
  for (std::size_t d = lower; d < upper; ++d) {
    std::string candidate = format_digits(x, d);
    if (Real::from_string(candidate, x.precision()) == x) return candidate;
  }
  return format_digits(x, upper);
}

// ---------------------------------------------------------------------------
// Complex

Complex Complex::from_doubles(double re, double im, Precision prec) {
  return {Real::from_double(re, prec), Real::from_double(im, prec)};
}

Precision Complex::precision() const { return std::max(re_.precision(), im_.precision()); }

void Complex::set_precision(Precision prec) {
  re_.set_precision(prec);
  im_.set_precision(prec);
}

Complex Complex::rounded(Precision prec) const { return {re_.rounded(prec), im_.rounded(prec)}; }

Complex& Complex::operator+=(const Complex& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}
Complex& Complex::operator-=(const Complex& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}
Complex& Complex::operator*=(const Complex& rhs) {
  Real re = re_ * rhs.re_ - im_ * rhs.im_;
  Real im = re_ * rhs.im_ + im_ * rhs.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}
Complex& Complex::operator/=(const Complex& rhs) {
  // Scaled to avoid overflow of the squared modulus for extreme exponents.
  const long shift = -std::max(rhs.re_.is_zero() ? LONG_MIN / 2 : rhs.re_.exponent2(),
                               rhs.im_.is_zero() ? LONG_MIN / 2 : rhs.im_.exponent2());
  const Real c = ldexp(rhs.re_, shift);
  const Real d = ldexp(rhs.im_, shift);
  const Real denom = c * c + d * d;
  Real re = (re_ * c + im_ * d) / denom;
  Real im = (im_ * c - re_ * d) / denom;
  re_ = ldexp(re, shift);
  im_ = ldexp(im, shift);
  return *this;
}
Complex& Complex::operator+=(const Real& rhs) {
  re_ += rhs;
  widen(im_, rhs.precision());
  return *this;
}
Complex& Complex::operator-=(const Real& rhs) {
  re_ -= rhs;
  widen(im_, rhs.precision());
  return *this;
}
Complex& Complex::operator*=(const Real& rhs) {
  re_ *= rhs;
  im_ *= rhs;
  return *this;
}
Complex& Complex::operator/=(const Real& rhs) {
  re_ /= rhs;
  im_ /= rhs;
  return *this;
}
Complex& Complex::operator+=(long rhs) {
  re_ += rhs;
  return *this;
}
Complex& Complex::operator-=(long rhs) {
  re_ -= rhs;
  return *this;
}
Complex& Complex::operator*=(long rhs) {
  re_ *= rhs;
  im_ *= rhs;
  return *this;
}
Complex& Complex::operator/=(long rhs) {
  re_ /= rhs;
  im_ /= rhs;
  return *this;
}

Complex operator/(const Real& a, const Complex& b) { return Complex(a, Real(a.precision())) / b; }

Complex operator-(long a, const Complex& b) { return {a - b.re(), -b.im()}; }

Complex operator/(long a, const Complex& b) { return Complex(Real(a, b.precision()), Real(b.precision())) / b; }

Complex conj(const Complex& z) { return {z.re(), -z.im()}; }

Real abs(const Complex& z) { return hypot(z.re(), z.im()); }

Real norm(const Complex& z) { return z.re() * z.re() + z.im() * z.im(); }

Real arg(const Complex& z) { return atan2(z.im(), z.re()); }

Complex exp(const Complex& z) {
  const Real magnitude = exp(z.re());
  const Precision prec = z.precision();
  Real s(prec);
  Real c(prec);
  mpfr_sin_cos(s.get(), c.get(), z.im().rounded(prec).get(), kRnd);
  return {magnitude * c, magnitude * s};
}

Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }

Complex sin(const Complex& z) {
  // sin(x + iy) = sin x cosh y + i cos x sinh y
  const Precision prec = z.precision();
  Real s(prec);
  Real c(prec);
  mpfr_sin_cos(s.get(), c.get(), z.re().rounded(prec).get(), kRnd);
  Real sh(prec);
  Real ch(prec);
  mpfr_sinh_cosh(sh.get(), ch.get(), z.im().rounded(prec).get(), kRnd);
  return {s * ch, c * sh};
}

Complex pow(const Real& base, const Complex& exponent) { return exp(exponent * log(base)); }

Complex pow(const Complex& base, const Complex& exponent) { return exp(exponent * log(base)); }

Complex unit_phase(const Real& theta) {
  Real s(theta.precision());
  Real c(theta.precision());
  mpfr_sin_cos(s.get(), c.get(), theta.get(), kRnd);
  return {std::move(c), std::move(s)};
}

Real reduce_phase(const Real& theta) {
  const Precision prec = theta.precision() + 8;
  const Real two_pi = pi(prec) * 2;
  Real t = theta.rounded(prec);
  // theta - 2 pi * round(theta / 2 pi) lies in [-pi, pi]; map -pi to +pi.
  t -= two_pi * round(t / two_pi);
  if (t <= -pi(prec)) t += two_pi;
  if (t > pi(prec)) t -= two_pi;
  return t.rounded(theta.precision());
}

}  // namespace ckrice
