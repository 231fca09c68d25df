#include "ckrice/special.hpp"

#include <cmath>

#include "ckrice/bernoulli.hpp"
#include "ckrice/errors.hpp"

namespace ckrice {

namespace {

bool is_nonpositive_integer(const Complex& z) {
  return z.im().is_zero() && z.re().is_integer() && z.re().sign() <= 0;
}

Precision working_precision(const Complex& z, const PrecisionContext& ctx) {
  const double m = std::max(1.0, std::abs(z.re().to_double()) + std::abs(z.im().to_double()));
  return ctx.precision_bits + 16 + static_cast<long>(std::ceil(std::log2(1.0 + m * std::log(m + 1.0))));
}

// Stirling series; |z| large and Re z >= 0.
Complex stirling(const Complex& z, Precision wp) {
  const Complex log_z = log(z);
  Complex result = (z - Real::from_double(0.5, wp)) * log_z - z + log_two_pi(wp) / 2L;
  const Complex inv_z = Real(1, wp) / z;
  const Complex inv_z2 = inv_z * inv_z;
  Complex power = inv_z;  // z^-(2j-1)
  const Real tol = ldexp(Real(1, wp), -static_cast<long>(wp));
  Real previous = Real::infinity(1, wp);
  for (long j = 1; j < 4 * wp; ++j) {
    const Real coeff = BernoulliCache::global().get_real(2 * j, wp) / ((2 * j) * (2 * j - 1));
    const Complex term = power * coeff;
    const Real mag = abs(term);
    if (mag > previous) break;  // asymptotic series past its smallest term
    result += term;
    if (mag < tol) break;
    previous = mag;
    power *= inv_z2;
  }
  return result;
}

// log Gamma for Re z >= 0 via upward recurrence and Stirling.
Complex log_gamma_right(const Complex& z, const PrecisionContext& ctx, Precision wp) {
  const double threshold = 20.0 + static_cast<double>(ctx.precision_bits) / 8.0;
  const double modulus = std::hypot(z.re().to_double(), z.im().to_double());
  long shift = 0;
  if (modulus < threshold) shift = static_cast<long>(std::ceil(threshold - z.re().to_double()));
  const Complex zw = z.rounded(wp);
  Complex result = stirling(zw + shift, wp);
  if (shift == 0) return result;
  // sum_i log(z + i) as one log of the product; the summed arguments, tracked
  // in double precision, fix the multiple of 2 pi i.
  Complex product = zw;
  double arg_sum = std::atan2(zw.im().to_double(), zw.re().to_double());
  for (long i = 1; i < shift; ++i) {
    const Complex factor = zw + i;
    product *= factor;
    arg_sum += std::atan2(factor.im().to_double(), factor.re().to_double());
  }
  Complex log_product = log(product);
  const double turns = std::round((arg_sum - log_product.im().to_double()) / (2.0 * M_PI));
  if (turns != 0.0) log_product.im() += pi(wp) * static_cast<long>(2 * turns);
  return result - log_product;
}

}  // namespace

Complex log_gamma(const Complex& z, const PrecisionContext& ctx) {
  if (is_nonpositive_integer(z)) throw PoleError("log_gamma pole at nonpositive integer");
  const Precision wp = working_precision(z, ctx);
  if (z.re().sign() >= 0) return log_gamma_right(z, ctx, wp).rounded(ctx.bits());

  if (z.im().sign() < 0) return conj(log_gamma(conj(z), ctx));

  // Upper half-plane (and the cut from above):
  // log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z), with log sin on
  // its continuous branch log(1/2) + i pi/2 - i pi z + log(1 - e^(2 pi i z)).
  const Complex zw = z.rounded(wp);
  const Real pi_w = pi(wp);
  const Complex i_pi_z(-(pi_w * zw.im()), pi_w * zw.re());  // i pi z
  const Complex e2 = exp(i_pi_z * 2L);
  const Complex log_sin = Complex(log(Real::from_double(0.5, wp)), pi_w / 2L) - i_pi_z + log(1L - e2);
  const Complex reflected = log_gamma_right(1L - zw, ctx, wp);
  return (Complex(log(pi_w), Real(wp)) - log_sin - reflected).rounded(ctx.bits());
}

Real log_gamma(const Real& x, const PrecisionContext& ctx) {
  return log_gamma(Complex(x, Real(x.precision())), ctx).re();
}

Complex log_beta(const Complex& a, const Complex& b, const PrecisionContext& ctx) {
  const Complex sum = a + b;
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b) || is_nonpositive_integer(sum)) {
    throw PoleError("log_beta argument at a pole");
  }
  // Each log-gamma carries enough guard bits for the mutual cancellation.
  const long extra = static_cast<long>(working_precision(sum, ctx) - ctx.precision_bits);
  const PrecisionContext wide = ctx.widened(extra);
  return (log_gamma(a, wide) + log_gamma(b, wide) - log_gamma(sum, wide)).rounded(ctx.bits());
}

LogScaled beta_scaled(const Complex& a, const Complex& b, const PrecisionContext& ctx) {
  const bool real = a.is_real() && b.is_real();
  return LogScaled::from_log(log_beta(a, b, ctx), real ? LogScaled::Kind::kReal : LogScaled::Kind::kComplex);
}

Complex beta(const Complex& a, const Complex& b, const PrecisionContext& ctx) {
  return beta_scaled(a, b, ctx).to_complex(ctx.bits());
}

LogScaled beta_asymptotic(const Complex& a, const Complex& b, int order, const PrecisionContext& ctx) {
  if (order != 0 && order != 1) throw DomainError("beta_asymptotic order must be 0 or 1");
  const Real abs_b = abs(b);
  if (abs(a) < abs_b * abs_b * 10L) throw DomainError("beta_asymptotic needs |a| >= 10 |b|^2");
  const PrecisionContext wide = ctx.widened(16);
  const Precision wp = wide.bits();
  const Complex aw = a.rounded(wp);
  const Complex bw = b.rounded(wp);
  Complex value = log_gamma(bw, wide) - bw * log(aw);
  if (order == 1) value += log(1L - bw * (bw - 1L) / (aw * 2L));
  const bool real = a.is_real() && b.is_real();
  return LogScaled::from_log(value.rounded(ctx.bits()), real ? LogScaled::Kind::kReal : LogScaled::Kind::kComplex);
}

}  // namespace ckrice
