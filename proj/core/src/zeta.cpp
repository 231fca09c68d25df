#include "ckrice/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ckrice/bernoulli.hpp"
#include "ckrice/errors.hpp"

namespace ckrice {

namespace {

// Smallest-prime-factor sieve so n^-s for composite n is one complex product.
std::vector<long> smallest_prime_factors(long n) {
  std::vector<long> spf(static_cast<std::size_t>(n) + 1, 0);
  for (long i = 2; i <= n; ++i) {
    if (spf[i] != 0) continue;
    for (long j = i; j <= n; j += i) {
      if (spf[j] == 0) spf[j] = i;
    }
  }
  return spf;
}

struct EulerMaclaurinParts {
  // zeta(s) = regular + pole_numerator / (s - 1)
  Complex regular;
  Complex pole_numerator;  // N^(1-s)
  Complex d_regular;
  Complex d_pole_numerator;
  Real log_n;  // log N, for the derivative of the pole term
};

bool is_one(const Complex& s) { return s.im().is_zero() && s.re() == 1L; }

// Terms of the Euler-Maclaurin formula with the pole term kept separate so the
// caller can form either zeta(s) or (s - 1) zeta(s).
EulerMaclaurinParts euler_maclaurin(const Complex& s_in, const PrecisionContext& ctx, bool want_derivative) {
  const double sigma = s_in.re().to_double();
  const double t_abs = std::abs(s_in.im().to_double());
  const long bits = ctx.precision_bits;

  long n_terms = static_cast<long>(std::max(20.0, 0.8 * t_abs + 0.35 * static_cast<double>(bits)));
  // Keep the first correction terms shrinking also for large negative real s.
  n_terms = std::max(n_terms, static_cast<long>(0.5 * std::max(0.0, -sigma)) + 20);

  for (int attempt = 0; attempt < 6; ++attempt, n_terms *= 2) {
    const double log2_n = std::log2(static_cast<double>(n_terms));
    long guard = 32 + static_cast<long>(std::ceil(std::log2(1.0 + t_abs * std::log(static_cast<double>(n_terms)))));
    if (sigma < 1.0) guard += static_cast<long>(std::ceil((1.0 - sigma) * log2_n));
    const Precision wp = bits + guard;

    const Complex s = s_in.rounded(wp);
    const Complex minus_s = -s;

    // Direct sum over n < N.
    std::vector<Complex> powers(static_cast<std::size_t>(n_terms) + 1);
    const std::vector<long> spf = smallest_prime_factors(n_terms);
    Complex sum(Real(1, wp), Real(wp));
    Complex dsum(wp);
    for (long n = 2; n <= n_terms; ++n) {
      const long p = spf[n];
      Complex value = (p == n) ? exp(minus_s * log(Real(n, wp))) : powers[p] * powers[n / p];
      if (n < n_terms) {
        sum += value;
        if (want_derivative) dsum -= value * log(Real(n, wp));
      }
      powers[n] = std::move(value);
    }
    const Complex& n_pow_minus_s = powers[n_terms];
    const Real big_n(n_terms, wp);
    const Real log_n = log(big_n);

    Complex regular = sum + n_pow_minus_s / 2L;
    Complex d_regular = dsum - n_pow_minus_s * log_n / 2L;

    // Bernoulli corrections: sum_j B_2j/(2j)! (s)_(2j-1) N^(-s-2j+1).
    // At s = 0, -2, -4, ... the rising factorial vanishes from some j on while
    // its derivative does not, so both series are tested for convergence.
    const Real tol = ldexp(max_abs(abs(regular), Real(1, wp)), -(wp - 8));
    const Real d_tol = ldexp(max_abs(abs(d_regular), Real(1, wp)), -(wp - 8));
    const Real inv_n2 = 1 / (big_n * big_n);
    Complex rising = s;  // (s)_1
    Complex d_rising(Real(1, wp), Real(wp));
    Complex n_factor = n_pow_minus_s * big_n;  // N^(1-s), advanced by N^-2 each step
    Real factorial(1, wp);                     // (2j)!
    bool converged = false;
    Real previous = Real::infinity(1, wp);
    const long max_j = 2 * bits + 64;
    for (long j = 1; j <= max_j; ++j) {
      n_factor *= inv_n2;
      factorial *= (2 * j - 1) * (2 * j);
      const Real coeff = BernoulliCache::global().get_real(2 * j, wp) / factorial;
      const Complex term = rising * n_factor * coeff;
      regular += term;
      Real magnitude = abs(term);
      Real d_magnitude(wp);
      if (want_derivative) {
        const Complex d_term = (d_rising - rising * log_n) * n_factor * coeff;
        d_regular += d_term;
        d_magnitude = abs(d_term);
      }

      // Remainder is bounded by the next term times |s + 2j + 1| / (Re s + 2j + 1).
      const Real re_shift = s.re() + (2 * j + 1);
      Real factor(1, wp);
      if (re_shift.sign() > 0) factor = max_abs(abs(s + (2 * j + 1)) / re_shift, factor);
      if (magnitude * factor < tol && d_magnitude * factor < d_tol) {
        converged = true;
        break;
      }
      // Past the smallest term the asymptotic series diverges; retry with larger N.
      const Real combined = magnitude / tol + d_magnitude / d_tol;
      if (j > 4 && combined > previous && re_shift.sign() > 0) break;
      previous = combined;

      const Complex a = s + (2 * j - 1);
      const Complex b = s + 2 * j;
      d_rising = d_rising * a * b + rising * (a + b);
      rising = rising * a * b;
    }
    if (!converged) continue;

    EulerMaclaurinParts parts{std::move(regular), n_pow_minus_s * big_n, std::move(d_regular), Complex(wp), log_n};
    parts.d_pole_numerator = -(parts.pole_numerator * log_n);
    return parts;
  }
  throw ConvergenceError("Euler-Maclaurin summation did not converge");
}

}  // namespace

Real zeta_even(long n, const PrecisionContext& ctx) {
  if (n < 2 || n % 2 != 0) throw DomainError("zeta_even needs an even argument >= 2, got " + std::to_string(n));
  const long guard = 16 + static_cast<long>(std::ceil(std::log2(static_cast<double>(n))));
  const Precision wp = ctx.precision_bits + guard;
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n));
  const mpq_class b = bernoulli(n);
  const Real two_pi_pow = pow(pi(wp) * 2, n);
  Real value = Real::from_mpq(b, wp) * two_pi_pow / (Real::from_mpz(fact, wp) * 2);
  if ((n / 2) % 2 == 0) value = -value;
  return value.rounded(ctx.bits());
}

ZetaEvenTable::ZetaEvenTable(std::vector<Real> minus_one, long precision_bits)
    : minus_one_(std::move(minus_one)), precision_bits_(precision_bits) {}

ZetaEvenTable ZetaEvenTable::build(long j_max, const PrecisionContext& ctx) {
  if (j_max < 0) throw DomainError("j_max must be >= 0");
  const long bits = ctx.precision_bits;
  std::vector<Real> values;
  values.reserve(static_cast<std::size_t>(j_max) + 1);
  for (long j = 0; j <= j_max; ++j) {
    const long n = 2 * j + 2;
    // Direct tail sum sum_{m>=2} m^-n once it needs few terms; zeta(n) - 1 ~ 2^-n.
    const double terms_needed = 2.0 * std::exp2(static_cast<double>(bits + 16) / static_cast<double>(n));
    if (terms_needed <= 64.0) {
      const Precision wp = bits + 16;
      const long m_max = static_cast<long>(std::ceil(terms_needed)) + 1;
      Real sum(wp);
      for (long m = m_max; m >= 2; --m) sum += pow(Real(m, wp), -n);
      values.push_back(sum.rounded(bits));
    } else {
      // zeta(n) carries n extra bits so the subtraction of 1 keeps full relative precision.
      const PrecisionContext wide = make_context(bits + n + 16);
      values.push_back((zeta_even(n, wide) - 1L).rounded(bits));
    }
  }
  return {std::move(values), bits};
}

Real ZetaEvenTable::reciprocal(long j) const {
  const Real& t = minus_one(j);
  return 1 / (t + 1L);
}

ZetaWithDerivative zeta_and_derivative(const Complex& s, const PrecisionContext& ctx) {
  if (is_one(s)) throw PoleError("zeta has a pole at s = 1");
  EulerMaclaurinParts parts = euler_maclaurin(s, ctx, true);
  const Precision wp = parts.regular.precision();
  const Complex sm1 = s.rounded(wp) - 1L;
  const Complex pole = parts.pole_numerator / sm1;
  Complex value = parts.regular + pole;
  Complex derivative = parts.d_regular + parts.d_pole_numerator / sm1 - pole / sm1;
  return {value.rounded(ctx.bits()), derivative.rounded(ctx.bits())};
}

Complex zeta_complex(const Complex& s, const PrecisionContext& ctx) {
  if (is_one(s)) throw PoleError("zeta has a pole at s = 1");
  EulerMaclaurinParts parts = euler_maclaurin(s, ctx, false);
  const Precision wp = parts.regular.precision();
  return (parts.regular + parts.pole_numerator / (s.rounded(wp) - 1L)).rounded(ctx.bits());
}

Complex zeta_prime(const Complex& s, const PrecisionContext& ctx) { return zeta_and_derivative(s, ctx).derivative; }

Complex zeta_times_s_minus_one(const Complex& s, const PrecisionContext& ctx) {
  EulerMaclaurinParts parts = euler_maclaurin(s, ctx, false);
  const Precision wp = parts.regular.precision();
  return (parts.regular * (s.rounded(wp) - 1L) + parts.pole_numerator).rounded(ctx.bits());
}

Real zeta_real(const Real& s, const PrecisionContext& ctx) {
  return zeta_complex(Complex(s.rounded(ctx.bits()), Real(ctx.bits())), ctx).re();
}

Real trivial_residue(long n, const PrecisionContext& ctx) {
  if (n < 1) throw DomainError("trivial_residue needs n >= 1");
  const Precision wp = ctx.precision_bits + 16;
  const PrecisionContext wide = make_context(wp);
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(2 * n));
  const Real zeta_odd = zeta_real(Real(2 * n + 1, wp), wide);
  Real value = pow(pi(wp) * 2, 2 * n) * 2 / (Real::from_mpz(fact, wp) * zeta_odd);
  if (n % 2 != 0) value = -value;
  return value.rounded(ctx.bits());
}

Real ZetaOddTable::get(long m) {
  if (m < 2) throw DomainError("ZetaOddTable index must be >= 2");
  const auto idx = static_cast<std::size_t>(m - 2);
  {
    std::lock_guard lock(mutex_);
    if (idx < present_.size() && present_[idx]) return values_[idx];
  }
  // Computed outside the lock; concurrent duplicates produce identical values.
  Real value = zeta_real(Real(2 * m - 1, ctx_.bits()), ctx_);
  std::lock_guard lock(mutex_);
  if (idx >= present_.size()) {
    values_.resize(idx + 1);
    present_.resize(idx + 1, false);
  }
  if (!present_[idx]) {
    values_[idx] = std::move(value);
    present_[idx] = true;
  }
  return values_[idx];
}

void ZetaOddTable::seed(long m, Real value) {
  if (m < 2) return;
  const auto idx = static_cast<std::size_t>(m - 2);
  std::lock_guard lock(mutex_);
  if (idx >= present_.size()) {
    values_.resize(idx + 1);
    present_.resize(idx + 1, false);
  }
  if (!present_[idx]) {
    values_[idx] = value.rounded(ctx_.bits());
    present_[idx] = true;
  }
}

}  // namespace ckrice
