#include "ckrice/expansions.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <string>

#include "ckrice/bernoulli.hpp"
#include "ckrice/errors.hpp"

namespace ckrice {

namespace {

long ceil_log2(long n) { return static_cast<long>(std::ceil(std::log2(static_cast<double>(n)))); }

// Guard bits for a length-(k+1) alternating binomial sum of O(1) terms.
long binomial_guard(long k) { return k + ceil_log2(k + 2) + 32; }

// g_j for each variant; the A_k sequence is its signed binomial transform.
std::vector<Real> variant_inputs(long k_max, ExpansionVariant variant, const PrecisionContext& wide) {
  const Precision wp = wide.bits();
  std::vector<Real> g;
  g.reserve(static_cast<std::size_t>(k_max) + 1);
  if (variant == ExpansionVariant::kRegularized) {
    for (long j = 0; j <= k_max; ++j) g.push_back(f_reg(Complex(Real(2 * j + 2, wp), Real(wp)), wide).re());
    return g;
  }
  const ZetaEvenTable table = ZetaEvenTable::build(k_max, wide);
  for (long j = 0; j <= k_max; ++j) {
    const Real& t = table.minus_one(j);
    if (variant == ExpansionVariant::kBase) {
      g.push_back((t + 1L) * (2 * j + 1));
    } else {
      // zeta(2j+2) - 1/(2j+1)
      g.push_back(t + 1L - Real(1, wp) / (2 * j + 1));
    }
  }
  return g;
}

// Taylor coefficients of f at 0 by the trapezoidal Cauchy integral on |s| = 1/2.
std::vector<Real> f_reg_taylor(const PrecisionContext& ctx) {
  static std::mutex mutex;
  static std::map<long, std::vector<Real>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(ctx.precision_bits); it != cache.end()) return it->second;
  }
  const long bits = ctx.precision_bits;
  const long terms = bits / 10 + 3;
  const long points = bits / 2 + 2 * terms + 40;
  const PrecisionContext wide = ctx.widened(32);
  const Precision wp = wide.bits();
  const Real radius = Real::from_double(0.5, wp);
  const Real step = pi(wp) * 2 / points;

  std::vector<Complex> samples;
  samples.reserve(static_cast<std::size_t>(points));
  for (long m = 0; m < points; ++m) samples.push_back(f_reg(unit_phase(step * m) * radius, wide));

  std::vector<Real> coeffs;
  coeffs.reserve(static_cast<std::size_t>(terms));
  for (long n = 0; n < terms; ++n) {
    Complex acc(wp);
    for (long m = 0; m < points; ++m) acc += samples[m] * unit_phase(-(step * (n * m % points)));
    // f is real on the real axis, so its coefficients are real.
    coeffs.push_back((acc.re() / points / pow(radius, n)).rounded(bits));
  }
  std::lock_guard lock(mutex);
  return cache.emplace(bits, std::move(coeffs)).first->second;
}

}  // namespace

const char* to_string(ExpansionVariant variant) {
  switch (variant) {
    case ExpansionVariant::kBase:
      return "base";
    case ExpansionVariant::kPoleSubtracted:
      return "pole-subtracted";
    case ExpansionVariant::kRegularized:
      return "regularized";
  }
  return "unknown";
}

ExpansionVariant parse_variant(std::string_view name) {
  if (name == "base") return ExpansionVariant::kBase;
  if (name == "pole-subtracted") return ExpansionVariant::kPoleSubtracted;
  if (name == "regularized") return ExpansionVariant::kRegularized;
  throw DomainError("unknown expansion variant '" + std::string(name) + "'");
}

std::vector<Real> binomial_transform(std::span<const Real> seq) {
  if (seq.empty()) throw DomainError("binomial_transform needs a nonempty sequence");
  std::vector<Real> out;
  out.reserve(seq.size());
  const auto n = static_cast<long>(seq.size());
  for (long k = 0; k < n; ++k) {
    Real acc(seq[0].precision());
    mpz_class binom = 1;
    for (long j = 0; j <= k; ++j) {
      const Real term = Real::from_mpz(binom, seq[j].precision()) * seq[j];
      if (j % 2 == 0) {
        acc += term;
      } else {
        acc -= term;
      }
      binom = binom * (k - j) / (j + 1);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

std::vector<mpq_class> binomial_transform(std::span<const mpq_class> seq) {
  if (seq.empty()) throw DomainError("binomial_transform needs a nonempty sequence");
  std::vector<mpq_class> out;
  out.reserve(seq.size());
  const auto n = static_cast<long>(seq.size());
  for (long k = 0; k < n; ++k) {
    mpq_class acc = 0;
    mpz_class binom = 1;
    for (long j = 0; j <= k; ++j) {
      const mpq_class term = mpq_class(binom) * seq[j];
      if (j % 2 == 0) {
        acc += term;
      } else {
        acc -= term;
      }
      binom = binom * (k - j) / (j + 1);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

CoefficientSeq coefficient_sequence(long k_max, ExpansionVariant variant, const PrecisionContext& ctx) {
  if (k_max < 0) throw DomainError("coefficient index must be >= 0");
  const PrecisionContext wide = ctx.widened(binomial_guard(k_max));
  std::vector<Real> values = binomial_transform(variant_inputs(k_max, variant, wide));
  for (auto& v : values) v.set_precision(ctx.bits());
  return {variant, std::move(values), ctx.precision_bits};
}

Real compute_Ak(long k, ExpansionVariant variant, const PrecisionContext& ctx) {
  if (k < 0) throw DomainError("A_k index must be >= 0");
  const PrecisionContext wide = ctx.widened(binomial_guard(k));
  const std::vector<Real> g = variant_inputs(k, variant, wide);
  Real acc(wide.bits());
  mpz_class binom = 1;
  for (long j = 0; j <= k; ++j) {
    const Real term = Real::from_mpz(binom, wide.bits()) * g[j];
    if (j % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
    binom = binom * (k - j) / (j + 1);
  }
  return acc.rounded(ctx.bits());
}

Real compute_Ak_bernoulli_form(long k, const PrecisionContext& ctx) {
  if (k < 0) throw DomainError("A_k index must be >= 0");
  const PrecisionContext wide = ctx.widened(binomial_guard(k));
  const Precision wp = wide.bits();
  const Real pi_sq = pi(wp) * pi(wp);
  Real pi_pow = pi_sq;  // pi^(2j+2)
  Real acc(wp);
  mpz_class binom = 1;
  mpz_class four_pow = 1;     // 4^j
  mpz_class fact_2j = 1;      // (2j)!
  for (long j = 0; j <= k; ++j) {
    // 1 / ((2)_j (1/2)_j) = 4^j / ((j+1) (2j)!)
    mpq_class coeff(binom * four_pow * bernoulli(2 * j + 2).get_num(),
                    (j + 1) * fact_2j * bernoulli(2 * j + 2).get_den());
    coeff.canonicalize();
    acc += Real::from_mpq(coeff, wp) * pi_pow;
    binom = binom * (k - j) / (j + 1);
    four_pow *= 4;
    fact_2j *= (2 * j + 1) * (2 * j + 2);
    pi_pow *= pi_sq;
  }
  return acc.rounded(ctx.bits());
}

std::shared_ptr<const CoefficientSeq> CoefficientCache::get(long k_max, ExpansionVariant variant,
                                                            const PrecisionContext& ctx) {
  {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(variant); it != entries_.end()) {
      const auto& seq = *it->second;
      if (static_cast<long>(seq.values.size()) > k_max && seq.precision_bits >= ctx.precision_bits) return it->second;
    }
  }
  auto fresh = std::make_shared<const CoefficientSeq>(coefficient_sequence(k_max, variant, ctx));
  std::lock_guard lock(mutex_);
  entries_[variant] = fresh;
  return fresh;
}

Complex f_reg(const Complex& s, const PrecisionContext& ctx) {
  const Precision bits = ctx.bits();
  const Real radius = abs(s);
  if (radius < ldexp(Real(1, 64), -10)) {
    const std::vector<Real> coeffs = f_reg_taylor(ctx);
    const Complex sw = s.rounded(bits + 16);
    Complex acc(bits + 16);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * sw + *it;
    return acc.rounded(bits);
  }
  // Two divisions by s cancel up to 2 log2(1/|s|) bits.
  const long guard = 24 + std::max(0L, -2 * radius.exponent2());
  const PrecisionContext wide = ctx.widened(guard);
  const Precision wp = wide.bits();
  const Complex sw = s.rounded(wp);
  const Complex z = zeta_times_s_minus_one(sw, wide) * 2L;
  const Complex inner = (z - 1L) / sw + (1L - log_two_pi(wp));
  return (inner / sw).rounded(bits);
}

long direct_ck_precision(long k, const PrecisionContext& ctx) {
  return std::max(ctx.precision_bits, k + ceil_log2(k + 2) + 64);
}

Real direct_ck(long k, const PrecisionContext& ctx, const ZetaEvenTable* table, long ceiling) {
  if (k < 0) throw DomainError("direct_ck needs k >= 0");
  if (k > ceiling) {
    throw ResourceError("direct_ck: k = " + std::to_string(k) + " exceeds the direct-sum ceiling " +
                        std::to_string(ceiling) + "; use the decomposition route");
  }
  const long wp = direct_ck_precision(k, ctx);
  std::optional<ZetaEvenTable> own;
  if (table == nullptr || table->j_max() < k || table->precision_bits() < wp) {
    own.emplace(ZetaEvenTable::build(k, make_context(wp)));
    table = &*own;
  }
  // k >= 1: sum_j (-1)^j C(k,j) = 0, so sum the reciprocals minus one,
  // -t/(1+t), whose terms are ~C(k,j) 4^-j instead of C(k,j).
  Real acc(wp);
  mpz_class binom = 1;
  for (long j = 0; j <= k; ++j) {
    const Real t = table->minus_one(j).rounded(wp);
    Real u = (k == 0) ? table->reciprocal(j).rounded(wp) : -(t / (t + 1L));
    u *= Real::from_mpz(binom, wp);
    if (j % 2 == 0) {
      acc += u;
    } else {
      acc -= u;
    }
    binom = binom * (k - j) / (j + 1);
  }
  return acc.rounded(ctx.bits());
}

Complex zeta_via_expansion(const Complex& s, long n_terms, ExpansionVariant variant, const PrecisionContext& ctx) {
  if (n_terms < 1) throw DomainError("expansion needs N >= 1 terms");
  if (s.im().is_zero() && s.re() == 1L) throw PoleError("expansion prefactor has a pole at s = 1");
  const CoefficientSeq coeffs = coefficient_sequence(n_terms - 1, variant, ctx.widened(16));
  const PrecisionContext wide = ctx.widened(16 + ceil_log2(n_terms + 2));
  const Precision wp = wide.bits();
  const Complex sw = s.rounded(wp);
  // (1 - s/2)_k / k! by upward recurrence.
  const Complex base = 1L - sw / 2L;
  Complex weight(Real(1, wp), Real(wp));
  Complex series(wp);
  for (long k = 0; k < n_terms; ++k) {
    series += weight * coeffs.values[k];
    weight = weight * (base + k) / (k + 1);
  }
  const Complex sm1 = sw - 1L;
  Complex result(wp);
  switch (variant) {
    case ExpansionVariant::kBase:
      result = series / sm1;
      break;
    case ExpansionVariant::kPoleSubtracted:
      result = Real(1, wp) / sm1 + series;
      break;
    case ExpansionVariant::kRegularized: {
      const Complex inner = Complex(log_two_pi(wp) - 1L, Real(wp)) + sw * series;
      result = (sw * inner + 1L) / (sm1 * 2L);
      break;
    }
  }
  return result.rounded(ctx.bits());
}

}  // namespace ckrice
