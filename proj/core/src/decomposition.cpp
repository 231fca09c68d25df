#include "ckrice/decomposition.hpp"

#include <cmath>
#include <string>

#include "ckrice/cache.hpp"
#include "ckrice/errors.hpp"
#include "ckrice/parallel.hpp"
#include "ckrice/special.hpp"

namespace ckrice {

namespace {

// Bits lost when log-gamma values of size ~k log k are combined and exponentiated.
long large_k_guard(long k) {
  const double kd = static_cast<double>(k) + 2.0;
  return 24 + static_cast<long>(std::ceil(std::log2(1.0 + kd * std::log(kd))));
}

Complex zero_point(const Real& gamma, Precision prec) { return {Real::from_double(0.5, prec), gamma.rounded(prec)}; }

Real default_tolerance(const PrecisionContext& ctx, const std::optional<Real>& tolerance) {
  return tolerance ? *tolerance : ctx.series_eps;
}

constexpr long kMaxTrendTerms = 10'000;

// Adaptive sum over m >= 2; term(m) returns the m-th term at working precision.
template <class Term>
TrendResult sum_trend_terms(const Real& tol, Precision wp, Term&& term) {
  Real sum(wp);
  Real previous = Real::infinity(1, wp);
  for (long m = 2; m <= kMaxTrendTerms; ++m) {
    const Real t = term(m);
    sum += t;
    const Real mag = abs(t);
    // Terms can grow for small k before the factorials take over.
    if (mag <= previous && mag <= tol * abs(sum)) return {std::move(sum), m - 1};
    previous = mag;
  }
  throw ConvergenceError("trend series did not converge");
}

std::string residue_key(const ZeroEntry& e) {
  return std::to_string(e.index) + "@" + to_scientific(e.gamma, 15);
}

}  // namespace

Complex xi_h(const Complex& s, const PrecisionContext& ctx) {
  const PrecisionContext wide = ctx.widened(16);
  const Precision wp = wide.bits();
  const Complex sw = s.rounded(wp);
  const Complex half = sw / 2L;
  const Complex log_part = log_gamma(half + 1L, wide) - half * log(pi(wp));
  return (exp(log_part) * (sw - 1L) * 2L).rounded(ctx.bits());
}

Complex xi(const Complex& s, const PrecisionContext& ctx) {
  // Near the poles of Gamma(1 + s/2) at s = -2, -4, ... use xi(s) = xi(1 - s).
  const double re = s.re().to_double();
  if (re < -1.0) {
    const double nearest_even = 2.0 * std::round(re / 2.0);
    if (std::abs(re - nearest_even) < 0.25 && std::abs(s.im().to_double()) < 0.25) return xi(1L - s, ctx);
  }
  const PrecisionContext wide = ctx.widened(16);
  const Precision wp = wide.bits();
  const Complex sw = s.rounded(wp);
  const Complex half = sw / 2L;
  const Complex log_part = log_gamma(half + 1L, wide) - half * log(pi(wp));
  return (exp(log_part) * zeta_times_s_minus_one(sw, wide) * 2L).rounded(ctx.bits());
}

Complex xi_crippled(long n, const Complex& s, long n_pairs, const ZeroTable& zeros, const PrecisionContext& ctx) {
  if (n < 1 || n > n_pairs || n_pairs > static_cast<long>(zeros.size())) {
    throw DomainError("xi_crippled needs 1 <= n <= N <= number of zeros");
  }
  const PrecisionContext wide = ctx.widened(16 + static_cast<long>(std::ceil(std::log2(n_pairs + 1.0))));
  const Precision wp = wide.bits();
  const Complex sw = s.rounded(wp);
  const Complex rho_n = zero_point(zeros.gamma(n), wp);
  Complex product = -(1L - sw / conj(rho_n)) / sw;
  for (long i = 1; i <= n_pairs; ++i) {
    if (i == n) continue;
    const Complex rho = zero_point(zeros.gamma(i), wp);
    // (1 - s/rho)(1 - s/rho*) = 1 - s/|rho|^2 + s^2/|rho|^2 since rho + rho* = 1.
    const Real inv_norm = 1L / norm(rho);
    product *= 1L - (sw - sw * sw) * inv_norm;
  }
  return product.rounded(ctx.bits());
}

const char* to_string(ResidueMethod method) {
  switch (method) {
    case ResidueMethod::kZetaPrime:
      return "zeta-prime";
    case ResidueMethod::kHadamard:
      return "hadamard";
    case ResidueMethod::kHadamardRaw:
      return "hadamard-raw";
  }
  return "unknown";
}

// zeta'(1 - rho) at context precision.
Complex zeta_prime_at_pole(const Real& gamma, const PrecisionContext& ctx) {
  if (gamma.sign() <= 0) throw DomainError("residue needs gamma > 0");
  const PrecisionContext wide = ctx.widened(16);
  const Complex d = zeta_prime(Complex(Real::from_double(0.5, wide.bits()), -gamma.rounded(wide.bits())), wide);
  if (abs(d) < ctx.series_eps * 10) {
    throw ConvergenceError("zeta' at 1 - rho is numerically zero (multiple zero or bad ordinate)");
  }
  return d.rounded(ctx.bits());
}

Complex residue_zeta_prime(const Real& gamma, const PrecisionContext& ctx) {
  const Complex d = zeta_prime_at_pole(gamma, ctx.widened(8));
  return (1L / (d * 2L)).rounded(ctx.bits());
}

Complex residue_hadamard(const ZeroTable& zeros, long index, long n_pairs, const PrecisionContext& ctx,
                         bool tail_compensated) {
  const PrecisionContext wide = ctx.widened(16);
  const Precision wp = wide.bits();
  const Complex rho = zero_point(zeros.gamma(index), wp);
  Complex crippled = xi_crippled(index, rho, n_pairs, zeros, wide);
  if (tail_compensated) {
    // log prod_{i > N} (1 - x/|rho_i|^2) with x = |rho_n|^2, to second order:
    // -x T1 - x^2 T2 / 2, T1 = sum_{i>N} 1/|rho_i|^2, T2 ~ sum_{i>N} 1/gamma_i^4.
    Real partial(wp);
    for (long i = 1; i <= n_pairs; ++i) partial += 1L / norm(zero_point(zeros.gamma(i), wp));
    // sum over all zero pairs of 1/|rho|^2 = 1 + gamma_E/2 - log(4 pi)/2.
    const Real all = 1L + euler_gamma(wp) / 2L - log(pi(wp) * 4L) / 2L;
    const Real t1 = all - partial;
    const Real g_n = zeros.gamma(n_pairs).rounded(wp);
    const Real two_pi = pi(wp) * 2L;
    const Real t2 = (log(g_n / two_pi) * 3L + 1L) / (two_pi * 9L * g_n * g_n * g_n);
    const Real x = norm(rho);
    crippled *= exp(-(x * t1) - x * x * t2 / 2L);
  }
  const Complex h = xi_h(conj(rho), wide);
  return (-(h / crippled) / 2L).rounded(ctx.bits());
}

Complex residue_at_zero(const Real& gamma, ResidueMethod method, const PrecisionContext& ctx, const ZeroTable* zeros,
                        long n_pairs) {
  if (method == ResidueMethod::kZetaPrime) return residue_zeta_prime(gamma, ctx);
  if (zeros == nullptr) throw DomainError("Hadamard residues need a zero table");
  const long index = zeros->find(gamma);
  if (index == 0) throw DomainError("gamma is not in the zero table");
  if (n_pairs < index) throw DomainError("Hadamard product must include the zero itself (N >= index)");
  return residue_hadamard(*zeros, index, n_pairs, ctx, method == ResidueMethod::kHadamard);
}

TrendResult trend_ck(long k, const PrecisionContext& ctx, ZetaOddTable* odd, const std::optional<Real>& tolerance) {
  if (k < 1) throw DomainError("trend_ck needs k >= 1");
  std::unique_ptr<ZetaOddTable> own;
  if (odd == nullptr) {
    own = std::make_unique<ZetaOddTable>(ctx.widened(16));
    odd = own.get();
  }
  const PrecisionContext wide = ctx.widened(32);
  const Precision wp = wide.bits();
  const Real four_pi_sq = pi(wp) * pi(wp) * 4L;
  // core_m = B(k+1,m) (2pi)^(2m) (-1)^m / Gamma(2m-1), advanced by its ratio.
  // m = 2: B(k+1,2) = 1/((k+1)(k+2)), Gamma(3) = 2.
  Real core = four_pi_sq * four_pi_sq / ((Real(k + 1, wp) * (k + 2)) * 2L);
  TrendResult r = sum_trend_terms(default_tolerance(ctx, tolerance), wp, [&](long m) {
    if (m > 2) {
      // B(k+1,m)/B(k+1,m-1) = (m-1)/(k+m); Gamma(2m-3)/Gamma(2m-1) = 1/((2m-3)(2m-2)).
      core = -(core * four_pi_sq * (m - 1)) / (Real(k + m, wp) * ((2 * m - 3) * (2 * m - 2)));
    }
    return core / odd->get(m).rounded(wp);
  });
  r.value = (-r.value / four_pi_sq).rounded(ctx.bits());
  return r;
}

TrendResult trend_ck_gamma_form(long k, const PrecisionContext& ctx, ZetaOddTable* odd,
                                const std::optional<Real>& tolerance) {
  if (k < 1) throw DomainError("trend_ck needs k >= 1");
  std::unique_ptr<ZetaOddTable> own;
  if (odd == nullptr) {
    own = std::make_unique<ZetaOddTable>(ctx.widened(16));
    odd = own.get();
  }
  const PrecisionContext wide = ctx.widened(large_k_guard(k));
  const Precision wp = wide.bits();
  const Real pi_w = pi(wp);
  const Real log_k_fact = log_gamma(Real(k + 1, wp), wide);
  const Real real_half = Real::from_double(0.5, wp);
  TrendResult r = sum_trend_terms(default_tolerance(ctx, tolerance), wp, [&](long m) {
    const Real log_mag = log_k_fact + log(pi_w) * (2 * m) - log_gamma(Real(k + m + 1, wp), wide) -
                         log_gamma(Real(m, wp) - real_half, wide);
    Real t = exp(log_mag) / odd->get(m).rounded(wp);
    return m % 2 == 0 ? t : -t;
  });
  r.value = (-r.value / (pi_w * sqrt(pi_w))).rounded(ctx.bits());
  return r;
}

namespace {

// Extra bits held by Decomposer's precomputed log Gamma(3/4 + i gamma/2).
constexpr long kLogGammaBGuard = 192;

Complex harmonic_b(const Real& gamma, Precision prec) {
  return {Real::from_double(0.75, prec), gamma.rounded(prec) / 2L};
}

// log_gamma_b, when given, holds log Gamma(b_i) at high precision; it is
// independent of k and dominates the cost otherwise.
OscResult osc_sum(long k, const ZeroTable& zeros, const std::vector<Complex>& residues, long num_zeros,
                  const PrecisionContext& ctx, const std::vector<Complex>* log_gamma_b) {
  if (k < 1) throw DomainError("osc_ck needs k >= 1");
  if (num_zeros < 1 || num_zeros > static_cast<long>(zeros.size()) ||
      num_zeros > static_cast<long>(residues.size())) {
    throw DomainError("num_zeros exceeds the available zeros/residues");
  }
  const PrecisionContext wide = ctx.widened(large_k_guard(k));
  const Precision wp = wide.bits();
  // Guard for the cancellation in log Gamma(a) + log Gamma(b) - log Gamma(a + b).
  const double m = static_cast<double>(k) + 1.75 + zeros.gamma(num_zeros).to_double() / 2.0;
  const PrecisionContext lg_ctx = wide.widened(16 + static_cast<long>(std::ceil(std::log2(1.0 + m * std::log(m + 1.0)))));
  const Precision lp = lg_ctx.bits();
  const bool use_cached = log_gamma_b != nullptr && lp <= ctx.bits() + kLogGammaBGuard;
  const Complex a(Real(k + 1, lp));
  const Real lg_a = log_gamma(a.re(), lg_ctx);
  const Real log2 = log(Real(2, wp));

  OscResult out{Real(wp), {}, Real(wp)};
  out.harmonics.reserve(static_cast<std::size_t>(num_zeros));
  Complex unpaired(wp);
  for (long i = 1; i <= num_zeros; ++i) {
    const Real& gamma = zeros.gamma(i);
    const Complex residue = residues[static_cast<std::size_t>(i - 1)].rounded(wp);
    const Complex b = harmonic_b(gamma, lp);
    const Complex lg_b =
        use_cached ? (*log_gamma_b)[static_cast<std::size_t>(i - 1)].rounded(lp) : log_gamma(b, lg_ctx);
    const Complex log_b = (lg_b - log_gamma(a + b, lg_ctx) + lg_a).rounded(wp);
    const Complex log_br = log_b + log(residue);
    const Complex br = exp(log_br);
    const Real contribution = br.re() * 2L;
    out.value += contribution;
    // Conjugate partner with its own log Gamma(a + b*), for the realness check.
    const Complex log_b_conj = (conj(lg_b) - log_gamma(a + conj(b), lg_ctx) + lg_a).rounded(wp);
    unpaired += br + exp(log_b_conj) * conj(residue);
    out.harmonics.push_back(HarmonicRecord{
        i, gamma, residues[static_cast<std::size_t>(i - 1)],
        LogScaled::from_log(Complex(log_br.re() + log2, Real(wp)), LogScaled::Kind::kReal),
        reduce_phase(log_br.im()).rounded(ctx.bits()), contribution.rounded(ctx.bits())});
  }
  out.value = out.value.rounded(ctx.bits());
  out.unpaired_imag = unpaired.im().rounded(ctx.bits());
  return out;
}

}  // namespace

OscResult osc_ck(long k, const ZeroTable& zeros, const std::vector<Complex>& residues, long num_zeros,
                 const PrecisionContext& ctx) {
  return osc_sum(k, zeros, residues, num_zeros, ctx, nullptr);
}

OscResult osc_ck(long k, const ZeroTable& zeros, long num_zeros, const PrecisionContext& ctx) {
  if (num_zeros < 1 || num_zeros > static_cast<long>(zeros.size())) throw DomainError("num_zeros out of range");
  std::vector<Complex> residues;
  residues.reserve(static_cast<std::size_t>(num_zeros));
  for (long i = 1; i <= num_zeros; ++i) residues.push_back(residue_zeta_prime(zeros.gamma(i), ctx));
  return osc_ck(k, zeros, residues, num_zeros, ctx);
}

Decomposer::Decomposer(const ZeroTable& zeros, long num_zeros, const PrecisionContext& ctx, ValueCache* cache,
                       int jobs)
    : ctx_(ctx), num_zeros_(num_zeros), odd_(std::make_unique<ZetaOddTable>(ctx.widened(16))) {
  if (num_zeros < 1 || num_zeros > static_cast<long>(zeros.size())) {
    throw DomainError("num_zeros must be in 1.." + std::to_string(zeros.size()));
  }
  zeros_ = refine_table(zeros, num_zeros, ctx, cache, jobs);
  residues_.assign(static_cast<std::size_t>(num_zeros), Complex(ctx.bits()));
  parallel_for(num_zeros, jobs, [&](long i) {
    const ZeroEntry& e = zeros_.at(i + 1);
    const auto compute = [&] { return zeta_prime_at_pole(e.gamma, ctx); };
    // The cache stores zeta'(1 - rho); the residue is 1/(2 zeta').
    const Complex d = cache != nullptr
                          ? cache->get_or_compute_complex(CacheKind::kZetaPrimeAtZero, residue_key(e), ctx, compute)
                          : compute();
    residues_[static_cast<std::size_t>(i)] = (1L / (d * 2L)).rounded(ctx.bits());
  });
  const PrecisionContext lg_ctx = ctx.widened(kLogGammaBGuard);
  log_gamma_b_.assign(static_cast<std::size_t>(num_zeros), Complex(lg_ctx.bits()));
  parallel_for(num_zeros, jobs, [&](long i) {
    log_gamma_b_[static_cast<std::size_t>(i)] = log_gamma(harmonic_b(zeros_.gamma(i + 1), lg_ctx.bits()), lg_ctx);
  });
  if (cache != nullptr) {
    for (long m = 2; m <= 16; ++m) {
      const Real v = cache->get_or_compute_real(CacheKind::kZetaOdd, std::to_string(2 * m - 1), ctx_.widened(16),
                                                [&] { return odd_->get(m); });
      odd_->seed(m, v);
    }
  }
}

TrendResult Decomposer::trend(long k) const { return trend_ck(k, ctx_, odd_.get()); }

OscResult Decomposer::osc(long k) const { return osc_sum(k, zeros_, residues_, num_zeros_, ctx_, &log_gamma_b_); }

CkDecomposition Decomposer::decompose(long k) const {
  TrendResult t = trend(k);
  OscResult o = osc(k);
  Real total = (t.value + o.value).rounded(ctx_.bits());
  return {k,         std::move(t.value), std::move(o.value), std::move(total), std::move(o.harmonics),
          t.terms_used, num_zeros_,       std::move(o.unpaired_imag)};
}

CkDecomposition decompose_ck(long k, const ZeroTable& zeros, long num_zeros, const PrecisionContext& ctx) {
  return Decomposer(zeros, num_zeros, ctx).decompose(k);
}

HarmonicModel harmonic_model(long k, const Real& gamma, const PrecisionContext& ctx,
                             const std::optional<Complex>& residue) {
  if (k < 1) throw DomainError("harmonic_model needs k >= 1");
  const PrecisionContext wide = ctx.widened(16);
  const Precision wp = wide.bits();
  const Complex b(Real::from_double(0.75, wp), gamma.rounded(wp) / 2L);
  const Complex lg = log_gamma(b, wide);
  const Real log_k1 = log(Real(k + 1, wp));
  Real log_amp = lg.re() - log_k1 * 3L / 4L;
  Real angle = lg.im();
  if (residue) {
    log_amp += log(abs(*residue));
    angle += arg(*residue);
  }
  const Real phase = gamma.rounded(wp) * log_k1 / 2L;
  HarmonicModel out{LogScaled::from_log(Complex(log_amp, Real(wp)), LogScaled::Kind::kReal),
                    phase.rounded(ctx.bits()), std::nullopt};
  if (residue) out.contribution = (exp(log_amp) * 2L * cos(angle - phase)).rounded(ctx.bits());
  return out;
}

LogScaled amplitude_bound(const Real& gamma, Precision prec) {
  if (gamma.sign() <= 0) throw DomainError("amplitude_bound needs gamma > 0");
  const Precision wp = std::max(prec, gamma.exponent2() + 64);
  Complex z(Real::from_double(0.75, wp), gamma.rounded(wp) / 2L);
  // Shift |z| above 20 so five Stirling terms are accurate to about 1e-17.
  Real shift_log(wp);
  while (abs(z) < 20L) {
    shift_log += log(abs(z));
    z += 1L;
  }
  const Complex inv = 1L / z;
  const Complex inv2 = inv * inv;
  const Complex series =
      inv * (Real(1, wp) / 12L -
             inv2 * (Real(1, wp) / 360L - inv2 * (Real(1, wp) / 1260L - inv2 * (Real(1, wp) / 1680L - inv2 / 1188L))));
  const Complex main = (z - Real::from_double(0.5, wp)) * log(z) - z;
  const Real log_abs = main.re() + log(pi(wp) * 2L) / 2L + series.re() - shift_log;
  return LogScaled::from_log(Complex(log_abs, Real(wp)), LogScaled::Kind::kReal);
}

std::vector<long> scan_grid(long k_min, long k_max, int points, Spacing spacing) {
  if (k_min < 1 || k_min >= k_max) throw DomainError("scan needs 1 <= k_min < k_max");
  if (points < 2) throw DomainError("scan needs at least 2 points");
  std::vector<long> ks;
  ks.reserve(static_cast<std::size_t>(points));
  const double lo = static_cast<double>(k_min);
  const double hi = static_cast<double>(k_max);
  for (int i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / (points - 1);
    double k = spacing == Spacing::kLinear ? lo + f * (hi - lo) : std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo)));
    ks.push_back(std::clamp(std::lround(k), k_min, k_max));
  }
  ks.front() = k_min;
  ks.back() = k_max;
  return ks;
}

std::vector<ScanRow> criterion_scan(long k_min, long k_max, int points, Spacing spacing, const Decomposer& decomposer,
                                    int jobs) {
  const std::vector<long> ks = scan_grid(k_min, k_max, points, spacing);
  const Precision p = decomposer.context().bits();
  std::vector<ScanRow> rows(ks.size());
  parallel_for(static_cast<long>(ks.size()), jobs, [&](long i) {
    const long k = ks[static_cast<std::size_t>(i)];
    CkDecomposition d = decomposer.decompose(k);
    const Real scale = pow(Real(k, p), Real::from_double(0.75, p));
    ScanRow row{k,
                d.total,
                d.trend,
                d.oscillation,
                (d.total * scale).rounded(p),
                (d.trend * scale).rounded(p),
                (d.oscillation * scale).rounded(p),
                d.harmonics.front().contribution};
    rows[static_cast<std::size_t>(i)] = std::move(row);
  });
  return rows;
}

}  // namespace ckrice
