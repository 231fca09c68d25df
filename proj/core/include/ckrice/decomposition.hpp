#pragma once

// c_k = trend + oscillation, from the residues of
//   Gamma(k+1) Gamma(-s) / (Gamma(k+1-s) zeta(2s+2))
// at the trivial zeros (trend) and at the nontrivial zeros (oscillation).

#include <memory>
#include <optional>
#include <vector>

#include "ckrice/log_scaled.hpp"
#include "ckrice/precision.hpp"
#include "ckrice/real.hpp"
#include "ckrice/zeros.hpp"
#include "ckrice/zeta.hpp"

namespace ckrice {

class ValueCache;

// h(s) = 2 (s-1) pi^(-s/2) Gamma(1 + s/2).
Complex xi_h(const Complex& s, const PrecisionContext& ctx);
// xi(s) = h(s) zeta(s), entire, xi(0) = 1.
Complex xi(const Complex& s, const PrecisionContext& ctx);
// xi with the factor of rho_n removed, truncated at N zero pairs:
//   -(1/s) (1 - s/rho_n*) prod_{i <= N, i != n} (1 - s/rho_i)(1 - s/rho_i*)
Complex xi_crippled(long n, const Complex& s, long n_pairs, const ZeroTable& zeros, const PrecisionContext& ctx);

enum class ResidueMethod {
  kZetaPrime,    // 1 / (2 zeta'(1 - rho))
  kHadamard,     // -h(rho*) / (2 xi_n(rho)), product tail compensated
  kHadamardRaw,  // same with the plainly truncated product
};

const char* to_string(ResidueMethod method);

// Residue of 1/zeta(2s+2) at the pole paired with rho = 1/2 + i gamma.
// Throws ConvergenceError when |zeta'(1 - rho)| < 10 series_eps.
Complex residue_zeta_prime(const Real& gamma, const PrecisionContext& ctx);
// zeta'(1 - rho), the quantity behind residue_zeta_prime; same error contract.
Complex zeta_prime_at_pole(const Real& gamma, const PrecisionContext& ctx);
// n_pairs >= index, n_pairs <= zeros.size().
Complex residue_hadamard(const ZeroTable& zeros, long index, long n_pairs, const PrecisionContext& ctx,
                         bool tail_compensated = true);
// Dispatch; the Hadamard methods look gamma up in `zeros`.
Complex residue_at_zero(const Real& gamma, ResidueMethod method, const PrecisionContext& ctx,
                        const ZeroTable* zeros = nullptr, long n_pairs = 0);

struct TrendResult {
  Real value;
  long terms_used;
};

// -(1/4pi^2) sum_{m>=2} B(k+1,m)/Gamma(2m-1) (-1)^m (2pi)^(2m) / zeta(2m-1), summed
// until a term falls below `tolerance` (default series_eps) relative to the sum.
TrendResult trend_ck(long k, const PrecisionContext& ctx, ZetaOddTable* odd = nullptr,
                     const std::optional<Real>& tolerance = std::nullopt);
// -(k!/pi^(3/2)) sum_{m>=2} (-1)^m pi^(2m) / (Gamma(k+m+1) Gamma(m-1/2) zeta(2m-1)).
TrendResult trend_ck_gamma_form(long k, const PrecisionContext& ctx, ZetaOddTable* odd = nullptr,
                                const std::optional<Real>& tolerance = std::nullopt);

struct HarmonicRecord {
  long zero_index;
  Real gamma;
  Complex residue;
  LogScaled amplitude;  // |2 B(k+1, (1+rho)/2) R|
  Real phase;           // arg(B R)
  Real contribution;    // 2 Re(B R)
};

struct OscResult {
  Real value;
  std::vector<HarmonicRecord> harmonics;
  // Im of sum_i [B(k+1,b_i) R_i + B(k+1,b_i*) R_i*] with both terms computed independently.
  Real unpaired_imag;
};

// Oscillation from precomputed residues (residues[i] belongs to zero i+1).
OscResult osc_ck(long k, const ZeroTable& zeros, const std::vector<Complex>& residues, long num_zeros,
                 const PrecisionContext& ctx);
// Same, computing residues with the zeta' route.
OscResult osc_ck(long k, const ZeroTable& zeros, long num_zeros, const PrecisionContext& ctx);

struct CkDecomposition {
  long k;
  Real trend;
  Real oscillation;
  Real total;
  std::vector<HarmonicRecord> harmonics;
  long trend_terms_used;
  long zeros_used;
  Real unpaired_imag;
};

// Refined zeros, residues and zeta(2m-1) values for one (zeros, count, precision)
// configuration, built once and then shared read-only across threads.
class Decomposer {
 public:
  // Refines the first num_zeros ordinates and computes their residues, in
  // parallel over `jobs` threads. Cache entries are reused when given.
  Decomposer(const ZeroTable& zeros, long num_zeros, const PrecisionContext& ctx, ValueCache* cache = nullptr,
             int jobs = 1);

  [[nodiscard]] const PrecisionContext& context() const { return ctx_; }
  [[nodiscard]] const ZeroTable& zeros() const { return zeros_; }
  [[nodiscard]] long num_zeros() const { return num_zeros_; }
  [[nodiscard]] const std::vector<Complex>& residues() const { return residues_; }

  [[nodiscard]] TrendResult trend(long k) const;
  [[nodiscard]] OscResult osc(long k) const;
  [[nodiscard]] CkDecomposition decompose(long k) const;

 private:
  PrecisionContext ctx_;
  ZeroTable zeros_;
  long num_zeros_;
  std::vector<Complex> residues_;
  std::vector<Complex> log_gamma_b_;  // log Gamma(3/4 + i gamma_i / 2), k-independent
  std::unique_ptr<ZetaOddTable> odd_;
};

CkDecomposition decompose_ck(long k, const ZeroTable& zeros, long num_zeros, const PrecisionContext& ctx);

struct HarmonicModel {
  LogScaled amplitude;  // |Gamma(b)| (k+1)^(-3/4), times |R| when a residue is given
  Real phase;           // (gamma/2) log(k+1)
  // Leading-order contribution 2 |Gamma(b) R| (k+1)^(-3/4) cos(arg(Gamma(b) R) - phase); needs a residue.
  std::optional<Real> contribution;
};

HarmonicModel harmonic_model(long k, const Real& gamma, const PrecisionContext& ctx,
                             const std::optional<Complex>& residue = std::nullopt);

// log10 |Gamma(3/4 + i gamma/2)| by the Stirling series (valid for any
// gamma > 0 including heights far outside the MPFR range of Gamma itself).
LogScaled amplitude_bound(const Real& gamma, Precision prec = 128);

enum class Spacing { kLinear, kLog };

struct ScanRow {
  long k;
  Real total;
  Real trend;
  Real oscillation;
  Real total_scaled;  // x k^(3/4)
  Real trend_scaled;
  Real osc_scaled;
  Real first_harmonic;  // contribution of the first zero pair
};

// k_i for i = 0..points-1, rounded to integers; rows may repeat k at small scales.
std::vector<long> scan_grid(long k_min, long k_max, int points, Spacing spacing);
std::vector<ScanRow> criterion_scan(long k_min, long k_max, int points, Spacing spacing, const Decomposer& decomposer,
                                    int jobs = 1);

}  // namespace ckrice
