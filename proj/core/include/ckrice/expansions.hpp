#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "ckrice/precision.hpp"
#include "ckrice/real.hpp"
#include "ckrice/zeta.hpp"

namespace ckrice {

// The three zeta expansions over Pochhammer factors (1 - s/2)_k:
//   kBase:           zeta(s) = 1/(s-1) sum_k (1-s/2)_k A_k / k!,
//                    A_k = sum_j (-1)^j C(k,j) (2j+1) zeta(2j+2)
//   kPoleSubtracted: zeta(s) = 1/(s-1) + sum_k (1-s/2)_k A_k / k!,
//                    A_k = sum_j (-1)^j C(k,j) (zeta(2j+2) - 1/(2j+1))
//   kRegularized:    zeta(s) = [1 + s(log 2pi - 1 + s sum_k (1-s/2)_k A_k / k!)] / (2(s-1)),
//                    A_k = sum_j (-1)^j C(k,j) f(2j+2)
enum class ExpansionVariant { kBase, kPoleSubtracted, kRegularized };

const char* to_string(ExpansionVariant variant);
// Accepts "base", "pole-subtracted", "regularized"; throws DomainError otherwise.
ExpansionVariant parse_variant(std::string_view name);

struct CoefficientSeq {
  ExpansionVariant variant;
  std::vector<Real> values;  // A_0 .. A_K
  long precision_bits;
};

// b_k = sum_{j<=k} (-1)^j C(k,j) a_j with exact integer binomials.
std::vector<Real> binomial_transform(std::span<const Real> seq);
std::vector<mpq_class> binomial_transform(std::span<const mpq_class> seq);

// A_k for one variant. The Base value uses the alternating zeta form.
Real compute_Ak(long k, ExpansionVariant variant, const PrecisionContext& ctx);
// Base A_k through sum_j C(k,j) pi^(2j+2) B_(2j+2) / ((2)_j (1/2)_j).
Real compute_Ak_bernoulli_form(long k, const PrecisionContext& ctx);
// A_0 .. A_K in one pass.
CoefficientSeq coefficient_sequence(long k_max, ExpansionVariant variant, const PrecisionContext& ctx);

// Per-variant coefficient caches; a request at higher precision or length replaces the entry.
class CoefficientCache {
 public:
  std::shared_ptr<const CoefficientSeq> get(long k_max, ExpansionVariant variant, const PrecisionContext& ctx);

 private:
  std::mutex mutex_;
  std::map<ExpansionVariant, std::shared_ptr<const CoefficientSeq>> entries_;
};

// f(s) = ((2(s-1) zeta(s) - 1)/s + 1 - log 2pi)/s, entire. Inside |s| < 2^-10
// it is evaluated from its Taylor series at 0.
Complex f_reg(const Complex& s, const PrecisionContext& ctx);

inline constexpr long kDefaultDirectCeiling = 50'000;

// Working precision for the direct sum: k + ceil(log2(k+2)) + 64 bits, and
// never below the caller's precision.
long direct_ck_precision(long k, const PrecisionContext& ctx);

// c_k = sum_j (-1)^j C(k,j) / zeta(2j+2). `table`, when given, must cover
// j <= k at >= direct_ck_precision(k) bits. Throws ResourceError when k > ceiling.
Real direct_ck(long k, const PrecisionContext& ctx, const ZetaEvenTable* table = nullptr,
               long ceiling = kDefaultDirectCeiling);

// N-term truncation of the chosen expansion. Throws PoleError at s = 1.
Complex zeta_via_expansion(const Complex& s, long n_terms, ExpansionVariant variant, const PrecisionContext& ctx);

}  // namespace ckrice
