#pragma once

#include <mutex>
#include <vector>

#include "ckrice/precision.hpp"
#include "ckrice/real.hpp"

namespace ckrice {

// zeta(n) for even n >= 2 from the exact Bernoulli number:
// (-1)^(n/2+1) B_n (2 pi)^n / (2 n!).
Real zeta_even(long n, const PrecisionContext& ctx);

// zeta(2j+2) - 1 for j = 0..j_max, each carrying the context's relative precision.
class ZetaEvenTable {
 public:
  static ZetaEvenTable build(long j_max, const PrecisionContext& ctx);
  // Rebuilds a table from stored values (e.g. a cache file).
  ZetaEvenTable(std::vector<Real> minus_one, long precision_bits);

  [[nodiscard]] long j_max() const { return static_cast<long>(minus_one_.size()) - 1; }
  [[nodiscard]] long precision_bits() const { return precision_bits_; }
  [[nodiscard]] const Real& minus_one(long j) const { return minus_one_.at(static_cast<std::size_t>(j)); }
  // 1 / zeta(2j+2) = 1 / (1 + table[j]).
  [[nodiscard]] Real reciprocal(long j) const;
  [[nodiscard]] const std::vector<Real>& values() const { return minus_one_; }

 private:
  std::vector<Real> minus_one_;
  long precision_bits_;
};

// zeta(s) by Euler-Maclaurin summation. Throws PoleError at s = 1.
Complex zeta_complex(const Complex& s, const PrecisionContext& ctx);
// zeta'(s) from the term-by-term differentiated Euler-Maclaurin formula.
Complex zeta_prime(const Complex& s, const PrecisionContext& ctx);

struct ZetaWithDerivative {
  Complex value;
  Complex derivative;
};
// Both at once; the cost is one Euler-Maclaurin pass.
ZetaWithDerivative zeta_and_derivative(const Complex& s, const PrecisionContext& ctx);

// (s - 1) zeta(s), regular at s = 1 where it equals 1.
Complex zeta_times_s_minus_one(const Complex& s, const PrecisionContext& ctx);

// Real-line convenience (zeta at odd integers and the like).
Real zeta_real(const Real& s, const PrecisionContext& ctx);

// Res(1/zeta; s = -2n) = 2 (-1)^n (2 pi)^(2n) / ((2n)! zeta(2n+1)).
Real trivial_residue(long n, const PrecisionContext& ctx);

// Memoized zeta(2m - 1) for m >= 2 at a fixed precision; grows on demand.
class ZetaOddTable {
 public:
  explicit ZetaOddTable(PrecisionContext ctx) : ctx_(std::move(ctx)) {}
  // zeta(2m - 1), m >= 2.
  Real get(long m);
  [[nodiscard]] long precision_bits() const { return ctx_.precision_bits; }
  // Pre-seeds a value (from a cache); ignored when already present.
  void seed(long m, Real value);

 private:
  PrecisionContext ctx_;
  std::mutex mutex_;
  std::vector<Real> values_;  // values_[m - 2]
  std::vector<bool> present_;
};

}  // namespace ckrice
