#pragma once

#include <gmpxx.h>

#include <shared_mutex>
#include <vector>

#include "ckrice/real.hpp"

namespace ckrice {

// Exact Bernoulli numbers B_0, B_1 = -1/2 and the even-index B_2n, memoized.
//
// The even values come from the integer tangent numbers T_n
// (B_2n = (-1)^(n-1) 2n T_n / (4^n (4^n - 1))), which keeps the recurrence in
// exact integer arithmetic. The cache only grows; readers never see a
// partially built table.
class BernoulliCache {
 public:
  static BernoulliCache& global();

  // Throws DomainError for negative or odd n > 1.
  mpq_class get(long n);
  Real get_real(long n, Precision prec);
  [[nodiscard]] long largest_cached_index() const;

 private:
  void extend_to(long half_index);

  mutable std::shared_mutex mutex_;
  std::vector<mpq_class> even_;  // even_[m] = B_{2m}
};

// Convenience wrapper over the global cache.
mpq_class bernoulli(long n);

}  // namespace ckrice
