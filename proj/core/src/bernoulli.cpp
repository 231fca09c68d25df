#include "ckrice/bernoulli.hpp"

#include <algorithm>
#include <mutex>
#include <string>

#include "ckrice/errors.hpp"

namespace ckrice {

namespace {

// Tangent numbers T_1..T_n by the in-place Brent-Harvey recurrence.
std::vector<mpz_class> tangent_numbers(long n) {
  std::vector<mpz_class> t(static_cast<std::size_t>(n) + 1);
  t[1] = 1;
  for (long k = 2; k <= n; ++k) t[k] = (k - 1) * t[k - 1];
  for (long k = 2; k <= n; ++k) {
    for (long j = k; j <= n; ++j) t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];
  }
  return t;
}

}  // namespace

BernoulliCache& BernoulliCache::global() {
  static BernoulliCache cache;
  return cache;
}

void BernoulliCache::extend_to(long half_index) {
  std::unique_lock lock(mutex_);
  const auto have = static_cast<long>(even_.size()) - 1;
  if (have >= half_index) return;
  const long target = std::max({half_index, 2 * have, 32L});
  const std::vector<mpz_class> t = tangent_numbers(target);
  std::vector<mpq_class> next(static_cast<std::size_t>(target) + 1);
  next[0] = 1;
  for (long m = 1; m <= target; ++m) {
    mpz_class four_pow;
    mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, static_cast<unsigned long>(m));
    mpq_class b(2 * m * t[m], four_pow * (four_pow - 1));
    b.canonicalize();
    next[m] = (m % 2 == 1) ? b : mpq_class(-b);
  }
  even_ = std::move(next);
}

mpq_class BernoulliCache::get(long n) {
  if (n < 0) throw DomainError("Bernoulli index must be nonnegative");
  if (n == 1) return {-1, 2};
  if (n % 2 != 0) throw DomainError("odd Bernoulli numbers B_n (n > 1) vanish; requested n = " + std::to_string(n));
  const long half = n / 2;
  {
    std::shared_lock lock(mutex_);
    if (static_cast<long>(even_.size()) > half) return even_[half];
  }
  extend_to(half);
  std::shared_lock lock(mutex_);
  return even_[half];
}

Real BernoulliCache::get_real(long n, Precision prec) { return Real::from_mpq(get(n), prec); }

long BernoulliCache::largest_cached_index() const {
  std::shared_lock lock(mutex_);
  return even_.empty() ? -1 : 2 * (static_cast<long>(even_.size()) - 1);
}

mpq_class bernoulli(long n) { return BernoulliCache::global().get(n); }

}  // namespace ckrice
