#pragma once

#include "ckrice/log_scaled.hpp"
#include "ckrice/precision.hpp"
#include "ckrice/real.hpp"

namespace ckrice {

// log Gamma(z) on the standard branch: the analytic continuation from the
// positive real axis with the cut along the negative real axis, so that
// log_gamma(conj z) == conj(log_gamma(z)) off the cut. On the cut the limit
// from the upper half-plane is returned. Throws PoleError at 0, -1, -2, ...
//
// Argument recurrence pushes small |z| out to 20 + precision_bits/8 before the
// Stirling series is applied; Re z < 0 goes through the reflection formula.
Complex log_gamma(const Complex& z, const PrecisionContext& ctx);
Real log_gamma(const Real& x, const PrecisionContext& ctx);  // log|Gamma(x)|

// log B(a, b) = log_gamma(a) + log_gamma(b) - log_gamma(a + b).
Complex log_beta(const Complex& a, const Complex& b, const PrecisionContext& ctx);
// B(a, b) in log-magnitude form; safe for any magnitude.
LogScaled beta_scaled(const Complex& a, const Complex& b, const PrecisionContext& ctx);
// B(a, b) as an ordinary number; throws RangeError when outside the MPFR range.
Complex beta(const Complex& a, const Complex& b, const PrecisionContext& ctx);

// Large-first-argument expansion Gamma(b) a^-b [1 - b(b-1)/(2a)] (order 1) or
// Gamma(b) a^-b (order 0). Requires |a| >= 10 |b|^2; throws DomainError otherwise.
LogScaled beta_asymptotic(const Complex& a, const Complex& b, int order, const PrecisionContext& ctx);

}  // namespace ckrice
