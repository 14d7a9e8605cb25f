#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "hartogs/errors.hpp"

namespace hartogs {

/// Generalized binomial coefficient binom(x + k - 1, k) = Gamma(x + k) /
/// (Gamma(k + 1) Gamma(x)), the rising factorial x (x+1) ... (x+k-1) / k!.
///
/// Integer x uses exact 64-bit arithmetic while it cannot overflow. Otherwise
/// short products (k <= 256) are evaluated factor by factor, and long ones go
/// through lgamma with the sign tracked separately.
inline double gen_binomial(double x, unsigned k) {
  if (k == 0) return 1.0;
  if (!std::isfinite(x)) throw DomainError("gen_binomial: non-finite argument");
  const bool x_int = x == std::floor(x);
  if (x_int && x <= 0.0) {
    // x(x+1)...(x+k-1) has a zero factor when -x < k; otherwise Gamma(x) has a pole.
    if (-x < static_cast<double>(k)) return 0.0;
    throw DomainError("gen_binomial: pole of Gamma on the evaluation path");
  }

  if (x_int && x + k <= 64.0) {
    const auto n = static_cast<std::uint64_t>(x) + k - 1;
    std::uint64_t r = 1;
    bool overflow = false;
    for (std::uint64_t i = 1; i <= k; ++i) {
      const std::uint64_t num = n - k + i;
      if (r > std::numeric_limits<std::uint64_t>::max() / num) {
        overflow = true;
        break;
      }
      r = r * num / i;  // exact: r * num is i * binom(n - k + i, i)
    }
    if (!overflow) return static_cast<double>(r);
  }

  if (k <= 256) {
    double r = 1.0;
    for (unsigned i = 0; i < k; ++i) r *= (x + i) / (i + 1.0);
    if (std::isfinite(r)) return r;
  }

  int sign_num = 1;
  int sign_den = 1;
  const double lnum = lgamma_r(x + k, &sign_num);
  const double lden = lgamma_r(x, &sign_den);
  const double lk = std::lgamma(static_cast<double>(k) + 1.0);
  return sign_num * sign_den * std::exp(lnum - lden - lk);
}

}  // namespace hartogs
