#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace bettiscan {

using Count = std::int64_t;

inline Count checked_add(Count a, Count b) {
  Count r;
  if (__builtin_add_overflow(a, b, &r))
    throw Error(ErrorCode::Overflow, std::to_string(a) + " + " + std::to_string(b));
  return r;
}

inline Count checked_sub(Count a, Count b) {
  Count r;
  if (__builtin_sub_overflow(a, b, &r))
    throw Error(ErrorCode::Overflow, std::to_string(a) + " - " + std::to_string(b));
  return r;
}

inline Count checked_mul(Count a, Count b) {
  Count r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(ErrorCode::Overflow, std::to_string(a) + " * " + std::to_string(b));
  return r;
}

/// C(n, k), zero outside 0 <= k <= n.
inline Count binomial(Count n, Count k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Count r = 1;
  for (Count i = 1; i <= k; ++i) {
    // r * (n - k + i) is divisible by i at every step
    r = checked_mul(r, n - k + i) / i;
  }
  return r;
}

inline Count factorial(Count n) {
  Count r = 1;
  for (Count i = 2; i <= n; ++i) r = checked_mul(r, i);
  return r;
}

inline Count checked_product(std::span<const Count> xs) {
  Count r = 1;
  for (Count x : xs) r = checked_mul(r, x);
  return r;
}

/// Number of monomials of degree d in n variables.
inline Count monomial_count(int n, int d) {
  if (d < 0 || n <= 0) return (d == 0 && n == 0) ? 1 : 0;
  return binomial(n - 1 + d, d);
}

inline std::string join(std::span<const Count> xs, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(xs[i]);
  }
  return out;
}

}  // namespace bettiscan
