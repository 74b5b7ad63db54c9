#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "error.hpp"

namespace bettiscan {

inline bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Arithmetic in Z/p for a prime p < 2^31.
class PrimeField {
 public:
  explicit PrimeField(std::int64_t p) : p_(p) {
    if (!is_prime(p) || p >= (std::int64_t{1} << 31)) throw Error(ErrorCode::Precondition, "characteristic must be a prime below 2^31");
  }

  std::int64_t characteristic() const { return p_; }

  std::int64_t reduce(std::int64_t a) const {
    a %= p_;
    return a < 0 ? a + p_ : a;
  }
  std::int64_t add(std::int64_t a, std::int64_t b) const { return (a + b) % p_; }
  std::int64_t sub(std::int64_t a, std::int64_t b) const { return reduce(a - b); }
  std::int64_t mul(std::int64_t a, std::int64_t b) const { return (a * b) % p_; }

  std::int64_t inv(std::int64_t a) const {
    // extended Euclid
    std::int64_t t = 0, new_t = 1, r = p_, new_r = reduce(a);
    if (new_r == 0) throw Error(ErrorCode::Precondition, "division by zero in prime field");
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      t = std::exchange(new_t, t - q * new_t);
      r = std::exchange(new_r, r - q * new_r);
    }
    return reduce(t);
  }

 private:
  std::int64_t p_;
};

/// Dense row-major matrix over Z/p.
struct ModMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> data;

  ModMatrix() = default;
  ModMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}
  std::int64_t& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  std::int64_t operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

inline ModMatrix multiply(const ModMatrix& a, const ModMatrix& b, const PrimeField& f) {
  if (a.cols != b.rows) throw Error(ErrorCode::Precondition, "matrix shape mismatch");
  ModMatrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      std::int64_t x = a(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.cols; ++j) c(i, j) = f.add(c(i, j), f.mul(x, b(k, j)));
    }
  return c;
}

/// Rank by Gaussian elimination over Z/p; entries are reduced first.
inline int rank(ModMatrix m, const PrimeField& f) {
  for (auto& x : m.data) x = f.reduce(x);
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int pivot = -1;
    for (int i = r; i < m.rows; ++i)
      if (m(i, c) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m(pivot, j), m(r, j));
    const std::int64_t inv = f.inv(m(r, c));
    for (int i = r + 1; i < m.rows; ++i) {
      if (m(i, c) == 0) continue;
      const std::int64_t factor = f.mul(m(i, c), inv);
      for (int j = c; j < m.cols; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    ++r;
  }
  return r;
}

}  // namespace bettiscan
