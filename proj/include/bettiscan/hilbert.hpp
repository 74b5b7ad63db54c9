#pragma once

#include <charconv>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "arith.hpp"
#include "error.hpp"

namespace bettiscan {

/// Hilbert function of an Artinian graded quotient: H(d) for d = 0..socle.
/// Stored with trailing zeros trimmed, so equality is equality of sequences.
class HilbertFunction {
 public:
  HilbertFunction() = default;

  /// Validates and trims. Throws NotAdmissible for negative values, a
  /// leading value other than 1, or a nonzero value after a zero.
  static HilbertFunction from_values(std::vector<Count> values) {
    while (!values.empty() && values.back() == 0) values.pop_back();
    for (std::size_t d = 0; d < values.size(); ++d) {
      if (values[d] < 0)
        throw Error(ErrorCode::NotAdmissible, "negative value in degree " + std::to_string(d));
      if (values[d] == 0)
        throw Error(ErrorCode::NotAdmissible, "nonzero value after a zero in degree " + std::to_string(d));
    }
    if (!values.empty() && values[0] != 1)
      throw Error(ErrorCode::NotAdmissible, "H(0) must be 1");
    HilbertFunction h;
    h.values_ = std::move(values);
    return h;
  }

  /// Parses the comma separated form `1,3,6,7,3,1`.
  static HilbertFunction parse(std::string_view text) {
    return from_values(parse_values(text));
  }

  static std::vector<Count> parse_values(std::string_view text) {
    std::vector<Count> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t comma = text.find(',', pos);
      if (comma == std::string_view::npos) comma = text.size();
      std::string_view token = text.substr(pos, comma - pos);
      while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
      while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
      Count v = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
        throw Error(ErrorCode::Parse, "bad integer '" + std::string(token) + "' at offset " + std::to_string(pos));
      values.push_back(v);
      pos = comma + 1;
    }
    return values;
  }

  const std::vector<Count>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  /// H(d); zero outside the support.
  Count operator[](int d) const {
    return (d >= 0 && static_cast<std::size_t>(d) < values_.size()) ? values_[d] : 0;
  }

  /// Index of the last nonzero value, -1 for the zero function.
  int socle_degree() const { return static_cast<int>(values_.size()) - 1; }

  std::string to_string() const { return join(values_); }

  auto operator<=>(const HilbertFunction&) const = default;

 private:
  std::vector<Count> values_;
};

/// Greedy d-th binomial expansion h = C(a_d,d) + C(a_{d-1},d-1) + ... + C(a_j,j).
inline std::vector<Count> macaulay_expansion(Count h, int d) {
  if (h < 1 || d < 1)
    throw Error(ErrorCode::Precondition, "macaulay_expansion needs h >= 1 and d >= 1");
  std::vector<Count> tops;
  for (int k = d; k >= 1 && h > 0; --k) {
    Count a = k;
    while (binomial(a + 1, k) <= h) ++a;
    tops.push_back(a);
    h -= binomial(a, k);
  }
  return tops;
}

/// h^<d>: the largest possible H(d+1) given H(d) = h.
inline Count macaulay_bound(Count h, int d) {
  if (d < 1) throw Error(ErrorCode::Precondition, "macaulay_bound needs d >= 1");
  if (h <= 0) return 0;
  auto tops = macaulay_expansion(h, d);
  Count bound = 0;
  int k = d;
  for (Count a : tops) {
    bound = checked_add(bound, binomial(a + 1, k + 1));
    --k;
  }
  return bound;
}

/// Macaulay's characterization; accepts raw sequences, internal zeros included.
inline bool is_o_sequence(std::span<const Count> h, int n) {
  std::size_t len = h.size();
  while (len > 0 && h[len - 1] == 0) --len;
  if (len == 0) return true;
  if (h[0] != 1) return false;
  if (len >= 2 && (h[1] < 0 || h[1] > n)) return false;
  bool seen_zero = false;
  for (std::size_t d = 1; d < len; ++d) {
    if (h[d] < 0) return false;
    if (seen_zero && h[d] != 0) return false;
    if (h[d] == 0) seen_zero = true;
    if (d + 1 < len && h[d + 1] > macaulay_bound(h[d], static_cast<int>(d))) return false;
  }
  return true;
}

inline bool is_o_sequence(const HilbertFunction& h, int n) { return is_o_sequence(h.values(), n); }

/// Visits every O-sequence in n variables extending `prefix` with socle degree
/// at most socle_max, in lexicographic order (a sequence precedes its
/// extensions). The visitor may return false to stop early.
template <class Visitor>
void for_each_o_sequence(int n, int socle_max, std::span<const Count> prefix, Visitor&& visit) {
  if (prefix.empty() || !is_o_sequence(prefix, n) || prefix.back() == 0)
    throw Error(ErrorCode::Precondition, "prefix is not an admissible O-sequence start");
  std::vector<Count> current(prefix.begin(), prefix.end());
  if (static_cast<int>(current.size()) - 1 > socle_max) return;

  auto call = [&](const std::vector<Count>& values) -> bool {
    HilbertFunction h = HilbertFunction::from_values(values);
    if constexpr (std::is_same_v<std::invoke_result_t<Visitor&, const HilbertFunction&>, bool>) {
      return visit(h);
    } else {
      visit(h);
      return true;
    }
  };

  // Iterative depth-first walk: current holds the sequence being emitted.
  if (!call(current)) return;
  std::vector<Count> bounds;
  auto bound_after = [&](std::size_t len) -> Count {
    if (len == 1) return n;
    return macaulay_bound(current[len - 1], static_cast<int>(len - 1));
  };
  const std::size_t base = current.size();
  if (static_cast<int>(base) > socle_max) return;
  bounds.push_back(bound_after(base));
  if (bounds.back() < 1) return;
  current.push_back(1);
  while (current.size() > base) {
    if (!call(current)) return;
    if (static_cast<int>(current.size()) <= socle_max) {
      Count b = bound_after(current.size());
      if (b >= 1) {
        bounds.push_back(b);
        current.push_back(1);
        continue;
      }
    }
    // advance to the next sibling, popping exhausted levels
    while (current.size() > base && current.back() >= bounds.back()) {
      current.pop_back();
      bounds.pop_back();
    }
    if (current.size() > base) ++current.back();
  }
}

inline std::vector<HilbertFunction> enumerate_o_sequences(int n, int socle_max, std::span<const Count> prefix) {
  std::vector<HilbertFunction> out;
  for_each_o_sequence(n, socle_max, prefix, [&](const HilbertFunction& h) { out.push_back(h); });
  return out;
}

inline Count multiplicity(const HilbertFunction& h) {
  Count e = 0;
  for (Count v : h.values()) e = checked_add(e, v);
  return e;
}

/// Coefficients of prod_i (1 + t + ... + t^{d_i - 1}).
inline HilbertFunction ci_hilbert_function(std::span<const Count> degrees) {
  if (degrees.empty()) throw Error(ErrorCode::Precondition, "ci_hilbert_function needs at least one degree");
  std::vector<Count> poly{1};
  for (Count d : degrees) {
    if (d < 1) throw Error(ErrorCode::Precondition, "complete intersection degrees must be positive");
    std::vector<Count> next(poly.size() + static_cast<std::size_t>(d) - 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i)
      for (Count k = 0; k < d; ++k) next[i + k] = checked_add(next[i + k], poly[i]);
    poly = std::move(next);
  }
  return HilbertFunction::from_values(std::move(poly));
}

enum class AciVerdict { Obstructed, Inconclusive };

inline std::string_view to_string(AciVerdict v) {
  return v == AciVerdict::Obstructed ? "OBSTRUCTED" : "INCONCLUSIVE";
}

struct AciObstruction {
  AciVerdict verdict = AciVerdict::Inconclusive;
  std::vector<Count> difference;  // CI(d,d,d) - H, termwise
  std::vector<Count> shifted;     // difference read from degree d on
  std::optional<int> witness_degree;
};

/// Numerical test whether an almost complete intersection of four degree-d
/// forms in three variables can have Hilbert function H: the colon ideal
/// (f1,f2,f3):f4 would need Hilbert function (CI - H) / t^d.
inline AciObstruction aci_obstruction(const HilbertFunction& h, int d) {
  if (d < 1) throw Error(ErrorCode::Precondition, "aci_obstruction needs d >= 1");
  const Count dd = d;
  const Count degrees[3] = {dd, dd, dd};
  HilbertFunction ci = ci_hilbert_function(degrees);
  AciObstruction out;
  std::size_t len = std::max(ci.size(), h.size());
  out.difference.resize(len);
  for (std::size_t t = 0; t < len; ++t) {
    out.difference[t] = checked_sub(ci[static_cast<int>(t)], h[static_cast<int>(t)]);
    if (out.difference[t] < 0 && !out.witness_degree) out.witness_degree = static_cast<int>(t);
  }
  if (out.witness_degree) {
    out.verdict = AciVerdict::Obstructed;
    return out;
  }
  for (int t = 0; t < d && t < static_cast<int>(len); ++t) {
    if (out.difference[t] != 0) {
      out.witness_degree = t;
      out.verdict = AciVerdict::Obstructed;
      return out;
    }
  }
  if (static_cast<std::size_t>(d) < len) out.shifted.assign(out.difference.begin() + d, out.difference.end());
  while (!out.shifted.empty() && out.shifted.back() == 0) out.shifted.pop_back();
  if (out.shifted.empty()) return out;  // H is the complete intersection itself
  if (!is_o_sequence(out.shifted, 3)) {
    out.verdict = AciVerdict::Obstructed;
    out.witness_degree = d;
  }
  return out;
}

}  // namespace bettiscan
