#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arith.hpp"
#include "error.hpp"
#include "hilbert.hpp"
#include "monomial.hpp"

namespace bettiscan {

/// Graded Betti numbers beta_{i,j}: homological index i in [0, n], internal
/// degree j. Only nonzero entries are stored.
class BettiDiagram {
 public:
  using Key = std::pair<int, int>;  // (i, j)

  BettiDiagram() = default;
  explicit BettiDiagram(int n) : n_(n) {
    if (n < 0) throw Error(ErrorCode::Precondition, "negative variable count");
  }

  /// The diagram of R itself: beta_{0,0} = 1.
  static BettiDiagram unit(int n) {
    BettiDiagram d(n);
    d.set(0, 0, 1);
    return d;
  }

  int vars() const { return n_; }

  Count at(int i, int j) const {
    auto it = entries_.find({i, j});
    return it == entries_.end() ? 0 : it->second;
  }

  void set(int i, int j, Count value) {
    if (i < 0 || i > n_) throw Error(ErrorCode::Malformed, "homological index " + std::to_string(i) + " outside [0, " + std::to_string(n_) + "]");
    if (value < 0) throw Error(ErrorCode::Malformed, "negative Betti number");
    if (value == 0)
      entries_.erase({i, j});
    else
      entries_[{i, j}] = value;
  }

  void add(int i, int j, Count value) { set(i, j, checked_add(at(i, j), value)); }

  const std::map<Key, Count>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// Largest i with a nonzero entry; -1 for the empty diagram.
  int projective_dimension() const {
    int p = -1;
    for (const auto& [key, v] : entries_) p = std::max(p, key.first);
    return p;
  }

  Count column_total(int i) const {
    Count t = 0;
    for (const auto& [key, v] : entries_)
      if (key.first == i) t = checked_add(t, v);
    return t;
  }

  std::vector<Count> totals() const {
    std::vector<Count> t;
    for (int i = 0; i <= projective_dimension(); ++i) t.push_back(column_total(i));
    return t;
  }

  std::optional<int> min_degree(int i) const {
    std::optional<int> m;
    for (const auto& [key, v] : entries_)
      if (key.first == i && (!m || key.second < *m)) m = key.second;
    return m;
  }

  std::optional<int> max_degree(int i) const {
    std::optional<int> m;
    for (const auto& [key, v] : entries_)
      if (key.first == i && (!m || key.second > *m)) m = key.second;
    return m;
  }

  /// Degrees j with beta_{i,j} != 0, ascending.
  std::vector<int> degrees(int i) const {
    std::vector<int> out;
    for (const auto& [key, v] : entries_)
      if (key.first == i) out.push_back(key.second);
    return out;
  }

  /// max(j - i) over nonzero entries.
  int regularity() const {
    int r = 0;
    bool any = false;
    for (const auto& [key, v] : entries_) {
      r = any ? std::max(r, key.second - key.first) : key.second - key.first;
      any = true;
    }
    return r;
  }

  /// Row j - i = r of column i.
  Count row_entry(int r, int i) const { return at(i, r + i); }

  /// Entries of row r across columns 0..cols-1.
  std::vector<Count> row(int r, int cols) const {
    std::vector<Count> out;
    for (int i = 0; i < cols; ++i) out.push_back(row_entry(r, i));
    return out;
  }

  /// beta_{0,0} = 1, nothing else in column 0, all i <= n.
  bool is_quotient_diagram() const {
    for (const auto& [key, v] : entries_)
      if (key.first == 0 && (key.second != 0 || v != 1)) return false;
    return at(0, 0) == 1;
  }

  /// Layout with entries at row j-i, column i, dots for zeros and a
  /// `total:` header.
  std::string to_table() const;
  /// Lines `i j count`.
  std::string to_machine() const {
    std::string out;
    for (const auto& [key, v] : entries_)
      out += std::to_string(key.first) + ' ' + std::to_string(key.second) + ' ' + std::to_string(v) + '\n';
    return out;
  }

  static BettiDiagram parse_table(std::string_view text, int n = -1);
  static BettiDiagram parse_machine(std::string_view text, int n);

  bool operator==(const BettiDiagram&) const = default;
  auto operator<=>(const BettiDiagram&) const = default;

 private:
  int n_ = 0;
  std::map<Key, Count> entries_;
};

inline std::string BettiDiagram::to_table() const {
  const int cols = std::max(projective_dimension() + 1, 1);
  int row_lo = 0, row_hi = 0;
  bool first = true;
  for (const auto& [key, v] : entries_) {
    int r = key.second - key.first;
    row_lo = first ? r : std::min(row_lo, r);
    row_hi = first ? r : std::max(row_hi, r);
    first = false;
  }
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> labels;
  labels.push_back("total:");
  std::vector<std::string> total_row;
  for (int i = 0; i < cols; ++i) total_row.push_back(std::to_string(column_total(i)));
  cells.push_back(total_row);
  for (int r = row_lo; r <= row_hi; ++r) {
    labels.push_back(std::to_string(r) + ":");
    std::vector<std::string> line;
    for (int i = 0; i < cols; ++i) {
      Count v = row_entry(r, i);
      line.push_back(v == 0 ? "." : std::to_string(v));
    }
    cells.push_back(line);
  }
  std::size_t label_width = 0;
  for (const auto& l : labels) label_width = std::max(label_width, l.size());
  std::vector<std::size_t> widths(cols, 0);
  for (const auto& line : cells)
    for (int i = 0; i < cols; ++i) widths[i] = std::max(widths[i], line[i].size());
  std::string out;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    out += std::string(label_width - labels[k].size(), ' ') + labels[k];
    for (int i = 0; i < cols; ++i) out += ' ' + std::string(widths[i] - cells[k][i].size(), ' ') + cells[k][i];
    out += '\n';
  }
  return out;
}

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline Count parse_count(const std::string& tok, std::size_t line_no) {
  char* end = nullptr;
  long long v = std::strtoll(tok.c_str(), &end, 10);
  if (tok.empty() || *end != '\0') throw Error(ErrorCode::Parse, "bad integer '" + tok + "' on line " + std::to_string(line_no));
  return v;
}

}  // namespace detail

inline BettiDiagram BettiDiagram::parse_table(std::string_view text, int n) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<Count> totals;
  std::vector<std::pair<int, std::vector<std::string>>> rows;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "total:") {
      for (std::size_t k = 1; k < toks.size(); ++k) totals.push_back(detail::parse_count(toks[k], line_no));
      continue;
    }
    if (toks[0].back() != ':') throw Error(ErrorCode::Parse, "expected row label on line " + std::to_string(line_no));
    int r = static_cast<int>(detail::parse_count(toks[0].substr(0, toks[0].size() - 1), line_no));
    rows.emplace_back(r, std::vector<std::string>(toks.begin() + 1, toks.end()));
  }
  if (totals.empty()) throw Error(ErrorCode::Parse, "missing total: row");
  const int cols = static_cast<int>(totals.size());
  BettiDiagram d(n < 0 ? cols - 1 : n);
  for (const auto& [r, cells] : rows) {
    if (static_cast<int>(cells.size()) != cols) throw Error(ErrorCode::Parse, "row " + std::to_string(r) + " has wrong width");
    for (int i = 0; i < cols; ++i)
      if (cells[i] != ".") d.set(i, r + i, detail::parse_count(cells[i], 0));
  }
  for (int i = 0; i < cols; ++i)
    if (d.column_total(i) != totals[i]) throw Error(ErrorCode::Parse, "column " + std::to_string(i) + " does not match its total");
  return d;
}

inline BettiDiagram BettiDiagram::parse_machine(std::string_view text, int n) {
  std::istringstream in{std::string(text)};
  std::string line;
  BettiDiagram d(n);
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    if (toks.size() != 3) throw Error(ErrorCode::Parse, "expected 'i j count' on line " + std::to_string(line_no));
    d.add(static_cast<int>(detail::parse_count(toks[0], line_no)), static_cast<int>(detail::parse_count(toks[1], line_no)),
          detail::parse_count(toks[2], line_no));
  }
  return d;
}

/// Closed-form resolution of a stable ideal:
/// beta_{i+1, j+i}(R/I) = sum over generators u of degree j of C(max(u)-1, i).
inline BettiDiagram ek_betti(const MonomialIdeal& ideal) {
  if (!is_stable(ideal)) throw Error(ErrorCode::NotStable, "ek_betti requires a stable ideal");
  BettiDiagram d = BettiDiagram::unit(ideal.vars());
  for (const auto& u : ideal.generators()) {
    const int m = u.max_var();
    const int j = u.degree();
    if (m == 0) {
      // unit ideal: R/I = 0
      return BettiDiagram(ideal.vars());
    }
    for (int i = 0; i < m; ++i) d.add(i + 1, j + i, binomial(m - 1, i));
  }
  return d;
}

/// Consecutive cancellation: lowers beta_{i,j} and beta_{i+1,j} by count.
inline BettiDiagram cancel(const BettiDiagram& d, int i, int j, Count count) {
  if (i < 1 || count < 1 || d.at(i, j) < count || d.at(i + 1, j) < count)
    throw Error(ErrorCode::CannotCancel, "cannot cancel " + std::to_string(count) + " at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  BettiDiagram out = d;
  out.set(i, j, d.at(i, j) - count);
  out.set(i + 1, j, d.at(i + 1, j) - count);
  return out;
}

/// Result of cancelling the column pair (i, i+1) maximally, for every i.
struct GreedyTrace {
  std::vector<BettiDiagram> stages;  // stages[k] is after the pair (k+1, k+2)
  BettiDiagram result;
};

/// Cancels column pairs (1,2), (2,3), ... left to right; within a pair,
/// degrees high to low, each by the largest possible count.
inline GreedyTrace greedy_minimize_trace(const BettiDiagram& d) {
  GreedyTrace trace;
  BettiDiagram cur = d;
  for (int i = 1; i < d.vars(); ++i) {
    auto degs = cur.degrees(i);
    for (auto it = degs.rbegin(); it != degs.rend(); ++it) {
      Count c = std::min(cur.at(i, *it), cur.at(i + 1, *it));
      if (c > 0) cur = cancel(cur, i, *it, c);
    }
    trace.stages.push_back(cur);
  }
  trace.result = std::move(cur);
  return trace;
}

inline BettiDiagram greedy_minimize(const BettiDiagram& d) { return greedy_minimize_trace(d).result; }

namespace detail {

template <class Pick>
std::vector<Count> column_shifts(const BettiDiagram& d, Pick pick) {
  std::vector<Count> out;
  const int p = d.projective_dimension();
  for (int i = 1; i <= p; ++i) {
    auto v = pick(i);
    if (!v) throw Error(ErrorCode::Malformed, "column " + std::to_string(i) + " is empty below the projective dimension");
    out.push_back(*v);
  }
  return out;
}

}  // namespace detail

/// (M_1, ..., M_p) for p the projective dimension.
inline std::vector<Count> max_shifts(const BettiDiagram& d) {
  return detail::column_shifts(d, [&](int i) { return d.max_degree(i); });
}

/// (m_1, ..., m_p).
inline std::vector<Count> min_shifts(const BettiDiagram& d) {
  return detail::column_shifts(d, [&](int i) { return d.min_degree(i); });
}

inline bool is_pure(const BettiDiagram& d) {
  for (int i = 0; i <= d.projective_dimension(); ++i)
    if (d.degrees(i).size() != 1) return false;
  return true;
}

/// M_{i-1} <= m_i for all i >= 2.
inline bool is_quasipure(const BettiDiagram& d) {
  for (int i = 2; i <= d.projective_dimension(); ++i) {
    auto hi = d.max_degree(i - 1);
    auto lo = d.min_degree(i);
    if (!hi || !lo || *hi > *lo) return false;
  }
  return true;
}

struct Rational {
  Count num = 0;
  Count den = 1;
  bool operator==(const Rational&) const = default;
};

/// (prod d_i) / c! for a pure diagram with projective dimension c.
inline Rational huneke_miller(const BettiDiagram& d, int c) {
  if (!is_pure(d)) throw Error(ErrorCode::NotPure, "huneke_miller needs a pure diagram");
  if (d.projective_dimension() != c) throw Error(ErrorCode::Precondition, "projective dimension differs from codimension");
  auto shifts = max_shifts(d);
  Count num = checked_product(shifts);
  Count den = factorial(c);
  Count g = std::gcd(num, den);
  return {num / g, den / g};
}

/// Hilbert function from sum (-1)^i beta_{i,j} t^j / (1 - t)^n.
inline HilbertFunction hilbert_from_diagram(const BettiDiagram& d) {
  int top = 0;
  for (const auto& [key, v] : d.entries()) {
    if (key.second < 0) throw Error(ErrorCode::InconsistentDiagram, "negative internal degree");
    top = std::max(top, key.second);
  }
  std::vector<Count> poly(static_cast<std::size_t>(top) + 1, 0);
  for (const auto& [key, v] : d.entries()) {
    Count signed_v = (key.first % 2 == 0) ? v : -v;
    poly[key.second] = checked_add(poly[key.second], signed_v);
  }
  for (int k = 0; k < d.vars(); ++k) {
    // divide by (1 - t): prefix sums; exact iff the coefficient sum vanishes
    Count run = 0;
    for (auto& c : poly) {
      run = checked_add(run, c);
      c = run;
    }
    if (run != 0) throw Error(ErrorCode::InconsistentDiagram, "numerator is not divisible by (1-t)^n");
    while (!poly.empty() && poly.back() == 0) poly.pop_back();
  }
  for (Count c : poly)
    if (c < 0) throw Error(ErrorCode::InconsistentDiagram, "negative Hilbert function value");
  try {
    return HilbertFunction::from_values(std::move(poly));
  } catch (const Error& e) {
    throw Error(ErrorCode::InconsistentDiagram, e.what());
  }
}

/// M_i >= M_{i-1} + 1 across consecutive nonempty columns i >= 1.
inline bool check_shift_growth(const BettiDiagram& d) {
  std::optional<int> prev;
  for (int i = 1; i <= d.projective_dimension(); ++i) {
    auto m = d.max_degree(i);
    if (!m) {
      prev.reset();
      continue;
    }
    if (prev && *m < *prev + 1) return false;
    prev = m;
  }
  return true;
}

/// 180-degree rotation: (i, j) -> (c - i, d - j). The result describes a
/// module, so beta_{0,0} need not be 1.
inline BettiDiagram dual_diagram(const BettiDiagram& d, int c, int top) {
  if (d.projective_dimension() != c) throw Error(ErrorCode::Precondition, "dual_diagram: projective dimension differs from c");
  BettiDiagram out(d.vars());
  for (const auto& [key, v] : d.entries()) out.set(c - key.first, top - key.second, v);
  return out;
}

/// Product of max shifts, or nullopt when some column 1..n is empty (the
/// diagram cannot belong to an Artinian quotient).
inline std::optional<Count> shift_product(const BettiDiagram& d) {
  Count p = 1;
  for (int i = 1; i <= d.vars(); ++i) {
    auto m = d.max_degree(i);
    if (!m) return std::nullopt;
    p = checked_mul(p, *m);
  }
  return p;
}

struct ReachableStats {
  std::size_t visited = 0;
  bool cap_exceeded = false;
};

/// Depth-first search over single-unit consecutive cancellations, memoized
/// on diagrams. Calls visit on every distinct reachable diagram, including
/// the start. Stops once `cap` diagrams have been visited.
template <class Visitor>
ReachableStats for_each_reachable(const BettiDiagram& start, Visitor&& visit, std::size_t cap = 1'000'000) {
  ReachableStats stats;
  std::set<BettiDiagram> seen;
  std::vector<BettiDiagram> stack{start};
  seen.insert(start);
  while (!stack.empty()) {
    if (stats.visited >= cap) {
      stats.cap_exceeded = true;
      break;
    }
    BettiDiagram cur = std::move(stack.back());
    stack.pop_back();
    ++stats.visited;
    visit(cur);
    for (const auto& [key, v] : cur.entries()) {
      const auto [i, j] = key;
      if (i < 1 || cur.at(i + 1, j) == 0) continue;
      BettiDiagram next = cancel(cur, i, j, 1);
      if (seen.insert(next).second) stack.push_back(std::move(next));
    }
  }
  return stats;
}

}  // namespace bettiscan
