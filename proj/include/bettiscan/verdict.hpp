#pragma once

#include <array>
#include <bitset>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arith.hpp"
#include "betti.hpp"
#include "error.hpp"
#include "hilbert.hpp"
#include "monomial.hpp"

namespace bettiscan {

enum class BoundKind { Upper, Lower };

/// Outcome of comparing c!*e against a product of shifts, kept as integers.
/// Upper: lhs = c!*e, rhs = prod M_i.  Lower: lhs = prod m_i, rhs = c!*e.
struct BoundVerdict {
  BoundKind kind = BoundKind::Upper;
  Count e = 0;
  std::vector<Count> shifts;
  int codim = 0;
  bool holds = false;
  Count lhs = 0;
  Count rhs = 0;
};

namespace detail {

inline void check_shift_tuple(std::span<const Count> shifts, int c) {
  if (c < 0 || static_cast<std::size_t>(c) != shifts.size())
    throw Error(ErrorCode::Precondition, "codimension must equal the number of shifts");
  for (Count s : shifts)
    if (s < 1) throw Error(ErrorCode::Precondition, "shifts must be positive");
}

}  // namespace detail

inline BoundVerdict upper_bound_holds(Count e, std::span<const Count> max_shifts, int c) {
  detail::check_shift_tuple(max_shifts, c);
  BoundVerdict v{BoundKind::Upper, e, {max_shifts.begin(), max_shifts.end()}, c, false, 0, 0};
  v.lhs = checked_mul(factorial(c), e);
  v.rhs = checked_product(max_shifts);
  v.holds = v.lhs <= v.rhs;
  return v;
}

inline BoundVerdict lower_bound_holds(Count e, std::span<const Count> min_shifts, int c) {
  detail::check_shift_tuple(min_shifts, c);
  BoundVerdict v{BoundKind::Lower, e, {min_shifts.begin(), min_shifts.end()}, c, false, 0, 0};
  v.lhs = checked_product(min_shifts);
  v.rhs = checked_mul(factorial(c), e);
  v.holds = v.lhs <= v.rhs;
  return v;
}

struct EvansRichert {
  bool ok = true;
  int i = 0;      // violating column
  int t = 0;      // its smallest degree
  Count below = 0;  // sum of beta_{i-1,j} for j < t
};

/// For each i >= 2 with t = min degree of column i, at least i entries of
/// column i-1 must lie in degrees below t.
inline EvansRichert evans_richert_ok(const BettiDiagram& d) {
  for (int i = 2; i <= d.projective_dimension(); ++i) {
    auto t = d.min_degree(i);
    if (!t) continue;
    Count below = 0;
    for (const auto& [key, v] : d.entries())
      if (key.first == i - 1 && key.second < *t) below += v;
    if (below < i) return {false, i, *t, below};
  }
  return {};
}

/// Koszul complex shape of a complete intersection with the given degrees.
inline BettiDiagram koszul_shape(std::span<const Count> degrees, int n) {
  BettiDiagram d(n);
  const int k = static_cast<int>(degrees.size());
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    int size = 0;
    Count deg = 0;
    for (int s = 0; s < k; ++s)
      if (mask & (1u << s)) {
        ++size;
        deg += degrees[s];
      }
    d.add(size, static_cast<int>(deg), 1);
  }
  return d;
}

/// An Artinian quotient in n variables needs at least n generators; with
/// exactly three in three variables it is a complete intersection and the
/// diagram must be its Koszul shape.
inline bool generator_count_ok(const BettiDiagram& d, int n) {
  const Count gens = d.column_total(1);
  if (n != 3) return gens >= n;
  if (gens >= 4) return true;
  if (gens < 3) return false;
  std::vector<Count> degrees;
  for (int j : d.degrees(1))
    for (Count k = 0; k < d.at(1, j); ++k) degrees.push_back(j);
  return d == koszul_shape(degrees, n);
}

enum Filter : unsigned {
  FilterGen = 1u << 0,
  FilterEr = 1u << 1,
  FilterGrowth = 1u << 2,
  FilterAci = 1u << 3,
};
constexpr unsigned kAllFilters = FilterGen | FilterEr | FilterGrowth | FilterAci;
constexpr std::array<std::pair<Filter, std::string_view>, 4> kFilterNames{{
    {FilterGen, "gen"}, {FilterEr, "er"}, {FilterGrowth, "growth"}, {FilterAci, "aci"}}};

inline std::string filter_names(unsigned mask) {
  std::string out;
  for (const auto& [f, name] : kFilterNames)
    if (mask & f) {
      if (!out.empty()) out += '+';
      out += name;
    }
  return out;
}

/// Parses `er,gen,aci,growth` (any order, any subset).
inline unsigned parse_filters(std::string_view text) {
  unsigned mask = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(pos, comma - pos);
    bool known = false;
    for (const auto& [f, name] : kFilterNames)
      if (tok == name) {
        mask |= f;
        known = true;
      }
    if (!known && !tok.empty()) throw Error(ErrorCode::Parse, "unknown filter '" + std::string(tok) + "'");
    pos = comma + 1;
  }
  return mask;
}

enum class Status { BoundHolds, Eliminated, Unresolved };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::BoundHolds: return "BOUND_HOLDS";
    case Status::Eliminated: return "ELIMINATED";
    case Status::Unresolved: return "UNRESOLVED";
  }
  return "?";
}

struct ClassifyOptions {
  unsigned filters = kAllFilters;
  std::size_t dfs_cap = 1'000'000;
  std::size_t max_survivors_kept = 16;
};

struct Classification {
  HilbertFunction hf;
  int n = 0;
  Status status = Status::BoundHolds;
  BettiDiagram lex;
  GreedyTrace greedy;
  BoundVerdict verdict;
  std::string reason;
  std::size_t violating = 0;     // violating reachable diagrams found
  std::size_t nodes = 0;         // search nodes expanded
  bool cap_exceeded = false;
  /// Bit k set when some violating diagram fails exactly the filter set k.
  std::bitset<16> failure_sets;
  std::vector<BettiDiagram> survivors;
  EvansRichert greedy_er;
};

namespace detail {

/// Enumerates, for a single internal degree, the feasible cancellation
/// amounts (c_1..c_{n-1}) between adjacent columns 1..n.
inline void degree_choices(const std::vector<Count>& b, std::vector<std::vector<Count>>& out) {
  const int n = static_cast<int>(b.size());
  std::vector<Count> c(n > 1 ? n - 1 : 0, 0);
  auto rec = [&](auto&& self, int k, Count left_of_k) -> void {
    // left_of_k: what remains of column k after cancelling with column k-1
    if (k == n - 1 || n <= 1) {
      out.push_back(c);
      return;
    }
    for (Count x = 0; x <= std::min(left_of_k, b[k + 1]); ++x) {
      c[k] = x;
      self(self, k + 1, b[k + 1] - x);
    }
    c[k] = 0;
  };
  rec(rec, 0, n > 0 ? b[0] : 0);
}

}  // namespace detail

/// Enumerates every diagram reachable from `lex` by consecutive cancellations
/// whose max-shift product violates the upper bound for multiplicity e.
/// Degrees are decided from the top down; a branch is abandoned once the
/// smallest product it could still reach satisfies the bound. Returns the
/// number of search nodes; the callback receives complete diagrams.
template <class Visitor>
std::size_t for_each_violating(const BettiDiagram& lex, Count e, std::size_t cap, bool& cap_exceeded, Visitor&& visit) {
  const int n = lex.vars();
  const Count bound = checked_mul(factorial(n), e);  // violation: product < bound
  std::vector<int> degs;
  for (const auto& [key, v] : lex.entries())
    if (key.first >= 1) degs.push_back(key.second);
  std::sort(degs.begin(), degs.end());
  degs.erase(std::unique(degs.begin(), degs.end()), degs.end());
  std::reverse(degs.begin(), degs.end());

  std::vector<std::vector<std::vector<Count>>> choices(degs.size());
  for (std::size_t k = 0; k < degs.size(); ++k) {
    std::vector<Count> b(n);
    for (int i = 1; i <= n; ++i) b[i - 1] = lex.at(i, degs[k]);
    detail::degree_choices(b, choices[k]);
  }
  std::vector<Count> lowest(n + 1, 0);
  for (int i = 1; i <= n; ++i) lowest[i] = lex.min_degree(i).value_or(0);

  std::vector<std::vector<Count>> after(degs.size(), std::vector<Count>(n + 1, 0));
  std::vector<Count> top(n + 1, 0);  // fixed max shift per column, 0 if none yet
  std::size_t nodes = 0;
  cap_exceeded = false;

  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (cap_exceeded) return;
    if (++nodes > cap) {
      cap_exceeded = true;
      return;
    }
    // smallest product still reachable
    Count lb = 1;
    for (int i = 1; i <= n; ++i) {
      Count m = top[i] ? top[i] : lowest[i];
      if (m <= 0) return;  // column can no longer be nonempty
      lb = checked_mul(lb, m);
    }
    if (lb >= bound) return;
    if (k == degs.size()) {
      for (int i = 1; i <= n; ++i)
        if (!top[i]) return;
      BettiDiagram d(n);
      d.set(0, 0, lex.at(0, 0));
      for (std::size_t q = 0; q < degs.size(); ++q)
        for (int i = 1; i <= n; ++i)
          if (after[q][i]) d.set(i, degs[q], after[q][i]);
      visit(d);
      return;
    }
    const int j = degs[k];
    for (const auto& c : choices[k]) {
      std::vector<Count> saved = top;
      for (int i = 1; i <= n; ++i) {
        Count v = lex.at(i, j);
        if (i >= 2) v -= c[i - 2];
        if (i <= n - 1) v -= c[i - 1];
        after[k][i] = v;
        if (v > 0 && !top[i]) top[i] = j;
      }
      self(self, k + 1);
      top = std::move(saved);
      if (cap_exceeded) return;
    }
  };
  rec(rec, 0);
  return nodes;
}

/// Certifies the upper bound for every module with Hilbert function H, or
/// eliminates the violating potential diagrams with the enabled filters.
inline Classification classify(const HilbertFunction& h, int n, const ClassifyOptions& opt = {}) {
  if (!is_o_sequence(h, n)) throw Error(ErrorCode::NotAdmissible, h.to_string() + " is not an O-sequence");
  Classification out;
  out.hf = h;
  out.n = n;
  out.lex = ek_betti(lex_ideal(h, n));
  out.greedy = greedy_minimize_trace(out.lex);
  const Count e = multiplicity(h);
  auto shifts = max_shifts(out.greedy.result);
  out.verdict = upper_bound_holds(e, shifts, static_cast<int>(shifts.size()));
  out.greedy_er = evans_richert_ok(out.greedy.result);
  if (out.verdict.holds) {
    out.status = Status::BoundHolds;
    return out;
  }

  std::map<int, bool> aci_cache;
  std::map<std::string, bool> first_failures;
  unsigned union_first = 0;
  bool any_survivor = false;
  out.nodes = for_each_violating(out.lex, e, opt.dfs_cap, out.cap_exceeded, [&](const BettiDiagram& d) {
    ++out.violating;
    unsigned fails = 0;
    if (!generator_count_ok(d, n)) fails |= FilterGen;
    if (!evans_richert_ok(d).ok) fails |= FilterEr;
    if (!check_shift_growth(d)) fails |= FilterGrowth;
    if (n == 3 && d.column_total(1) == 4 && d.degrees(1).size() == 1) {
      int g = d.degrees(1).front();
      auto it = aci_cache.find(g);
      if (it == aci_cache.end()) it = aci_cache.emplace(g, aci_obstruction(h, g).verdict == AciVerdict::Obstructed).first;
      if (it->second) fails |= FilterAci;
    }
    out.failure_sets.set(fails);
    unsigned active = fails & opt.filters;
    if (!active) {
      any_survivor = true;
      if (out.survivors.size() < opt.max_survivors_kept) out.survivors.push_back(d);
      return;
    }
    for (const auto& [f, name] : kFilterNames)
      if (active & f) {
        union_first |= f;
        break;
      }
  });

  if (out.cap_exceeded) {
    out.status = Status::Unresolved;
    out.reason = "CAP_EXCEEDED";
  } else if (any_survivor) {
    out.status = Status::Unresolved;
    out.reason = "SURVIVORS";
  } else {
    out.status = Status::Eliminated;
    out.reason = filter_names(union_first);
  }
  return out;
}

/// True when no violating diagram escapes every filter in `mask`.
inline bool eliminated_by(const std::bitset<16>& failure_sets, unsigned mask) {
  for (unsigned s = 0; s < 16; ++s)
    if (failure_sets.test(s) && (s & mask) == 0) return false;
  return true;
}

}  // namespace bettiscan
