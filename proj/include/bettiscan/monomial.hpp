#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arith.hpp"
#include "error.hpp"
#include "hilbert.hpp"

namespace bettiscan {

/// Dense exponent vector; variable 1 (printed `a`) is the largest in lex order.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) {
    for (int e : exps_)
      if (e < 0) throw Error(ErrorCode::Precondition, "negative exponent");
  }
  static Monomial unit(int n) { return Monomial(std::vector<int>(n, 0)); }
  static Monomial variable(int n, int index) {
    Monomial m = unit(n);
    m.exps_.at(index - 1) = 1;
    return m;
  }

  int vars() const { return static_cast<int>(exps_.size()); }
  const std::vector<int>& exponents() const { return exps_; }
  int operator[](int var) const { return exps_[var]; }

  int degree() const {
    int d = 0;
    for (int e : exps_) d += e;
    return d;
  }

  /// 1-based index of the last variable with nonzero exponent; 0 for the unit.
  int max_var() const {
    for (int i = vars(); i > 0; --i)
      if (exps_[i - 1] != 0) return i;
    return 0;
  }

  bool divides(const Monomial& other) const {
    for (int i = 0; i < vars(); ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  /// Multiplies by x_var (1-based); a negative power divides instead.
  Monomial times_var(int var, int power = 1) const {
    Monomial m = *this;
    m.exps_.at(var - 1) += power;
    if (m.exps_[var - 1] < 0) throw Error(ErrorCode::Precondition, "exponent underflow");
    return m;
  }

  Monomial operator*(const Monomial& other) const {
    if (other.vars() != vars()) throw Error(ErrorCode::Precondition, "variable count mismatch");
    Monomial m = *this;
    for (int i = 0; i < vars(); ++i) m.exps_[i] += other.exps_[i];
    return m;
  }

  Monomial lcm(const Monomial& other) const {
    Monomial m = *this;
    for (int i = 0; i < vars(); ++i) m.exps_[i] = std::max(m.exps_[i], other.exps_[i]);
    return m;
  }

  std::string to_string() const {
    std::string out;
    for (int i = 0; i < vars(); ++i) {
      if (exps_[i] == 0) continue;
      if (!out.empty()) out += '*';
      out += variable_name(i + 1);
      if (exps_[i] > 1) out += '^' + std::to_string(exps_[i]);
    }
    return out.empty() ? "1" : out;
  }

  static std::string variable_name(int index) {
    if (index >= 1 && index <= 26) return std::string(1, static_cast<char>('a' + index - 1));
    return "x" + std::to_string(index);
  }

  bool operator==(const Monomial&) const = default;

 private:
  std::vector<int> exps_;
};

/// Pure lexicographic comparison with x1 > x2 > ... > xn.
inline std::strong_ordering lex_compare(const Monomial& u, const Monomial& v) {
  if (u.vars() != v.vars()) throw Error(ErrorCode::Precondition, "lex_compare: variable count mismatch");
  for (int i = 0; i < u.vars(); ++i)
    if (u[i] != v[i]) return u[i] <=> v[i];
  return std::strong_ordering::equal;
}

/// Lex-descending degree-d monomials; index in the returned vector is the
/// monomial's lex rank.
inline std::vector<Monomial> monomials_of_degree(int n, int d) {
  std::vector<Monomial> out;
  if (n <= 0 || d < 0) return out;
  std::vector<int> e(n, 0);
  // depth-first: first exponent as large as possible
  auto rec = [&](auto&& self, int var, int remaining) -> void {
    if (var == n - 1) {
      e[var] = remaining;
      out.emplace_back(e);
      return;
    }
    for (int a = remaining; a >= 0; --a) {
      e[var] = a;
      self(self, var + 1, remaining - a);
    }
    e[var] = 0;
  };
  rec(rec, 0, d);
  return out;
}

/// Position of m in monomials_of_degree(m.vars(), m.degree()).
inline Count lex_rank(const Monomial& m) {
  const int n = m.vars();
  int remaining = m.degree();
  Count rank = 0;
  for (int i = 0; i + 1 < n; ++i) {
    for (int a = remaining; a > m[i]; --a) rank += monomial_count(n - i - 1, remaining - a);
    remaining -= m[i];
  }
  return rank;
}

namespace detail {

/// Degree-d monomials in lex order with, for each, the lex ranks of its
/// products with x_1..x_n in degree d+1.
struct DegreeTable {
  std::vector<Monomial> monomials;
  std::vector<std::vector<Count>> up;
};

inline const DegreeTable& degree_table(int n, int d) {
  thread_local std::map<std::pair<int, int>, DegreeTable> cache;
  auto key = std::make_pair(n, d);
  auto it = cache.find(key);
  if (it == cache.end()) {
    DegreeTable t;
    t.monomials = monomials_of_degree(n, d);
    for (const auto& m : t.monomials) {
      std::vector<Count> ranks;
      for (int v = 1; v <= n; ++v) ranks.push_back(lex_rank(m.times_var(v)));
      t.up.push_back(std::move(ranks));
    }
    it = cache.emplace(key, std::move(t)).first;
  }
  return it->second;
}

inline const std::vector<Monomial>& cached_monomials(int n, int d) { return degree_table(n, d).monomials; }

}  // namespace detail

/// Monomial ideal held by its minimal generators, sorted by degree then
/// descending lex.
class MonomialIdeal {
 public:
  MonomialIdeal() = default;
  MonomialIdeal(int n, std::vector<Monomial> gens) : n_(n) {
    for (const auto& g : gens)
      if (g.vars() != n) throw Error(ErrorCode::Precondition, "generator has wrong variable count");
    generators_ = minimalize(std::move(gens));
  }

  int vars() const { return n_; }
  const std::vector<Monomial>& generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }

  bool contains(const Monomial& m) const {
    for (const auto& g : generators_)
      if (g.divides(m)) return true;
    return false;
  }

  /// Every variable has a pure power among the generators.
  bool is_artinian() const {
    for (int v = 1; v <= n_; ++v) {
      bool found = false;
      for (const auto& g : generators_) {
        if (g[v - 1] > 0 && g.degree() == g[v - 1]) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  }

  int max_generator_degree() const { return generators_.empty() ? 0 : generators_.back().degree(); }
  int min_generator_degree() const { return generators_.empty() ? 0 : generators_.front().degree(); }

  Monomial lcm_of_generators() const {
    Monomial l = Monomial::unit(n_);
    for (const auto& g : generators_) l = l.lcm(g);
    return l;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if (i) out += "; ";
      out += generators_[i].to_string();
    }
    return out;
  }

  /// Semicolon/newline separated monomials, each either symbolic (`a^2*b`)
  /// or an exponent tuple (`(2,1,0)`). n = 0 infers the variable count from
  /// the largest variable used.
  static MonomialIdeal parse(std::string_view text, int n = 0);

  bool operator==(const MonomialIdeal&) const = default;

 private:
  static std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
    std::sort(gens.begin(), gens.end(), [](const Monomial& u, const Monomial& v) {
      if (u.degree() != v.degree()) return u.degree() < v.degree();
      return lex_compare(u, v) == std::strong_ordering::greater;
    });
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    std::vector<Monomial> kept;
    for (const auto& g : gens) {
      bool redundant = false;
      for (const auto& k : kept)
        if (k.divides(g)) {
          redundant = true;
          break;
        }
      if (!redundant) kept.push_back(g);
    }
    return kept;
  }

  int n_ = 0;
  std::vector<Monomial> generators_;
};

namespace detail {

struct ParsedMonomial {
  std::vector<int> exps;  // grows as variables appear
  std::size_t offset = 0;
  bool tuple = false;     // exponent tuple: its length is the variable count
};

inline int parse_int(std::string_view s, std::size_t& i, std::size_t base) {
  std::size_t start = i;
  long long v = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    v = v * 10 + (s[i] - '0');
    if (v > 1'000'000) throw Error(ErrorCode::Parse, "exponent too large at position " + std::to_string(base + start));
    ++i;
  }
  if (i == start) throw Error(ErrorCode::Parse, "expected integer at position " + std::to_string(base + start));
  return static_cast<int>(v);
}

inline ParsedMonomial parse_monomial(std::string_view s, std::size_t base) {
  std::string compact;
  std::vector<std::size_t> where;
  for (std::size_t k = 0; k < s.size(); ++k)
    if (!std::isspace(static_cast<unsigned char>(s[k]))) {
      compact += s[k];
      where.push_back(base + k);
    }
  ParsedMonomial out;
  out.offset = base;
  auto pos = [&](std::size_t i) { return i < where.size() ? where[i] : base + s.size(); };
  std::size_t i = 0;
  if (compact.empty()) throw Error(ErrorCode::Parse, "empty monomial at position " + std::to_string(base));
  if (compact[0] == '(') {
    out.tuple = true;
    ++i;
    while (true) {
      if (i < compact.size() && std::isdigit(static_cast<unsigned char>(compact[i]))) {
        std::size_t j = i;
        out.exps.push_back(parse_int(compact, j, 0));
        i = j;
      } else {
        throw Error(ErrorCode::Parse, "expected exponent at position " + std::to_string(pos(i)));
      }
      if (i < compact.size() && compact[i] == ',') {
        ++i;
        continue;
      }
      if (i < compact.size() && compact[i] == ')') {
        ++i;
        break;
      }
      throw Error(ErrorCode::Parse, "expected ',' or ')' at position " + std::to_string(pos(i)));
    }
    if (i != compact.size()) throw Error(ErrorCode::Parse, "trailing text at position " + std::to_string(pos(i)));
    return out;
  }
  if (compact == "1") return out;
  while (true) {
    if (i >= compact.size() || !std::islower(static_cast<unsigned char>(compact[i])))
      throw Error(ErrorCode::Parse, "expected variable at position " + std::to_string(pos(i)));
    int var = compact[i] - 'a' + 1;
    ++i;
    int power = 1;
    if (i < compact.size() && compact[i] == '^') {
      ++i;
      std::size_t j = i;
      if (j >= compact.size() || !std::isdigit(static_cast<unsigned char>(compact[j])))
        throw Error(ErrorCode::Parse, "expected integer at position " + std::to_string(pos(j)));
      power = parse_int(compact, j, 0);
      i = j;
    }
    if (static_cast<int>(out.exps.size()) < var) out.exps.resize(var, 0);
    out.exps[var - 1] += power;
    if (i == compact.size()) break;
    if (compact[i] != '*') throw Error(ErrorCode::Parse, "expected '*' at position " + std::to_string(pos(i)));
    ++i;
  }
  return out;
}

}  // namespace detail

inline MonomialIdeal MonomialIdeal::parse(std::string_view text, int n) {
  std::vector<detail::ParsedMonomial> parsed;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= text.size(); ++k) {
    if (k == text.size() || text[k] == ';' || text[k] == '\n') {
      std::string_view piece = text.substr(start, k - start);
      bool blank = std::all_of(piece.begin(), piece.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
      if (!blank) parsed.push_back(detail::parse_monomial(piece, start));
      start = k + 1;
    }
  }
  if (parsed.empty()) throw Error(ErrorCode::Parse, "no generators");
  int needed = 0;
  for (const auto& p : parsed) needed = std::max(needed, static_cast<int>(p.exps.size()));
  if (n == 0) n = std::max(needed, 1);
  if (needed > n)
    throw Error(ErrorCode::Parse, "monomial uses " + std::to_string(needed) + " variables but ring has " + std::to_string(n));
  for (const auto& p : parsed)
    if (p.tuple && static_cast<int>(p.exps.size()) != n)
      throw Error(ErrorCode::Parse, "exponent tuple at position " + std::to_string(p.offset) + " has " +
                                        std::to_string(p.exps.size()) + " entries, expected " + std::to_string(n));
  std::vector<Monomial> gens;
  for (auto& p : parsed) {
    p.exps.resize(n, 0);
    gens.emplace_back(p.exps);
  }
  return MonomialIdeal(n, std::move(gens));
}

/// Lexicographic ideal with quotient Hilbert function H. Checks at every
/// degree that the multiples of lower-degree generators form a lex prefix.
inline MonomialIdeal lex_ideal(const HilbertFunction& h, int n) {
  if (n < 1) throw Error(ErrorCode::Precondition, "lex_ideal needs n >= 1");
  if (!is_o_sequence(h, n)) throw Error(ErrorCode::NotAdmissible, h.to_string() + " is not an O-sequence in " + std::to_string(n) + " variables");
  if (h.empty()) return MonomialIdeal(n, {Monomial::unit(n)});
  std::vector<Monomial> gens;
  Count prev_prefix = 0;  // size of the ideal's lex prefix in degree d-1
  std::vector<char> marked;
  for (int d = 1; d <= h.socle_degree() + 1; ++d) {
    const auto& lower = detail::degree_table(n, d - 1);
    const auto& mons = detail::cached_monomials(n, d);
    const Count target = static_cast<Count>(mons.size()) - h[d];
    marked.assign(mons.size(), 0);
    Count multiples = 0;
    for (Count k = 0; k < prev_prefix; ++k) {
      for (Count r : lower.up[k]) {
        if (!marked[r]) {
          marked[r] = 1;
          ++multiples;
        }
      }
    }
    for (Count k = 0; k < multiples; ++k)
      if (!marked[k]) throw Error(ErrorCode::LogicFault, "multiples in degree " + std::to_string(d) + " are not a lex segment");
    if (multiples > target) throw Error(ErrorCode::LogicFault, "lex segment overflows in degree " + std::to_string(d));
    for (Count k = multiples; k < target; ++k) gens.push_back(mons[k]);
    prev_prefix = target;
  }
  return MonomialIdeal(n, std::move(gens));
}

/// Minimal generators of I_{>=d}.
inline MonomialIdeal truncate(const MonomialIdeal& ideal, int d) {
  const int n = ideal.vars();
  std::vector<Monomial> gens;
  for (const auto& g : ideal.generators())
    if (g.degree() > d) gens.push_back(g);
  if (d >= 0)
    for (const auto& m : monomials_of_degree(n, d))
      if (ideal.contains(m)) gens.push_back(m);
  return MonomialIdeal(n, std::move(gens));
}

struct QuotientHilbert {
  HilbertFunction hilbert;
  bool artinian = true;
};

/// Counts standard monomials degree by degree. Complete for Artinian ideals;
/// otherwise reported through degree d_max.
inline QuotientHilbert quotient_hilbert_function(const MonomialIdeal& ideal, int d_max = -1) {
  QuotientHilbert out;
  out.artinian = ideal.is_artinian();
  const int n = ideal.vars();
  int top = d_max;
  if (out.artinian) {
    // socle degree is at most sum of (pure power exponent - 1)
    int bound = 0;
    for (int v = 0; v < n; ++v) {
      int best = 0;
      for (const auto& g : ideal.generators())
        if (g[v] > 0 && g.degree() == g[v]) best = best == 0 ? g[v] : std::min(best, g[v]);
      bound += best - 1;
    }
    top = bound;
  } else if (d_max < 0) {
    throw Error(ErrorCode::NeedsCap, "quotient is not Artinian; a degree cap is required");
  }
  std::vector<Count> values;
  for (int d = 0; d <= top; ++d) {
    Count c = 0;
    for (const auto& m : detail::cached_monomials(n, d))
      if (!ideal.contains(m)) ++c;
    values.push_back(c);
  }
  while (!values.empty() && values.back() == 0) values.pop_back();
  out.hilbert = HilbertFunction::from_values(std::move(values));
  return out;
}

/// Stability in the Eliahou-Kervaire sense: x_s * m / x_max(m) in I for every
/// generator m and s < max(m).
inline bool is_stable(const MonomialIdeal& ideal) {
  for (const auto& g : ideal.generators()) {
    int m = g.max_var();
    for (int s = 1; s < m; ++s)
      if (!ideal.contains(g.times_var(m, -1).times_var(s))) return false;
  }
  return true;
}

}  // namespace bettiscan
