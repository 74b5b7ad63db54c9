#pragma once

#include <bit>
#include <cassert>
#include <optional>
#include <string>
#include <vector>

#include "arith.hpp"
#include "betti.hpp"
#include "error.hpp"
#include "hilbert.hpp"
#include "monomial.hpp"
#include "prime_field.hpp"
#include "verdict.hpp"

namespace bettiscan {

constexpr std::int64_t kDefaultCharacteristic = 32003;

/// Basis element m * e_S of the Koszul complex K(x) tensor R/I.
struct KoszulBasisElement {
  Monomial monomial;          // standard monomial
  std::vector<int> wedge;     // increasing 1-based variable indices
  int homological_index() const { return static_cast<int>(wedge.size()); }
  int internal_degree() const { return monomial.degree() + homological_index(); }
};

namespace detail {

/// Basis of K_i in multidegree alpha: subsets S of supp(alpha), |S| = i,
/// with alpha - 1_S a standard monomial.
inline std::vector<KoszulBasisElement> koszul_basis(const MonomialIdeal& ideal, const std::vector<int>& alpha, int i) {
  const int n = ideal.vars();
  std::vector<KoszulBasisElement> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != static_cast<unsigned>(i)) continue;
    std::vector<int> exps = alpha;
    std::vector<int> wedge;
    bool ok = true;
    for (int s = 0; s < n; ++s)
      if (mask & (1u << s)) {
        if (--exps[s] < 0) {
          ok = false;
          break;
        }
        wedge.push_back(s + 1);
      }
    if (!ok) continue;
    Monomial m(std::move(exps));
    if (ideal.contains(m)) continue;
    out.push_back({std::move(m), std::move(wedge)});
  }
  return out;
}

}  // namespace detail

/// Matrix of d_i : K_i(alpha) -> K_{i-1}(alpha) with columns indexed by the
/// K_i basis and rows by the K_{i-1} basis. Sign convention
/// d(e_S) = sum_s (-1)^{pos(s,S)} x_s e_{S \ s}.
struct KoszulBlock {
  std::vector<KoszulBasisElement> source;
  std::vector<KoszulBasisElement> target;
  ModMatrix matrix;
};

inline KoszulBlock koszul_block(const MonomialIdeal& ideal, const std::vector<int>& alpha, int i, const PrimeField& field) {
  KoszulBlock block;
  block.source = detail::koszul_basis(ideal, alpha, i);
  block.target = i >= 1 ? detail::koszul_basis(ideal, alpha, i - 1) : std::vector<KoszulBasisElement>{};
  block.matrix = ModMatrix(static_cast<int>(block.target.size()), static_cast<int>(block.source.size()));
  for (std::size_t c = 0; c < block.source.size(); ++c) {
    const auto& wedge = block.source[c].wedge;
    for (std::size_t pos = 0; pos < wedge.size(); ++pos) {
      std::vector<int> rest;
      for (std::size_t q = 0; q < wedge.size(); ++q)
        if (q != pos) rest.push_back(wedge[q]);
      for (std::size_t r = 0; r < block.target.size(); ++r) {
        if (block.target[r].wedge != rest) continue;
        // target monomial is m * x_s; it vanishes in R/I unless it is standard,
        // which is exactly when it appears in the target basis
        block.matrix(static_cast<int>(r), static_cast<int>(c)) = field.reduce(pos % 2 == 0 ? 1 : -1);
      }
    }
  }
  return block;
}

/// Graded Betti numbers of R/I by multigraded Koszul homology over Z/p.
/// Non-Artinian ideals need a degree cap; the result then covers j <= cap.
inline BettiDiagram koszul_betti(const MonomialIdeal& ideal, std::int64_t characteristic = kDefaultCharacteristic,
                                 std::optional<int> degree_cap = std::nullopt) {
  const PrimeField field(characteristic);
  const int n = ideal.vars();
  if (!ideal.is_artinian() && !degree_cap)
    throw Error(ErrorCode::NeedsCap, "ideal is not Artinian; supply a degree cap");
  BettiDiagram out(n);
  if (ideal.contains(Monomial::unit(n))) return out;

  // Tor of a monomial quotient lives in multidegrees dividing the lcm of the generators
  const Monomial top = ideal.lcm_of_generators();
  std::vector<int> alpha(n, 0);
  auto visit = [&](const std::vector<int>& a) {
    int deg = 0;
    for (int x : a) deg += x;
    if (degree_cap && deg > *degree_cap) return;
    std::vector<int> ranks(n + 2, 0);  // ranks[i] = rank of d_i
    std::vector<int> dims(n + 1, 0);
    std::vector<ModMatrix> mats(n + 2);
    for (int i = 0; i <= n; ++i) {
      KoszulBlock b = koszul_block(ideal, a, i, field);
      dims[i] = static_cast<int>(b.source.size());
      if (i >= 1) {
        ranks[i] = rank(b.matrix, field);
        mats[i] = std::move(b.matrix);
      }
    }
#ifndef NDEBUG
    for (int i = 2; i <= n; ++i) {
      if (mats[i].rows == 0 || mats[i].cols == 0 || mats[i - 1].cols == 0 || mats[i - 1].rows == 0) continue;
      ModMatrix dd = multiply(mats[i - 1], mats[i], field);
      for (auto x : dd.data) assert(x == 0 && "Koszul differential does not square to zero");
    }
#endif
    for (int i = 0; i <= n; ++i) {
      Count beta = dims[i] - ranks[i] - ranks[i + 1];
      if (beta > 0) out.add(i, deg, beta);
    }
  };
  // odometer over the box [0, top]
  while (true) {
    visit(alpha);
    int k = 0;
    while (k < n && alpha[k] == top[k]) alpha[k++] = 0;
    if (k == n) break;
    ++alpha[k];
  }
  return out;
}

struct RowComparison {
  int row = 0;
  std::vector<Count> ideal_row;
  std::vector<Count> truncation_row;
  bool equal = true;
};

struct TruncationRowsReport {
  bool equal = true;
  BettiDiagram ideal_diagram;
  BettiDiagram truncation_diagram;
  std::vector<RowComparison> rows;
};

/// Compares rows >= d of the Betti diagrams of R/I and R/I_{>=d}.
inline TruncationRowsReport verify_truncation_rows(const MonomialIdeal& ideal, int d,
                                                   std::int64_t characteristic = kDefaultCharacteristic,
                                                   std::optional<int> degree_cap = std::nullopt) {
  TruncationRowsReport rep;
  rep.ideal_diagram = koszul_betti(ideal, characteristic, degree_cap);
  rep.truncation_diagram = koszul_betti(truncate(ideal, d), characteristic, degree_cap);
  const int cols = ideal.vars() + 1;
  const int hi = std::max(rep.ideal_diagram.regularity(), rep.truncation_diagram.regularity());
  for (int r = d; r <= hi; ++r) {
    RowComparison cmp{r, rep.ideal_diagram.row(r, cols), rep.truncation_diagram.row(r, cols), true};
    cmp.equal = cmp.ideal_row == cmp.truncation_row;
    rep.equal = rep.equal && cmp.equal;
    rep.rows.push_back(std::move(cmp));
  }
  return rep;
}

enum class TruncationOutcome { UpperBoundCertified, NotApplicable };

inline std::string_view to_string(TruncationOutcome o) {
  return o == TruncationOutcome::UpperBoundCertified ? "UPPER_BOUND_CERTIFIED" : "NOT_APPLICABLE";
}

struct TruncationAnalysis {
  TruncationOutcome outcome = TruncationOutcome::NotApplicable;
  std::string route;   // "quasipure" or "truncation"
  std::string reason;  // failed hypothesis when not applicable
  int regularity = 0;
  int truncation_degree = 0;
  Count e_ideal = 0;
  Count e_truncation = 0;
  bool truncation_quasipure = false;
  bool shifts_agree = false;
  BettiDiagram ideal_diagram;
  BettiDiagram truncation_diagram;
  std::optional<BoundVerdict> verdict;
};

/// Upper bound certificate for an Artinian monomial quotient: directly when
/// the resolution is quasipure, otherwise through the truncation at the top
/// generator degree when some generator sits in degree reg or reg+1.
inline TruncationAnalysis truncation_analysis(const MonomialIdeal& ideal, std::int64_t characteristic = kDefaultCharacteristic) {
  if (!ideal.is_artinian()) throw Error(ErrorCode::Precondition, "truncation_analysis needs an Artinian ideal");
  TruncationAnalysis a;
  const int n = ideal.vars();
  a.ideal_diagram = koszul_betti(ideal, characteristic);
  a.regularity = a.ideal_diagram.regularity();
  a.e_ideal = multiplicity(quotient_hilbert_function(ideal).hilbert);
  const auto shifts = max_shifts(a.ideal_diagram);

  if (is_quasipure(a.ideal_diagram)) {
    a.route = "quasipure";
    a.truncation_degree = ideal.min_generator_degree();
    a.truncation_diagram = a.ideal_diagram;
    a.e_truncation = a.e_ideal;
    a.truncation_quasipure = true;
    a.shifts_agree = true;
    a.verdict = upper_bound_holds(a.e_ideal, shifts, n);
    if (a.verdict->holds) {
      a.outcome = TruncationOutcome::UpperBoundCertified;
    } else {
      a.reason = "quasipure diagram violates the upper bound";
    }
    return a;
  }

  bool high_generator = false;
  for (const auto& g : ideal.generators())
    if (g.degree() == a.regularity || g.degree() == a.regularity + 1) high_generator = true;
  if (!high_generator) {
    a.reason = "no minimal generator in degree " + std::to_string(a.regularity) + " or " + std::to_string(a.regularity + 1);
    return a;
  }
  a.route = "truncation";
  a.truncation_degree = ideal.max_generator_degree();
  const MonomialIdeal t = truncate(ideal, a.truncation_degree);
  a.truncation_diagram = koszul_betti(t, characteristic);
  a.e_truncation = multiplicity(quotient_hilbert_function(t).hilbert);
  a.truncation_quasipure = is_quasipure(a.truncation_diagram);
  const auto t_shifts = max_shifts(a.truncation_diagram);
  a.shifts_agree = t_shifts == shifts;
  a.verdict = upper_bound_holds(a.e_truncation, t_shifts, n);
  if (!a.truncation_quasipure) {
    a.reason = "truncation is not quasipure";
  } else if (!a.shifts_agree) {
    a.reason = "max shifts of the truncation differ";
  } else if (a.e_ideal > a.e_truncation) {
    a.reason = "multiplicity decreased under truncation";
  } else if (!a.verdict->holds) {
    a.reason = "truncation violates the upper bound";
  } else {
    a.outcome = TruncationOutcome::UpperBoundCertified;
  }
  return a;
}

}  // namespace bettiscan
