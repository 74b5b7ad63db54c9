#include <gtest/gtest.h>

#include "bettiscan/betti.hpp"
#include "golden.hpp"

using namespace bettiscan;
using golden::table;

namespace {

BettiDiagram lex_diagram(const char* h) { return ek_betti(lex_ideal(HilbertFunction::parse(h), 3)); }

std::vector<Count> v(std::initializer_list<Count> xs) { return xs; }

BettiDiagram koszul_ci(std::vector<int> degrees) {
  // exterior algebra count: beta_{i,j} = #subsets of size i with degree sum j
  const int n = static_cast<int>(degrees.size());
  BettiDiagram d(n);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    int i = 0, j = 0;
    for (int k = 0; k < n; ++k)
      if (mask & (1u << k)) {
        ++i;
        j += degrees[k];
      }
    d.add(i, j, 1);
  }
  return d;
}

}  // namespace

TEST(BettiDiagram, SetValidates) {
  BettiDiagram d(3);
  EXPECT_THROW(d.set(4, 5, 1), Error);
  EXPECT_THROW(d.set(1, 2, -1), Error);
  d.set(1, 2, 3);
  d.set(1, 2, 0);
  EXPECT_TRUE(d.empty());
}

TEST(BettiDiagram, TableLayout) {
  const BettiDiagram d = table(golden::kFinal136731);
  EXPECT_EQ(d.to_table(), golden::kFinal136731);
  EXPECT_EQ(d.totals(), v({1, 6, 7, 2}));
  EXPECT_EQ(d.regularity(), 5);
  EXPECT_EQ(d.projective_dimension(), 3);
}

TEST(BettiDiagram, TableAndMachineRoundTrip) {
  for (const char* t : {golden::kLex1369962, golden::kLex13610151717171510, golden::kNonCM}) {
    const BettiDiagram d = table(t);
    EXPECT_EQ(BettiDiagram::parse_table(d.to_table(), 3), d);
    EXPECT_EQ(BettiDiagram::parse_machine(d.to_machine(), 3), d);
  }
}

TEST(BettiDiagram, ParseRejectsWrongTotals) {
  EXPECT_THROW(BettiDiagram::parse_table("total: 1 3\n    0: 1 .\n    1: . 2\n", 1), Error);
  EXPECT_THROW(BettiDiagram::parse_table("total: 1 x\n    0: 1 .\n", 1), Error);
}

TEST(EliahouKervaire, PrintedLexDiagrams) {
  EXPECT_EQ(lex_diagram("1,3,6,9,9,6,2"), table(golden::kLex1369962));
  EXPECT_EQ(lex_diagram("1,3,6,7,3,1"), table(golden::kLex136731));
  EXPECT_EQ(lex_diagram("1,3,6,10,15,15,11"), table(golden::kLex13610151511));
  EXPECT_EQ(lex_diagram("1,3,6,10,15,17,17,17,15,10"), table(golden::kLex13610151717171510));
}

TEST(EliahouKervaire, PrincipalIdeal) {
  auto d = ek_betti(MonomialIdeal::parse("a^2", 1));
  EXPECT_EQ(d.at(0, 0), 1);
  EXPECT_EQ(d.at(1, 2), 1);
  EXPECT_EQ(d.entries().size(), 2u);
}

TEST(EliahouKervaire, NonStableRejected) {
  try {
    ek_betti(MonomialIdeal::parse("a^2;b^2"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotStable);
  }
}

TEST(EliahouKervaire, StableNonLexIdeal) {
  EXPECT_EQ(ek_betti(MonomialIdeal::parse("a^3;a^2*b;a^2*c;a*b^2;a*b*c;a*c^2;b^4")), table(golden::kNonCM));
}

TEST(Cancel, SingleStep) {
  auto d = cancel(table(golden::kLex136731), 1, 4, 3);
  EXPECT_EQ(d.at(1, 4), 3);
  EXPECT_EQ(d.at(2, 4), 0);
}

TEST(Cancel, Errors) {
  const auto d = table(golden::kLex136731);
  auto code = [&](int i, int j, Count c) {
    try {
      cancel(d, i, j, c);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::LogicFault;
  };
  EXPECT_EQ(code(1, 2, 1), ErrorCode::CannotCancel);  // nothing there
  EXPECT_EQ(code(1, 4, 4), ErrorCode::CannotCancel);  // only 3 partners
  EXPECT_EQ(code(3, 8, 1), ErrorCode::CannotCancel);  // no column 4
  EXPECT_EQ(code(0, 0, 1), ErrorCode::CannotCancel);  // beta_00 stays
}

TEST(Greedy, PrintedStages) {
  auto trace = greedy_minimize_trace(table(golden::kLex136731));
  ASSERT_EQ(trace.stages.size(), 2u);
  EXPECT_EQ(trace.stages[0], table(golden::kStage136731));
  EXPECT_EQ(trace.stages[1], table(golden::kFinal136731));
  EXPECT_EQ(trace.result, table(golden::kFinal136731));
  EXPECT_EQ(max_shifts(trace.result), v({4, 5, 8}));

  auto easy = greedy_minimize(table(golden::kLex13610151511));
  EXPECT_EQ(easy, table(golden::kFinal13610151511));
  EXPECT_EQ(max_shifts(easy), v({5, 8, 9}));

  auto hard = greedy_minimize_trace(table(golden::kLex13610151717171510));
  EXPECT_EQ(hard.stages[0], table(golden::kStage13610151717171510));
  EXPECT_EQ(max_shifts(hard.result), v({5, 11, 12}));
}

TEST(Greedy, ReachesUniqueMinimum) {
  auto d = greedy_minimize(table(golden::kLex1369962));
  EXPECT_EQ(d, table(golden::kMinimal1369962));
  bool found = false;
  auto stats = for_each_reachable(table(golden::kLex1369962), [&](const BettiDiagram& x) {
    if (x == d) found = true;
  });
  EXPECT_TRUE(found);
  EXPECT_FALSE(stats.cap_exceeded);
}

TEST(Greedy, NothingToCancel) {
  auto d = ek_betti(MonomialIdeal::parse("a^2", 1));
  EXPECT_EQ(greedy_minimize(d), d);
}

TEST(Shifts, Examples) {
  const auto d = table(golden::kMinimal1369962);
  EXPECT_EQ(min_shifts(d), v({3, 6, 9}));
  EXPECT_EQ(max_shifts(d), v({4, 7, 9}));
  auto p = ek_betti(MonomialIdeal::parse("a^2", 1));
  EXPECT_EQ(min_shifts(p), v({2}));
  EXPECT_EQ(max_shifts(p), v({2}));
  BettiDiagram gap = BettiDiagram::unit(3);
  gap.set(2, 4, 1);
  EXPECT_THROW(max_shifts(gap), Error);
}

TEST(Shape, PureAndQuasipure) {
  EXPECT_TRUE(is_quasipure(table(golden::kHighGenAt6)));
  EXPECT_FALSE(is_quasipure(table(golden::kHighGen)));
  EXPECT_FALSE(is_pure(table(golden::kHighGenAt6)));
  for (int d = 1; d <= 6; ++d) EXPECT_TRUE(is_pure(koszul_ci({d, d, d})));
  EXPECT_TRUE(is_quasipure(table(golden::kMinimal1369962)));
}

TEST(HunekeMiller, Examples) {
  EXPECT_EQ(huneke_miller(koszul_ci({5, 5, 5}), 3), (Rational{125, 1}));
  EXPECT_EQ(huneke_miller(koszul_ci({2, 2}), 2), (Rational{4, 1}));
  EXPECT_EQ(huneke_miller(koszul_ci({7}), 1), (Rational{7, 1}));
  try {
    huneke_miller(table(golden::kFinal136731), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPure);
  }
}

TEST(HilbertFromDiagram, Examples) {
  EXPECT_EQ(hilbert_from_diagram(table(golden::kLex1369962)), HilbertFunction::parse("1,3,6,9,9,6,2"));
  EXPECT_EQ(hilbert_from_diagram(table(golden::kFinal136731)), HilbertFunction::parse("1,3,6,7,3,1"));
  EXPECT_EQ(hilbert_from_diagram(koszul_ci({1, 1, 1})), HilbertFunction::parse("1"));
  BettiDiagram line(1);
  line.set(0, 0, 1);
  line.set(1, 1, 1);
  EXPECT_EQ(hilbert_from_diagram(line), HilbertFunction::parse("1"));
}

TEST(HilbertFromDiagram, InconsistentDiagram) {
  BettiDiagram d = BettiDiagram::unit(3);
  d.set(1, 1, 3);
  try {
    hilbert_from_diagram(d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InconsistentDiagram);
  }
}

TEST(ShiftGrowth, Examples) {
  EXPECT_FALSE(check_shift_growth(table(golden::kNonCM)));
  EXPECT_TRUE(check_shift_growth(table(golden::kFinal136731)));
  EXPECT_TRUE(check_shift_growth(ek_betti(MonomialIdeal::parse("a^2", 1))));
}

TEST(ShiftGrowth, HoldsForEveryLexIdeal) {
  const std::vector<Count> prefix{1, 3};
  for_each_o_sequence(3, 5, prefix, [](const HilbertFunction& h) {
    EXPECT_TRUE(check_shift_growth(ek_betti(lex_ideal(h, 3)))) << h.to_string();
  });
}

TEST(Dual, Involution) {
  for (const char* t : {golden::kMinimal1369962, golden::kFinal136731, golden::kLex13610151511}) {
    const auto d = table(t);
    const int top = static_cast<int>(max_shifts(d).back());
    EXPECT_EQ(dual_diagram(dual_diagram(d, 3, top), 3, top), d);
  }
}

TEST(Dual, MinShiftsMirrorMaxShifts) {
  const auto d = table(golden::kMinimal1369962);
  const auto dual = dual_diagram(d, 3, 9);
  // column i of the dual starts at 9 - M_{3-i}
  EXPECT_EQ(min_shifts(dual), v({2, 5, 9}));
  EXPECT_EQ(dual.at(0, 0), 2);
  auto p = ek_betti(MonomialIdeal::parse("a^2", 1));
  auto q = dual_diagram(p, 1, 2);
  EXPECT_EQ(q.at(1, 2), 1);
  EXPECT_EQ(q.at(0, 0), 1);
}

TEST(ShiftProduct, EmptyColumn) {
  EXPECT_EQ(shift_product(table(golden::kFinal136731)), 160);
  BettiDiagram d = BettiDiagram::unit(3);
  d.set(1, 2, 1);
  EXPECT_FALSE(shift_product(d).has_value());
}
