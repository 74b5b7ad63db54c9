#include <gtest/gtest.h>

#include <random>

#include "bettiscan/koszul.hpp"
#include "golden.hpp"

using namespace bettiscan;
using golden::table;

namespace {

const char* kTruncIdeal = "a^2;b^4;c^5;a*c;b*c;a*b^2";
const char* kHighGen = "a^3;b^4;c^4;a*b^2;a^2*b*c^3";
const char* kSmall = "a^3;b^3;c^3;a*b;b*c";

MonomialIdeal ideal(const char* s) { return MonomialIdeal::parse(s); }

std::vector<Count> v(std::initializer_list<Count> xs) { return xs; }

}  // namespace

TEST(PrimeField, Arithmetic) {
  PrimeField f(7);
  EXPECT_EQ(f.reduce(-1), 6);
  EXPECT_EQ(f.mul(f.inv(3), 3), 1);
  EXPECT_THROW(PrimeField(8), Error);
  EXPECT_THROW(f.inv(0), Error);
  ModMatrix m(2, 2);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(1, 0) = 2;
  m(1, 1) = 4;
  EXPECT_EQ(rank(m, f), 1);
  m(1, 1) = 5;
  EXPECT_EQ(rank(m, f), 2);
}

TEST(Koszul, PrintedDiagrams) {
  EXPECT_EQ(koszul_betti(ideal(kTruncIdeal)), table(golden::kTruncIdeal));
  EXPECT_EQ(koszul_betti(truncate(ideal(kTruncIdeal), 3)), table(golden::kTruncIdealAt3));
  EXPECT_EQ(koszul_betti(ideal(kHighGen)), table(golden::kHighGen));
  EXPECT_EQ(koszul_betti(truncate(ideal(kHighGen), 6)), table(golden::kHighGenAt6));
}

TEST(Koszul, NonArtinianWithCap) {
  const auto I = ideal("a^3;a^2*b;a^2*c;a*b^2;a*b*c;a*c^2;b^4");
  EXPECT_FALSE(I.is_artinian());
  const auto d = koszul_betti(I, kDefaultCharacteristic, 12);
  EXPECT_EQ(d, table(golden::kNonCM));
  EXPECT_EQ(d, ek_betti(I));
  EXPECT_FALSE(check_shift_growth(d));
  try {
    koszul_betti(I);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NeedsCap);
  }
}

TEST(Koszul, RegularSequence) {
  const auto d = koszul_betti(MonomialIdeal::parse("a^2;b^2"));
  EXPECT_EQ(d.at(0, 0), 1);
  EXPECT_EQ(d.at(1, 2), 2);
  EXPECT_EQ(d.at(2, 4), 1);
  EXPECT_EQ(d.entries().size(), 3u);
}

TEST(Koszul, DifferentialSquaresToZero) {
  std::mt19937 rng(11);
  PrimeField f(kDefaultCharacteristic);
  for (const char* s : {kTruncIdeal, kHighGen, kSmall}) {
    const auto I = ideal(s);
    const auto top = I.lcm_of_generators();
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<int> alpha(3);
      for (int k = 0; k < 3; ++k) alpha[k] = std::uniform_int_distribution<int>(0, top[k])(rng);
      for (int i = 2; i <= 3; ++i) {
        auto hi = koszul_block(I, alpha, i, f);
        auto lo = koszul_block(I, alpha, i - 1, f);
        if (hi.matrix.cols == 0 || lo.matrix.rows == 0) continue;
        ASSERT_EQ(lo.matrix.cols, hi.matrix.rows);
        auto prod = multiply(lo.matrix, hi.matrix, f);
        for (auto x : prod.data) EXPECT_EQ(x, 0);
      }
    }
  }
}

TEST(Koszul, EulerCharacteristicMatchesHilbertFunction) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Monomial> gens;
    for (int k = 1; k <= 3; ++k)
      gens.push_back(Monomial::variable(3, k).times_var(k, std::uniform_int_distribution<int>(0, 4)(rng)));
    const int extra = std::uniform_int_distribution<int>(0, 4)(rng);
    for (int k = 0; k < extra; ++k) {
      std::vector<int> e(3);
      for (auto& x : e) x = std::uniform_int_distribution<int>(0, 3)(rng);
      if (e[0] + e[1] + e[2] > 0) gens.push_back(Monomial(e));
    }
    const MonomialIdeal I(3, gens);
    const auto d = koszul_betti(I);
    EXPECT_EQ(hilbert_from_diagram(d), quotient_hilbert_function(I).hilbert) << I.to_string();
    EXPECT_TRUE(evans_richert_ok(d).ok) << I.to_string();
    EXPECT_TRUE(check_shift_growth(d)) << I.to_string();
  }
}

TEST(Koszul, CharacteristicIndependentForMonomials) {
  for (const char* s : {kTruncIdeal, kHighGen, kSmall}) {
    const auto base = koszul_betti(ideal(s));
    EXPECT_EQ(koszul_betti(ideal(s), 2), base);
    EXPECT_EQ(koszul_betti(ideal(s), 3), base);
  }
  EXPECT_THROW(koszul_betti(ideal(kSmall), 4), Error);
}

TEST(Koszul, AgreesWithEliahouKervaireOnLexIdeals) {
  const std::vector<Count> prefix{1, 3};
  for_each_o_sequence(3, 4, prefix, [](const HilbertFunction& h) {
    const auto L = lex_ideal(h, 3);
    EXPECT_EQ(koszul_betti(L), ek_betti(L)) << h.to_string();
  });
}

TEST(Koszul, CompleteIntersectionsArePure) {
  for (int d = 1; d <= 6; ++d) {
    const auto I = MonomialIdeal(3, {Monomial({d, 0, 0}), Monomial({0, d, 0}), Monomial({0, 0, d})});
    const auto k = koszul_betti(I);
    EXPECT_TRUE(is_pure(k));
    EXPECT_EQ(max_shifts(k), v({d, 2 * d, 3 * d}));
    const std::vector<Count> degs{d, d, d};
    EXPECT_EQ(k, koszul_shape(degs, 3));
  }
}

TEST(TruncationRows, PrintedExamples) {
  auto a = verify_truncation_rows(ideal(kTruncIdeal), 3);
  EXPECT_TRUE(a.equal);
  auto b = verify_truncation_rows(ideal(kHighGen), 6);
  EXPECT_TRUE(b.equal);
  EXPECT_EQ(b.ideal_diagram.at(2, 8), 1);
  EXPECT_EQ(b.truncation_diagram.at(2, 8), 1);
  EXPECT_EQ(b.ideal_diagram.at(3, 9), 1);
  EXPECT_EQ(b.truncation_diagram.at(3, 9), 1);
  EXPECT_TRUE(verify_truncation_rows(ideal(kSmall), 2).equal);
}

TEST(TruncationRows, HoldForRandomIdeals) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Monomial> gens;
    for (int k = 1; k <= 3; ++k)
      gens.push_back(Monomial::variable(3, k).times_var(k, std::uniform_int_distribution<int>(0, 3)(rng)));
    for (int k = 0; k < 3; ++k) {
      std::vector<int> e(3);
      for (auto& x : e) x = std::uniform_int_distribution<int>(0, 2)(rng);
      if (e[0] + e[1] + e[2] > 0) gens.push_back(Monomial(e));
    }
    const MonomialIdeal I(3, gens);
    for (int d = 1; d <= I.max_generator_degree() + 1; ++d) EXPECT_TRUE(verify_truncation_rows(I, d).equal) << I.to_string() << " at " << d;
  }
}

TEST(TruncationAnalysis, HighGeneratorCertified) {
  auto a = truncation_analysis(ideal(kHighGen));
  EXPECT_EQ(a.outcome, TruncationOutcome::UpperBoundCertified);
  EXPECT_EQ(a.route, "truncation");
  EXPECT_EQ(a.regularity, 6);
  EXPECT_EQ(a.truncation_degree, 6);
  EXPECT_EQ(a.e_ideal, 31);
  EXPECT_EQ(a.e_truncation, 57);
  EXPECT_TRUE(a.truncation_quasipure);
  EXPECT_TRUE(a.shifts_agree);
  ASSERT_TRUE(a.verdict.has_value());
  EXPECT_TRUE(a.verdict->holds);
}

TEST(TruncationAnalysis, QuasipureDirect) {
  auto a = truncation_analysis(lex_ideal(HilbertFunction::parse("1,3,6,10"), 3));
  EXPECT_EQ(a.outcome, TruncationOutcome::UpperBoundCertified);
  EXPECT_EQ(a.route, "quasipure");
}

TEST(TruncationAnalysis, SmallIdealNotApplicable) {
  // regularity 4 with generators only in degrees 2 and 3
  auto a = truncation_analysis(ideal(kSmall));
  EXPECT_EQ(a.outcome, TruncationOutcome::NotApplicable);
  EXPECT_EQ(a.regularity, 4);
  EXPECT_EQ(a.e_ideal, 11);
  EXPECT_EQ(a.reason, "no minimal generator in degree 4 or 5");
}
