#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "bettiscan/monomial.hpp"
#include "oracles.hpp"

using namespace bettiscan;

namespace {

Monomial mono(std::vector<int> e) { return Monomial(std::move(e)); }

std::vector<oracle::Exps> exps_of(const MonomialIdeal& I) {
  std::vector<oracle::Exps> out;
  for (const auto& g : I.generators()) out.push_back(g.exponents());
  return out;
}

MonomialIdeal random_artinian(std::mt19937& rng, int n, int max_deg) {
  std::uniform_int_distribution<int> pow(1, max_deg);
  std::uniform_int_distribution<int> count(0, 5);
  std::vector<Monomial> gens;
  for (int v = 1; v <= n; ++v) gens.push_back(Monomial::variable(n, v).times_var(v, pow(rng) - 1));
  const int extra = count(rng);
  for (int k = 0; k < extra; ++k) {
    std::vector<int> e(n);
    for (auto& x : e) x = std::uniform_int_distribution<int>(0, max_deg - 1)(rng);
    if (std::accumulate(e.begin(), e.end(), 0) > 0) gens.push_back(mono(e));
  }
  return MonomialIdeal(n, gens);
}

}  // namespace

TEST(Monomial, Basics) {
  auto m = mono({2, 1, 0});
  EXPECT_EQ(m.degree(), 3);
  EXPECT_EQ(m.max_var(), 2);
  EXPECT_EQ(m.to_string(), "a^2*b");
  EXPECT_EQ(Monomial::unit(3).to_string(), "1");
  EXPECT_TRUE(mono({1, 1, 0}).divides(m));
  EXPECT_FALSE(mono({0, 0, 1}).divides(m));
  EXPECT_EQ(m.lcm(mono({0, 2, 1})), mono({2, 2, 1}));
  EXPECT_EQ(m * mono({0, 0, 3}), mono({2, 1, 3}));
  EXPECT_THROW(mono({-1, 0}), Error);
}

TEST(Monomial, LexCompare) {
  EXPECT_EQ(lex_compare(mono({2, 1, 0}), mono({1, 2, 0})), std::strong_ordering::greater);
  EXPECT_EQ(lex_compare(mono({3, 0, 0}), mono({3, 0, 0})), std::strong_ordering::equal);
  EXPECT_EQ(lex_compare(mono({1, 0, 2}), mono({0, 3, 0})), std::strong_ordering::greater);
  EXPECT_THROW(lex_compare(mono({1}), mono({1, 0})), Error);
}

TEST(Monomial, DegreeListIsLexDescendingAndRanked) {
  for (int n = 1; n <= 4; ++n)
    for (int d = 0; d <= 6; ++d) {
      auto mons = monomials_of_degree(n, d);
      EXPECT_EQ(static_cast<std::int64_t>(mons.size()), oracle::binom(n - 1 + d, d));
      for (std::size_t k = 0; k < mons.size(); ++k) {
        EXPECT_EQ(lex_rank(mons[k]), static_cast<Count>(k));
        if (k) EXPECT_EQ(lex_compare(mons[k - 1], mons[k]), std::strong_ordering::greater);
      }
    }
}

TEST(MonomialIdeal, MinimalizesAndSorts) {
  MonomialIdeal I(3, {mono({0, 3, 0}), mono({1, 0, 0}), mono({2, 1, 0}), mono({1, 0, 0})});
  ASSERT_EQ(I.size(), 2u);
  EXPECT_EQ(I.generators()[0], mono({1, 0, 0}));
  EXPECT_EQ(I.generators()[1], mono({0, 3, 0}));
  EXPECT_FALSE(I.is_artinian());
}

TEST(MonomialIdeal, ParseForms) {
  auto I = MonomialIdeal::parse("a^3; b^4\nc^4;a*b^2; a^2*b*c^3");
  EXPECT_EQ(I.vars(), 3);
  EXPECT_EQ(I.size(), 5u);
  EXPECT_TRUE(I.is_artinian());
  auto J = MonomialIdeal::parse("(3,0,0);(0,4,0);(0,0,4);(1,2,0);(2,1,3)");
  EXPECT_EQ(I, J);
  EXPECT_EQ(MonomialIdeal::parse(I.to_string()), I);
  EXPECT_EQ(MonomialIdeal::parse("a^2", 3).vars(), 3);
  EXPECT_THROW(MonomialIdeal::parse("a^"), Error);
  EXPECT_THROW(MonomialIdeal::parse("a*?"), Error);
  EXPECT_THROW(MonomialIdeal::parse("(1,2);(1,2,3)"), Error);
}

TEST(LexIdeal, PrintedGeneratorCounts) {
  auto L = lex_ideal(HilbertFunction::parse("1,3,6,9,9,6,2"), 3);
  EXPECT_EQ(L.size(), 16u);
  EXPECT_EQ(L.generators().front(), mono({3, 0, 0}));
  EXPECT_EQ(lex_ideal(HilbertFunction::parse("1,3,6,7,3,1"), 3).size(), 12u);
  auto M = lex_ideal(HilbertFunction::parse("1"), 3);
  EXPECT_EQ(M, MonomialIdeal(3, {mono({1, 0, 0}), mono({0, 1, 0}), mono({0, 0, 1})}));
}

TEST(LexIdeal, RejectsNonOSequence) {
  try {
    lex_ideal(HilbertFunction::parse("1,3,7"), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAdmissible);
  }
}

TEST(LexIdeal, ExistsExactlyForOSequences) {
  // socle degree <= 4, n = 3: realizable by a lex ideal iff admissible,
  // and the quotient has the requested Hilbert function
  int realized = 0;
  for (Count a = 1; a <= 3; ++a)
    for (Count b = 0; b <= 6; ++b)
      for (Count c = 0; c <= 10; ++c)
        for (Count d = 0; d <= 15; ++d) {
          std::vector<Count> v{1, a, b, c, d};
          while (v.back() == 0) v.pop_back();
          if (std::find(v.begin(), v.end(), 0) != v.end()) continue;
          const bool admissible = oracle::o_sequence(v, 3);
          const HilbertFunction h = HilbertFunction::from_values(v);
          if (!admissible) {
            EXPECT_THROW(lex_ideal(h, 3), Error) << join(v);
            continue;
          }
          const MonomialIdeal L = lex_ideal(h, 3);
          EXPECT_EQ(oracle::quotient_hf(exps_of(L), 3, 8), v) << join(v);
          EXPECT_TRUE(is_stable(L));
          ++realized;
        }
  EXPECT_GT(realized, 100);
}

TEST(QuotientHilbert, Examples) {
  auto I = MonomialIdeal::parse("a^3;b^3;c^3;a*b;b*c");
  EXPECT_EQ(multiplicity(quotient_hilbert_function(I).hilbert), 11);
  EXPECT_EQ(multiplicity(quotient_hilbert_function(truncate(I, 3)).hilbert), 13);
  EXPECT_EQ(quotient_hilbert_function(MonomialIdeal::parse("a;b;c")).hilbert, HilbertFunction::parse("1"));
  auto h = HilbertFunction::parse("1,3,6,7,3,1");
  EXPECT_EQ(quotient_hilbert_function(lex_ideal(h, 3)).hilbert, h);
}

TEST(QuotientHilbert, NonArtinianNeedsCap) {
  auto I = MonomialIdeal::parse("a^2;a*b", 3);
  try {
    quotient_hilbert_function(I);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NeedsCap);
  }
  auto q = quotient_hilbert_function(I, 4);
  EXPECT_FALSE(q.artinian);
  EXPECT_EQ(q.hilbert.values(), oracle::quotient_hf(exps_of(I), 3, 4));
}

TEST(Truncate, PrintedExamples) {
  auto I = MonomialIdeal::parse("a^3;b^3;c^3;a*b;b*c");
  EXPECT_EQ(truncate(I, 3), MonomialIdeal::parse("a^3;b^3;c^3;a^2*b;a*b*c;a*b^2;b^2*c;b*c^2"));
  EXPECT_EQ(truncate(I, 3).size(), 8u);
  EXPECT_EQ(truncate(MonomialIdeal::parse("a^2;b^4;c^5;a*c;b*c;a*b^2"), 3).size(), 10u);
  EXPECT_EQ(truncate(I, 2), I);
  EXPECT_EQ(truncate(I, 0), I);
}

TEST(Truncate, IdempotentAndRaisesMultiplicity) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 3;
    const MonomialIdeal I = random_artinian(rng, n, 5);
    const Count e = multiplicity(quotient_hilbert_function(I).hilbert);
    for (int d = 0; d <= I.max_generator_degree() + 1; ++d) {
      const MonomialIdeal T = truncate(I, d);
      EXPECT_EQ(truncate(T, d), T);
      EXPECT_GE(T.min_generator_degree(), d);
      // same ideal in degrees >= d, and nothing below d
      const auto hi = quotient_hilbert_function(T).hilbert;
      const auto lo = quotient_hilbert_function(I).hilbert;
      for (int t = 0; t < static_cast<int>(std::max(hi.size(), lo.size())); ++t) {
        if (t >= d) EXPECT_EQ(hi[t], lo[t]);
        else EXPECT_EQ(hi[t], oracle::binom(n - 1 + t, t));
      }
      EXPECT_LE(e, multiplicity(hi));
    }
  }
}

TEST(Stable, Examples) {
  EXPECT_FALSE(is_stable(MonomialIdeal::parse("a^2;b^2")));
  EXPECT_TRUE(is_stable(MonomialIdeal::parse("a^2", 1)));
  EXPECT_TRUE(is_stable(MonomialIdeal::parse("a^3;a^2*b;a^2*c;a*b^2;a*b*c;a*c^2;b^4")));
  EXPECT_FALSE(is_stable(MonomialIdeal::parse("a^2;b^4;c^5;a*c;b*c;a*b^2")));
}
