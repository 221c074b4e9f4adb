#include <gtest/gtest.h>

#include <random>
#include <set>
#include <unordered_set>

#include "z4ca/kerdock_dg.hpp"

namespace {

using namespace z4ca;

std::set<std::string> canonical_reps(const CosetFamily& f) {
  std::set<std::string> out;
  for (std::uint64_t i = 0; i < f.rep_count(); ++i) out.insert(canonical_zrm1_rep(f.rep(i)).to_string());
  return out;
}

Z4Word random_codeword(const CosetFamily& f, std::mt19937_64& rng) {
  Z4Word w = f.rep(rng() % f.rep_count());
  const std::uint32_t c = static_cast<std::uint32_t>(rng() % w.size());
  const unsigned e = static_cast<unsigned>(rng() & 3u);
  for (std::uint32_t x = 0; x < w.size(); ++x) w.set(x, w[x] + e + 2u * static_cast<unsigned>(std::popcount(c & x) & 1));
  return w;
}

TEST(Mtm, Examples) {
  const MtmSet k3(Field(3), 0);
  EXPECT_EQ(k3.size(), 8u);
  k3.for_each([](std::uint64_t idx, const SymMatrix& b) {
    if (idx == 0) EXPECT_TRUE(b.is_zero());
    else EXPECT_EQ(b.rank(), 3);
  });
  const MtmSet d5(Field(5), 1);
  EXPECT_EQ(d5.size(), 1024u);
  d5.for_each([](std::uint64_t idx, const SymMatrix& b) {
    if (idx != 0) EXPECT_GE(b.rank(), 3);
  });
  EXPECT_THROW(MtmSet(Field(4), 2), std::invalid_argument);
  EXPECT_THROW(MtmSet(Field(4), -1), std::invalid_argument);
}

TEST(Mtm, RankLowerBoundExhaustive) {
  for (int m = 1; m <= 16; ++m)
    for (int t = 0; 2 * t < m && m * (t + 1) <= 16; ++t) {
      const MtmSet s(Field(m), t);
      int worst = m;
      s.for_each([&](std::uint64_t idx, const SymMatrix& b) {
        if (idx != 0) worst = std::min(worst, b.rank());
      });
      EXPECT_GE(worst, m - 2 * t) << "t=" << t << " m=" << m;
    }
}

TEST(Mtm, IncrementalMatricesMatchDefinition) {
  for (int m = 2; m <= 6; ++m)
    for (int t = 0; 2 * t < m && m * (t + 1) <= 12; ++t) {
      const MtmSet s(Field(m), t);
      s.for_each([&](std::uint64_t idx, const SymMatrix& b) {
        ASSERT_EQ(b, s.matrix_direct(idx));
        ASSERT_EQ(b, s.matrix(idx));
      });
    }
}

TEST(Mtm, DistinctCoefficientsGiveDistinctMatrices) {
  for (int m = 2; m <= 8; ++m)
    for (int t = 0; 2 * t < m && m * (t + 1) <= 16; ++t) {
      const MtmSet s(Field(m), t);
      std::unordered_set<std::string> seen;
      s.for_each([&](std::uint64_t, const SymMatrix& b) { seen.insert(b.to_string()); });
      EXPECT_EQ(seen.size(), s.size()) << "t=" << t << " m=" << m;
    }
}

TEST(Mtm, ClosedUnderAddition) {
  std::mt19937_64 rng(1);
  for (int m = 3; m <= 8; ++m)
    for (int t = 0; 2 * t < m; ++t) {
      const MtmSet s(Field(m), t);
      for (int trial = 0; trial < 1000; ++trial) {
        const std::uint64_t i = rng() % s.size(), j = rng() % s.size();
        ASSERT_EQ(s.matrix_direct(i) ^ s.matrix_direct(j), s.matrix_direct(i ^ j));
      }
    }
}

TEST(Mtm, NonsingularCounts) {
  EXPECT_EQ(count_nonsingular_in_mtm(MtmSet(Field(3), 1)), 28u);
  EXPECT_EQ(count_nonsingular_in_mtm(MtmSet(Field(4), 1)), 100u);
  EXPECT_EQ(count_nonsingular_in_mtm(MtmSet(Field(4), 0)), 15u);
  for (int m = 3; m <= 8; ++m) {
    const auto n = count_nonsingular_in_mtm(MtmSet(Field(m), 1));
    EXPECT_EQ(n, nonsingular_in_m1_formula(m)) << "m=" << m;
    EXPECT_GE(n, std::uint64_t{1} << (2 * (m - 1)));
  }
  EXPECT_THROW(count_nonsingular_in_mtm(MtmSet(Field(9), 2)), std::invalid_argument);
}

TEST(Mtm, AlternativeModulusGivesSameCounts) {
  // x^4 + x^3 + 1 instead of the default x^4 + x + 1.
  EXPECT_EQ(count_nonsingular_in_mtm(MtmSet(Field(4, 0x19), 1)), 100u);
}

TEST(DG, KerdockFourVariables) {
  const auto k = kerdock(4);
  EXPECT_EQ(k.cosets()->rep_count(), 16u);
  EXPECT_EQ(k.size().value(), 1024u);
  EXPECT_EQ(min_lee_distance(k), 12u);
  EXPECT_EQ(min_distance_pairwise(k.materialize(), Alphabet::z4), 12u);
}

TEST(DG, SecondOrderFiveVariables) {
  const auto d = dg(1, 5);
  EXPECT_EQ(d.cosets()->rep_count(), 1024u);
  EXPECT_EQ(d.size().floor_log2(), 17u);
  EXPECT_EQ(min_lee_distance(d), 24u);
}

TEST(DG, KerdockIsDgWithZeroT) {
  const auto a = kerdock(3).materialize(), b = dg(0, 3).materialize();
  EXPECT_EQ(std::set(a.begin(), a.end()), std::set(b.begin(), b.end()));
}

TEST(DG, SizeByMaterialization) {
  for (int m = 1; m <= 4; ++m)
    for (int t = 0; 2 * t < m; ++t) {
      const auto c = dg(t, m);
      std::unordered_set<std::string> seen;
      c.for_each_word([&](std::span<const std::uint8_t> w) { seen.emplace(w.begin(), w.end()); });
      EXPECT_EQ(seen.size(), std::uint64_t{1} << dg_size_log2(t, m)) << "t=" << t << " m=" << m;
    }
}

TEST(DG, LinearOverZ4) {
  std::mt19937_64 rng(2);
  for (int m = 3; m <= 6; ++m)
    for (int t = 0; 2 * t < m && m * (t + 1) <= 12; ++t) {
      const auto c = dg(t, m);
      const auto reps = canonical_reps(*c.cosets());
      for (int trial = 0; trial < 1000; ++trial) {
        const auto u = random_codeword(*c.cosets(), rng), v = random_codeword(*c.cosets(), rng);
        ASSERT_TRUE(reps.count(canonical_zrm1_rep(u + v).to_string())) << "t=" << t << " m=" << m;
      }
    }
}

TEST(DG, DistanceFormula) {
  for (int m = 2; m <= 6; ++m)
    for (int t = 0; 2 * t < m && m * (t + 1) <= 18; ++t)
      EXPECT_EQ(min_lee_distance(dg(t, m)), dg_distance_formula(t, m)) << "t=" << t << " m=" << m;
}

TEST(Construction4, Parameters) {
  const auto c4 = construction4(4);
  EXPECT_EQ(c4.rate_string(), "9/16");
  EXPECT_EQ(min_lee_distance(c4), 12u);
  const auto c5 = construction4(5);
  EXPECT_EQ(c5.rate_string(), "11/32");
  EXPECT_EQ(min_lee_distance(c5), 28u);
  EXPECT_EQ(construction4(6).rate_string(), "13/64");
  EXPECT_EQ(min_lee_distance(construction4(6)), 56u);
  EXPECT_THROW(construction4(1), std::invalid_argument);
}

TEST(Construction4, EveryWordBent) {
  for (int m = 2; m <= 5; ++m) {
    std::uint64_t words = 0;
    construction4(m).for_each_word([&](std::span<const std::uint8_t> w) {
      ++words;
      ASSERT_TRUE(is_bent(Z4Word(std::vector<std::uint8_t>(w.begin(), w.end()))));
    });
    EXPECT_EQ(words, std::uint64_t{1} << (2 * m + 1));
  }
}

TEST(Construction5, Parameters) {
  const auto c5 = construction5(5, 1);
  EXPECT_EQ(c5.rate_string(), "15/32");
  EXPECT_EQ(min_lee_distance(c5), 24u);
  const auto c6 = construction5(6, 1);
  EXPECT_EQ(c6.rate_string(), "18/64");
  EXPECT_EQ(min_lee_distance(c6), 48u);
  EXPECT_GE(full_rank_indices(MtmSet(Field(5), 1), ~std::uint64_t{0}).size(), 256u);
  EXPECT_THROW(construction5(4, 2), std::invalid_argument);
  EXPECT_THROW(construction5(4, 0), std::invalid_argument);
}

TEST(Construction5, EveryWordBent) {
  for (int m = 3; m <= 5; ++m)
    construction5(m, 1).for_each_word([&](std::span<const std::uint8_t> w) {
      ASSERT_TRUE(is_bent(Z4Word(std::vector<std::uint8_t>(w.begin(), w.end()))));
    });
  std::mt19937_64 rng(3);
  for (const auto& c : {construction4(6), construction5(6, 1)})
    for (int trial = 0; trial < 10000; ++trial) ASSERT_TRUE(is_bent(random_codeword(*c.cosets(), rng)));
}

TEST(Construction5, GeneralT) {
  const auto c = construction5(7, 2);
  EXPECT_EQ(c.cosets()->rep_count(), std::uint64_t{1} << 19);
  EXPECT_EQ(c.rate_string(), "28/128");
  EXPECT_EQ(max_papr(c).max.reduced().to_string(), "1/1");
}

}  // namespace
