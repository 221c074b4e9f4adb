#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "z4ca/codes.hpp"
#include "z4ca/constructions.hpp"
#include "z4ca/kerdock_dg.hpp"
#include "z4ca/spectral.hpp"

namespace {

using namespace z4ca;

Z4Word random_z4(int m, std::mt19937_64& rng) {
  Z4Word w(m);
  for (std::size_t i = 0; i < w.size(); ++i) w.set(i, static_cast<unsigned>(rng() & 3u));
  return w;
}

// Double sum over x for each u: sum i^f(x) (-1)^(u.x) (h=2) or (-1)^(f(x) + u.x) (h=1).
template <unsigned H>
std::vector<Gauss> naive_fourier(const Word<H>& w) {
  std::vector<Gauss> out(w.size());
  for (std::uint32_t u = 0; u < w.size(); ++u) {
    Gauss s{0, 0};
    for (std::uint32_t x = 0; x < w.size(); ++x) {
      unsigned e = H == 2 ? w[x] : 2u * w[x];
      if (std::popcount(u & x) & 1) e += 2;
      s = s + Gauss::unit_power(e & 3u);
    }
    out[u] = s;
  }
  return out;
}

TEST(Fourier, Examples) {
  EXPECT_EQ(fourier(Z4Word{0, 0}).values, (std::vector<Gauss>{{2, 0}, {0, 0}}));
  const Spectrum s = fourier(Z4Word{0, 1});
  EXPECT_EQ(s.values, (std::vector<Gauss>{{1, 1}, {1, -1}}));
  const Spectrum q = fourier(Z4Word{0, 1, 1, 2});
  EXPECT_EQ(q.values[0], (Gauss{0, 2}));
  for (const auto& z : q.values) EXPECT_EQ(z.norm(), 4);
}

TEST(Fourier, ButterflyMatchesDoubleSumExhaustive) {
  for (int m = 0; m <= 3; ++m) {
    const std::size_t n = std::size_t{1} << m;
    for (std::uint32_t code = 0; code < (1u << (2 * n)); ++code) {
      Z4Word w(m);
      for (std::size_t i = 0; i < n; ++i) w.set(i, (code >> (2 * i)) & 3u);
      ASSERT_EQ(fourier(w).values, naive_fourier(w));
    }
  }
}

TEST(Fourier, ButterflyMatchesDoubleSumRandom) {
  std::mt19937_64 rng(1);
  for (int m = 4; m <= 9; ++m)
    for (int trial = 0; trial < 30; ++trial) {
      const auto w = random_z4(m, rng);
      ASSERT_EQ(fourier(w).values, naive_fourier(w));
      BinWord b(m);
      for (std::size_t i = 0; i < b.size(); ++i) b.set(i, static_cast<unsigned>(rng() & 1u));
      ASSERT_EQ(fourier(b).values, naive_fourier(b));
    }
}

TEST(Fourier, Parseval) {
  std::mt19937_64 rng(2);
  for (int m = 0; m <= 10; ++m)
    for (int trial = 0; trial < 1000; ++trial)
      ASSERT_EQ(fourier(random_z4(m, rng)).sum_of_norms(), std::int64_t{1} << (2 * m)) << "m=" << m;
}

TEST(Signal, Examples) {
  EXPECT_EQ(mc_cdma_signal(Z4Word{0, 0, 0, 0}), (std::vector<Gauss>{{4, 0}, {0, 0}, {0, 0}, {0, 0}}));
  EXPECT_EQ(papr_of_signal(mc_cdma_signal(Z4Word{0, 1, 1, 2})).numerator, 4u);
}

TEST(Signal, HadamardSynthesisEqualsFourier) {
  std::mt19937_64 rng(3);
  for (int m = 1; m <= 8; ++m) {
    const HadamardMatrix hm(m);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto w = random_z4(m, rng);
      ASSERT_EQ(mc_cdma_signal(w, hm), fourier(w).values);
      ASSERT_EQ(papr_of_signal(mc_cdma_signal(w, hm)), papr(w));
    }
  }
}

TEST(Papr, Examples) {
  const PaprValue z = papr(Z4Word{0, 0, 0, 0});
  EXPECT_EQ(z.numerator, 16u);
  EXPECT_EQ(z.denominator, 4u);
  EXPECT_EQ(z.reduced().to_string(), "4/1");
  EXPECT_TRUE(papr(Z4Word{0, 1, 1, 2}).is_one());
}

TEST(Papr, CosetOfIdentityFormIsConstantAmplitude) {
  construction2(4).for_each_word([](std::span<const std::uint8_t> w) {
    EXPECT_TRUE(papr(Z4Word(std::vector<std::uint8_t>(w.begin(), w.end()))).is_one());
  });
}

TEST(Bent, Examples) {
  EXPECT_TRUE(is_bent(Z4Word{0, 1}));
  for (int m = 1; m <= 6; ++m) {
    EXPECT_FALSE(is_bent(Z4Word(m)));
    EXPECT_FALSE(is_bent(BinWord(m)));
  }
}

TEST(Bent, NoBinaryBentForOddLengthExponent) {
  for (int m : {1, 3}) {
    const std::uint32_t n = 1u << m;
    for (std::uint32_t code = 0; code < (1u << n); ++code) {
      BinWord w(m);
      for (std::uint32_t i = 0; i < n; ++i) w.set(i, (code >> i) & 1u);
      ASSERT_FALSE(is_bent(w));
    }
  }
}

TEST(Bent, EquivalentToUnitPaprExhaustive) {
  for (int m = 0; m <= 2; ++m) {
    const std::size_t n = std::size_t{1} << m;
    for (std::uint32_t code = 0; code < (1u << (2 * n)); ++code) {
      Z4Word w(m);
      for (std::size_t i = 0; i < n; ++i) w.set(i, (code >> (2 * i)) & 3u);
      ASSERT_EQ(is_bent(w), papr(w).is_one());
    }
  }
}

TEST(CosetInvariance, NormMultisetUnchangedByAffineShift) {
  std::mt19937_64 rng(4);
  for (int m = 1; m <= 4; ++m)
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = random_z4(m, rng);
      auto base = fourier(f).values;
      std::vector<std::int64_t> ref;
      for (const auto& z : base) ref.push_back(z.norm());
      std::sort(ref.begin(), ref.end());
      for (std::uint32_t c = 0; c < (1u << m); ++c)
        for (unsigned eps = 0; eps < 4; ++eps) {
          Z4Word g = f;
          for (std::uint32_t x = 0; x < g.size(); ++x)
            g.set(x, g[x] + eps + 2u * static_cast<unsigned>(std::popcount(c & x) & 1));
          std::vector<std::int64_t> got;
          for (const auto& z : fourier(g).values) got.push_back(z.norm());
          std::sort(got.begin(), got.end());
          ASSERT_EQ(got, ref);
        }
    }
}

TEST(SpectrumForm, Examples) {
  EXPECT_TRUE(spectrum_form_check(Z4Word{0, 1}));
  EXPECT_TRUE(spectrum_form_check(Z4Word{0, 1, 1, 2}));
  EXPECT_THROW(spectrum_form_check(Z4Word(2)), std::invalid_argument);
}

TEST(SpectrumForm, HoldsOnKerdockSubcodeAtFiveVariables) {
  std::uint64_t words = 0;
  construction4(5).for_each_word([&](std::span<const std::uint8_t> w) {
    ++words;
    ASSERT_TRUE(spectrum_form_check(Z4Word(std::vector<std::uint8_t>(w.begin(), w.end()))));
  });
  EXPECT_EQ(words, 2048u);
}

TEST(DegreeBound, MaioranaMcFarlandWordsAtFourVariables) {
  construction1(4, MfVariant::rm4).for_each_word([](std::span<const std::uint8_t> w) {
    const auto d = degree_bound_check(Z4Word(std::vector<std::uint8_t>(w.begin(), w.end())));
    ASSERT_TRUE(d.ok);
    ASSERT_LE(d.degree_a, 2);
    ASSERT_LE(d.degree_b, 2);
  });
}

TEST(DegreeBound, KerdockCosetWordsAtFiveVariables) {
  construction4(5).for_each_word([](std::span<const std::uint8_t> w) {
    const auto d = degree_bound_check(Z4Word(std::vector<std::uint8_t>(w.begin(), w.end())));
    ASSERT_TRUE(d.ok);
    ASSERT_LE(std::max(d.degree_a, d.degree_b), 3);
  });
}

TEST(DegreeBound, RejectsNonBentAndSmallM) {
  EXPECT_THROW(degree_bound_check(Z4Word(3)), std::invalid_argument);
  EXPECT_THROW(degree_bound_check(Z4Word{0, 1, 1, 2}), std::invalid_argument);
}

TEST(PaprValue, ComparesAsRationals) {
  EXPECT_EQ((PaprValue{16, 16}), (PaprValue{1, 1}));
  EXPECT_LT((PaprValue{3, 4}), (PaprValue{1, 1}));
  EXPECT_EQ((PaprValue{32, 8}).reduced().to_string(), "4/1");
}

}  // namespace
