#include "lcz/kurtz.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

namespace {

using Seq = lcz::CoeffSeq<double>;
using cd = std::complex<double>;

// Frozen from a 60-digit direct summation / bisection oracle.
constexpr double kF12 = 2.64163256065515386629;
constexpr double kKurtz = 4.44850557610401246158653;
const char* const kKurtzDigits = "4.44850557610401246158653";

Seq fb(double b, int n) {
  std::vector<double> c;
  for (int j = 0; j <= n; ++j) c.push_back(std::pow(b, -double(j) * (j + 1)));
  return Seq(c);
}

TEST(FSeries, Values) {
  EXPECT_DOUBLE_EQ(lcz::f_series(0.0, 3.0).value, 1.0);
  EXPECT_EQ(lcz::f_series(0.0, 3.0).terms_used, 1);
  EXPECT_NEAR(lcz::f_series(1.0, 2.0).value, kF12, 1e-15);
  EXPECT_THROW(lcz::f_series(1.5, 2.0), lcz::Error);
  EXPECT_THROW(lcz::f_series(0.5, 1.0), lcz::Error);
  EXPECT_THROW(lcz::f_series(-0.1, 2.0), lcz::Error);
}

TEST(FSeries, DefiningEquationAtConstant) {
  const double b = 4.448505576;
  const double f = lcz::f_series(std::pow(b, -1.5), b).value;
  EXPECT_NEAR((f + 1) * (f + 1), b, 1e-8);
}

TEST(FSeries, HighPrecisionTruncation) {
  lcz::PrecisionScope scope(50);
  const auto t = lcz::f_series(lcz::HpReal(1), lcz::HpReal(2));
  EXPECT_NEAR(static_cast<double>(t.value), kF12, 1e-15);
  EXPECT_LT(static_cast<double>(abs(t.value - lcz::parse_hp("2.64163256065515386629"))), 1e-19);
}

TEST(FSeries, MonotoneInRAndBeta) {
  for (double beta = 1.5; beta <= 6.0; beta += 0.5) {
    double prev = 0;
    for (double r = 0; r <= 1.0; r += 0.05) {
      const double v = lcz::f_series(r, beta).value;
      EXPECT_GE(v, 1.0);
      EXPECT_GT(v, prev);
      prev = v;
      if (r > 0) EXPECT_GT(v, lcz::f_series(r, beta + 0.5).value);
    }
  }
}

TEST(KurtzConstant, Value) {
  const double b = lcz::kurtz_constant<double>();
  EXPECT_NEAR(b, 4.448505576, 1e-9);
  EXPECT_NEAR(b, kKurtz, 1e-14);
  const auto rep = lcz::kurtz_report();
  EXPECT_LT(rep.residual, 1e-12);
  EXPECT_FALSE(rep.alt_has_root);
  EXPECT_GT(rep.alt_min_f2, 1.2);
  EXPECT_LT(rep.alt_max_f2, 1.25);
}

TEST(KurtzConstant, HighPrecision) {
  lcz::PrecisionScope scope(40);
  const auto b = lcz::kurtz_constant<lcz::HpReal>();
  EXPECT_LT(static_cast<double>(abs(b - lcz::parse_hp(kKurtzDigits))), 1e-23);
}

TEST(TailMass, ConstantRatioFamily) {
  const double b = 1.9;
  const auto c = fb(b, 15);
  const std::size_t k = lcz::beta_profile(c).mode_index + 1;
  const double ratio = c[k + 1] / c[k];
  const double bound = lcz::tail_mass_bound(c, k, lcz::TailDirection::Right, ratio);
  double tail = 0;
  for (std::size_t j = k; j < c.size(); ++j) tail += c[j];
  EXPECT_GE(bound, tail);
  EXPECT_LT(bound / tail, 1.5);
}

TEST(TailMass, SingleSurvivingTerm) {
  const auto c = fb(2.0, 6);
  EXPECT_DOUBLE_EQ(lcz::tail_mass_bound(c, 6, lcz::TailDirection::Right, 0.0), c[6]);
}

TEST(TailMass, ScaledSumsAgainstBruteForce) {
  const auto c = fb(2.0, 20);
  for (double scale : {1.0, 1e3, 1e6}) {
    std::vector<double> d;
    double pw = 1;
    for (double v : c.coeffs()) {
      d.push_back(v * pw);
      pw *= scale;
    }
    const auto mode = static_cast<std::size_t>(std::max_element(d.begin(), d.end()) - d.begin());
    for (std::size_t k = mode; k + 1 < d.size(); ++k) {
      const double bound = lcz::tail_mass_bound(c, k, lcz::TailDirection::Right, d[k + 1] / d[k], scale);
      double tail = 0;
      for (std::size_t j = k; j < d.size(); ++j) tail += d[j];
      EXPECT_GE(bound, tail * (1 - 1e-14)) << scale << " " << k;
    }
    for (std::size_t k = 1; k <= mode; ++k) {
      const double bound = lcz::tail_mass_bound(c, k, lcz::TailDirection::Left, d[k - 1] / d[k], scale);
      double tail = 0;
      for (std::size_t j = 0; j <= k; ++j) tail += d[j];
      EXPECT_GE(bound, tail * (1 - 1e-14)) << scale << " " << k;
    }
  }
  EXPECT_NO_THROW(lcz::tail_mass_bound(c, 3, lcz::TailDirection::Right, c[4] / c[3]));
}

TEST(TailMass, Preconditions) {
  const auto c = fb(2.0, 10);
  EXPECT_THROW(lcz::tail_mass_bound(c, 3, lcz::TailDirection::Right, 0.0), lcz::Error);
  EXPECT_THROW(lcz::tail_mass_bound(c, 3, lcz::TailDirection::Left, 1.0), lcz::Error);
  EXPECT_THROW(lcz::tail_mass_bound(Seq({1, 1, 1, 1}), 2, lcz::TailDirection::Right, 1.0), lcz::Error);
}

TEST(AnnulusChart, OneRootPerAnnulus) {
  const auto c = fb(std::sqrt(4.5), 10);
  const auto ch = lcz::annulus_chart(c);
  EXPECT_TRUE(ch.ordered);
  EXPECT_TRUE(ch.all_real_simple);
  ASSERT_EQ(ch.one_root.size(), 10u);
  EXPECT_DOUBLE_EQ(ch.rho[0], 0.0);
  EXPECT_TRUE(std::isinf(ch.R[10]));
  const auto rs = lcz::all_roots(c);
  for (const auto& [lo, hi] : ch.one_root) EXPECT_EQ(lcz::count_in_annulus(rs, lo, hi), 1);
  for (const auto& [lo, hi] : ch.zero_free) EXPECT_EQ(lcz::count_in_closed_annulus(rs, lo, hi), 0);
}

TEST(AnnulusChart, RejectsSmallRatios) {
  try {
    lcz::annulus_chart(fb(2.0, 10));
    FAIL();
  } catch (const lcz::Error& e) {
    EXPECT_EQ(e.code(), lcz::Errc::ProfileTooSmall);
  }
  EXPECT_THROW(lcz::annulus_chart(Seq({1, 0.1, 0, 1e-5})), lcz::Error);
  EXPECT_THROW(lcz::annulus_chart(Seq({1, 0.1, 1e-3})), lcz::Error);
}

TEST(AnnulusChart, DependsOnlyOnModuli) {
  const int n = 10;
  const double scale = 3.0;
  std::vector<cd> cc;
  cd ij(1, 0);
  for (int j = 0; j <= n; ++j) {
    cc.push_back(ij * std::pow(4.5, -0.5 * j * (j + 1)) * std::pow(scale, j));
    ij *= cd(0, 1);
  }
  const auto chc = lcz::annulus_chart(cc);
  std::vector<double> mod;
  for (const auto& v : cc) mod.push_back(std::abs(v));
  const auto chr = lcz::annulus_chart(Seq(mod));
  EXPECT_FALSE(chc.real_coefficients);
  EXPECT_FALSE(chc.all_real_simple);
  for (int k = 0; k <= n; ++k) {
    EXPECT_DOUBLE_EQ(chc.rho[k], chr.rho[k]);
    EXPECT_EQ(chc.R[k], chr.R[k]);
  }
  const auto rs = lcz::all_roots<double>(cc);
  for (const auto& [lo, hi] : chc.one_root) EXPECT_EQ(lcz::count_in_annulus(rs, lo, hi), 1);
}

TEST(RealRootChart, BoundaryRatioFour) {
  const auto c = fb(2.0, 7);
  const auto ch = lcz::real_root_chart(c);
  EXPECT_TRUE(ch.ordered);
  EXPECT_TRUE(ch.witnesses_ok);
  for (std::size_t k = 1; k < 7; ++k) {
    const auto [lo, hi] = ch.j_intervals[k - 1];
    EXPECT_DOUBLE_EQ(lo, hi);
    EXPECT_NEAR(lo, 2 * std::pow(4.0, double(k)), 1e-9 * lo);
  }
  const auto rs = lcz::all_roots(c);
  EXPECT_TRUE(lcz::all_real(rs, 1e-9));
  const auto sorted = lcz::by_modulus(rs.roots);
  for (std::size_t k = 0; k < 7; ++k) {
    const double x = -sorted[k].real();
    EXPECT_GT(x, ch.lower[k]);
    EXPECT_LT(x, ch.upper[k]);
  }
}

TEST(RealRootChart, NontrivialIntervals) {
  const auto c = fb(2.2, 8);
  const auto ch = lcz::real_root_chart(c);
  EXPECT_TRUE(ch.ordered);
  EXPECT_TRUE(ch.witnesses_ok);
  for (const auto& [lo, hi] : ch.j_intervals) EXPECT_LT(lo, hi);
  const auto sorted = lcz::by_modulus(lcz::all_roots(c).roots);
  for (std::size_t k = 0; k < 8; ++k) {
    EXPECT_LT(std::abs(sorted[k].imag()), 1e-9 * std::abs(sorted[k]));
    EXPECT_GE(-sorted[k].real(), ch.lower[k]);
    EXPECT_LE(-sorted[k].real(), ch.upper[k]);
  }
}

TEST(RealRootChart, Errors) {
  try {
    lcz::real_root_chart(Seq({1, 1, 0.25, 1.0 / 32}));
    FAIL();
  } catch (const lcz::Error& e) {
    EXPECT_EQ(e.code(), lcz::Errc::KurtzConditionFails);
  }
  EXPECT_THROW(lcz::real_root_chart(Seq({1, -1, 0.25, 1.0 / 32})), lcz::Error);
}

TEST(KurtzProperties, NecessityMargin) {
  const auto p = lcz::beta_profile(Seq({1, 6, 5, 1}));
  EXPECT_NEAR(p.min_beta, 25.0 / 6.0, 1e-15);
  EXPECT_LT(p.min_beta, lcz::kurtz_constant<double>());
  EXPECT_FALSE(lcz::all_real(lcz::all_roots(Seq({1, 6, -5, 1})), 1e-9));
}

TEST(KurtzProperties, ChartsAreSoundOnRatioFamilies) {
  for (double b2 = 4.45; b2 <= 12.0; b2 += 0.35) {
    for (int n : {3, 6, 11, 16}) {
      const auto c = fb(std::sqrt(b2), n);
      const auto rs = lcz::all_roots(c);
      const auto ach = lcz::annulus_chart(c);
      ASSERT_TRUE(ach.ordered);
      for (const auto& [lo, hi] : ach.one_root) EXPECT_EQ(lcz::count_in_annulus(rs, lo, hi), 1);
      const auto rch = lcz::real_root_chart(c);
      EXPECT_TRUE(rch.witnesses_ok);
      const auto sorted = lcz::by_modulus(rs.roots);
      for (std::size_t k = 0; k < sorted.size(); ++k) {
        EXPECT_LE(std::abs(sorted[k].imag()), 1e-9 * std::abs(sorted[k]));
        EXPECT_GE(-sorted[k].real(), rch.lower[k] * (1 - 1e-12));
        EXPECT_LE(-sorted[k].real(), rch.upper[k] * (1 + 1e-12));
      }
    }
  }
}

}  // namespace
