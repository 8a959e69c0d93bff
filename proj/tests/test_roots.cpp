#include "lcz/roots.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

namespace {

using cd = std::complex<double>;
using Seq = lcz::CoeffSeq<double>;
constexpr double kPi = std::numbers::pi;

// Coefficients of c_N * prod (z - r_i), lowest degree first.
std::vector<cd> from_roots(const std::vector<cd>& r, cd lead = 1.0) {
  std::vector<cd> c{lead};
  for (const auto& z : r) {
    std::vector<cd> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= z * c[i];
    }
    c = next;
  }
  return c;
}

double match_error(std::vector<cd> want, std::vector<cd> got) {
  // Greedy nearest matching; fine for well separated test roots.
  double worst = 0;
  for (const auto& w : want) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < got.size(); ++i) {
      if (std::abs(got[i] - w) < std::abs(got[best] - w)) best = i;
    }
    worst = std::max(worst, std::abs(got[best] - w) / std::max(1.0, std::abs(w)));
    got.erase(got.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return worst;
}

TEST(AllRoots, DoubleRootIsMerged) {
  const auto rs = lcz::all_roots(Seq({1, 2, 1}));
  ASSERT_EQ(rs.roots.size(), 2u);
  for (const auto& z : rs.roots) {
    EXPECT_NEAR(z.real(), -1.0, 1e-7);
    EXPECT_NEAR(z.imag(), 0.0, 1e-7);
  }
}

TEST(AllRoots, UnitCircleQuadratic) {
  const double theta = 3 * kPi / 4;
  const double a = 2 * std::cos(kPi - theta);
  const auto rs = lcz::all_roots(Seq({1, a, 1}));
  EXPECT_LT(match_error({std::polar(1.0, theta), std::polar(1.0, -theta)}, rs.roots), 1e-13);
  EXPECT_NEAR(rs.min_arg, theta, 1e-13);
}

TEST(AllRoots, CubicWithSignChanges) {
  // x^3 - 5x^2 + 6x + 1
  const auto rs = lcz::all_roots(Seq({1, 6, -5, 1}));
  ASSERT_TRUE(rs.converged);
  int nonreal = 0;
  for (const auto& z : rs.roots) {
    if (std::abs(z.imag()) > 1e-9) ++nonreal;
  }
  EXPECT_EQ(nonreal, 2);
  EXPECT_FALSE(lcz::all_real(rs, 1e-9));
}

TEST(AllRoots, ZeroRootsAreDeflated) {
  const auto rs = lcz::all_roots(Seq({0, 0, -1, 1}));
  ASSERT_EQ(rs.roots.size(), 3u);
  EXPECT_EQ(std::count(rs.roots.begin(), rs.roots.end(), cd(0, 0)), 2);
  EXPECT_DOUBLE_EQ(rs.min_arg, 0.0);
}

TEST(AllRoots, LinearAndDegenerate) {
  const auto rs = lcz::all_roots(Seq({2, 4}));
  ASSERT_EQ(rs.roots.size(), 1u);
  EXPECT_DOUBLE_EQ(rs.roots[0].real(), -0.5);
  EXPECT_DOUBLE_EQ(rs.min_arg, kPi);
}

TEST(MinArg, NegativeRealRoots) {
  const auto rs = lcz::all_roots(Seq({2, 3, 1}));
  EXPECT_DOUBLE_EQ(lcz::min_arg(rs), kPi);
}

TEST(CountInAnnulus, Basic) {
  lcz::RootSet<double> rs;
  rs.roots = {cd(-1, 0)};
  EXPECT_EQ(lcz::count_in_annulus(rs, 0.5, 2.0), 1);
  EXPECT_EQ(lcz::count_in_annulus(rs, 1.5, 2.0), 0);
  EXPECT_EQ(lcz::count_in_annulus(rs, 0.5, std::numeric_limits<double>::infinity()), 1);
  EXPECT_THROW(lcz::count_in_annulus(rs, 1.0, 2.0), lcz::Error);
  EXPECT_THROW(lcz::count_in_annulus(rs, 2.0, 1.0), lcz::Error);
  EXPECT_EQ(lcz::count_in_closed_annulus(rs, 0.0, 0.5), 0);
}

TEST(AllReal, Examples) {
  EXPECT_FALSE(lcz::all_real(lcz::all_roots(Seq({1, 1, 1})), 1e-9));
  std::vector<double> c;
  for (int j = 0; j <= 10; ++j) c.push_back(std::pow(2.0, -double(j) * (j + 1)));
  EXPECT_TRUE(lcz::all_real(lcz::all_roots(Seq(c)), 1e-9));
}

TEST(AllRoots, HighPrecisionQuadratic) {
  lcz::PrecisionScope scope(50);
  using H = lcz::HpReal;
  const auto rs = lcz::all_roots(lcz::CoeffSeq<H>({H(2), H(0), H(1)}));
  ASSERT_TRUE(rs.converged);
  const H want = sqrt(H(2));
  for (const auto& z : rs.roots) {
    EXPECT_LT(static_cast<double>(abs(z.real())), 1e-45);
    EXPECT_LT(static_cast<double>(abs(abs(z.imag()) - want)), 1e-45);
  }
}

// Property tests: synthetic roots, conjugate closure, degree conservation.

TEST(RootProperties, RecoversSyntheticRoots) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> deg(1, 20);
  std::uniform_real_distribution<double> radius(0.3, 3.0);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = deg(rng);
    std::vector<cd> r;
    for (int i = 0; i < n; ++i) r.push_back(std::polar(radius(rng), angle(rng)));
    // Keep the sample well conditioned: reject nearly coincident roots.
    bool close = false;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) close |= std::abs(r[i] - r[j]) < 0.05;
    if (close) continue;
    const auto rs = lcz::all_roots<double>(from_roots(r, 2.5));
    ASSERT_TRUE(rs.converged);
    ASSERT_EQ(rs.roots.size(), static_cast<std::size_t>(n));
    EXPECT_LT(match_error(r, rs.roots), 1e-8) << "trial " << trial;
  }
}

TEST(RootProperties, RealInputsGiveConjugateClosedRoots) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 20;
    std::vector<double> c;
    for (int j = 0; j <= n; ++j) c.push_back(u(rng));
    c.back() = c.back() == 0 ? 1.0 : c.back();
    const auto rs = lcz::all_roots(Seq(c));
    ASSERT_EQ(rs.roots.size(), static_cast<std::size_t>(n));
    EXPECT_LT(rs.residual_bound, 1e-12);
    std::vector<cd> conj;
    for (const auto& z : rs.roots) conj.push_back(std::conj(z));
    EXPECT_LT(match_error(rs.roots, conj), 1e-6) << "trial " << trial;
  }
}

TEST(RootProperties, ReconstructsCoefficients) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 15;
    std::vector<double> c;
    for (int j = 0; j <= n; ++j) c.push_back(u(rng));
    const auto rs = lcz::all_roots(Seq(c));
    const auto back = from_roots(rs.roots, c.back());
    double scale = 0;
    for (double v : c) scale = std::max(scale, std::abs(v));
    for (int j = 0; j <= n; ++j) {
      EXPECT_LT(std::abs(back[j] - c[j]), 1e-9 * scale * std::pow(4.0, n / 4.0));
    }
  }
}

}  // namespace
