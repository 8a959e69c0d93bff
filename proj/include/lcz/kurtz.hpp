#pragma once

#include "lcz/poly.hpp"
#include "lcz/precision.hpp"
#include "lcz/roots.hpp"

#include <complex>
#include <limits>
#include <vector>

namespace lcz {

/// F(r, beta) = sum_{j>=0} r^j / beta^{j(j-1)/2}.
template <class Real>
struct TailSeries {
  Real r;
  Real beta;
  Real value;
  int terms_used = 0;
};

/// Sums until the next term drops below max(unit roundoff, 1e-30) of the
/// partial sum.
template <class Real>
TailSeries<Real> f_series(const Real& r, const Real& beta) {
  if (!(r >= 0 && r <= 1)) throw Error(Errc::DomainError, "F(r, beta) needs 0 <= r <= 1");
  if (!(beta > 1)) throw Error(Errc::DomainError, "F(r, beta) needs beta > 1");
  using std::pow;
  Real tol = detail::unit_roundoff<Real>();
  const Real floor_tol = pow(Real(10), -30);
  if (tol < floor_tol) tol = floor_tol;

  TailSeries<Real> out{r, beta, Real(1), 1};
  Real term(1);
  Real decay(1);  // beta^{-j} for the step from term j to term j+1
  const Real inv_beta = Real(1) / beta;
  while (true) {
    term *= r * decay;
    decay *= inv_beta;
    if (term < tol * out.value) break;
    out.value += term;
    ++out.terms_used;
  }
  return out;
}

/// The unique root of (F(beta^{-3/2}, beta) + 1)^2 = beta in [4.3, 4.5], by
/// bisection at the working precision of Real.
template <class Real>
Real kurtz_constant() {
  using std::pow;
  auto g = [](const Real& b) {
    using std::pow;
    const Real f = f_series<Real>(pow(b, Real(-1.5)), b).value + 1;
    return Real(f * f - b);
  };
  Real lo = Real(43) / 10;
  Real hi = Real(45) / 10;
  Real glo = g(lo);
  for (int i = 0; i < 400; ++i) {
    const Real mid = (lo + hi) / 2;
    if (!(mid > lo && mid < hi)) break;
    const Real gm = g(mid);
    if (gm == 0) return mid;
    if ((gm < 0) == (glo < 0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

struct KurtzReport {
  double beta0 = 0;
  double residual = 0;  // |(F + 1)^2 - beta0|
  double f_value = 0;   // F(beta0^{-3/2}, beta0)
  // The alternative form F^2 = beta, sampled over [4.3, 4.5].
  double alt_min_f2 = 0;
  double alt_max_f2 = 0;
  bool alt_has_root = false;
};
KurtzReport kurtz_report();

enum class TailDirection { Left, Right };

/// Upper bound F(r, beta) D_k for sum_{j>=k} D_j (Right) or sum_{j<=k} D_j
/// (Left), with D_j = |c_j| scale^j and beta the least ratio of D. Requires
/// beta > 1, k on the falling side of the mode for Right (rising side for
/// Left), and r at least the ratio of D_k to its outward neighbour.
double tail_mass_bound(const CoeffSeq<double>& c, std::size_t k, TailDirection dir, double r, double scale = 1.0);

struct AnnulusChart {
  double beta_kurtz = 0;  // the constant used for r and F
  double r = 0;           // beta_kurtz^{-3/2}
  double F = 0;           // F(r, beta_kurtz)
  std::vector<double> rho;  // rho_0 .. rho_N
  std::vector<double> R;    // R_0 .. R_N, R_N = +inf
  // Zero-free [rho_k, R_k] for k = 0..N, one-root (R_k, rho_{k+1}) for k = 0..N-1.
  std::vector<std::pair<double, double>> zero_free;
  std::vector<std::pair<double, double>> one_root;
  bool ordered = false;        // rho_k <= R_k < rho_{k+1} held for every k
  bool real_coefficients = false;
  bool all_real_simple = false;  // certified when the coefficients are real
};

AnnulusChart annulus_chart_from_moduli(const std::vector<double>& d, bool real_coefficients);
AnnulusChart annulus_chart(const CoeffSeq<double>& c);
AnnulusChart annulus_chart(const std::vector<std::complex<double>>& c);

struct SignWitness {
  std::size_t k = 0;
  double x = 0;        // f(-x) is evaluated here
  double value = 0;
  int expected_sign = 0;
  bool ok = false;
};

struct RealRootChart {
  std::vector<double> lower;  // lower_k for k = 1..N (index k-1)
  std::vector<double> upper;
  std::vector<std::pair<double, double>> j_intervals;  // J_k for k = 1..N-1 (index k-1)
  std::vector<SignWitness> witnesses;                   // k = 0..N-1
  bool ordered = false;
  bool witnesses_ok = false;
};

/// Intervals for the magnitudes x_1 < ... < x_N of the (negative, real,
/// simple) roots of a positive sequence with every ratio at least 4.
RealRootChart real_root_chart(const CoeffSeq<double>& c);

}  // namespace lcz
