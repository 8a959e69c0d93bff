#pragma once

#include "lcz/poly.hpp"

#include <optional>
#include <random>
#include <string>

namespace lcz {

/// Which of the four candidate thresholds attains beta0(theta).
enum class Branch { FourCosSq, OneMinus2Cos, R, S };
const char* to_string(Branch b) noexcept;

struct SectorThresholds {
  double theta = 0;
  double psi = 0;  // pi - theta
  double a = 0;    // 2 cos(psi) = -2 cos(theta)
  double four_cos2 = 0;
  double one_minus_2cos = 0;
  double r_val = 1;
  double s_val = 1;
  double beta0 = 0;
  Branch branch = Branch::FourCosSq;
};

// R(theta): square of the largest positive root Y of Y^4 - a Y^3 + (a^2 - 2),
// i.e. the largest root X of X^2 - a X^{3/2} + a^2 - 2. Falls back to 1.
double r_threshold(double theta);
// S(theta): largest positive root of X^3 - (1+a) X^2 + (a^2 + a - 1). Falls back to 1.
double s_threshold(double theta);

// As above, but empty when there is no root in [1, 4] instead of returning 1.
std::optional<double> r_root(double theta);
std::optional<double> s_root(double theta);

/// The least uniform ratio bound that forces every zero into |arg z| > theta,
/// for theta in [pi/2, pi).
SectorThresholds beta0(double theta);

struct Breakpoints {
  double theta0 = 0;  // 1 - 2cos(theta) = R(theta)
  double theta1 = 0;  // R(theta) = S(theta)
};
Breakpoints breakpoints();

/// Inverse of beta0 by bisection, for beta in (beta0(pi/2), 4]. Values within
/// 1e-12 below beta0(pi/2) map to pi/2; beta = 4 maps to pi.
double theta_of_beta(double beta);

/// Compares the closed-form expressions for 2cos(Theta(beta)) with the
/// bisection inverse. `branch` is the threshold active at Theta(beta) (1 = -sqrt(beta),
/// 2 = 1 - beta, 3 = R, 4 = S); `printed` is the textbook formula, `halved` the
/// same formula with the last two branches divided by two.
struct BranchProbe {
  double beta = 0;
  int branch = 0;
  int table_branch = 0;  // branch chosen by the printed interval boundaries
  double printed = 0;
  double halved = 0;
  double bisected = 0;
  bool printed_agrees = false;
  bool halved_agrees = false;
};
BranchProbe theta_branch_formulas(double beta);

enum class CertStatus { Certified, Refused };

struct SectorCertificate {
  double theta = 0;
  double beta_required = 0;
  double min_beta_found = 0;
  Branch branch = Branch::FourCosSq;
  std::size_t degree = 0;
  CertStatus status = CertStatus::Refused;
  std::string reason;  // empty when certified
};

/// Certifies |arg z| > theta for every zero from the ratios alone (no root
/// finding). Needs N >= 6 and min beta >= beta0(theta).
SectorCertificate certify_sector(const CoeffSeq<double>& c, double theta);

struct MaxTheta {
  enum class Kind { RealRoots, Sector, Refused };
  Kind kind = Kind::Refused;
  double theta = 0;
  double min_beta = 0;
};
const char* to_string(MaxTheta::Kind k) noexcept;

MaxTheta max_certified_theta(const CoeffSeq<double>& c);

enum class SharpBase { G, H, J, K };
const char* to_string(SharpBase b) noexcept;
SharpBase parse_sharp_base(const std::string& name);

/// base(theta) * f_n truncated to degree N, where f_n = sum n^{-j(j+1)} z^j.
/// Every member vanishes at e^{i theta}; its min beta tends to the base's as n grows.
CoeffSeq<double> sharpness_family(double theta, SharpBase base, int n, int degree);
/// The base polynomial alone (g, h, j or k).
CoeffSeq<double> sharpness_base(double theta, SharpBase base);

struct SmallThetaBounds {
  double upper = 0;
  double lower = 0;
  std::optional<double> upper_pi_over_n;  // exp(16 ln2 / n^2) when theta = pi/n
  std::optional<int> n;
};
SmallThetaBounds small_theta_bounds(double theta);

/// The tent (1, 2, ..., n, n, ..., 2, 1) of length 2n.
CoeffSeq<double> cn_c2n_witness(int n);

/// A random positive sequence of the given degree whose ratios all lie in
/// [beta_min, beta_min * e^spread], rescaled so its largest term sits near
/// the middle index.
CoeffSeq<double> random_ratio_bounded(std::mt19937_64& rng, int degree, double beta_min, double spread = 1.0);

}  // namespace lcz
