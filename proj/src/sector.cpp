#include "lcz/sector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lcz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kScanStep = 1e-3;
constexpr double kRootCeiling = 4.0;
constexpr double kTableR = 1.57762;  // boundaries as printed in the closed-form table
constexpr double kTableS = 1.52334;

void check_theta(double theta) {
  if (!(theta >= kPi / 2 && theta < kPi)) {
    throw Error(Errc::DomainError, "theta must lie in [pi/2, pi)");
  }
}

template <class F>
double bisect(F&& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double fm = f(mid);
    if (fm == 0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  // lo keeps the sign of f at the original left end, which callers rely on.
  return lo;
}

// Largest root in [1, 4], scanning down from 4 so the first bracket found
// belongs to the largest root.
template <class F>
std::optional<double> largest_root_in_range(F&& f) {
  double hi = kRootCeiling;
  double fhi = f(hi);
  if (fhi == 0) return hi;
  const int steps = static_cast<int>(std::lround((kRootCeiling - 1.0) / kScanStep));
  for (int k = 1; k <= steps; ++k) {
    const double lo = kRootCeiling - k * kScanStep;
    const double flo = f(lo);
    if (flo == 0) return lo;
    if ((flo < 0) != (fhi < 0)) return bisect(f, lo, hi);
    hi = lo;
    fhi = flo;
  }
  return std::nullopt;
}

std::optional<double> r_root_unchecked(double theta) {
  const double a = -2 * std::cos(theta);
  return largest_root_in_range([a](double x) { return x * x - a * x * std::sqrt(x) + a * a - 2; });
}

std::optional<double> s_root_unchecked(double theta) {
  const double a = -2 * std::cos(theta);
  return largest_root_in_range([a](double x) { return x * x * x - (1 + a) * x * x + a * a + a - 1; });
}

SectorThresholds beta0_unchecked(double theta) {
  SectorThresholds t;
  t.theta = theta;
  t.psi = kPi - theta;
  t.a = 2 * std::cos(t.psi);
  const double c = std::cos(theta);
  t.four_cos2 = 4 * c * c;
  t.one_minus_2cos = 1 - 2 * c;
  t.r_val = r_root_unchecked(theta).value_or(1.0);
  t.s_val = s_root_unchecked(theta).value_or(1.0);

  t.beta0 = t.four_cos2;
  t.branch = Branch::FourCosSq;
  const std::pair<double, Branch> rest[] = {
      {t.one_minus_2cos, Branch::OneMinus2Cos}, {t.r_val, Branch::R}, {t.s_val, Branch::S}};
  for (const auto& [v, b] : rest) {
    if (v > t.beta0) {
      t.beta0 = v;
      t.branch = b;
    }
  }
  return t;
}

}  // namespace

const char* to_string(Branch b) noexcept {
  switch (b) {
    case Branch::FourCosSq: return "FourCosSq";
    case Branch::OneMinus2Cos: return "OneMinus2Cos";
    case Branch::R: return "R";
    case Branch::S: return "S";
  }
  return "?";
}

const char* to_string(MaxTheta::Kind k) noexcept {
  switch (k) {
    case MaxTheta::Kind::RealRoots: return "RealRoots";
    case MaxTheta::Kind::Sector: return "Sector";
    case MaxTheta::Kind::Refused: return "Refused";
  }
  return "?";
}

const char* to_string(SharpBase b) noexcept {
  switch (b) {
    case SharpBase::G: return "g";
    case SharpBase::H: return "h";
    case SharpBase::J: return "j";
    case SharpBase::K: return "k";
  }
  return "?";
}

SharpBase parse_sharp_base(const std::string& name) {
  if (name == "g") return SharpBase::G;
  if (name == "h") return SharpBase::H;
  if (name == "j") return SharpBase::J;
  if (name == "k") return SharpBase::K;
  throw Error(Errc::ParseError, "base must be one of g, h, j, k");
}

std::optional<double> r_root(double theta) {
  check_theta(theta);
  return r_root_unchecked(theta);
}

std::optional<double> s_root(double theta) {
  check_theta(theta);
  return s_root_unchecked(theta);
}

double r_threshold(double theta) { return r_root(theta).value_or(1.0); }
double s_threshold(double theta) { return s_root(theta).value_or(1.0); }

SectorThresholds beta0(double theta) {
  check_theta(theta);
  return beta0_unchecked(theta);
}

Breakpoints breakpoints() {
  Breakpoints bp;
  bp.theta0 = bisect(
      [](double t) { return 1 - 2 * std::cos(t) - r_root_unchecked(t).value_or(1.0); }, kPi / 2, 0.8 * kPi);
  bp.theta1 = bisect(
      [](double t) { return r_root_unchecked(t).value_or(1.0) - s_root_unchecked(t).value_or(1.0); }, kPi / 2,
      bp.theta0);
  return bp;
}

double theta_of_beta(double beta) {
  const double bottom = beta0_unchecked(kPi / 2).beta0;
  if (!(beta >= bottom - 1e-12) || !(beta <= 4.0)) {
    throw Error(Errc::DomainError, "beta must lie in [beta0(pi/2), 4]");
  }
  if (beta <= bottom) return kPi / 2;
  if (beta == 4.0) return kPi;
  return bisect([beta](double t) { return beta0_unchecked(t).beta0 - beta; }, kPi / 2, kPi);
}

BranchProbe theta_branch_formulas(double beta) {
  BranchProbe p;
  p.beta = beta;
  const double theta = theta_of_beta(beta);
  p.bisected = 2 * std::cos(theta);

  const Branch active = theta < kPi ? beta0_unchecked(theta).branch : Branch::FourCosSq;
  switch (active) {
    case Branch::FourCosSq: p.branch = 1; break;
    case Branch::OneMinus2Cos: p.branch = 2; break;
    case Branch::R: p.branch = 3; break;
    case Branch::S: p.branch = 4; break;
  }
  const double golden_sq = (3 + std::sqrt(5.0)) / 2;
  p.table_branch = beta >= golden_sq ? 1 : beta >= kTableR ? 2 : beta >= kTableS ? 3 : 4;

  const double b15 = beta * std::sqrt(beta);
  switch (p.branch) {
    case 1: p.printed = -std::sqrt(beta); break;
    case 2: p.printed = 1 - beta; break;
    case 3: p.printed = -b15 + std::sqrt(beta * beta * beta - 4 * beta * beta + 8); break;
    case 4: {
      const double q = 1 + beta * beta;
      p.printed = 1 - beta * beta + std::sqrt(q * q + 4 * (1 - beta * beta * beta));
      break;
    }
  }
  p.halved = p.branch >= 3 ? p.printed / 2 : p.printed;
  constexpr double kAgree = 1e-6;
  p.printed_agrees = std::abs(p.printed - p.bisected) <= kAgree;
  p.halved_agrees = std::abs(p.halved - p.bisected) <= kAgree;
  return p;
}

SectorCertificate certify_sector(const CoeffSeq<double>& c, double theta) {
  const auto profile = beta_profile(c);
  const auto th = beta0(theta);
  SectorCertificate cert;
  cert.theta = theta;
  cert.beta_required = th.beta0;
  cert.min_beta_found = profile.min_beta;
  cert.branch = th.branch;
  cert.degree = c.degree();
  if (c.degree() < 6) {
    cert.reason = "degree " + std::to_string(c.degree()) + " is below 6";
  } else if (profile.min_beta < th.beta0) {
    cert.reason = "min beta is below beta0(theta)";
  } else {
    cert.status = CertStatus::Certified;
  }
  return cert;
}

MaxTheta max_certified_theta(const CoeffSeq<double>& c) {
  if (c.degree() < 6) {
    throw Error(Errc::DegreeTooSmall, "sector certificates need N >= 6");
  }
  MaxTheta out;
  out.min_beta = beta_profile(c).min_beta;
  if (out.min_beta >= 4.0) {
    out.kind = MaxTheta::Kind::RealRoots;
    out.theta = kPi;
  } else if (out.min_beta > beta0_unchecked(kPi / 2).beta0) {
    out.kind = MaxTheta::Kind::Sector;
    out.theta = theta_of_beta(out.min_beta);
  } else {
    out.kind = MaxTheta::Kind::Refused;
    out.theta = kPi / 2;
  }
  return out;
}

CoeffSeq<double> sharpness_base(double theta, SharpBase base) {
  check_theta(theta);
  const double a = -2 * std::cos(theta);
  const CoeffSeq<double> g({1.0, a, 1.0});
  switch (base) {
    case SharpBase::G:
      return g;
    case SharpBase::H:
      return multiply(g, CoeffSeq<double>({1.0, 1.0}));
    case SharpBase::J: {
      const auto r = r_root_unchecked(theta);
      if (!r) throw Error(Errc::NoPositiveRoot, "R has no root in [1, 4] at this theta");
      const double b = *r * std::sqrt(*r) - a;
      return multiply(g, CoeffSeq<double>({1.0, b, 1.0}));
    }
    case SharpBase::K: {
      const auto s = s_root_unchecked(theta);
      if (!s) throw Error(Errc::NoPositiveRoot, "S has no root in [1, 4] at this theta");
      const double b = *s * *s - a;
      return multiply(g, CoeffSeq<double>({1.0, b, b, 1.0}));
    }
  }
  throw Error(Errc::DomainError, "unknown base");
}

CoeffSeq<double> sharpness_family(double theta, SharpBase base, int n, int degree) {
  if (n < 2) throw Error(Errc::DomainError, "n must be at least 2");
  const auto b = sharpness_base(theta, base);
  const int tail = degree - static_cast<int>(b.degree());
  if (tail < 1) {
    throw Error(Errc::DegreeTooSmall, "degree must exceed the base degree " + std::to_string(b.degree()));
  }
  std::vector<double> f;
  const double logn = std::log(static_cast<double>(n));
  for (int j = 0; j <= tail; ++j) {
    const double v = std::exp(-logn * j * (j + 1));
    if (!std::isnormal(v) && j > 0) {
      throw Error(Errc::DomainError, "tail coefficient n^{-j(j+1)} underflows double precision");
    }
    f.push_back(v);
  }
  return multiply(b, CoeffSeq<double>(std::move(f)));
}

SmallThetaBounds small_theta_bounds(double theta) {
  if (!(theta > 0 && theta < kPi / 2)) {
    throw Error(Errc::DomainError, "small-angle bounds need 0 < theta < pi/2");
  }
  SmallThetaBounds out;
  out.upper = 1 + 16 * theta * theta * std::numbers::ln2 / (kPi * kPi);
  out.lower = 1 + theta * theta / (4 * kPi * kPi);
  const double x = kPi / theta;
  const double n = std::round(x);
  if (n >= 3 && std::abs(x - n) <= 1e-9 * x) {
    out.n = static_cast<int>(n);
    out.upper_pi_over_n = std::exp(16 * std::numbers::ln2 / (n * n));
  }
  return out;
}

CoeffSeq<double> cn_c2n_witness(int n) {
  if (n < 3) throw Error(Errc::DomainError, "n must be at least 3");
  std::vector<double> c;
  for (int j = 1; j <= n; ++j) c.push_back(j);
  for (int j = n; j >= 1; --j) c.push_back(j);
  return CoeffSeq<double>(std::move(c));
}

CoeffSeq<double> random_ratio_bounded(std::mt19937_64& rng, int degree, double beta_min, double spread) {
  if (degree < 2 || !(beta_min > 0)) throw Error(Errc::DomainError, "need degree >= 2 and beta_min > 0");
  std::uniform_real_distribution<double> u(0.0, spread);
  const double log_min = std::log(beta_min);
  // Increments d_j = log c_{j+1} - log c_j drop by log beta_j at each step.
  std::vector<double> d{0.0};
  for (int j = 1; j < degree; ++j) d.push_back(d.back() - log_min - u(rng));
  const int m = degree / 2;
  const double shift = m > 0 ? -0.5 * (d[m - 1] + d[m]) : -d[0];
  std::vector<double> logc{0.0};
  for (int j = 0; j < degree; ++j) logc.push_back(logc.back() + d[j] + shift);
  const double top = *std::max_element(logc.begin(), logc.end());
  std::vector<double> c;
  for (double v : logc) c.push_back(std::exp(v - top));
  return CoeffSeq<double>(std::move(c));
}

}  // namespace lcz
