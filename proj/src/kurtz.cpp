#include "lcz/kurtz.hpp"

#include <algorithm>
#include <cmath>

namespace lcz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kClamp = 1e-14;
constexpr double kRatioSlack = 1e-12;

double clamped_root_term(double x) {
  if (x >= 0) return std::sqrt(x);
  if (x > -kClamp) return 0.0;
  throw Error(Errc::ProfileTooSmall, "ratio too small for a nonempty interval");
}

}  // namespace

KurtzReport kurtz_report() {
  KurtzReport rep;
  rep.beta0 = kurtz_constant<double>();
  rep.f_value = f_series(std::pow(rep.beta0, -1.5), rep.beta0).value;
  rep.residual = std::abs((rep.f_value + 1) * (rep.f_value + 1) - rep.beta0);

  rep.alt_min_f2 = kInf;
  rep.alt_max_f2 = -kInf;
  double prev_sign = 0;
  for (int i = 0; i <= 2000; ++i) {
    const double b = 4.3 + 0.2 * i / 2000.0;
    const double f = f_series(std::pow(b, -1.5), b).value;
    rep.alt_min_f2 = std::min(rep.alt_min_f2, f * f);
    rep.alt_max_f2 = std::max(rep.alt_max_f2, f * f);
    const double s = f * f - b;
    if (s == 0 || (i > 0 && (s < 0) != (prev_sign < 0))) rep.alt_has_root = true;
    prev_sign = s;
  }
  return rep;
}

double tail_mass_bound(const CoeffSeq<double>& c, std::size_t k, TailDirection dir, double r, double scale) {
  if (!(scale > 0)) throw Error(Errc::DomainError, "scale must be positive");
  if (k > c.degree()) throw Error(Errc::DomainError, "index out of range");
  std::vector<double> d(c.size());
  double pw = 1;
  for (std::size_t j = 0; j < c.size(); ++j) {
    d[j] = std::abs(c[j]) * pw;
    pw *= scale;
  }
  const auto profile = beta_profile(CoeffSeq<double>(d));
  if (!(profile.min_beta > 1)) throw Error(Errc::DomainError, "tail bound needs min beta > 1");
  const std::size_t mode = profile.mode_index;
  if (dir == TailDirection::Right) {
    if (k < mode) throw Error(Errc::DomainError, "k must not lie left of the mode");
    if (k + 1 < d.size() && r < d[k + 1] / d[k] * (1 - kRatioSlack)) {
      throw Error(Errc::DomainError, "r is below the adjacent ratio");
    }
  } else {
    // With a second mode at mode + 1 the left side is still monotone up to it.
    if (k > mode + 1 || (k == mode + 1 && d[k] < d[mode])) {
      throw Error(Errc::DomainError, "k must not lie right of the mode");
    }
    if (k > 0 && r < d[k - 1] / d[k] * (1 - kRatioSlack)) {
      throw Error(Errc::DomainError, "r is below the adjacent ratio");
    }
  }
  return f_series(r, profile.min_beta).value * d[k];
}

AnnulusChart annulus_chart_from_moduli(const std::vector<double>& d, bool real_coefficients) {
  if (d.size() < 4) throw Error(Errc::DegreeTooSmall, "annulus chart needs N >= 3");
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (!(d[j] > 0)) throw Error(Errc::ZeroCoefficient, "|c_" + std::to_string(j) + "| is zero");
  }
  const std::size_t n = d.size() - 1;

  AnnulusChart ch;
  ch.beta_kurtz = kurtz_constant<double>();
  ch.r = std::pow(ch.beta_kurtz, -1.5);
  ch.F = f_series(ch.r, ch.beta_kurtz).value;
  ch.real_coefficients = real_coefficients;

  const auto profile = beta_profile(CoeffSeq<double>(d));
  for (std::size_t j = 1; j < n; ++j) {
    if (profile.beta(j) < ch.beta_kurtz * (1 - kRatioSlack)) {
      throw Error(Errc::ProfileTooSmall, "beta_" + std::to_string(j) + " is below " + std::to_string(ch.beta_kurtz));
    }
  }

  ch.rho.assign(n + 1, 0.0);
  ch.R.assign(n + 1, kInf);
  for (std::size_t k = 0; k <= n; ++k) {
    double rho = 0;
    double big_r = kInf;
    if (k >= 2) rho = std::max(rho, d[k - 2] / (ch.r * d[k - 1]));
    if (k + 2 <= n) big_r = std::min(big_r, ch.r * d[k + 1] / d[k + 2]);
    if (k == 0) {
      big_r = std::min(big_r, d[0] / (d[1] * ch.F));
    } else if (k < n) {
      const double half = d[k] / (2 * d[k + 1] * ch.F);
      const double s = clamped_root_term(1 - 4 * ch.F / profile.beta(k));
      rho = std::max(rho, half * (1 - s));
      big_r = std::min(big_r, half * (1 + s));
    } else {
      rho = std::max(rho, ch.F * d[n - 1] / d[n]);
    }
    ch.rho[k] = rho;
    ch.R[k] = big_r;
  }

  ch.ordered = true;
  for (std::size_t k = 0; k <= n; ++k) {
    if (!(ch.rho[k] <= ch.R[k])) ch.ordered = false;
    if (k < n && !(ch.R[k] < ch.rho[k + 1])) ch.ordered = false;
    ch.zero_free.emplace_back(ch.rho[k], ch.R[k]);
    if (k < n) ch.one_root.emplace_back(ch.R[k], ch.rho[k + 1]);
  }
  ch.all_real_simple = real_coefficients && ch.ordered;
  return ch;
}

AnnulusChart annulus_chart(const CoeffSeq<double>& c) {
  std::vector<double> d;
  for (double v : c.coeffs()) d.push_back(std::abs(v));
  return annulus_chart_from_moduli(d, true);
}

AnnulusChart annulus_chart(const std::vector<std::complex<double>>& c) {
  std::vector<double> d;
  bool real = true;
  for (const auto& v : c) {
    d.push_back(std::abs(v));
    real = real && v.imag() == 0;
  }
  return annulus_chart_from_moduli(d, real);
}

RealRootChart real_root_chart(const CoeffSeq<double>& c) {
  const std::size_t n = c.degree();
  if (n < 3) throw Error(Errc::DegreeTooSmall, "real-root chart needs N >= 3");
  const auto profile = beta_profile(c);
  for (std::size_t j = 1; j < n; ++j) {
    if (profile.beta(j) < 4 * (1 - kRatioSlack)) {
      throw Error(Errc::KurtzConditionFails, "beta_" + std::to_string(j) + " is below 4");
    }
  }

  RealRootChart ch;
  for (std::size_t k = 1; k < n; ++k) {
    const double centre = c[k] / (2 * c[k + 1]);
    const double s = std::sqrt(std::max(0.0, 1 - 4 / profile.beta(k)));
    ch.j_intervals.emplace_back(centre * (1 - s), centre * (1 + s));
  }
  for (std::size_t k = 1; k <= n; ++k) {
    ch.lower.push_back(k == 1 ? c[0] / c[1] : ch.j_intervals[k - 2].second);
    ch.upper.push_back(k == n ? c[n - 1] / c[n] : ch.j_intervals[k - 1].first);
  }

  ch.ordered = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(ch.lower[i] <= ch.upper[i])) ch.ordered = false;
    if (i + 1 < n && !(ch.upper[i] <= ch.lower[i + 1])) ch.ordered = false;
  }

  ch.witnesses_ok = true;
  for (std::size_t k = 0; k < n; ++k) {
    SignWitness w;
    w.k = k;
    w.x = k == 0 ? 0.0 : 0.5 * (ch.j_intervals[k - 1].first + ch.j_intervals[k - 1].second);
    w.value = eval(c, -w.x);
    w.expected_sign = k % 2 == 0 ? 1 : -1;
    w.ok = w.value * w.expected_sign > 0;
    ch.witnesses_ok = ch.witnesses_ok && w.ok;
    ch.witnesses.push_back(w);
  }
  return ch;
}

}  // namespace lcz
