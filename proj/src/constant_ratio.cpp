#include "lcz/constant_ratio.hpp"

#include "lcz/roots.hpp"
#include "lcz/sector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lcz {

namespace {

constexpr int kSignGrid = 10000;
constexpr int kGuardDigits = 10;

// g(x) = f_{b,l}(-x) and the partial derivatives the Newton solves need.
template <class Real>
struct Derivs {
  Real g, gx, gxx, gxxx;
  Real gb, gxb, gxxb;
  Real scale_g, scale_gx;  // sums of |terms|, for relative residuals
};

template <class Real>
Derivs<Real> derivs(const Real& b, const Real& x, int l) {
  using std::abs;
  using std::pow;
  Derivs<Real> d{};
  d.g = d.gx = d.gxx = d.gxxx = d.gb = d.gxb = d.gxxb = d.scale_g = d.scale_gx = Real(0);
  // m[j] = (-x)^j
  std::vector<Real> m(static_cast<std::size_t>(l) + 1);
  m[0] = Real(1);
  for (int j = 1; j <= l; ++j) m[j] = m[j - 1] * (-x);
  for (int j = 0; j <= l; ++j) {
    const Real p = pow(b, Real(-j * (j + 1)));
    const Real q = Real(-j * (j + 1)) * p / b;  // dp/db
    d.g += p * m[j];
    d.gb += q * m[j];
    d.scale_g += abs(Real(p * m[j]));
    if (j >= 1) {
      d.gx += Real(-j) * p * m[j - 1];
      d.gxb += Real(-j) * q * m[j - 1];
      d.scale_gx += abs(Real(Real(j) * p * m[j - 1]));
    }
    if (j >= 2) {
      d.gxx += Real(j * (j - 1)) * p * m[j - 2];
      d.gxxb += Real(j * (j - 1)) * q * m[j - 2];
    }
    if (j >= 3) d.gxxx += Real(-j * (j - 1) * (j - 2)) * p * m[j - 3];
  }
  return d;
}

// g and g' by Horner from precomputed coefficients p_j = b^{-j(j+1)}.
template <class Real>
std::pair<Real, Real> g_and_gx(const std::vector<Real>& p, const Real& x) {
  const Real y = -x;
  Real g = p.back();
  Real dg(0);
  for (std::size_t j = p.size() - 1; j-- > 0;) {
    dg = dg * y + g;
    g = g * y + p[j];
  }
  return {g, Real(-dg)};
}

template <class Real>
std::vector<Real> powers(const Real& b, int l) {
  using std::pow;
  std::vector<Real> p;
  for (int j = 0; j <= l; ++j) p.push_back(Real(pow(b, Real(-j * (j + 1)))));
  return p;
}

// Golden-section search for the minimum of g on [lo, hi].
template <class Real>
Real golden_min(const std::vector<Real>& p, Real lo, Real hi, int iters) {
  using std::sqrt;
  const Real phi = (sqrt(Real(5)) - 1) / 2;
  Real a = hi - phi * (hi - lo);
  Real c = lo + phi * (hi - lo);
  Real fa = g_and_gx(p, a).first;
  Real fc = g_and_gx(p, c).first;
  for (int i = 0; i < iters; ++i) {
    if (fa < fc) {
      hi = c;
      c = a;
      fc = fa;
      a = hi - phi * (hi - lo);
      fa = g_and_gx(p, a).first;
    } else {
      lo = a;
      a = c;
      fa = fc;
      c = lo + phi * (hi - lo);
      fc = g_and_gx(p, c).first;
    }
  }
  return (lo + hi) / 2;
}

// Root of g' in [lo, hi] where g' changes sign.
template <class Real>
Real bisect_gx(const std::vector<Real>& p, Real lo, Real hi, int iters) {
  Real flo = g_and_gx(p, lo).second;
  for (int i = 0; i < iters; ++i) {
    const Real mid = (lo + hi) / 2;
    const Real fm = g_and_gx(p, mid).second;
    if (fm == 0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

struct MinInfo {
  double value;
  double x;
};

// Minimum of f_{b,l}(-x) over (0, b^4) in double precision: grid, then refine.
MinInfo double_min(double b, int l) {
  const auto p = powers(b, l);
  const double top = std::pow(b, 4);
  constexpr int kGrid = 4000;
  int best = 1;
  double best_v = g_and_gx(p, top / kGrid).first;
  for (int i = 2; i < kGrid; ++i) {
    const double v = g_and_gx(p, top * i / kGrid).first;
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  const double x = golden_min(p, top * (best - 1) / kGrid, top * std::min(best + 1, kGrid) / kGrid, 80);
  const double v = g_and_gx(p, x).first;
  return v < best_v ? MinInfo{v, x} : MinInfo{best_v, top * best / kGrid};
}

struct Seed {
  double b;
  double x;
};

// Scans b upward from sqrt(3) for the first place where the minimum over
// (0, b^4) stops being positive, then bisects that crossing.
Seed find_seed(int l) {
  const double lo = std::sqrt(3.0);
  const double hi = 2.05;
  constexpr int kSteps = 400;
  double prev_b = lo;
  bool prev_pos = double_min(lo, l).value > 0;
  // Already nonpositive at sqrt(3): the crossing is the endpoint itself.
  if (!prev_pos) return {lo, double_min(lo, l).x};
  for (int i = 1; i <= kSteps; ++i) {
    const double b = lo + (hi - lo) * i / kSteps;
    const bool pos = double_min(b, l).value > 0;
    if (prev_pos && !pos) {
      double a = prev_b;
      double c = b;
      for (int k = 0; k < 60; ++k) {
        const double mid = 0.5 * (a + c);
        if (!(mid > a && mid < c)) break;
        if (double_min(mid, l).value > 0) {
          a = mid;
        } else {
          c = mid;
        }
      }
      return {c, double_min(c, l).x};
    }
    prev_b = b;
    prev_pos = pos;
  }
  throw Error(Errc::SeedNotBracketed, "no sign flip of the minimum for l = " + std::to_string(l));
}

HpReal sqrt3() { return sqrt(HpReal(3)); }

void check_b(const HpReal& b) {
  if (!(b > sqrt3())) throw Error(Errc::DomainError, "the sign tests need b > sqrt(3)");
}

}  // namespace

const char* to_string(SignOutcome s) noexcept {
  switch (s) {
    case SignOutcome::EvenWitnessFound: return "EvenWitnessFound";
    case SignOutcome::OddNonnegative: return "OddNonnegative";
    case SignOutcome::Inconclusive: return "Inconclusive";
  }
  return "?";
}

const char* to_string(RootClass c) noexcept {
  switch (c) {
    case RootClass::AllRealSimple: return "AllRealSimple";
    case RootClass::NonrealRoots: return "NonrealRoots";
    case RootClass::Unknown: return "Unknown";
  }
  return "?";
}

HpReal functional_equation_residual(const HpReal& b, const HpReal& x, int degree) {
  if (!(b > 1)) throw Error(Errc::DomainError, "base must exceed 1");
  const auto c = fb_coeffs(b, degree);
  const HpReal y = x / (b * b);
  return abs(eval(c, x) - 1 - y * eval(c, y));
}

SignTestResult sign_test(const HpReal& b_in, int l, int digits) {
  if (l < 2) throw Error(Errc::DomainError, "l must be at least 2");
  PrecisionScope scope(digits);
  HpReal b = b_in;
  b.precision(static_cast<unsigned>(digits));
  check_b(b);
  const auto p = powers(b, l);
  const HpReal top = pow(b, 4);

  SignTestResult out;
  out.l = l;
  if (l % 2 == 0) {
    // Grid on (1, b^4), then golden section and a few Newton steps on g'.
    const HpReal step = (top - 1) / (kSignGrid + 1);
    int best = 1;
    HpReal best_v = g_and_gx(p, HpReal(1 + step)).first;
    for (int i = 2; i <= kSignGrid; ++i) {
      const HpReal v = g_and_gx(p, HpReal(1 + step * i)).first;
      if (v < best_v) {
        best_v = v;
        best = i;
      }
    }
    HpReal x = golden_min(p, HpReal(1 + step * (best - 1)), HpReal(1 + step * (best + 1)), 80);
    const HpReal lo = 1 + step * (best - 1);
    const HpReal hi = 1 + step * (best + 1);
    for (int i = 0; i < 30; ++i) {
      const auto d = derivs(b, x, l);
      if (d.gxx <= 0) break;
      const HpReal next = x - d.gx / d.gxx;
      if (!(next > lo && next < hi)) break;
      if (next == x) break;
      x = next;
    }
    HpReal v = g_and_gx(p, x).first;
    if (best_v < v) {
      v = best_v;
      x = 1 + step * best;
    }
    out.x = x;
    out.min_value = v;
    out.outcome = v <= pow10_neg(digits - 3) ? SignOutcome::EvenWitnessFound : SignOutcome::Inconclusive;
    return out;
  }

  // Odd l: every critical point in (0, b^4) plus both ends.
  const HpReal step = top / (kSignGrid + 1);
  HpReal min_v = 1;  // g(0)
  HpReal min_x = 0;
  const HpReal end_v = g_and_gx(p, top).first;
  if (end_v < min_v) {
    min_v = end_v;
    min_x = top;
  }
  HpReal prev_x = 0;
  HpReal prev_d = g_and_gx(p, prev_x).second;
  for (int i = 1; i <= kSignGrid + 1; ++i) {
    const HpReal xi = step * i;
    const HpReal di = g_and_gx(p, xi).second;
    if (di == 0 || (di < 0) != (prev_d < 0)) {
      const HpReal xc = di == 0 ? xi : bisect_gx(p, prev_x, xi, 4 * digits);
      const HpReal v = g_and_gx(p, xc).first;
      if (v < min_v) {
        min_v = v;
        min_x = xc;
      }
    }
    prev_x = xi;
    prev_d = di;
  }
  out.x = min_x;
  out.min_value = min_v;
  out.outcome = min_v >= 0 ? SignOutcome::OddNonnegative : SignOutcome::Inconclusive;
  return out;
}

CriticalBase critical_base(int l, int digits) {
  if (l < 2 || l > 12) throw Error(Errc::DomainError, "l must lie in [2, 12]");
  if (digits < 30) throw Error(Errc::DomainError, "critical bases need at least 30 digits");

  const Seed seed = find_seed(l);
  CriticalBase out;
  out.l = l;
  out.even = l % 2 == 0;
  out.seed_b = seed.b;
  out.seed_x = seed.x;
  out.digits = digits;

  // A triple zero makes the (g, g') Jacobian singular; detect it at the seed.
  {
    const auto d = derivs(seed.b, seed.x, l);
    double curvature_scale = 0;
    for (int j = 2; j <= l; ++j) {
      curvature_scale += j * (j - 1) * std::pow(seed.b, -j * (j + 1)) * std::pow(seed.x, j);
    }
    out.triple = std::abs(d.gxx) * seed.x * seed.x < 1e-4 * curvature_scale;
  }

  PrecisionScope scope(digits + kGuardDigits);
  HpReal b(seed.b);
  HpReal x(seed.x);
  const HpReal tol = pow10_neg(digits + 5);
  bool converged = false;
  for (int it = 1; it <= 100 && !converged; ++it) {
    const auto d = derivs(b, x, l);
    HpReal f1, f2, j11, j12, j21, j22;
    if (out.triple) {
      f1 = d.gx, f2 = d.gxx, j11 = d.gxb, j12 = d.gxx, j21 = d.gxxb, j22 = d.gxxx;
    } else {
      f1 = d.g, f2 = d.gx, j11 = d.gb, j12 = d.gx, j21 = d.gxb, j22 = d.gxx;
    }
    const HpReal det = j11 * j22 - j12 * j21;
    if (det == 0) break;
    const HpReal db = (f1 * j22 - f2 * j12) / det;
    const HpReal dx = (j11 * f2 - j21 * f1) / det;
    b -= db;
    x -= dx;
    out.iterations = it;
    converged = abs(db) <= tol * abs(b) && abs(dx) <= tol * abs(x);
  }
  if (!converged) {
    throw Error(Errc::NoConvergence, "Newton did not converge for l = " + std::to_string(l));
  }
  const HpReal top = pow(b, 4);
  if (!(x > 0 && x <= top * (1 + pow10_neg(digits / 2)))) {
    throw Error(Errc::NoConvergence, "double zero left the window (0, b^4) for l = " + std::to_string(l));
  }
  const auto d = derivs(b, x, l);
  out.b0 = b;
  out.x0 = x;
  out.residual_f = abs(d.g) / d.scale_g;
  out.residual_df = abs(d.gx) / d.scale_gx;
  return out;
}

B0Bracket squeeze_b0(int l_max, int digits) {
  if (l_max < 5 || l_max > 12) throw Error(Errc::DomainError, "l_max must lie in [5, 12]");
  PrecisionScope scope(digits + kGuardDigits);
  B0Bracket out;
  for (int l = 2; l <= l_max; ++l) {
    out.bases.push_back(critical_base(l, digits));
    const auto& cb = out.bases.back();
    if (cb.even) {
      if (out.l_upper == 0 || cb.b0 < out.upper) {
        out.upper = cb.b0;
        out.l_upper = l;
      }
    } else if (out.l_lower == 0 || cb.b0 > out.lower) {
      out.lower = cb.b0;
      out.l_lower = l;
    }
  }
  out.width = out.upper - out.lower;
  return out;
}

Classification classify(const HpReal& b, int degree, int digits) {
  if (degree < 4) throw Error(Errc::DegreeTooSmall, "classification needs N >= 4");
  PrecisionScope scope(digits);
  check_b(b);
  Classification out;
  for (int l = 2; 2 * l <= degree; ++l) {
    const auto st = sign_test(b, l, digits);
    if (l % 2 == 0) {
      if (st.outcome == SignOutcome::EvenWitnessFound) {
        out.kind = RootClass::AllRealSimple;
        out.l_witness = l;
        return out;
      }
    } else if (st.outcome == SignOutcome::OddNonnegative && l <= 12) {
      const auto cb = critical_base(l, std::max(digits, 30));
      if (b < cb.b0 - pow10_neg(digits - 3)) {
        out.kind = RootClass::NonrealRoots;
        out.l_witness = l;
        return out;
      }
    }
  }
  return out;
}

ParadoxReport paradox_demo(int digits) {
  ParadoxReport rep;
  rep.theta = 0.99 * std::numbers::pi;
  const auto c = sharpness_family(rep.theta, SharpBase::G, 100, 8);
  rep.coeffs = c.coeffs();
  rep.min_beta = beta_profile(c).min_beta;
  const auto rs = all_roots(c);
  for (const auto& z : rs.roots) {
    if (std::abs(z.imag()) > 1e-9 * std::max(1.0, std::abs(z))) ++rep.nonreal_count;
  }
  rep.min_arg = rs.min_arg;

  PrecisionScope scope(digits);
  rep.digits = digits;
  rep.degree = 30;
  const HpReal b = parse_hp("1.8");
  const auto f = fb_coeffs(b, rep.degree);
  rep.beta = b * b;
  const auto profile = beta_profile(f);
  rep.max_beta_deviation = 0;
  for (const auto& v : profile.betas) {
    const HpReal dev = abs(v - rep.beta);
    if (dev > rep.max_beta_deviation) rep.max_beta_deviation = dev;
  }
  const auto hp = all_roots(f);
  rep.max_relative_imag = 0;
  for (const auto& z : hp.roots) {
    const HpReal r = abs(z.imag()) / abs(z);
    if (r > rep.max_relative_imag) rep.max_relative_imag = r;
  }
  rep.all_real = hp.converged && rep.max_relative_imag < pow10_neg(20);
  return rep;
}

}  // namespace lcz
