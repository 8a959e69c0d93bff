#pragma once

#include "lcz/complex.hpp"
#include "lcz/error.hpp"
#include "lcz/poly.hpp"
#include "lcz/precision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

namespace lcz {

/// Every root of a polynomial, with multiplicity, plus convergence diagnostics.
template <class Real>
struct RootSet {
  std::vector<complex_t<Real>> roots;
  // Largest |f(z)| / sum |c_j||z|^j over the reported roots.
  Real residual_bound{};
  Real min_arg{};
  bool converged = false;
  int iterations = 0;
};

template <class Real>
int working_digits() {
  if constexpr (std::is_same_v<Real, double>) {
    return kDoubleDigits;
  } else {
    return static_cast<int>(Real::default_precision());
  }
}

namespace detail {

template <class Real>
Real unit_roundoff() {
  if constexpr (std::is_same_v<Real, double>) {
    return std::numeric_limits<double>::epsilon() / 2;
  } else {
    return pow(Real(10), -working_digits<Real>());
  }
}

template <class Real>
double to_double(const Real& x) {
  return static_cast<double>(x);
}

template <class Real>
Real pi() {
  if constexpr (std::is_same_v<Real, double>) {
    return std::numbers::pi;
  } else {
    return Real(acos(Real(-1)));
  }
}

// Newton step p/p' together with the backward-error ratio |p| / sum |a_j||z|^j.
// Outside the unit disc the reversed polynomial is used so nothing overflows.
template <class Real>
struct NewtonStep {
  complex_t<Real> step;
  Real backward;
  bool exact_root = false;
};

template <class Real>
NewtonStep<Real> newton_step(const std::vector<complex_t<Real>>& a, const complex_t<Real>& z) {
  using C = complex_t<Real>;
  using std::abs;
  const std::size_t n = a.size() - 1;
  const bool outside = abs(z) > Real(1);
  const C w = outside ? C(Real(1)) / z : z;
  const Real aw = abs(w);

  C p = outside ? a[0] : a[n];
  C dp(Real(0));
  Real mag = abs(p);
  for (std::size_t i = 1; i <= n; ++i) {
    const C& coef = outside ? a[i] : a[n - i];
    dp = dp * w + p;
    p = p * w + coef;
    mag = mag * aw + abs(coef);
  }

  NewtonStep<Real> out;
  out.backward = mag > 0 ? Real(abs(p) / mag) : Real(0);
  if (abs(p) == 0) {
    out.step = C(Real(0));
    out.exact_root = true;
    return out;
  }
  if (!outside) {
    out.step = p / dp;
    return out;
  }
  // p(z) = z^n q(w) with w = 1/z gives p/p' = 1 / (w (n - w q'/q)).
  const C ratio = dp / p;
  out.step = C(Real(1)) / (w * (C(Real(static_cast<double>(n))) - w * ratio));
  return out;
}

// Starting points from the upper convex hull of (j, log|a_j|): each hull edge
// of width k contributes k points on a circle of the edge's slope radius.
template <class Real>
std::vector<complex_t<Real>> initial_points(const std::vector<complex_t<Real>>& a) {
  using std::abs;
  const std::size_t n = a.size() - 1;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t j = 0; j <= n; ++j) {
    const Real m = abs(a[j]);
    if (m == 0) continue;
    pts.emplace_back(static_cast<double>(j), to_double(Real(log(m))));
  }
  std::vector<std::pair<double, double>> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2) {
      const auto& o = hull[hull.size() - 2];
      const auto& q = hull.back();
      const double cross = (q.first - o.first) * (p.second - o.second) -
                           (q.second - o.second) * (p.first - o.first);
      if (cross < 0) break;
      hull.pop_back();
    }
    hull.push_back(p);
  }

  constexpr double kOffset = 0.7;
  std::vector<complex_t<Real>> z;
  z.reserve(n);
  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    const auto i = static_cast<std::size_t>(hull[e].first);
    const auto k = static_cast<std::size_t>(hull[e + 1].first);
    const double width = static_cast<double>(k - i);
    const double log_radius = (hull[e].second - hull[e + 1].second) / width;
    const Real radius = exp(Real(log_radius));
    for (std::size_t m = 0; m < k - i; ++m) {
      const double angle = 2 * std::numbers::pi * (static_cast<double>(m) / width +
                                                   static_cast<double>(i) / static_cast<double>(n)) +
                           kOffset;
      z.emplace_back(radius * Real(std::cos(angle)), radius * Real(std::sin(angle)));
    }
  }
  return z;
}

template <class Real>
void merge_clusters(std::vector<complex_t<Real>>& z, const Real& tol) {
  using std::abs;
  std::vector<std::size_t> parent(z.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const Real scale = std::max(Real(1), Real(abs(z[i])));
      if (abs(z[i] - z[j]) < tol * scale) parent[find(j)] = find(i);
    }
  }
  std::vector<complex_t<Real>> sum(z.size(), complex_t<Real>(Real(0)));
  std::vector<int> count(z.size(), 0);
  for (std::size_t i = 0; i < z.size(); ++i) {
    sum[find(i)] += z[i];
    ++count[find(i)];
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    const std::size_t r = find(i);
    if (count[r] > 1) z[i] = sum[r] / complex_t<Real>(Real(count[r]));
  }
}

}  // namespace detail

/// All roots of sum a_j z^j by Aberth-Ehrlich simultaneous iteration at the
/// current working precision. Exact zero roots are deflated first. On
/// non-convergence the last iterate is returned with converged = false.
template <class Real>
RootSet<Real> all_roots(std::vector<complex_t<Real>> a) {
  using C = complex_t<Real>;
  using std::abs;
  while (!a.empty() && abs(a.back()) == 0) a.pop_back();
  if (a.size() < 2) {
    throw Error(Errc::DegreeTooSmall, "root finding needs degree >= 1");
  }

  RootSet<Real> out;
  std::size_t leading_zeros = 0;
  while (abs(a[leading_zeros]) == 0) ++leading_zeros;
  out.roots.assign(leading_zeros, C(Real(0)));
  a.erase(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(leading_zeros));

  const std::size_t n = a.size() - 1;
  const int digits = working_digits<Real>();
  const Real u = detail::unit_roundoff<Real>();
  const Real rel_tol = pow(Real(10), 2 - digits);
  const Real backward_tol = Real(8 * static_cast<double>(n + 1)) * u;

  std::vector<C> z;
  std::vector<bool> done(n, false);
  if (n == 1) {
    z.push_back(-a[0] / a[1]);
    std::fill(done.begin(), done.end(), true);
  } else if (n > 0) {
    z = detail::initial_points<Real>(a);
  }

  const int max_iter = 500 + 10 * static_cast<int>(n);
  int iter = 0;
  while (n > 1 && iter < max_iter && !std::all_of(done.begin(), done.end(), [](bool d) { return d; })) {
    ++iter;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const auto ns = detail::newton_step<Real>(a, z[i]);
      if (ns.exact_root || ns.backward <= backward_tol) {
        done[i] = true;
        continue;
      }
      C sum(Real(0));
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) sum += C(Real(1)) / (z[i] - z[j]);
      }
      const C corr = ns.step / (C(Real(1)) - ns.step * sum);
      z[i] -= corr;
      if (abs(corr) <= rel_tol * abs(z[i])) done[i] = true;
    }
  }
  out.iterations = iter;
  out.converged = std::all_of(done.begin(), done.end(), [](bool d) { return d; });

  detail::merge_clusters<Real>(z, pow(Real(10), -Real(digits) / 2));
  out.roots.insert(out.roots.end(), z.begin(), z.end());

  out.residual_bound = Real(0);
  for (const auto& r : z) {
    const Real b = detail::newton_step<Real>(a, r).backward;
    if (b > out.residual_bound) out.residual_bound = b;
  }
  out.min_arg = detail::pi<Real>();
  for (const auto& r : out.roots) {
    using std::atan2;
    const Real t = abs(Real(atan2(r.imag(), r.real())));
    if (t < out.min_arg) out.min_arg = t;
  }
  return out;
}

template <class Real>
RootSet<Real> all_roots(const CoeffSeq<Real>& c) {
  std::vector<complex_t<Real>> a;
  a.reserve(c.size());
  for (const auto& v : c.coeffs()) a.emplace_back(v, Real(0));
  return all_roots<Real>(std::move(a));
}

/// T(f): the smallest |arg z| over the roots.
template <class Real>
Real min_arg(const RootSet<Real>& rs) {
  return rs.min_arg;
}

/// Number of roots with r_in < |z| < r_out. A root within 1e-9 (relative) of
/// either circle makes the count ambiguous and is reported as an error.
template <class Real>
int count_in_annulus(const RootSet<Real>& rs, const Real& r_in, const Real& r_out) {
  using std::abs;
  if (!(r_in < r_out)) {
    throw Error(Errc::DomainError, "annulus needs r_in < r_out");
  }
  const Real eps(1e-9);
  int count = 0;
  for (const auto& z : rs.roots) {
    const Real m = abs(z);
    if (abs(m - r_in) <= eps * r_in || (std::isfinite(detail::to_double(r_out)) && abs(m - r_out) <= eps * r_out)) {
      throw Error(Errc::AmbiguousCount, "a root lies on an annulus boundary");
    }
    if (m > r_in && m < r_out) ++count;
  }
  return count;
}

/// Number of roots with r_in <= |z| <= r_out, with the same boundary guard.
template <class Real>
int count_in_closed_annulus(const RootSet<Real>& rs, const Real& r_in, const Real& r_out) {
  using std::abs;
  if (r_out < r_in) {
    throw Error(Errc::DomainError, "annulus needs r_in <= r_out");
  }
  const Real eps(1e-9);
  int count = 0;
  for (const auto& z : rs.roots) {
    const Real m = abs(z);
    if ((r_in > 0 && abs(m - r_in) <= eps * r_in) ||
        (std::isfinite(detail::to_double(r_out)) && abs(m - r_out) <= eps * r_out)) {
      throw Error(Errc::AmbiguousCount, "a root lies on an annulus boundary");
    }
    if (m >= r_in && m <= r_out) ++count;
  }
  return count;
}

template <class Real>
bool all_real(const RootSet<Real>& rs, const Real& tol) {
  using std::abs;
  return std::all_of(rs.roots.begin(), rs.roots.end(), [&](const complex_t<Real>& z) {
    return abs(z.imag()) <= tol * std::max(Real(1), Real(abs(z)));
  });
}

/// Smallest pairwise distance between roots, relative to max(1, |z|).
template <class Real>
Real min_relative_separation(const RootSet<Real>& rs) {
  using std::abs;
  Real best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rs.roots.size(); ++i) {
    for (std::size_t j = i + 1; j < rs.roots.size(); ++j) {
      const Real scale = std::max(Real(1), Real(abs(rs.roots[i])));
      const Real d = abs(rs.roots[i] - rs.roots[j]) / scale;
      if (d < best) best = d;
    }
  }
  return best;
}

/// Roots sorted by modulus, ascending.
template <class C>
std::vector<C> by_modulus(std::vector<C> z) {
  using std::abs;
  std::sort(z.begin(), z.end(), [](const auto& x, const auto& y) { return abs(x) < abs(y); });
  return z;
}

}  // namespace lcz
