#pragma once

#include "lcz/complex.hpp"
#include "lcz/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace lcz {

/// Coefficients c_0..c_N of a real polynomial, lowest degree first.
///
/// The degree is honest (c_N != 0) and at least one. Values are immutable once
/// constructed; every operation below returns a fresh sequence.
template <class Real>
class CoeffSeq {
 public:
  explicit CoeffSeq(std::vector<Real> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 2) {
      throw Error(Errc::DegreeTooSmall, "a coefficient sequence needs degree >= 1");
    }
    if (coeffs_.back() == 0) {
      throw Error(Errc::ZeroCoefficient, "leading coefficient c_N is zero");
    }
  }

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  const Real& operator[](std::size_t j) const { return coeffs_[j]; }
  const std::vector<Real>& coeffs() const noexcept { return coeffs_; }
  std::span<const Real> view() const noexcept { return coeffs_; }

  friend bool operator==(const CoeffSeq& a, const CoeffSeq& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<Real> coeffs_;
};

/// The ratios beta_j = c_j^2 / (c_{j+1} c_{j-1}) for j = 1..N-1.
template <class Real>
struct BetaProfile {
  std::vector<Real> betas;  // betas[j-1] holds beta_j
  Real min_beta;
  std::size_t mode_index = 0;  // smallest index maximising |c_j|

  const Real& beta(std::size_t j) const { return betas.at(j - 1); }
};

template <class Real>
BetaProfile<Real> beta_profile(const CoeffSeq<Real>& c, bool use_moduli = false) {
  using std::abs;
  const std::size_t n = c.degree();
  if (n < 2) {
    throw Error(Errc::DegreeTooSmall, "beta profile needs N >= 2");
  }
  std::vector<Real> d(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] == 0) {
      throw Error(Errc::ZeroCoefficient, "c_" + std::to_string(j) + " is zero");
    }
    if (!use_moduli && c[j] < 0) {
      throw Error(Errc::NonPositiveCoefficient, "c_" + std::to_string(j) + " is negative");
    }
    d[j] = use_moduli ? Real(abs(c[j])) : c[j];
  }

  BetaProfile<Real> out;
  out.betas.reserve(n - 1);
  for (std::size_t j = 1; j < n; ++j) {
    out.betas.push_back(d[j] * d[j] / (d[j + 1] * d[j - 1]));
  }
  out.min_beta = *std::min_element(out.betas.begin(), out.betas.end());
  out.mode_index = static_cast<std::size_t>(std::max_element(d.begin(), d.end()) - d.begin());
  return out;
}

/// f(z) -> f(lambda z): c_j -> c_j lambda^j. Leaves every beta_j unchanged.
template <class Real>
CoeffSeq<Real> scale_reparam(const CoeffSeq<Real>& c, const Real& lambda) {
  if (!(lambda > 0)) {
    throw Error(Errc::DomainError, "scale must be positive");
  }
  std::vector<Real> out(c.size());
  Real power = 1;
  for (std::size_t j = 0; j < c.size(); ++j) {
    out[j] = c[j] * power;
    power *= lambda;
  }
  return CoeffSeq<Real>(std::move(out));
}

/// x^N f(1/x): the coefficients reversed.
template <class Real>
CoeffSeq<Real> opposite(const CoeffSeq<Real>& c) {
  if (c[0] == 0) {
    throw Error(Errc::ZeroConstantTerm, "the opposite of a polynomial with c_0 = 0 drops degree");
  }
  std::vector<Real> out(c.coeffs().rbegin(), c.coeffs().rend());
  return CoeffSeq<Real>(std::move(out));
}

template <class Real>
bool is_symmetric(const CoeffSeq<Real>& c, const Real& tol) {
  using std::abs;
  Real scale = 0;
  for (const auto& v : c.coeffs()) {
    if (abs(v) > scale) scale = abs(v);
  }
  const std::size_t n = c.degree();
  for (std::size_t j = 0; j <= n; ++j) {
    if (abs(c[j] - c[n - j]) > tol * scale) return false;
  }
  return true;
}

/// Horner evaluation at a complex point.
template <class Real>
complex_t<Real> eval(const CoeffSeq<Real>& c, const complex_t<Real>& z) {
  complex_t<Real> acc(c[c.degree()], Real(0));
  for (std::size_t j = c.degree(); j-- > 0;) {
    acc = acc * z + complex_t<Real>(c[j], Real(0));
  }
  return acc;
}

template <class Real>
Real eval(const CoeffSeq<Real>& c, const Real& x) {
  Real acc = c[c.degree()];
  for (std::size_t j = c.degree(); j-- > 0;) {
    acc = acc * x + c[j];
  }
  return acc;
}

/// Product of two coefficient sequences (plain convolution).
template <class Real>
CoeffSeq<Real> multiply(const CoeffSeq<Real>& a, const CoeffSeq<Real>& b) {
  std::vector<Real> out(a.size() + b.size() - 1, Real(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return CoeffSeq<Real>(std::move(out));
}

/// True when the sequence rises weakly to a single plateau and then falls.
template <class Real>
bool is_unimodal(std::span<const Real> seq) {
  std::size_t j = 1;
  while (j < seq.size() && !(seq[j] < seq[j - 1])) ++j;
  while (j < seq.size() && !(seq[j] > seq[j - 1])) ++j;
  return j == seq.size();
}

}  // namespace lcz
