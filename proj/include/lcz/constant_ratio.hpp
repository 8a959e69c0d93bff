#pragma once

#include "lcz/poly.hpp"
#include "lcz/precision.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lcz {

/// f_{b,N} = sum_{j=0}^N x^j b^{-j(j+1)}; every ratio beta_j equals b^2.
template <class Real>
CoeffSeq<Real> fb_coeffs(const Real& b, int degree) {
  using std::pow;
  if (!(b > 1)) throw Error(Errc::DomainError, "base must exceed 1");
  if (degree < 1) throw Error(Errc::DegreeTooSmall, "degree must be at least 1");
  std::vector<Real> c;
  c.reserve(static_cast<std::size_t>(degree) + 1);
  for (int j = 0; j <= degree; ++j) c.push_back(Real(pow(b, Real(-j * (j + 1)))));
  return CoeffSeq<Real>(std::move(c));
}

/// |f_{b,N}(x) - 1 - (x/b^2) f_{b,N}(x/b^2)|. For the untruncated series this
/// vanishes identically; at degree N it is the single dropped term
/// x^{N+1} b^{-(N+1)(N+2)} plus rounding. Evaluated at the working precision.
HpReal functional_equation_residual(const HpReal& b, const HpReal& x, int degree);

enum class SignOutcome { EvenWitnessFound, OddNonnegative, Inconclusive };
const char* to_string(SignOutcome s) noexcept;

struct SignTestResult {
  SignOutcome outcome = SignOutcome::Inconclusive;
  int l = 0;
  // Even l: the witness (or best point). Odd l: where the minimum was found.
  HpReal x;
  HpReal min_value;
};

/// Sign test on g(x) = f_{b,l}(-x) over (0, b^4). Even l: look for a point of
/// (1, b^4) with g <= 10^{3-digits} (grid, then refinement of the minimum).
/// Odd l: locate every critical point from sign changes of g' and require the
/// minimum, endpoints included, to be >= 0. Needs b > sqrt(3).
SignTestResult sign_test(const HpReal& b, int l, int digits = kDefaultDigits);

struct CriticalBase {
  int l = 0;
  HpReal b0;
  HpReal x0;  // g(x0) = g'(x0) = 0 with g(x) = f_{b0,l}(-x)
  bool even = true;  // even l bounds the limit from above, odd from below
  bool triple = false;  // solved on (g', g'') because the root is triple
  HpReal residual_f;
  HpReal residual_df;
  double seed_b = 0;
  double seed_x = 0;
  int iterations = 0;
  int digits = 0;
};

/// The base b0(l) at which f_{b,l}(-x) first acquires a multiple zero in
/// (0, b^4), by two-dimensional Newton at the requested precision from a
/// double-precision scan seed. 2 <= l <= 12, digits >= 30.
CriticalBase critical_base(int l, int digits = kDefaultDigits);

struct B0Bracket {
  HpReal lower;  // max of b0(l) over odd l
  HpReal upper;  // min of b0(l) over even l
  HpReal width;
  int l_lower = 0;
  int l_upper = 0;
  std::vector<CriticalBase> bases;  // l = 2..l_max
};

/// Brackets the limiting critical base between the odd-l and even-l values.
B0Bracket squeeze_b0(int l_max, int digits = kDefaultDigits);

enum class RootClass { AllRealSimple, NonrealRoots, Unknown };
const char* to_string(RootClass c) noexcept;

struct Classification {
  RootClass kind = RootClass::Unknown;
  std::optional<int> l_witness;
};

/// Decides real-rootedness of f_{b,N} from the sign tests at l = 2..N/2.
/// An odd l only counts when b is below b0(l) by more than 10^{3-digits}.
Classification classify(const HpReal& b, int degree, int digits = kDefaultDigits);

struct ParadoxReport {
  // Part one: a polynomial whose ratios all exceed 3.99 but with nonreal zeros.
  double theta = 0;
  std::vector<double> coeffs;
  double min_beta = 0;
  int nonreal_count = 0;
  double min_arg = 0;
  // Part two: f_{1.8,30}, every ratio 3.24 and every zero real.
  int degree = 0;
  HpReal beta;
  HpReal max_beta_deviation;
  bool all_real = false;
  HpReal max_relative_imag;
  int digits = 0;
};

ParadoxReport paradox_demo(int digits = kDefaultDigits);

}  // namespace lcz
