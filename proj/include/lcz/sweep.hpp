#pragma once

#include "lcz/constant_ratio.hpp"
#include "lcz/sector.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lcz {

/// Runs f(0..count-1) on up to `threads` workers and returns the results in
/// index order, so the output never depends on scheduling.
template <class R, class F>
std::vector<R> parallel_map(std::size_t count, unsigned threads, F f);

struct SoundnessCase {
  std::size_t index = 0;
  int degree = 0;
  double min_beta = 0;
  double min_arg = 0;
  int attempts = 0;  // draws until one passed the ratio filter
  bool converged = false;
  bool ok = false;  // converged and min_arg > theta - 1e-9
};

struct SoundnessReport {
  double theta = 0;
  double beta_required = 0;
  std::uint64_t seed = 0;
  std::size_t failures = 0;
  std::size_t rejected = 0;  // draws discarded by the filter
  double worst_margin = 0;  // least min_arg - theta over the cases
  std::vector<SoundnessCase> cases;
};

/// Draws `count` random positive sequences of degree 6..40, perturbs their
/// log-coefficients uniformly, keeps the ones with min beta >= beta0(theta)
/// and checks every oracle root against the sector. Case i uses its own
/// generator seeded from (seed, i).
SoundnessReport soundness_sweep(double theta, std::size_t count, std::uint64_t seed, unsigned threads = 1);

struct ThetaRow {
  std::size_t index = 0;
  SectorThresholds thresholds;
  double theta_back = 0;  // Theta(beta0(theta))
};

/// beta0 over an evenly spaced grid of `steps` angles in [from, to].
std::vector<ThetaRow> theta_sweep(double from, double to, std::size_t steps, unsigned threads = 1);

struct BaseRow {
  std::size_t index = 0;
  std::string b;  // decimal, `digits` significant figures
  Classification cls;
};

/// classify() over an evenly spaced grid of bases. The bounds are decimal
/// strings so the grid is exact at the working precision.
std::vector<BaseRow> base_sweep(const std::string& from, const std::string& to, std::size_t steps, int degree,
                                int digits, unsigned threads = 1);

}  // namespace lcz

#include "lcz/sweep_impl.hpp"
