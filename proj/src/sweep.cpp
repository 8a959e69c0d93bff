#include "lcz/sweep.hpp"

#include "lcz/roots.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace lcz {

namespace {

constexpr double kSectorTol = 1e-9;
constexpr double kPerturb = 0.05;  // half-width of the log-uniform factor
constexpr int kMaxAttempts = 1000;

SoundnessCase one_case(double theta, double need, std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<int> deg(6, 40);
  std::uniform_real_distribution<double> jitter(-kPerturb, kPerturb);

  SoundnessCase out;
  out.index = index;
  for (int attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    out.degree = deg(rng);
    // A perturbation moves each log beta by at most 4 kPerturb, so start a
    // little above the threshold and let the filter decide.
    const auto base = random_ratio_bounded(rng, out.degree, need * std::exp(2 * kPerturb), 0.5);
    std::vector<double> c;
    for (double v : base.coeffs()) c.push_back(v * std::exp(jitter(rng)));
    const CoeffSeq<double> seq_c(std::move(c));
    const auto profile = beta_profile(seq_c);
    if (profile.min_beta < need) continue;
    out.attempts = attempt;
    out.min_beta = profile.min_beta;
    const auto rs = all_roots(seq_c);
    out.converged = rs.converged;
    out.min_arg = rs.min_arg;
    out.ok = rs.converged && rs.min_arg > theta - kSectorTol;
    return out;
  }
  throw Error(Errc::NoConvergence, "no draw passed the ratio filter");
}

}  // namespace

SoundnessReport soundness_sweep(double theta, std::size_t count, std::uint64_t seed, unsigned threads) {
  SoundnessReport rep;
  rep.theta = theta;
  rep.seed = seed;
  rep.beta_required = beta0(theta).beta0;
  rep.cases = parallel_map<SoundnessCase>(
      count, threads, [&](std::size_t i) { return one_case(theta, rep.beta_required, seed, i); });
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& c : rep.cases) {
    if (!c.ok) ++rep.failures;
    rep.rejected += static_cast<std::size_t>(c.attempts - 1);
    rep.worst_margin = std::min(rep.worst_margin, c.min_arg - theta);
  }
  return rep;
}

std::vector<ThetaRow> theta_sweep(double from, double to, std::size_t steps, unsigned threads) {
  if (steps < 2) throw Error(Errc::DomainError, "a grid needs at least two points");
  return parallel_map<ThetaRow>(steps, threads, [&](std::size_t i) {
    ThetaRow row;
    row.index = i;
    const double theta = from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
    row.thresholds = beta0(theta);
    row.theta_back = theta_of_beta(row.thresholds.beta0);
    return row;
  });
}

std::vector<BaseRow> base_sweep(const std::string& from, const std::string& to, std::size_t steps, int degree,
                                int digits, unsigned threads) {
  if (steps < 2) throw Error(Errc::DomainError, "a grid needs at least two points");
  return parallel_map<BaseRow>(steps, threads, [&](std::size_t i) {
    // The precision is process-wide, so each row holds the scope for its whole run.
    PrecisionScope scope(digits + 10);
    const HpReal lo = parse_hp(from);
    const HpReal hi = parse_hp(to);
    const HpReal b = lo + (hi - lo) * static_cast<long>(i) / static_cast<long>(steps - 1);
    BaseRow row;
    row.index = i;
    row.b = to_decimal(b, digits);
    row.cls = classify(b, degree, digits);
    return row;
  });
}

}  // namespace lcz
