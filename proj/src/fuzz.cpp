#include "hardylab/fuzz.hpp"

#include <algorithm>
#include <vector>

#include "hardylab/error.hpp"
#include "hardylab/operators.hpp"
#include "hardylab/parallel.hpp"
#include "hardylab/verify.hpp"

namespace hardylab {

FuzzRng::FuzzRng(std::uint64_t seed) : engine_(seed) {}

double FuzzRng::uniform(double lo, double hi) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

int FuzzRng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(engine_() % span);
}

namespace {

// Sorted breakpoints in (0.1, 10) with a relative gap of at least 1%.
std::vector<double> draw_breaks(FuzzRng& rng, int count) {
  for (;;) {
    std::vector<double> b(count);
    for (auto& x : b) x = rng.uniform(0.1, 10.0);
    std::sort(b.begin(), b.end());
    bool spaced = true;
    for (std::size_t i = 1; i < b.size(); ++i) spaced = spaced && b[i] > 1.01 * b[i - 1];
    if (spaced) return b;
  }
}

}  // namespace

PiecewiseFn fuzz_generate(const FuzzConfig& config) {
  FuzzRng rng(config.seed);
  const int n = config.n_pieces > 0 ? std::clamp(config.n_pieces, 2, 6) : rng.integer(2, 6);
  std::vector<double> breaks = draw_breaks(rng, n - 1);
  std::vector<AtomList> pieces(n);
  for (int i = 0; i < n; ++i) {
    std::pair<double, double> range{-0.9, 2.0};
    if (i == 0) range = config.exponent_range_zero;
    if (i == n - 1) range = config.exponent_range_tail;
    const double a = rng.uniform(range.first, range.second);
    const double c = rng.uniform(config.coef_range.first, config.coef_range.second);
    pieces[i] = {{c, a, 0}};
  }
  PiecewiseFn f(std::move(breaks), std::move(pieces), true);
  if (config.monotone) return dual_hardy(f);
  return f;
}

PiecewiseFn fuzz_stepped_phi(std::uint64_t seed) {
  FuzzRng rng(seed);
  const int steps = rng.integer(1, 5);
  std::vector<double> breaks = draw_breaks(rng, steps);
  std::vector<AtomList> pieces(steps + 1);
  double level = 0.0;
  for (int i = steps - 1; i >= 0; --i) {
    level += rng.uniform(0.1, 10.0);
    pieces[i] = {{level, 0.0, 0}};
  }
  return PiecewiseFn(std::move(breaks), std::move(pieces), true);
}

FuzzSummary fuzz_campaign(std::uint64_t seed, std::size_t count, bool monotone,
                          const std::vector<double>& ps, double tol) {
  enum class Outcome { Pass, Fail, Inconclusive, Error };
  const std::size_t n = count * ps.size();
  std::vector<Outcome> outcomes(n);
  parallel_for(n, [&](std::size_t i) {
    const std::uint64_t s = seed + i / ps.size();
    const double p = ps[i % ps.size()];
    try {
      const auto f = fuzz_generate({.seed = s, .monotone = monotone});
      Verdict v;
      if (monotone) {
        const auto r = verify_theorem2(f, p, tol);
        v = combine(r.verdict_lower, r.verdict_upper);
      } else {
        const auto sharp = verify_theorem1(f, p, tol);
        const auto crude = verify_crude(f, p, tol);
        v = combine(combine(sharp.verdict_lower, sharp.verdict_upper),
                    combine(crude.verdict_lower, crude.verdict_upper));
      }
      outcomes[i] = v == Verdict::Holds      ? Outcome::Pass
                    : v == Verdict::Violated ? Outcome::Fail
                                             : Outcome::Inconclusive;
    } catch (const Error&) {
      outcomes[i] = Outcome::Error;
    }
  });
  FuzzSummary summary;
  summary.checks = n;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t s = seed + i / ps.size();
    switch (outcomes[i]) {
      case Outcome::Pass: ++summary.pass; break;
      case Outcome::Fail:
        ++summary.fail;
        if (!summary.first_failing_seed) summary.first_failing_seed = s;
        break;
      case Outcome::Inconclusive:
      case Outcome::Error:
        ++(outcomes[i] == Outcome::Error ? summary.errors : summary.inconclusive);
        if (!summary.first_inconclusive_seed) summary.first_inconclusive_seed = s;
        break;
    }
  }
  return summary;
}

}  // namespace hardylab
