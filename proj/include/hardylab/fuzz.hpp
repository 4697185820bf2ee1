#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "hardylab/funcmodel.hpp"
#include "hardylab/norms.hpp"

namespace hardylab {

/// Reproducible random test functions. The generator is std::mt19937_64
/// (its output sequence is fixed by the C++ standard) and uniforms are formed
/// from the top 53 bits, so corpora reproduce across platforms.
struct FuzzConfig {
  std::uint64_t seed = 0;
  /// Number of pieces; 0 draws it from [2, 6]. Values below 2 are raised to 2
  /// because a single power on (0, inf) has no finite Hardy norm.
  int n_pieces = 0;
  std::pair<double, double> exponent_range_zero{0.0, 2.0};
  std::pair<double, double> exponent_range_tail{-3.0, -1.1};
  std::pair<double, double> coef_range{0.1, 10.0};
  /// Generate a nonincreasing, continuous phi with phi(inf) = 0 instead of a
  /// general nonnegative f.
  bool monotone = false;
};

PiecewiseFn fuzz_generate(const FuzzConfig& config);

/// Nonincreasing step function with 1 to 5 positive steps and compact support.
PiecewiseFn fuzz_stepped_phi(std::uint64_t seed);

/// Outcome counts of a fuzz campaign. One check is one (seed, p) pair; it
/// passes when every verdict Holds. Seeds that raise count as errors.
struct FuzzSummary {
  std::size_t checks = 0;
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t inconclusive = 0;
  std::size_t errors = 0;
  std::optional<std::uint64_t> first_failing_seed;
  std::optional<std::uint64_t> first_inconclusive_seed;
};

/// Seeds seed, ..., seed + count - 1. General inputs are checked against the
/// sharp and crude constants, monotone ones against the phi form. Runs in
/// parallel; the result does not depend on the thread count.
FuzzSummary fuzz_campaign(std::uint64_t seed, std::size_t count, bool monotone,
                          const std::vector<double>& ps, double tol = kDefaultTol);

/// The portable uniform generator behind the fuzzers.
class FuzzRng {
 public:
  explicit FuzzRng(std::uint64_t seed);
  double uniform(double lo, double hi);
  int integer(int lo, int hi);  // inclusive

 private:
  std::mt19937_64 engine_;
};

}  // namespace hardylab
