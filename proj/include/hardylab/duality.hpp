#pragma once

// The transform between a nonincreasing phi and its density f(u) = u|phi'(u)|,
// under which H phi - phi = Hf and phi = H*f, and the mollifiers
// phi_n(x) = n int_x^{x+1/n} phi.

#include "hardylab/funcmodel.hpp"
#include "hardylab/norms.hpp"
#include "hardylab/verify.hpp"

namespace hardylab {

/// Relative size of a jump at a breakpoint that counts as a discontinuity.
inline constexpr double kJumpTol = 1e-12;

/// f(u) = -u phi'(u) on the partition of phi. Throws NotMonotone,
/// NegativityDetected, JumpDiscontinuity, NoDecayAtInfinity.
PiecewiseFn phi_to_f(const PiecewiseFn& phi);

/// phi = H*f. Throws DivergentAtInfinity.
PiecewiseFn f_to_phi(const PiecewiseFn& f);

/// Index of the first breakpoint where phi jumps, or -1.
long find_jump(const PiecewiseFn& phi);

/// True when phi(x) -> 0 as x -> inf.
bool decays_at_infinity(const PiecewiseFn& phi);

/// phi_n exactly, for phi with polynomial pieces (nonnegative integer
/// exponents, no logs); breakpoints are {b_i} and {b_i - 1/n}. Throws
/// NotMonotone, NotRepresentable, DegenerateInput (n < 1).
PiecewiseFn mollify(const PiecewiseFn& phi, long n);

/// phi_n for any nonincreasing phi, by quadrature over the window split at
/// the breakpoints. Throws NotMonotone, DivergentAtZero, DegenerateInput.
CallableFn mollify_numeric(const PiecewiseFn& phi, long n);

struct EquivalenceReport {
  double max_pointwise_gap_monot1 = 0.0;  // H phi - phi vs Hf
  double max_pointwise_gap_monot2 = 0.0;  // phi vs H*f
  double worst_x_monot1 = 0.0;
  double worst_x_monot2 = 0.0;
  double norm_gap_hardy = 0.0;  // | ||H phi - phi||_p - ||Hf||_p |
  double norm_gap_dual = 0.0;   // | ||phi||_p - ||H*f||_p |
  double norm_budget_hardy = 0.0;
  double norm_budget_dual = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  bool mollified = false;
};

/// 64 log-spaced points on [min_break / 10, 10 max_break], moved off the
/// breakpoints.
std::vector<double> equivalence_samples(const PiecewiseFn& phi);

/// Runs the three checks and reports gaps; pointwise gaps are relative and
/// compared against `pointwise_tol`, norm gaps against the combined
/// quadrature errors. Does not throw on a failed check.
EquivalenceReport equivalence_report(const PiecewiseFn& phi, double p,
                                     double pointwise_tol = 1e-8, double tol = kDefaultTol);

/// As equivalence_report, but throws EquivalenceViolated (naming the worst
/// sample point) when a check fails.
EquivalenceReport check_equivalence(const PiecewiseFn& phi, double p,
                                    double pointwise_tol = 1e-8, double tol = kDefaultTol);

}  // namespace hardylab
