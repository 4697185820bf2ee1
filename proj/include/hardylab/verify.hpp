#pragma once

// Sharp and crude constant tables for ||H*f||_p / ||Hf||_p and three-valued
// verdicts on concrete inputs.

#include <string_view>

#include "hardylab/funcmodel.hpp"
#include "hardylab/norms.hpp"

namespace hardylab {

enum class Verdict { Holds, Violated, Inconclusive };

std::string_view to_string(Verdict v);

struct Constants {
  double p = 2.0;
  double p_conj = 2.0;
  double lower = 1.0;
  double upper = 1.0;
};

/// (p-1, (p-1)^{1/p}) ordered so lower <= upper. Throws BadExponent.
Constants sharp_constants(double p);

/// (1/p', p). Throws BadExponent.
Constants crude_constants(double p);

/// Norms below this are treated as an a.e.-zero input.
inline constexpr double kDegenerateNorm = 1e-100;

/// Relative rounding allowance added to the budget for each bound.
inline constexpr double kBoundRounding = 1e-12;

/// A slack within the budget still counts as Holds when the budget itself is
/// this small relative to the bound: the ratio sits on the bound.
inline constexpr double kResolvedBudget = 1e-8;

struct VerificationReport {
  double p = 2.0;
  double ratio = 0.0;
  double ratio_err = 0.0;
  Constants bounds;
  Verdict verdict_lower = Verdict::Inconclusive;
  Verdict verdict_upper = Verdict::Inconclusive;
  double error_budget = 0.0;
  QuadResult numerator;    // ||H*f||_p or ||phi||_p
  QuadResult denominator;  // ||Hf||_p or ||H phi - phi||_p
};

/// Verdict for `value >= bound` (lower) or `value <= bound` (upper).
Verdict judge(double slack, double budget, double bound, bool converged);

/// ||H*f||_p / ||Hf||_p against sharp_constants(p).
/// Throws NegativityDetected, NormDiverges, DegenerateInput.
VerificationReport verify_theorem1(const PiecewiseFn& f, double p, double tol = kDefaultTol);

/// Same ratio against crude_constants(p).
VerificationReport verify_crude(const PiecewiseFn& f, double p, double tol = kDefaultTol);

/// ||phi||_p / ||H phi - phi||_p against sharp_constants(p).
/// Throws NotMonotone, NoDecayAtInfinity, NormDiverges, DegenerateInput.
VerificationReport verify_theorem2(const PiecewiseFn& phi, double p, double tol = kDefaultTol);

/// Worst of two verdicts: Violated over Inconclusive over Holds.
Verdict combine(Verdict a, Verdict b);

}  // namespace hardylab
