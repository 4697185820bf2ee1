#pragma once

// The three extremal families, their closed-form norm sandwiches, and
// eps -> 0 sweeps of the norm ratios.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hardylab/funcmodel.hpp"
#include "hardylab/norms.hpp"

namespace hardylab {

enum class FamilyKind {
  Step,              // chi_(1, 1+eps]
  ZeroSingular,      // x^{eps - 1/p} on (0, 1]
  InfinitySingular,  // x^{-eps - 1/p} on (1, inf)
};

std::string_view to_string(FamilyKind kind);

/// Open eps-interval of the family: (0, upper). Step has upper = inf.
double eps_upper(FamilyKind kind, double p);

/// Throws EpsOutOfRange outside eps_upper, BadExponent for p <= 1.
PiecewiseFn family(FamilyKind kind, double eps, double p);

struct Sandwich {
  std::optional<double> lo;
  std::optional<double> hi;

  bool contains(double v, double err) const {
    return (!lo || v >= *lo - err) && (!hi || v <= *hi + err);
  }
};

/// Closed-form bounds on ||Hf_eps||_p^p and ||H*f_eps||_p^p.
struct ClosedFormBounds {
  Sandwich hardy;
  Sandwich dual;
};

ClosedFormBounds closed_form_bounds(FamilyKind kind, double eps, double p);

/// True when the sweep ratio is ||H*f|| / ||Hf|| (InfinitySingular); the
/// other families use ||Hf|| / ||H*f||.
bool ratio_is_dual_over_hardy(FamilyKind kind);

/// Limit of the sweep ratio as eps -> 0.
double limit_ratio(FamilyKind kind, double p);

struct SweepRecord {
  double eps = 0.0;
  QuadResult norm_H;
  QuadResult norm_Hstar;
  double ratio = 0.0;
  double ratio_err = 0.0;
  ClosedFormBounds bounds;
  /// Bounds on the ratio implied by the two sandwiches.
  Sandwich ratio_bounds;
  bool hardy_inside = true;
  bool dual_inside = true;
  bool converged = true;
  std::string error;
};

/// Log-spaced 1e-1 ... 1e-4 (7 points), the top capped at 0.49 times the
/// eps range for the power families.
std::vector<double> default_eps_grid(FamilyKind kind, double p);

/// One record per eps, in grid order. A record whose norms fail is marked
/// not converged instead of aborting. Throws EpsOutOfRange for a bad grid.
std::vector<SweepRecord> sweep(FamilyKind kind, double p, std::span<const double> eps_grid,
                               double tol = kDefaultTol);

/// Extrapolates the ratio to eps = 0 with the quadratic in eps through the
/// last three records. Throws InsufficientData.
double estimate_limit(std::span<const SweepRecord> records);

/// CSV with header eps,norm_H,norm_H_err,norm_Hstar,norm_Hstar_err,ratio,
/// sandwich_lo,sandwich_hi; the sandwich columns bound the ratio.
std::string sweep_csv(std::span<const SweepRecord> records);

}  // namespace hardylab
