#pragma once

// L^p norms with error bounds, the two integral identities used as
// independent estimators of I_p and I_p*, and quadrature-based versions of
// the operators for inputs outside the atom algebra.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hardylab/funcmodel.hpp"
#include "hardylab/quadrature.hpp"

namespace hardylab {

inline constexpr double kDefaultTol = 1e-9;

/// A black-box function on (0, inf) plus the analytic hints the quadrature
/// needs: where it is singular, how it behaves at 0 and at infinity, and
/// optionally where its support starts and ends (zero outside).
struct CallableFn {
  std::function<double(double)> evaluator;
  std::vector<double> singular_points;
  double tail_exponent_hint = -2.0;
  double zero_exponent_hint = 0.0;
  std::optional<double> support_lo;
  std::optional<double> support_hi;

  double operator()(double x) const { return evaluator(x); }
};

/// Wraps a PiecewiseFn; breakpoints become singular points and the hints
/// come from the leading atoms.
CallableFn to_callable(const PiecewiseFn& f);

/// Throws NormDiverges unless the leading-atom exponent tests pass for g^p at
/// 0 (a p > -1) and at infinity (a p < -1).
void check_lp_exponents(const PiecewiseFn& g, double p);

/// int_0^inf g^p dx with an absolute error bound. `tol` is relative to the
/// value. Throws NormDiverges, NotConverged, BadExponent (p <= 1).
QuadResult lp_norm_pow(const PiecewiseFn& g, double p, double tol = kDefaultTol);

/// (int g^p)^{1/p}; the error is mapped through v -> v^{1/p} exactly.
QuadResult lp_norm(const PiecewiseFn& g, double p, double tol = kDefaultTol);

/// Converts an error bound on v = ||g||^p into one on ||g||.
QuadResult root_of_pow(const QuadResult& pow_result, double p);

/// I_p computed as p' int f(x) (Hf(x))^{p-1} dx.
QuadResult ip_via_parts(const PiecewiseFn& f, double p, double tol = kDefaultTol);

/// I_p* computed as p int f(x) (H*f(x))^{p-1} dx.
QuadResult ipstar_via_fubini(const PiecewiseFn& f, double p, double tol = kDefaultTol);

/// int_0^inf prod_m g_m^{q_m} over a common refinement of the partitions.
struct PowerFactor {
  const PiecewiseFn* fn;
  double power;
};
QuadResult integrate_power_product(std::span<const PowerFactor> factors, double tol);

// Black-box numerics --------------------------------------------------------

/// int_a^b f with subdivision at the singular points of f (0 < a < b < inf).
QuadResult integrate_callable(const CallableFn& f, double a, double b, double tol = 1e-12);

/// int_0^b f, using the zero hint and support.
QuadResult integrate_callable_from_zero(const CallableFn& f, double b, double tol = 1e-12);

/// int_a^inf f, using the tail hint and support.
QuadResult integrate_callable_to_infinity(const CallableFn& f, double a, double tol = 1e-12);

/// ||g||_p for a black-box g, via the hints.
QuadResult lp_norm_callable(const CallableFn& g, double p, double tol = kDefaultTol);

/// Hf from cumulative quadrature tabulated on `grid` (plus the singular
/// points), completed by a short quadrature from the nearest node.
CallableFn numeric_hardy(const CallableFn& f, std::span<const double> grid);

/// H*f tabulated on `grid` by backward cumulative quadrature.
CallableFn numeric_dual_hardy(const CallableFn& f, std::span<const double> grid);

/// n log-spaced points on [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t n);

}  // namespace hardylab
