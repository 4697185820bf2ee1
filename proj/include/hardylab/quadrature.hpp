#pragma once

#include <cstddef>
#include <functional>

namespace hardylab {

/// An integral (or norm) value with an absolute error bound.
struct QuadResult {
  double value = 0.0;
  double err = 0.0;
  bool converged = true;

  QuadResult& operator+=(const QuadResult& other) {
    value += other.value;
    err += other.err;
    converged = converged && other.converged;
    return *this;
  }
};

struct QuadOptions {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  std::size_t max_intervals = 4000;
};

using Integrand = std::function<double(double)>;

/// One 21-point Kronrod / 10-point Gauss panel on [a, b]; err = |K - G|,
/// floored by a rounding estimate.
QuadResult gauss_kronrod21(const Integrand& f, double a, double b);

/// Globally adaptive bisection with the GK21 pair. Stops once the summed
/// local error is below max(abs_tol, rel_tol * |value|).
QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opts = {});

/// As integrate(), but with an algebraic-singularity substitution
/// x = end +/- w u^2 at the flagged endpoints.
QuadResult integrate_singular(const Integrand& f, double a, double b, bool singular_lo,
                              bool singular_hi, const QuadOptions& opts = {});

}  // namespace hardylab
