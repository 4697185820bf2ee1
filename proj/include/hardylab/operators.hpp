#pragma once

#include "hardylab/funcmodel.hpp"

namespace hardylab {

/// Hf(x) = (1/x) int_0^x f, applied exactly. Throws DivergentAtZero when an
/// atom on the piece adjoining 0 has exponent <= -1.
PiecewiseFn hardy(const PiecewiseFn& f);

/// H*f(x) = int_x^inf f(t)/t dt, applied exactly. Throws DivergentAtInfinity
/// when an atom on the unbounded piece has exponent >= 0.
PiecewiseFn dual_hardy(const PiecewiseFn& f);

/// H(phi) - phi for nonincreasing phi (throws NotMonotone otherwise). The
/// result is flagged nonnegative.
PiecewiseFn hardy_minus_identity(const PiecewiseFn& phi);

}  // namespace hardylab
