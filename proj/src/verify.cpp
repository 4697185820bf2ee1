#include "hardylab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hardylab/duality.hpp"
#include "hardylab/error.hpp"
#include "hardylab/operators.hpp"

namespace hardylab {

namespace {

void check_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::BadExponent, "p must satisfy 1 < p < inf, got " + std::to_string(p));
  }
}

void require_nonnegative(const PiecewiseFn& f) {
  if (!f.nonnegative() && !sampled_nonnegative(f)) {
    throw Error(ErrorKind::NegativityDetected, "input takes negative values");
  }
}

// Ratio num/den with an error covering every value in the two intervals.
double ratio_error(const QuadResult& num, const QuadResult& den, double ratio) {
  if (den.value - den.err <= 0.0) return std::numeric_limits<double>::infinity();
  const double hi = (num.value + num.err) / (den.value - den.err);
  const double lo = std::max(num.value - num.err, 0.0) / (den.value + den.err);
  return std::max(hi - ratio, ratio - lo);
}

VerificationReport build_report(double p, const QuadResult& num, const QuadResult& den,
                                const Constants& bounds) {
  if (den.value < kDegenerateNorm || num.value < kDegenerateNorm) {
    throw Error(ErrorKind::DegenerateInput, "norm below 1e-100; input is a.e. zero");
  }
  VerificationReport r;
  r.p = p;
  r.numerator = num;
  r.denominator = den;
  r.bounds = bounds;
  r.ratio = num.value / den.value;
  r.ratio_err = ratio_error(num, den, r.ratio);
  const bool converged = num.converged && den.converged;
  const double scale = std::max(std::abs(bounds.lower), std::abs(bounds.upper));
  r.error_budget = r.ratio_err + scale * kBoundRounding;
  const double lower_budget = r.ratio_err + std::abs(bounds.lower) * kBoundRounding;
  const double upper_budget = r.ratio_err + std::abs(bounds.upper) * kBoundRounding;
  r.verdict_lower = judge(r.ratio - bounds.lower, lower_budget, bounds.lower, converged);
  r.verdict_upper = judge(bounds.upper - r.ratio, upper_budget, bounds.upper, converged);
  return r;
}

VerificationReport operator_ratio(const PiecewiseFn& f, double p, double tol,
                                  const Constants& bounds) {
  require_nonnegative(f);
  if (f.is_zero()) throw Error(ErrorKind::DegenerateInput, "input is identically zero");
  const QuadResult num = lp_norm(dual_hardy(f), p, tol);
  const QuadResult den = lp_norm(hardy(f), p, tol);
  return build_report(p, num, den, bounds);
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "Holds";
    case Verdict::Violated:
      return "Violated";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

Constants sharp_constants(double p) {
  check_p(p);
  const double a = p - 1.0;
  const double b = std::pow(p - 1.0, 1.0 / p);
  return {p, p / (p - 1.0), std::min(a, b), std::max(a, b)};
}

Constants crude_constants(double p) {
  check_p(p);
  const double p_conj = p / (p - 1.0);
  return {p, p_conj, 1.0 / p_conj, p};
}

Verdict judge(double slack, double budget, double bound, bool converged) {
  if (!converged || !std::isfinite(slack) || !std::isfinite(budget)) {
    return Verdict::Inconclusive;
  }
  if (slack < -budget) return Verdict::Violated;
  if (slack > budget) return Verdict::Holds;
  return budget <= kResolvedBudget * std::max(1.0, std::abs(bound)) ? Verdict::Holds
                                                                      : Verdict::Inconclusive;
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::Violated || b == Verdict::Violated) return Verdict::Violated;
  if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
  return Verdict::Holds;
}

VerificationReport verify_theorem1(const PiecewiseFn& f, double p, double tol) {
  return operator_ratio(f, p, tol, sharp_constants(p));
}

VerificationReport verify_crude(const PiecewiseFn& f, double p, double tol) {
  return operator_ratio(f, p, tol, crude_constants(p));
}

VerificationReport verify_theorem2(const PiecewiseFn& phi, double p, double tol) {
  const Constants bounds = sharp_constants(p);
  require_nonnegative(phi);
  const PiecewiseFn diff = hardy_minus_identity(phi);
  if (!decays_at_infinity(phi)) {
    throw Error(ErrorKind::NoDecayAtInfinity, "phi does not tend to 0 at infinity");
  }
  if (phi.is_zero()) throw Error(ErrorKind::DegenerateInput, "phi is identically zero");
  const QuadResult num = lp_norm(phi, p, tol);
  const QuadResult den = lp_norm(diff, p, tol);
  return build_report(p, num, den, bounds);
}

}  // namespace hardylab
