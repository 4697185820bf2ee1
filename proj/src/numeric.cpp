// Quadrature-based operators and norms for black-box functions.

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "hardylab/error.hpp"
#include "hardylab/norms.hpp"

namespace hardylab {

namespace {

// Largest |ln x| the t-space slabs may reach before x leaves double range.
constexpr double kLogLimit = 650.0;

bool is_singular(const CallableFn& f, double x) {
  return std::any_of(f.singular_points.begin(), f.singular_points.end(), [&](double s) {
    return std::abs(s - x) <= 1e-14 * std::max(1.0, std::abs(s));
  });
}

double min_singular(const CallableFn& f) {
  double m = std::numeric_limits<double>::infinity();
  for (double s : f.singular_points) {
    if (s > 0.0) m = std::min(m, s);
  }
  return m;
}

double max_singular(const CallableFn& f) {
  double m = 0.0;
  for (double s : f.singular_points) m = std::max(m, s);
  return m;
}

std::vector<double> checked_grid(std::span<const double> grid) {
  std::vector<double> xs(grid.begin(), grid.end());
  if (xs.size() < 4) throw Error(ErrorKind::MalformedPartition, "grid needs at least 4 nodes");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !std::isfinite(xs[i]) || (i > 0 && xs[i] <= xs[i - 1])) {
      throw Error(ErrorKind::MalformedPartition, "grid must be positive and strictly increasing");
    }
  }
  return xs;
}

}  // namespace

CallableFn to_callable(const PiecewiseFn& f) {
  auto shared = std::make_shared<const PiecewiseFn>(f);
  CallableFn out;
  out.evaluator = [shared](double x) { return (*shared)(x); };
  out.singular_points.assign(f.interior_breaks().begin(), f.interior_breaks().end());
  const auto& first = f.piece(0);
  const auto& last = f.piece(f.num_pieces() - 1);
  if (f.is_zero()) {
    out.support_lo = 1.0;
    out.support_hi = 1.0;
    return out;
  }
  if (first.empty()) {
    out.support_lo = f.interior_breaks().front();
  } else {
    double a = first.front().exponent;
    for (const auto& atom : first) a = std::min(a, atom.exponent);
    out.zero_exponent_hint = a;
  }
  if (last.empty()) {
    out.support_hi = f.interior_breaks().back();
  } else {
    double a = last.front().exponent;
    for (const auto& atom : last) a = std::max(a, atom.exponent);
    out.tail_exponent_hint = a;
  }
  return out;
}

QuadResult integrate_callable(const CallableFn& f, double a, double b, double tol) {
  if (f.support_lo) a = std::max(a, *f.support_lo);
  if (f.support_hi) b = std::min(b, *f.support_hi);
  if (!(b > a)) return {};
  std::vector<double> cuts{a};
  for (double s : f.singular_points) {
    if (s > a && s < b) cuts.push_back(s);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(b);
  QuadOptions opts;
  opts.rel_tol = tol;
  opts.abs_tol = 1e-300;
  QuadResult total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += integrate_singular(f.evaluator, cuts[i], cuts[i + 1], is_singular(f, cuts[i]),
                                is_singular(f, cuts[i + 1]), opts);
  }
  return total;
}

namespace {

// int over t in one direction from `t0`, x = e^t, in doubling slabs. The
// neglected remainder past the last slab is estimated from the power hint:
// for f ~ x^a the integral beyond X is |f(X) X / (a + 1)|.
QuadResult log_slabs(const CallableFn& f, double t0, bool downward, double exponent, double tol,
                     bool singular_start) {
  auto h = [&](double t) {
    const double x = std::exp(t);
    return f(x) * x;
  };
  QuadOptions opts;
  opts.rel_tol = tol;
  opts.abs_tol = 1e-300;
  QuadResult total;
  double width = 4.0;
  double t = t0;
  bool first = true;
  for (;;) {
    const double next = downward ? t - width : t + width;
    const bool sing = first && singular_start;
    total += downward ? integrate_singular(h, next, t, false, sing, opts)
                      : integrate_singular(h, t, next, sing, false, opts);
    t = next;
    first = false;
    const double x = std::exp(t);
    const double estimate = std::abs(f(x) * x / (exponent + 1.0));
    if (estimate <= tol * std::abs(total.value) || estimate < 1e-300) {
      total.value += estimate;
      total.err += estimate;
      return total;
    }
    if (std::abs(t) > kLogLimit) {
      total.converged = false;
      total.err += estimate;
      return total;
    }
    width *= 2.0;
  }
}

}  // namespace

QuadResult integrate_callable_from_zero(const CallableFn& f, double b, double tol) {
  if (f.support_lo) {
    if (b <= *f.support_lo) return {};
    return integrate_callable(f, *f.support_lo, b, tol);
  }
  if (!(f.zero_exponent_hint > -1.0)) {
    throw Error(ErrorKind::DivergentAtZero, "zero exponent hint " +
                                                std::to_string(f.zero_exponent_hint) +
                                                " is not integrable at 0");
  }
  const double c = std::min(b, min_singular(f));
  QuadResult total = integrate_callable(f, c, b, tol);
  total += log_slabs(f, std::log(c), true, f.zero_exponent_hint, tol, is_singular(f, c));
  return total;
}

QuadResult integrate_callable_to_infinity(const CallableFn& f, double a, double tol) {
  if (f.support_hi) {
    if (a >= *f.support_hi) return {};
    return integrate_callable(f, a, *f.support_hi, tol);
  }
  if (!(f.tail_exponent_hint < -1.0)) {
    throw Error(ErrorKind::DivergentAtInfinity, "tail exponent hint " +
                                                    std::to_string(f.tail_exponent_hint) +
                                                    " is not integrable at infinity");
  }
  const double c = std::max(a, max_singular(f));
  QuadResult total = integrate_callable(f, a, c, tol);
  total += log_slabs(f, std::log(c), false, f.tail_exponent_hint, tol, is_singular(f, c));
  return total;
}

QuadResult lp_norm_callable(const CallableFn& g, double p, double tol) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::BadExponent, "p must satisfy 1 < p < inf");
  }
  if (!g.support_lo && g.zero_exponent_hint * p + 1.0 <= 0.0) {
    throw Error(ErrorKind::NormDiverges, "g^p is not integrable at 0");
  }
  if (!g.support_hi && g.tail_exponent_hint * p + 1.0 >= 0.0) {
    throw Error(ErrorKind::NormDiverges, "g^p is not integrable at infinity");
  }
  CallableFn h = g;
  h.evaluator = [&g, p](double x) {
    const double v = g(x);
    return v > 0.0 ? std::pow(v, p) : 0.0;
  };
  h.zero_exponent_hint = g.zero_exponent_hint * p;
  h.tail_exponent_hint = g.tail_exponent_hint * p;
  QuadResult v = integrate_callable_from_zero(h, 1.0, tol);
  v += integrate_callable_to_infinity(h, 1.0, tol);
  if (!v.converged) throw Error(ErrorKind::NotConverged, "callable norm did not converge");
  return root_of_pow(v, p);
}

namespace {

// Grid nodes merged with the singular points inside the grid's span, so no
// tabulation interval straddles a singularity.
std::vector<double> node_grid(const CallableFn& f, std::span<const double> grid) {
  std::vector<double> xs = checked_grid(grid);
  for (double s : f.singular_points) {
    if (s > xs.front() && s < xs.back()) xs.push_back(s);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace

CallableFn numeric_hardy(const CallableFn& f, std::span<const double> grid) {
  if (!f.support_lo && !(f.zero_exponent_hint > -1.0)) {
    throw Error(ErrorKind::DivergentAtZero, "f is not integrable at 0");
  }
  auto xs = std::make_shared<const std::vector<double>>(node_grid(f, grid));
  std::vector<double> cumulative(xs->size());
  cumulative[0] = integrate_callable_from_zero(f, xs->front()).value;
  for (std::size_t i = 1; i < xs->size(); ++i) {
    cumulative[i] = cumulative[i - 1] + integrate_callable(f, (*xs)[i - 1], (*xs)[i]).value;
  }
  auto source = std::make_shared<const CallableFn>(f);
  auto table = std::make_shared<const std::vector<double>>(std::move(cumulative));

  CallableFn out;
  out.evaluator = [source, xs, table](double x) {
    double mass;
    if (x < xs->front()) {
      mass = integrate_callable_from_zero(*source, x).value;
    } else {
      const std::size_t i =
          static_cast<std::size_t>(std::upper_bound(xs->begin(), xs->end(), x) - xs->begin()) - 1;
      mass = (*table)[i];
      if (x > (*xs)[i]) mass += integrate_callable(*source, (*xs)[i], x).value;
    }
    return mass / x;
  };
  out.singular_points = f.singular_points;
  out.zero_exponent_hint = f.zero_exponent_hint;
  out.support_lo = f.support_lo;
  out.tail_exponent_hint = f.support_hi ? -1.0 : std::max(-1.0, f.tail_exponent_hint);
  return out;
}

CallableFn numeric_dual_hardy(const CallableFn& f, std::span<const double> grid) {
  if (!f.support_hi && !(f.tail_exponent_hint < 0.0)) {
    throw Error(ErrorKind::DivergentAtInfinity, "f(t)/t is not integrable at infinity");
  }
  CallableFn weighted = f;
  weighted.evaluator = [source = f.evaluator](double t) { return source(t) / t; };
  weighted.zero_exponent_hint = f.zero_exponent_hint - 1.0;
  weighted.tail_exponent_hint = f.tail_exponent_hint - 1.0;

  auto xs = std::make_shared<const std::vector<double>>(node_grid(f, grid));
  std::vector<double> tail(xs->size());
  tail.back() = integrate_callable_to_infinity(weighted, xs->back()).value;
  for (std::size_t i = xs->size() - 1; i-- > 0;) {
    tail[i] = tail[i + 1] + integrate_callable(weighted, (*xs)[i], (*xs)[i + 1]).value;
  }
  auto source = std::make_shared<const CallableFn>(weighted);
  auto table = std::make_shared<const std::vector<double>>(std::move(tail));

  CallableFn out;
  out.evaluator = [source, xs, table](double x) {
    if (x > xs->back()) return integrate_callable_to_infinity(*source, x).value;
    const std::size_t i =
        static_cast<std::size_t>(std::lower_bound(xs->begin(), xs->end(), x) - xs->begin());
    double v = (*table)[i];
    if (x < (*xs)[i]) v += integrate_callable(*source, x, (*xs)[i]).value;
    return v;
  };
  out.singular_points = f.singular_points;
  out.support_hi = f.support_hi;
  out.zero_exponent_hint = f.support_lo ? 0.0 : std::min(0.0, f.zero_exponent_hint);
  out.tail_exponent_hint = f.tail_exponent_hint;
  return out;
}

}  // namespace hardylab
