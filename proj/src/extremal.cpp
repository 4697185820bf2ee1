#include "hardylab/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "hardylab/error.hpp"
#include "hardylab/operators.hpp"
#include "hardylab/parallel.hpp"

namespace hardylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::BadExponent, "p must satisfy 1 < p < inf");
  }
}

void check_eps(FamilyKind kind, double eps, double p) {
  check_p(p);
  const double upper = eps_upper(kind, p);
  if (!(eps > 0.0) || !(eps < upper)) {
    std::ostringstream os;
    os << "eps = " << eps << " outside (0, " << upper << ") for " << to_string(kind);
    throw Error(ErrorKind::EpsOutOfRange, os.str());
  }
}

// Bounds on num/den from bounds on num^p and den^p.
Sandwich ratio_sandwich(const Sandwich& num, const Sandwich& den, double p) {
  Sandwich out;
  if (num.lo && den.hi) out.lo = std::pow(*num.lo / *den.hi, 1.0 / p);
  if (num.hi && den.lo) out.hi = std::pow(*num.hi / *den.lo, 1.0 / p);
  return out;
}

std::string field(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string field(const std::optional<double>& v) { return v ? field(*v) : std::string(); }

}  // namespace

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Step:
      return "step";
    case FamilyKind::ZeroSingular:
      return "zero";
    case FamilyKind::InfinitySingular:
      return "inf";
  }
  return "step";
}

double eps_upper(FamilyKind kind, double p) {
  switch (kind) {
    case FamilyKind::Step:
      return kInf;
    case FamilyKind::ZeroSingular:
      return 1.0 / p;
    case FamilyKind::InfinitySingular:
      return (p - 1.0) / p;
  }
  return kInf;
}

PiecewiseFn family(FamilyKind kind, double eps, double p) {
  check_eps(kind, eps, p);
  switch (kind) {
    case FamilyKind::Step:
      return indicator(1.0, 1.0 + eps);
    case FamilyKind::ZeroSingular:
      return power_on(eps - 1.0 / p, 0.0, 1.0);
    case FamilyKind::InfinitySingular:
      return power_on(-eps - 1.0 / p, 1.0, kInf);
  }
  return {};
}

ClosedFormBounds closed_form_bounds(FamilyKind kind, double eps, double p) {
  check_eps(kind, eps, p);
  ClosedFormBounds b;
  const double pp = std::pow(p, p);
  switch (kind) {
    case FamilyKind::Step: {
      const double h = std::pow(eps, p) * std::pow(1.0 + eps, 1.0 - p) / (p - 1.0);
      b.hardy = {h, h + std::pow(eps, p + 1.0)};
      const double d = std::pow(std::log1p(eps), p);
      b.dual = {d, d * (1.0 + eps)};
      break;
    }
    case FamilyKind::ZeroSingular:
      b.hardy.lo = pp / (eps * p * std::pow(p - 1.0 + eps * p, p));
      b.dual.hi = pp / (eps * p * std::pow(1.0 - eps * p, p));
      break;
    case FamilyKind::InfinitySingular:
      b.dual.lo = pp / (eps * p * std::pow(1.0 + eps * p, p));
      b.hardy.hi = pp / (eps * p * std::pow(p - 1.0 - eps * p, p));
      break;
  }
  return b;
}

bool ratio_is_dual_over_hardy(FamilyKind kind) { return kind == FamilyKind::InfinitySingular; }

double limit_ratio(FamilyKind kind, double p) {
  check_p(p);
  switch (kind) {
    case FamilyKind::Step:
      return std::pow(p - 1.0, -1.0 / p);
    case FamilyKind::ZeroSingular:
      return 1.0 / (p - 1.0);
    case FamilyKind::InfinitySingular:
      return p - 1.0;
  }
  return 0.0;
}

std::vector<double> default_eps_grid(FamilyKind kind, double p) {
  check_p(p);
  double top = 1e-1;
  if (kind != FamilyKind::Step) top = std::min(top, 0.49 * eps_upper(kind, p));
  std::vector<double> grid = log_grid(1e-4, top, 7);
  std::reverse(grid.begin(), grid.end());
  return grid;
}

std::vector<SweepRecord> sweep(FamilyKind kind, double p, std::span<const double> eps_grid,
                               double tol) {
  check_p(p);
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    check_eps(kind, eps_grid[i], p);
    if (i > 0 && !(eps_grid[i] < eps_grid[i - 1])) {
      throw Error(ErrorKind::EpsOutOfRange, "eps grid must be strictly decreasing");
    }
  }
  std::vector<SweepRecord> records(eps_grid.size());
  parallel_for(eps_grid.size(), [&](std::size_t i) {
    SweepRecord& r = records[i];
    r.eps = eps_grid[i];
    r.bounds = closed_form_bounds(kind, r.eps, p);
    try {
      const PiecewiseFn f = family(kind, r.eps, p);
      const QuadResult h_pow = lp_norm_pow(hardy(f), p, tol);
      const QuadResult d_pow = lp_norm_pow(dual_hardy(f), p, tol);
      r.norm_H = root_of_pow(h_pow, p);
      r.norm_Hstar = root_of_pow(d_pow, p);
      r.hardy_inside = r.bounds.hardy.contains(h_pow.value, h_pow.err);
      r.dual_inside = r.bounds.dual.contains(d_pow.value, d_pow.err);
      const bool flip = ratio_is_dual_over_hardy(kind);
      const QuadResult& num = flip ? r.norm_Hstar : r.norm_H;
      const QuadResult& den = flip ? r.norm_H : r.norm_Hstar;
      r.ratio = num.value / den.value;
      r.ratio_err = r.ratio * (num.err / num.value + den.err / den.value);
      r.ratio_bounds = flip ? ratio_sandwich(r.bounds.dual, r.bounds.hardy, p)
                            : ratio_sandwich(r.bounds.hardy, r.bounds.dual, p);
      r.converged = h_pow.converged && d_pow.converged;
    } catch (const Error& e) {
      r.converged = false;
      r.error = e.what();
    }
  });
  return records;
}

double estimate_limit(std::span<const SweepRecord> records) {
  if (records.size() < 3) {
    throw Error(ErrorKind::InsufficientData, "need at least 3 records, got " +
                                                 std::to_string(records.size()));
  }
  const auto last = records.last(3);
  for (std::size_t i = 0; i < 3; ++i) {
    if (!last[i].converged) {
      throw Error(ErrorKind::InsufficientData, "record at eps = " + field(last[i].eps) +
                                                   " did not converge");
    }
    if (i > 0 && !(last[i].eps < last[i - 1].eps)) {
      throw Error(ErrorKind::InsufficientData, "records must have decreasing eps");
    }
  }
  // Lagrange interpolation in eps evaluated at eps = 0.
  double limit = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    double w = 1.0;
    for (std::size_t j = 0; j < 3; ++j) {
      if (j != i) w *= last[j].eps / (last[j].eps - last[i].eps);
    }
    limit += w * last[i].ratio;
  }
  return limit;
}

std::string sweep_csv(std::span<const SweepRecord> records) {
  std::string out = "eps,norm_H,norm_H_err,norm_Hstar,norm_Hstar_err,ratio,sandwich_lo,sandwich_hi\n";
  for (const auto& r : records) {
    out += field(r.eps) + ',';
    if (r.converged) {
      out += field(r.norm_H.value) + ',' + field(r.norm_H.err) + ',' +
             field(r.norm_Hstar.value) + ',' + field(r.norm_Hstar.err) + ',' + field(r.ratio);
    } else {
      out += ",,,,";
    }
    out += ',' + field(r.ratio_bounds.lo) + ',' + field(r.ratio_bounds.hi) + '\n';
  }
  return out;
}

}  // namespace hardylab
