#include "hardylab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "hardylab/error.hpp"
#include "hardylab/operators.hpp"

namespace hardylab {

namespace {

constexpr double kMaxLogSpan = 1e9;

struct Lead {
  double exponent;
  int log_power;
};

// Dominant atom as x -> 0 (smallest exponent) or x -> inf (largest); ties go
// to the higher log power.
Lead leading_atom(const AtomList& atoms, bool at_zero) {
  Lead lead{atoms.front().exponent, atoms.front().log_power};
  for (const auto& atom : atoms) {
    const bool dominates = at_zero ? atom.exponent < lead.exponent : atom.exponent > lead.exponent;
    if (dominates || (atom.exponent == lead.exponent && atom.log_power > lead.log_power)) {
      lead = {atom.exponent, atom.log_power};
    }
  }
  return lead;
}

struct EndFactor {
  const AtomList* atoms;
  double power;
  Lead lead;
};

// sum_j c_j e^{(a_j - a_lead) t} t^{k_j}: the atom sum at x = e^t with the
// leading power of x factored out.
double reduced_sum(const EndFactor& f, double t) {
  double sum = 0.0;
  for (const auto& atom : *f.atoms) {
    double v = atom.coef * std::exp((atom.exponent - f.lead.exponent) * t);
    for (int k = 0; k < atom.log_power; ++k) v *= t;
    sum += v;
  }
  return sum;
}

// Smallest |t| beyond which every term of the reduced sum, divided by
// |t|^{K_lead}, is nonincreasing in |t|.
double monotone_threshold(const EndFactor& f) {
  double u = 1.0;
  for (const auto& atom : *f.atoms) {
    const double gap = std::abs(atom.exponent - f.lead.exponent);
    const int extra = atom.log_power - f.lead.log_power;
    if (gap > 0.0 && extra > 0) u = std::max(u, extra / gap);
  }
  return u;
}

// sup_{|t| >= u} |reduced_sum(t)| / |t|^{K_lead}
double envelope(const EndFactor& f, double u) {
  double m = 0.0;
  for (const auto& atom : *f.atoms) {
    const double gap = std::abs(atom.exponent - f.lead.exponent);
    m += std::abs(atom.coef) * std::exp(-gap * u) *
         std::pow(u, atom.log_power - f.lead.log_power);
  }
  return m;
}

// int_u^inf e^{-s v} v^m dv = Gamma(m + 1, s u) / s^{m + 1}
double gamma_tail(double m, double s, double u) {
  const double q = boost::math::gamma_q(m + 1.0, s * u);
  if (q <= 0.0) return 0.0;
  return std::exp(boost::math::lgamma(m + 1.0) + std::log(q) - (m + 1.0) * std::log(s));
}

// Integral of prod f_m^{q_m} over (0, e^{anchor}] (at_zero) or
// [e^{anchor}, inf), computed in t = ln x. The piece beyond |t| = U is bounded
// analytically by the leading-atom envelope, reducing to an upper incomplete
// gamma function; U is doubled until that bound fits the budget.
QuadResult integrate_end(std::vector<EndFactor> factors, bool at_zero, double anchor, double tol) {
  double lead_exponent = 0.0;
  double lead_log = 0.0;
  double u_min = 1.0;
  for (auto& f : factors) {
    f.lead = leading_atom(*f.atoms, at_zero);
    lead_exponent += f.power * f.lead.exponent;
    lead_log += f.power * f.lead.log_power;
    u_min = std::max(u_min, monotone_threshold(f));
  }
  const double growth = lead_exponent + 1.0;  // integrand ~ e^{growth t} in t
  const double decay = at_zero ? growth : -growth;
  if (!(decay > 0.0)) {
    throw Error(ErrorKind::NormDiverges,
                std::string("integrand not integrable at ") + (at_zero ? "0" : "infinity") +
                    " (leading exponent " + std::to_string(lead_exponent) + ")");
  }
  auto integrand = [&](double t) {
    double log_v = growth * t;
    for (const auto& f : factors) {
      const double s = reduced_sum(f, t);
      if (!(s > 0.0)) return 0.0;
      log_v += f.power * std::log(s);
    }
    return std::exp(log_v);
  };
  auto remainder = [&](double u) {
    double coef = 1.0;
    for (const auto& f : factors) coef *= std::pow(envelope(f, u), f.power);
    return coef * gamma_tail(lead_log, decay, u);
  };

  // Slabs double in width away from the anchor so features near it are
  // resolved before the slow tail is; a single panel over the whole range
  // can fool the Kronrod/Gauss error estimate.
  const double signed_anchor = at_zero ? -anchor : anchor;
  const double reach = std::max(u_min, 20.0 / decay);
  double u = std::max(u_min, signed_anchor + 1.0);
  QuadOptions opts;
  opts.rel_tol = 0.5 * tol;
  QuadResult total = at_zero ? integrate(integrand, -u, anchor, opts)
                             : integrate(integrand, anchor, u, opts);
  double bound = remainder(u);
  while (u < reach || (bound > 0.25 * tol * total.value && bound > 1e-300)) {
    const double next = 2.0 * u;
    if (next > kMaxLogSpan) {
      total.converged = false;
      break;
    }
    QuadOptions slab_opts;
    slab_opts.rel_tol = tol;
    slab_opts.abs_tol = 0.25 * tol * total.value;
    total += at_zero ? integrate(integrand, -next, -u, slab_opts)
                     : integrate(integrand, u, next, slab_opts);
    u = next;
    bound = remainder(u);
  }
  // The neglected piece lies in [0, bound].
  total.value += 0.5 * bound;
  total.err += 0.5 * bound;
  return total;
}

QuadResult integrate_bounded(const std::vector<EndFactor>& factors, double lo, double hi,
                             double tol) {
  QuadOptions opts;
  opts.rel_tol = 0.5 * tol;
  return integrate(
      [&](double x) {
        double v = 1.0;
        for (const auto& f : factors) {
          const double g = evaluate_atoms(*f.atoms, x);
          if (!(g > 0.0)) return 0.0;
          v *= f.power == 1.0 ? g : std::pow(g, f.power);
        }
        return v;
      },
      lo, hi, opts);
}

void check_exponent(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw Error(ErrorKind::BadExponent, "p must satisfy 1 < p < inf, got " + std::to_string(p));
  }
}

}  // namespace

QuadResult integrate_power_product(std::span<const PowerFactor> factors, double tol) {
  std::vector<double> all_breaks;
  for (const auto& f : factors) {
    all_breaks.insert(all_breaks.end(), f.fn->interior_breaks().begin(),
                      f.fn->interior_breaks().end());
  }
  std::vector<PiecewiseFn> refined;
  refined.reserve(factors.size());
  for (const auto& f : factors) refined.push_back(refine(*f.fn, all_breaks));
  const PiecewiseFn& shape = refined.front();

  QuadResult total;
  for (std::size_t i = 0; i < shape.num_pieces(); ++i) {
    std::vector<EndFactor> piece_factors;
    bool vanishes = false;
    for (std::size_t m = 0; m < factors.size(); ++m) {
      const AtomList& atoms = refined[m].piece(i);
      if (atoms.empty()) vanishes = true;
      piece_factors.push_back({&atoms, factors[m].power, {}});
    }
    if (vanishes) continue;
    const bool first = i == 0;
    const bool last = shape.is_last(i);
    if (first && last) {
      total += integrate_end(piece_factors, true, 0.0, tol);
      total += integrate_end(piece_factors, false, 0.0, tol);
    } else if (first) {
      total += integrate_end(piece_factors, true, std::log(*shape.upper(i)), tol);
    } else if (last) {
      total += integrate_end(piece_factors, false, std::log(shape.lower(i)), tol);
    } else {
      total += integrate_bounded(piece_factors, shape.lower(i), *shape.upper(i), tol);
    }
  }
  return total;
}

void check_lp_exponents(const PiecewiseFn& g, double p) {
  const auto& first = g.piece(0);
  if (!first.empty() && leading_atom(first, true).exponent * p + 1.0 <= 0.0) {
    throw Error(ErrorKind::NormDiverges, "g^p is not integrable at 0");
  }
  const auto& last = g.piece(g.num_pieces() - 1);
  if (!last.empty() && leading_atom(last, false).exponent * p + 1.0 >= 0.0) {
    throw Error(ErrorKind::NormDiverges, "g^p is not integrable at infinity");
  }
}

QuadResult lp_norm_pow(const PiecewiseFn& g, double p, double tol) {
  check_exponent(p);
  check_lp_exponents(g, p);
  const PowerFactor factor{&g, p};
  QuadResult r = integrate_power_product({&factor, 1}, tol);
  if (!r.converged) {
    throw Error(ErrorKind::NotConverged, "error budget not met within the subdivision cap");
  }
  return r;
}

QuadResult root_of_pow(const QuadResult& v, double p) {
  const double value = std::pow(std::max(v.value, 0.0), 1.0 / p);
  const double up = std::pow(std::max(v.value, 0.0) + v.err, 1.0 / p) - value;
  const double down = value - std::pow(std::max(v.value - v.err, 0.0), 1.0 / p);
  return {value, std::max(up, down), v.converged};
}

QuadResult lp_norm(const PiecewiseFn& g, double p, double tol) {
  return root_of_pow(lp_norm_pow(g, p, tol), p);
}

namespace {

QuadResult weighted_identity(const PiecewiseFn& f, const PiecewiseFn& op_f, double p,
                             double weight, double tol) {
  check_exponent(p);
  check_lp_exponents(op_f, p);
  if (f.is_zero()) return {};
  const PowerFactor factors[] = {{&f, 1.0}, {&op_f, p - 1.0}};
  QuadResult r = integrate_power_product(factors, tol);
  if (!r.converged) {
    throw Error(ErrorKind::NotConverged, "error budget not met within the subdivision cap");
  }
  r.value *= weight;
  r.err *= weight;
  return r;
}

}  // namespace

QuadResult ip_via_parts(const PiecewiseFn& f, double p, double tol) {
  return weighted_identity(f, hardy(f), p, p / (p - 1.0), tol);
}

QuadResult ipstar_via_fubini(const PiecewiseFn& f, double p, double tol) {
  return weighted_identity(f, dual_hardy(f), p, p, tol);
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> xs(n);
  if (n == 1) {
    xs[0] = lo;
    return xs;
  }
  const double step = std::log(hi / lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) xs[i] = lo * std::exp(step * static_cast<double>(i));
  xs.back() = hi;
  return xs;
}

}  // namespace hardylab
