#include "hardylab/duality.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "hardylab/error.hpp"
#include "hardylab/operators.hpp"
#include "hardylab/quadrature.hpp"

namespace hardylab {

namespace {

void require_monotone(const PiecewiseFn& phi) {
  if (!is_nonincreasing(phi)) throw Error(ErrorKind::NotMonotone, "phi is not nonincreasing");
}

void require_nonnegative(const PiecewiseFn& phi) {
  if (!phi.nonnegative() && !sampled_nonnegative(phi)) {
    throw Error(ErrorKind::NegativityDetected, "phi takes negative values");
  }
}

void check_n(long n) {
  if (n < 1) throw Error(ErrorKind::DegenerateInput, "mollifier index n must be >= 1");
}

bool is_polynomial(const AtomList& atoms) {
  return std::all_of(atoms.begin(), atoms.end(), [](const PowerLogAtom& atom) {
    return atom.log_power == 0 && atom.exponent >= 0.0 && atom.exponent == std::floor(atom.exponent);
  });
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Atoms of x -> G(x + h) for a polynomial G.
AtomList shifted(const AtomList& g, double h) {
  AtomList out;
  for (const auto& atom : g) {
    const int m = static_cast<int>(atom.exponent);
    for (int r = 0; r <= m; ++r) {
      out.push_back({atom.coef * binomial(m, r) * std::pow(h, m - r), static_cast<double>(r), 0});
    }
  }
  return out;
}

AtomList antiderivative_of(const AtomList& atoms) {
  AtomList out;
  for (const auto& atom : atoms) {
    auto g = antiderivative_atoms(atom);
    out.insert(out.end(), g.begin(), g.end());
  }
  return out;
}

void append_scaled(AtomList& out, const AtomList& atoms, double c) {
  for (const auto& atom : atoms) out.push_back({c * atom.coef, atom.exponent, atom.log_power});
}

double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

}  // namespace

bool decays_at_infinity(const PiecewiseFn& phi) {
  const auto& last = phi.piece(phi.num_pieces() - 1);
  return std::all_of(last.begin(), last.end(),
                     [](const PowerLogAtom& atom) { return atom.exponent < 0.0; });
}

long find_jump(const PiecewiseFn& phi) {
  const auto breaks = phi.interior_breaks();
  for (std::size_t k = 0; k < breaks.size(); ++k) {
    const double left = phi.left_limit(k);
    const double right = phi.right_limit(k);
    if (std::abs(left - right) > kJumpTol * std::max({1.0, std::abs(left), std::abs(right)})) {
      return static_cast<long>(k);
    }
  }
  return -1;
}

PiecewiseFn phi_to_f(const PiecewiseFn& phi) {
  require_nonnegative(phi);
  require_monotone(phi);
  if (!decays_at_infinity(phi)) {
    throw Error(ErrorKind::NoDecayAtInfinity, "phi does not tend to 0 at infinity");
  }
  if (const long k = find_jump(phi); k >= 0) {
    std::ostringstream os;
    os << "phi jumps at x = " << phi.interior_breaks()[k] << "; mollify first";
    throw Error(ErrorKind::JumpDiscontinuity, os.str());
  }
  // -u d/du (c u^a L^k) = -c a u^a L^k - c k u^a L^{k-1}
  std::vector<AtomList> pieces;
  pieces.reserve(phi.num_pieces());
  for (const auto& piece : phi.pieces()) {
    AtomList out;
    for (const auto& atom : piece) {
      if (atom.exponent != 0.0) {
        out.push_back({-atom.coef * atom.exponent, atom.exponent, atom.log_power});
      }
      if (atom.log_power > 0) {
        out.push_back({-atom.coef * atom.log_power, atom.exponent, atom.log_power - 1});
      }
    }
    pieces.push_back(collect_terms(std::move(out)));
  }
  const auto breaks = phi.interior_breaks();
  return PiecewiseFn({breaks.begin(), breaks.end()}, std::move(pieces), true);
}

PiecewiseFn f_to_phi(const PiecewiseFn& f) { return dual_hardy(f); }

PiecewiseFn mollify(const PiecewiseFn& phi, long n) {
  check_n(n);
  require_monotone(phi);
  for (const auto& piece : phi.pieces()) {
    if (!is_polynomial(piece)) {
      throw Error(ErrorKind::NotRepresentable,
                  "phi_n leaves the atom algebra unless every piece is a polynomial");
    }
  }
  const double h = 1.0 / static_cast<double>(n);
  const auto breaks = phi.interior_breaks();
  std::vector<double> cuts(breaks.begin(), breaks.end());
  for (double b : breaks) {
    if (b - h > 0.0) cuts.push_back(b - h);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<AtomList> antider;
  for (const auto& piece : phi.pieces()) antider.push_back(antiderivative_of(piece));
  auto piece_integral = [&](std::size_t i, double a, double b) {
    return evaluate_atoms(antider[i], b) - evaluate_atoms(antider[i], a);
  };

  const double scale = static_cast<double>(n);
  std::vector<AtomList> pieces;
  for (std::size_t j = 0; j <= cuts.size(); ++j) {
    const double lo = j == 0 ? 0.0 : cuts[j - 1];
    const double probe = j < cuts.size() ? 0.5 * (lo + cuts[j]) : lo + 1.0;
    const std::size_t i = phi.locate(probe);
    const std::size_t k = phi.locate(probe + h);
    AtomList out;
    // n [ G_k(x + h) - G_i(x) + constants from the pieces in between ]
    append_scaled(out, shifted(antider[k], h), scale);
    append_scaled(out, antider[i], -scale);
    if (k != i) {
      double c = 0.0;
      c += evaluate_atoms(antider[i], *phi.upper(i)) - evaluate_atoms(antider[k], phi.lower(k));
      for (std::size_t m = i + 1; m < k; ++m) c += piece_integral(m, phi.lower(m), *phi.upper(m));
      if (c != 0.0) out.push_back({scale * c, 0.0, 0});
    }
    pieces.push_back(collect_terms(std::move(out)));
  }
  return PiecewiseFn(std::move(cuts), std::move(pieces), true);
}

CallableFn mollify_numeric(const PiecewiseFn& phi, long n) {
  check_n(n);
  require_monotone(phi);
  hardy(phi);  // throws DivergentAtZero unless phi is integrable at 0
  const double h = 1.0 / static_cast<double>(n);
  auto shared = std::make_shared<const PiecewiseFn>(phi);
  const double scale = static_cast<double>(n);

  // Quadrature per smooth segment of the window keeps the accuracy relative
  // to the average itself; differencing an antiderivative loses it where
  // phi is small. Segments are in the offset s = t - x, so the window keeps
  // its width when h is below the spacing of doubles near x.
  CallableFn out;
  out.evaluator = [shared, h, scale](double x) {
    const PiecewiseFn& f = *shared;
    std::vector<double> cuts{0.0};
    for (double b : f.interior_breaks()) {
      if (b > x && b < x + h) cuts.push_back(b - x);
    }
    cuts.push_back(h);
    QuadOptions opts;
    opts.rel_tol = 1e-13;
    opts.abs_tol = 1e-300;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const AtomList& atoms = f.piece(f.locate(x + 0.5 * (cuts[i] + cuts[i + 1])));
      if (atoms.empty()) continue;
      total += integrate([&atoms, x](double s) { return evaluate_atoms(atoms, x + s); }, cuts[i],
                         cuts[i + 1], opts)
                   .value;
    }
    return std::max(0.0, scale * total);
  };
  for (double b : phi.interior_breaks()) {
    out.singular_points.push_back(b);
    if (b - h > 0.0) out.singular_points.push_back(b - h);
  }
  std::sort(out.singular_points.begin(), out.singular_points.end());
  const CallableFn base = to_callable(phi);
  out.zero_exponent_hint = 0.0;
  out.tail_exponent_hint = base.tail_exponent_hint;
  if (base.support_hi) out.support_hi = *base.support_hi;
  return out;
}

std::vector<double> equivalence_samples(const PiecewiseFn& phi) {
  const auto breaks = phi.interior_breaks();
  const double lo = breaks.empty() ? 0.1 : breaks.front() / 10.0;
  const double hi = breaks.empty() ? 10.0 : breaks.back() * 10.0;
  std::vector<double> xs = log_grid(lo, hi, 64);
  for (double& x : xs) {
    for (double b : breaks) {
      if (std::abs(x - b) <= 1e-9 * b) x = b * (1.0 + 1e-6);
    }
  }
  return xs;
}

EquivalenceReport equivalence_report(const PiecewiseFn& phi, double p, double pointwise_tol,
                                     double tol) {
  EquivalenceReport r;
  const PiecewiseFn f = phi_to_f(phi);
  const PiecewiseFn diff = hardy_minus_identity(phi);
  const PiecewiseFn hf = hardy(f);
  const PiecewiseFn back = f_to_phi(f);
  for (double x : equivalence_samples(phi)) {
    const double g1 = relative_gap(diff(x), hf(x));
    const double g2 = relative_gap(phi(x), back(x));
    if (g1 > r.max_pointwise_gap_monot1) {
      r.max_pointwise_gap_monot1 = g1;
      r.worst_x_monot1 = x;
    }
    if (g2 > r.max_pointwise_gap_monot2) {
      r.max_pointwise_gap_monot2 = g2;
      r.worst_x_monot2 = x;
    }
  }
  const QuadResult n_diff = lp_norm(diff, p, tol);
  const QuadResult n_hf = lp_norm(hf, p, tol);
  const QuadResult n_phi = lp_norm(phi, p, tol);
  const QuadResult n_back = lp_norm(back, p, tol);
  r.norm_gap_hardy = std::abs(n_diff.value - n_hf.value);
  r.norm_gap_dual = std::abs(n_phi.value - n_back.value);
  // Rounding allowance on top of the quadrature bounds.
  r.norm_budget_hardy = n_diff.err + n_hf.err + 1e-12 * n_diff.value;
  r.norm_budget_dual = n_phi.err + n_back.err + 1e-12 * n_phi.value;
  const bool ok = r.max_pointwise_gap_monot1 <= pointwise_tol &&
                  r.max_pointwise_gap_monot2 <= pointwise_tol &&
                  r.norm_gap_hardy <= r.norm_budget_hardy && r.norm_gap_dual <= r.norm_budget_dual;
  const bool converged = n_diff.converged && n_hf.converged && n_phi.converged && n_back.converged;
  r.verdict = !converged ? Verdict::Inconclusive : ok ? Verdict::Holds : Verdict::Violated;
  return r;
}

EquivalenceReport check_equivalence(const PiecewiseFn& phi, double p, double pointwise_tol,
                                    double tol) {
  EquivalenceReport r = equivalence_report(phi, p, pointwise_tol, tol);
  if (r.verdict == Verdict::Violated) {
    std::ostringstream os;
    os << "gaps: monot1 " << r.max_pointwise_gap_monot1 << " at x = " << r.worst_x_monot1
       << ", monot2 " << r.max_pointwise_gap_monot2 << " at x = " << r.worst_x_monot2
       << ", norms " << r.norm_gap_hardy << " / " << r.norm_gap_dual;
    throw Error(ErrorKind::EquivalenceViolated, os.str());
  }
  return r;
}

}  // namespace hardylab
