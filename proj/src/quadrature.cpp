#include "hardylab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace hardylab {

namespace {

// Kronrod abscissae; odd indices are the 10-point Gauss nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double a, b;
  QuadResult r;
  bool operator<(const Panel& o) const { return r.err < o.r.err; }
};

}  // namespace

QuadResult gauss_kronrod21(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[10];
  double gauss = 0.0;
  double magnitude = std::abs(kronrod);
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    magnitude += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  QuadResult r;
  r.value = kronrod * half;
  const double rounding = 50.0 * kEps * magnitude * std::abs(half);
  r.err = std::max(std::abs((kronrod - gauss) * half), rounding);
  if (!std::isfinite(r.value) || !std::isfinite(r.err)) {
    r.converged = false;
    r.err = std::numeric_limits<double>::infinity();
  }
  return r;
}

QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opts) {
  if (a == b) return {};
  std::priority_queue<Panel> open;
  QuadResult first = gauss_kronrod21(f, a, b);
  if (!first.converged) return first;
  open.push({a, b, first});
  double value = first.value;
  double err = first.err;
  double frozen_err = 0.0;  // panels that can no longer be bisected
  double frozen_value = 0.0;
  std::size_t count = 1;
  auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(value)); };
  while (!open.empty() && err > target()) {
    if (count >= opts.max_intervals) break;
    Panel p = open.top();
    open.pop();
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b) ||
        std::abs(p.b - p.a) <= 4.0 * kEps * std::max(std::abs(p.a), std::abs(p.b))) {
      frozen_err += p.r.err;
      frozen_value += p.r.value;
      continue;
    }
    QuadResult left = gauss_kronrod21(f, p.a, mid);
    QuadResult right = gauss_kronrod21(f, mid, p.b);
    if (!left.converged || !right.converged) return {value, std::numeric_limits<double>::infinity(), false};
    value += left.value + right.value - p.r.value;
    err += left.err + right.err - p.r.err;
    open.push({p.a, mid, left});
    open.push({mid, p.b, right});
    ++count;
  }
  // Re-sum to shed drift from the incremental updates.
  QuadResult total{frozen_value, frozen_err, true};
  while (!open.empty()) {
    total.value += open.top().r.value;
    total.err += open.top().r.err;
    open.pop();
  }
  total.converged = total.err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total.value));
  return total;
}

QuadResult integrate_singular(const Integrand& f, double a, double b, bool singular_lo,
                              bool singular_hi, const QuadOptions& opts) {
  if (singular_lo && singular_hi) {
    const double mid = 0.5 * (a + b);
    QuadResult r = integrate_singular(f, a, mid, true, false, opts);
    r += integrate_singular(f, mid, b, false, true, opts);
    return r;
  }
  if (!singular_lo && !singular_hi) return integrate(f, a, b, opts);
  const double w = b - a;
  const double end = singular_lo ? a : b;
  const double dir = singular_lo ? 1.0 : -1.0;
  auto g = [&](double u) { return 2.0 * w * u * f(end + dir * w * u * u); };
  // Below u0 the offset w u^2 is lost in the rounding of `end`. The sliver
  // [0, u0] is closed with a local power fit g ~ u^beta through u0, 2 u0.
  const double u0 = std::sqrt(0x1p20 * std::numeric_limits<double>::epsilon() * std::abs(end) / w);
  if (!(u0 > 0.0) || u0 >= 1e-3) return integrate(g, 0.0, 1.0, opts);
  QuadResult r = integrate(g, u0, 1.0, opts);
  const double g0 = g(u0);
  const double g1 = g(2.0 * u0);
  const double g2 = g(4.0 * u0);
  auto power_fit = [](double lo, double hi) {
    if (lo == 0.0 || !(hi / lo > 0.0)) return 1.0;
    return std::clamp(std::log2(hi / lo), -0.5, 8.0);
  };
  const double sliver = g0 * u0 / (power_fit(g0, g1) + 1.0);
  const double alt = g0 * u0 / (power_fit(g1, g2) + 1.0);
  r.value += sliver;
  r.err += std::abs(sliver - alt) + 1e-6 * std::abs(sliver);
  return r;
}

}  // namespace hardylab
