#include <doctest.h>

#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "hardylab/error.hpp"
#include "hardylab/fuzz.hpp"
#include "hardylab/norms.hpp"
#include "hardylab/operators.hpp"

using namespace hardylab;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Independent oracle: int_a^b f split at the breakpoints, via Boost's
// tanh-sinh rule (handles the endpoint singularities of the atoms).
double oracle_integral(const std::function<double(double)>& f, const PiecewiseFn& shape, double a,
                       double b) {
  boost::math::quadrature::tanh_sinh<double> ts;
  std::vector<double> cuts{a};
  for (double x : shape.interior_breaks()) {
    if (x > a && x < b) cuts.push_back(x);
  }
  cuts.push_back(b);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (std::isinf(cuts[i + 1])) {
      total += ts.integrate(f, cuts[i], kInf);
    } else {
      total += ts.integrate(f, cuts[i], cuts[i + 1], 1e-14);
    }
  }
  return total;
}

double oracle_hardy(const PiecewiseFn& f, double x) {
  return oracle_integral([&](double t) { return f(t); }, f, 0.0, x) / x;
}

double oracle_dual(const PiecewiseFn& f, double x) {
  return oracle_integral([&](double t) { return f(t) / t; }, f, x, kInf);
}

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

// Relative to the atom magnitudes: operator outputs are atom sums whose
// terms can cancel, so that is the scale rounding acts on.
bool close_scaled(double a, double b, double scale, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), scale, 1e-300});
}

}  // namespace

TEST_CASE("hardy examples") {
  auto h = hardy(indicator(0.0, 1.0));
  CHECK(h(0.3) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(h(4.0) == doctest::Approx(0.25).epsilon(1e-15));

  const double eps = 0.1;
  auto hs = hardy(indicator(1.0, 1.0 + eps));
  CHECK(hs(0.5) == 0.0);
  CHECK(hs(1.05) == doctest::Approx(1.0 - 1.0 / 1.05).epsilon(1e-14));
  CHECK(hs(3.0) == doctest::Approx(eps / 3.0).epsilon(1e-12));

  try {
    hardy(power_on(-2.0, 0.0, 1.0));
    FAIL("expected DivergentAtZero");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivergentAtZero);
  }
}

TEST_CASE("dual_hardy examples") {
  auto d = dual_hardy(indicator(0.0, 1.0));
  CHECK(d(0.2) == doctest::Approx(-std::log(0.2)).epsilon(1e-14));
  CHECK(d(2.0) == 0.0);

  const double eps = 0.1;
  auto ds = dual_hardy(indicator(1.0, 1.0 + eps));
  CHECK(ds(0.5) == doctest::Approx(std::log1p(eps)).epsilon(1e-13));
  CHECK(ds(1.04) == doctest::Approx(std::log(1.1 / 1.04)).epsilon(1e-12));
  CHECK(ds(2.0) == 0.0);

  try {
    dual_hardy(indicator(1.0, kInf));
    FAIL("expected DivergentAtInfinity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivergentAtInfinity);
  }
}

TEST_CASE("hardy_minus_identity examples") {
  PiecewiseFn phi({1.0}, {{{1.0, 0.0, 0}, {-1.0, 1.0, 0}}, {}}, true);
  auto d = hardy_minus_identity(phi);
  CHECK(d(0.4) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(d(3.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

  auto dchi = hardy_minus_identity(indicator(0.0, 1.0));
  CHECK(dchi(0.5) == 0.0);
  CHECK(dchi(2.0) == doctest::Approx(0.5).epsilon(1e-15));

  PiecewiseFn c({}, {{{2.5, 0.0, 0}}}, true);
  CHECK(hardy_minus_identity(c).is_zero());

  try {
    hardy_minus_identity(power_on(1.0, 0.0, 1.0));
    FAIL("expected NotMonotone");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotMonotone);
  }
}

TEST_CASE("operators are linear and dilation covariant on fuzz inputs") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const PiecewiseFn f = fuzz_generate({.seed = seed});
    const PiecewiseFn g = fuzz_generate({.seed = 1000 + seed});
    const double alpha = 0.7;
    const double beta = 2.3;
    const PiecewiseFn combo = add(scale(f, alpha), scale(g, beta));
    const auto hf = hardy(f), hg = hardy(g), hc = hardy(combo);
    const auto df = dual_hardy(f), dg = dual_hardy(g), dc = dual_hardy(combo);
    const double lambda = 1.9;
    const auto hl = hardy(dilate(f, lambda));
    const auto dl = dual_hardy(dilate(f, lambda));
    for (double x : sample_points(combo, 8)) {
      const double hscale = evaluate_magnitude(hc, x) + alpha * evaluate_magnitude(hf, x) +
                            beta * evaluate_magnitude(hg, x);
      const double dscale = evaluate_magnitude(dc, x) + alpha * evaluate_magnitude(df, x) +
                            beta * evaluate_magnitude(dg, x);
      CHECK(close_scaled(hc(x), alpha * hf(x) + beta * hg(x), hscale, 1e-12));
      CHECK(close_scaled(dc(x), alpha * df(x) + beta * dg(x), dscale, 1e-12));
      CHECK(close_scaled(hl(x), hf(lambda * x), evaluate_magnitude(hf, lambda * x), 1e-12));
      CHECK(close_scaled(dl(x), df(lambda * x), evaluate_magnitude(df, lambda * x), 1e-12));
      CHECK(hf(x) >= 0.0);
      CHECK(df(x) >= 0.0);
    }
  }
}

TEST_CASE("operators agree with independent quadrature on a log grid") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const PiecewiseFn f = fuzz_generate({.seed = seed});
    const auto hf = hardy(f);
    const auto df = dual_hardy(f);
    for (double x : log_grid(0.01, 100.0, 64)) {
      CHECK(close(hf(x), oracle_hardy(f, x), 1e-8));
      CHECK(close(df(x), oracle_dual(f, x), 1e-8));
    }
  }
}

TEST_CASE("compositions stay in the algebra") {
  const auto f = indicator(0.0, 1.0);
  const auto hd = hardy(dual_hardy(f));   // H H* chi: 1 - ln x on (0,1]
  CHECK(hd(0.5) == doctest::Approx(1.0 - std::log(0.5)).epsilon(1e-14));
  const auto dh = dual_hardy(hardy(f.with_nonnegative(true)));
  // H* H chi at x <= 1: int_x^1 dt/t + int_1^inf dt/t^2 = 1 - ln x
  CHECK(dh(0.5) == doctest::Approx(1.0 - std::log(0.5)).epsilon(1e-14));
}
