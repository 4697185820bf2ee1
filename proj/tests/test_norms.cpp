#include <doctest.h>

#include <cmath>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>

#include "hardylab/error.hpp"
#include "hardylab/fuzz.hpp"
#include "hardylab/norms.hpp"
#include "hardylab/operators.hpp"

using namespace hardylab;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected hardylab::Error");
  return ErrorKind::ParseError;
}

double pow_value(const QuadResult& norm, double p) { return std::pow(norm.value, p); }

// |x - 1|^{-1/2} on [1, 2], the Remark's function for p = 2.
CallableFn remark_fn() {
  CallableFn f;
  f.evaluator = [](double x) { return x > 1.0 && x <= 2.0 ? 1.0 / std::sqrt(x - 1.0) : 0.0; };
  f.singular_points = {1.0, 2.0};
  f.support_lo = 1.0;
  f.support_hi = 2.0;
  return f;
}

}  // namespace

TEST_CASE("lp_norm examples") {
  const auto chi = indicator(0.0, 1.0);
  const auto n2 = lp_norm_pow(hardy(chi), 2.0);
  CHECK(n2.converged);
  CHECK(n2.value == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(std::abs(n2.value - 2.0) <= n2.err + 1e-12);

  const auto n3 = lp_norm_pow(dual_hardy(chi), 3.0);
  CHECK(n3.value == doctest::Approx(6.0).epsilon(1e-10));

  const auto n = lp_norm(hardy(chi), 2.0);
  CHECK(n.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));

  CHECK(kind_of([] { lp_norm(power_on(-0.5, 1.0, kInf), 2.0); }) == ErrorKind::NormDiverges);
  CHECK(kind_of([] { lp_norm(power_on(-0.5, 0.0, 1.0), 2.0); }) == ErrorKind::NormDiverges);
  CHECK(kind_of([&] { lp_norm(chi, 1.0); }) == ErrorKind::BadExponent);
}

TEST_CASE("lp_norm matches closed forms for the indicator across p") {
  const auto chi = indicator(0.0, 1.0);
  for (double p : {1.1, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0, 8.0}) {
    CAPTURE(p);
    // ||H chi||_p^p = 1 + 1/(p-1) = p';  ||H* chi||_p^p = int_0^1 (-ln x)^p = Gamma(p+1)
    const auto h = lp_norm_pow(hardy(chi), p);
    const auto d = lp_norm_pow(dual_hardy(chi), p);
    const double hp = p / (p - 1.0);
    const double dp = boost::math::tgamma(p + 1.0);
    CHECK(std::abs(h.value - hp) <= h.err + 1e-12 * hp);
    CHECK(std::abs(d.value - dp) <= d.err + 1e-12 * dp);
    CHECK(h.err <= 1e-9 * hp);
  }
}

TEST_CASE("lp_norm on slowly decaying tails") {
  // x^{-1/p - eps} on (1, inf): ||.||_p^p = 1/(eps p)
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const double p = 3.0;
    const auto g = power_on(-1.0 / p - eps, 1.0, kInf);
    const auto r = lp_norm_pow(g, p);
    CAPTURE(eps);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.0 / (eps * p)).epsilon(1e-8));
  }
}

TEST_CASE("lp_norm scales linearly") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto f = hardy(fuzz_generate({.seed = seed}));
    for (double lambda : {0.3, 2.0, 17.0}) {
      const auto a = lp_norm(scale(f, lambda), 2.5);
      const auto b = lp_norm(f, 2.5);
      CHECK(a.value == doctest::Approx(lambda * b.value).epsilon(1e-12));
    }
  }
}

TEST_CASE("error bounds survive refinement") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto f = fuzz_generate({.seed = seed});
    for (double p : {1.5, 3.0}) {
      for (const auto& g : {hardy(f), dual_hardy(f)}) {
        const auto coarse = lp_norm_pow(g, p, 1e-6);
        const auto fine = lp_norm_pow(g, p, 1e-7);
        CHECK(coarse.converged);
        CHECK(std::abs(fine.value - coarse.value) <= coarse.err);
      }
    }
  }
}

TEST_CASE("identity estimators examples") {
  const auto chi = indicator(0.0, 1.0);
  CHECK(ip_via_parts(chi, 2.0).value == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(ip_via_parts(chi, 3.0).value == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(ipstar_via_fubini(chi, 2.0).value == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(ipstar_via_fubini(chi, 3.0).value == doctest::Approx(6.0).epsilon(1e-10));
  const PiecewiseFn zero;
  CHECK(ip_via_parts(zero, 2.0).value == 0.0);
  CHECK(ipstar_via_fubini(zero, 2.0).value == 0.0);
}

TEST_CASE("identity estimators agree with direct norms on fuzz inputs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto f = fuzz_generate({.seed = seed});
    const auto hf = hardy(f);
    const auto df = dual_hardy(f);
    for (double p : {1.25, 1.5, 2.0, 2.5, 3.0, 4.0}) {
      CAPTURE(seed);
      CAPTURE(p);
      const auto direct_h = lp_norm_pow(hf, p);
      const auto direct_d = lp_norm_pow(df, p);
      const auto parts = ip_via_parts(f, p);
      const auto fubini = ipstar_via_fubini(f, p);
      CHECK(std::abs(parts.value - direct_h.value) <= parts.err + direct_h.err);
      CHECK(std::abs(fubini.value - direct_d.value) <= fubini.err + direct_d.err);
    }
  }
}

TEST_CASE("p = 2 identity and crude bounds on fuzz inputs") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto f = fuzz_generate({.seed = seed});
    const auto h2 = lp_norm_pow(hardy(f), 2.0);
    const auto d2 = lp_norm_pow(dual_hardy(f), 2.0);
    CHECK(std::abs(h2.value - d2.value) <= h2.err + d2.err);
    for (double p : {1.1, 1.5, 3.0, 8.0}) {
      const double h = lp_norm(hardy(f), p).value;
      const double d = lp_norm(dual_hardy(f), p).value;
      CHECK(d >= (p - 1.0) / p * h * (1 - 1e-9));
      CHECK(d <= p * h * (1 + 1e-9));
    }
  }
}

TEST_CASE("numeric operators match the exact ones") {
  const auto chi = indicator(0.0, 1.0);
  const auto grid = log_grid(0.01, 100.0, 64);
  const auto nh = numeric_hardy(to_callable(chi), grid);
  const auto nd = numeric_dual_hardy(to_callable(chi), grid);
  const auto h = hardy(chi);
  for (double x : grid) {
    CHECK(nh(x) == doctest::Approx(h(x)).epsilon(1e-8));
    if (x <= 1.0) CHECK(nd(x) == doctest::Approx(-std::log(x)).epsilon(1e-8).scale(1e-8));
  }
  const double eps = 0.1;
  const auto step = numeric_dual_hardy(to_callable(indicator(1.0, 1.0 + eps)), grid);
  CHECK(step(0.5) == doctest::Approx(std::log1p(eps)).epsilon(1e-10));
  CHECK(step(0.9) == doctest::Approx(step(0.2)).epsilon(1e-12));
  CHECK(kind_of([&] { numeric_dual_hardy(to_callable(indicator(1.0, kInf)), grid); }) ==
        ErrorKind::DivergentAtInfinity);
  CHECK(kind_of([&] { numeric_hardy(to_callable(power_on(-1.0, 0.0, 1.0)), grid); }) ==
        ErrorKind::DivergentAtZero);
}

TEST_CASE("numeric operators on random inputs agree with the algebra") {
  const auto grid = log_grid(0.01, 100.0, 64);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto f = fuzz_generate({.seed = seed});
    const auto nh = numeric_hardy(to_callable(f), grid);
    const auto nd = numeric_dual_hardy(to_callable(f), grid);
    const auto h = hardy(f);
    const auto d = dual_hardy(f);
    for (double x : grid) {
      CHECK(nh(x) == doctest::Approx(h(x)).epsilon(1e-8));
      CHECK(nd(x) == doctest::Approx(d(x)).epsilon(1e-8));
    }
  }
}

TEST_CASE("remark function through the callable path") {
  const auto f = remark_fn();
  const auto grid = log_grid(0.1, 100.0, 200);
  const auto hf = numeric_hardy(f, grid);
  CHECK(hf(0.5) == 0.0);
  CHECK(hf(2.0) == doctest::Approx(1.0).epsilon(1e-9));
  for (double x : {1.5, 2.0, 3.0, 10.0, 50.0}) CHECK(hf(x) <= 2.0 / x * (1.0 + 1e-12));
  // Hf = 2 sqrt(x-1)/x on (1,2], 2/x after:
  // int_1^2 4(x-1)/x^2 + int_2^inf 4/x^2 = 4 (ln 2 - 1/2) + 2 = 4 ln 2
  const double exact = 4.0 * std::log(2.0);
  const auto n = lp_norm_callable(hf, 2.0);
  CHECK(n.value * n.value == doctest::Approx(exact).epsilon(1e-7));
}
