#include <doctest.h>

#include <cmath>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>

#include "hardylab/error.hpp"
#include "hardylab/fuzz.hpp"
#include "hardylab/verify.hpp"

using namespace hardylab;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGrid[] = {1.1, 1.25, 1.5, 1.75, 2.0, 2.5, 3.0, 4.0, 8.0};

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected hardylab::Error");
  return ErrorKind::ParseError;
}

}  // namespace

TEST_CASE("sharp_constants examples") {
  const auto c2 = sharp_constants(2.0);
  CHECK(c2.lower == 1.0);
  CHECK(c2.upper == 1.0);
  const auto c3 = sharp_constants(3.0);
  CHECK(c3.lower == doctest::Approx(std::cbrt(2.0)).epsilon(1e-15));
  CHECK(c3.upper == 2.0);
  CHECK(c3.p_conj == 1.5);
  const auto c15 = sharp_constants(1.5);
  CHECK(c15.lower == 0.5);
  CHECK(c15.upper == doctest::Approx(0.6299605249474366).epsilon(1e-15));
  CHECK(kind_of([] { sharp_constants(1.0); }) == ErrorKind::BadExponent);
  CHECK(kind_of([] { crude_constants(0.5); }) == ErrorKind::BadExponent);
}

TEST_CASE("crude constants strictly contain the sharp ones") {
  for (double p : kGrid) {
    const auto s = sharp_constants(p);
    const auto c = crude_constants(p);
    CHECK(s.lower <= s.upper);
    CHECK(s.p_conj == doctest::Approx(p / (p - 1.0)).epsilon(1e-15));
    if (p != 2.0) {
      CHECK(c.lower < s.lower);
      CHECK(s.upper < c.upper);
    }
  }
}

TEST_CASE("judge is three-valued") {
  CHECK(judge(0.1, 1e-3, 1.0, true) == Verdict::Holds);
  CHECK(judge(-0.1, 1e-3, 1.0, true) == Verdict::Violated);
  CHECK(judge(1e-4, 1e-3, 1.0, true) == Verdict::Inconclusive);
  CHECK(judge(-1e-12, 1e-10, 1.0, true) == Verdict::Holds);
  CHECK(judge(0.1, 1e-3, 1.0, false) == Verdict::Inconclusive);
  CHECK(combine(Verdict::Holds, Verdict::Inconclusive) == Verdict::Inconclusive);
  CHECK(combine(Verdict::Inconclusive, Verdict::Violated) == Verdict::Violated);
}

TEST_CASE("verify_theorem1 on the indicator") {
  const auto chi = indicator(0.0, 1.0);
  // ||H chi||_p^p = p', ||H* chi||_p^p = Gamma(p + 1)
  for (double p : {1.5, 2.0, 3.0}) {
    const auto r = verify_theorem1(chi, p);
    const double expected = std::pow(boost::math::tgamma(p + 1.0) / (p / (p - 1.0)), 1.0 / p);
    CAPTURE(p);
    CHECK(std::abs(r.ratio - expected) <= r.ratio_err + 1e-14);
    CHECK(r.ratio_err < 1e-9);
    CHECK(r.verdict_lower == Verdict::Holds);
    CHECK(r.verdict_upper == Verdict::Holds);
  }
  CHECK(verify_theorem1(chi, 3.0).ratio == doctest::Approx(std::cbrt(4.0)).epsilon(1e-10));
  CHECK(verify_theorem1(chi, 1.5).ratio == doctest::Approx(0.5812).epsilon(1e-4));
}

TEST_CASE("verify_crude on the indicator") {
  const auto chi = indicator(0.0, 1.0);
  const auto r = verify_crude(chi, 3.0);
  CHECK(r.bounds.lower == doctest::Approx(2.0 / 3.0));
  CHECK(r.bounds.upper == 3.0);
  CHECK(r.verdict_lower == Verdict::Holds);
  CHECK(r.verdict_upper == Verdict::Holds);
  const auto r2 = verify_crude(chi, 2.0);
  CHECK(r2.bounds.lower == 0.5);
  CHECK(r2.ratio == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("verify_theorem2 on the indicator") {
  const auto chi = indicator(0.0, 1.0);
  const auto r2 = verify_theorem2(chi, 2.0);
  CHECK(r2.ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r2.verdict_lower == Verdict::Holds);
  CHECK(r2.verdict_upper == Verdict::Holds);
  // ||chi||_3 = 1, ||x^{-1} chi_(1,inf)||_3^3 = 1/2: ratio sits on the lower constant
  const auto r3 = verify_theorem2(chi, 3.0);
  CHECK(std::abs(r3.ratio - std::cbrt(2.0)) <= 1e-9);
  CHECK(r3.verdict_lower == Verdict::Holds);
  CHECK(r3.verdict_upper == Verdict::Holds);
}

TEST_CASE("verify errors") {
  CHECK(kind_of([] { verify_theorem2(power_on(1.0, 0.0, 1.0), 2.0); }) == ErrorKind::NotMonotone);
  CHECK(kind_of([] { verify_theorem2(indicator(0.0, kInf), 2.0); }) ==
        ErrorKind::NoDecayAtInfinity);
  CHECK(kind_of([] { verify_theorem1(PiecewiseFn(), 2.0); }) == ErrorKind::DegenerateInput);
  CHECK(kind_of([] { verify_theorem1(indicator(0.0, 1.0, 1e-120), 2.0); }) ==
        ErrorKind::DegenerateInput);
  CHECK(kind_of([] { verify_theorem1(indicator(0.0, 1.0), 1.0); }) == ErrorKind::BadExponent);
  CHECK(kind_of([] { verify_theorem1(indicator(0.0, 1.0, -1.0), 2.0); }) ==
        ErrorKind::NegativityDetected);
  // 1 on (0, 1], x^{-1/2} after: nonincreasing but not in L^2
  const PiecewiseFn slow({1.0}, {{{1.0, 0.0, 0}}, {{1.0, -0.5, 0}}}, true);
  CHECK(kind_of([&] { verify_theorem2(slow, 2.0); }) == ErrorKind::NormDiverges);
}

TEST_CASE("theorem 1 and the crude bound hold on fuzz inputs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto f = fuzz_generate({.seed = seed});
    for (double p : kGrid) {
      CAPTURE(seed);
      CAPTURE(p);
      const auto sharp = verify_theorem1(f, p);
      const auto crude = verify_crude(f, p);
      CHECK(sharp.verdict_lower != Verdict::Violated);
      CHECK(sharp.verdict_upper != Verdict::Violated);
      CHECK(crude.verdict_lower == Verdict::Holds);
      CHECK(crude.verdict_upper == Verdict::Holds);
      CHECK(sharp.ratio == crude.ratio);
    }
  }
}

TEST_CASE("verdicts are stable under tolerance refinement") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto f = fuzz_generate({.seed = seed});
    for (double p : {1.25, 3.0}) {
      const auto coarse = verify_theorem1(f, p, 1e-5);
      const auto fine = verify_theorem1(f, p, 1e-10);
      if (coarse.verdict_lower == Verdict::Holds) CHECK(fine.verdict_lower != Verdict::Violated);
      if (coarse.verdict_upper == Verdict::Holds) CHECK(fine.verdict_upper != Verdict::Violated);
      CHECK(fine.error_budget <= coarse.error_budget * 1.000001);
    }
  }
}
