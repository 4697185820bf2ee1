#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "hardylab/error.hpp"
#include "hardylab/funcmodel.hpp"

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

// Evaluates sum of atoms' symbolic derivatives, collected.
AtomList derive_all(const AtomList& atoms) {
  AtomList out;
  for (const auto& atom : atoms) {
    auto d = derivative_atoms(atom);
    out.insert(out.end(), d.begin(), d.end());
  }
  return collect_terms(out);
}

}  // namespace

TEST_CASE("make_piecewise builds characteristic functions") {
  const double bp[] = {0.0, 1.0, kInf};
  auto chi = make_piecewise(bp, {{{1.0, 0.0, 0}}, {}});
  CHECK(chi(0.5) == 1.0);
  CHECK(chi(2.0) == 0.0);
  CHECK(chi(1.0) == 1.0);  // (lo, hi] convention

  const double eps = 0.25;
  const double step_bp[] = {0.0, 1.0, 1.0 + eps, kInf};
  auto step = make_piecewise(step_bp, {{}, {{1.0, 0.0, 0}}, {}}, true);
  CHECK(step.nonnegative());
  CHECK(step(0.5) == 0.0);
  CHECK(step(1.1) == 1.0);
  CHECK(step(1.3) == 0.0);
}

TEST_CASE("make_piecewise rejects bad input") {
  const double neg_bp[] = {0.0, 1.0, kInf};
  CHECK(kind_of([&] { make_piecewise(neg_bp, {{{-1.0, 0.0, 0}}, {}}, true); }) ==
        ErrorKind::NegativityDetected);
  const double unsorted[] = {0.0, 2.0, 1.0, kInf};
  CHECK(kind_of([&] { make_piecewise(unsorted, {{}, {}, {}}); }) ==
        ErrorKind::MalformedPartition);
  const double no_inf[] = {0.0, 1.0, 2.0};
  CHECK(kind_of([&] { make_piecewise(no_inf, {{}, {}}); }) == ErrorKind::MalformedPartition);
  const double bp[] = {0.0, kInf};
  CHECK(kind_of([&] { make_piecewise(bp, {{{1.0, 0.0, 9}}}); }) == ErrorKind::LogPowerCap);
  // -ln x is positive on (0, 1) even though its only atom is negative
  const double log_bp[] = {0.0, 1.0, kInf};
  CHECK_NOTHROW(make_piecewise(log_bp, {{{-1.0, 0.0, 1}}, {}}, true));
}

TEST_CASE("evaluate") {
  const double bp[] = {0.0, 1.0, kInf};
  auto f = make_piecewise(bp, {{}, {{1.0, -0.5, 1}}});
  const double e2 = std::exp(2.0);
  // x^{-1/2} ln x at e^2 is 2/e
  CHECK(f(e2) == doctest::Approx(0.7357588823428847).epsilon(1e-15));
  CHECK(f(0.3) == 0.0);
}

TEST_CASE("evaluate is positively homogeneous in the coefficient") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    PiecewiseFn f({1.5}, {{{u(rng), u(rng), static_cast<int>(rng() % 4)}},
                          {{u(rng), u(rng), static_cast<int>(rng() % 4)}}});
    const double x = std::exp(u(rng));
    // binary scalings commute with rounding, so equality is exact
    for (double lambda : {0.25, 2.0, 8.0}) {
      CHECK(evaluate(scale(f, lambda), x) == lambda * evaluate(f, x));
    }
    const double lambda = 0.5 + std::abs(u(rng));
    CHECK(evaluate(scale(f, lambda), x) ==
          doctest::Approx(lambda * evaluate(f, x)).epsilon(1e-15));
  }
}

TEST_CASE("antiderivative_atoms examples") {
  CHECK(antiderivative_atoms({1.0, 0.0, 0}) == AtomList{{1.0, 1.0, 0}});
  CHECK(antiderivative_atoms({1.0, -1.0, 0}) == AtomList{{1.0, 0.0, 1}});
  // int ln x = x ln x - x
  CHECK(antiderivative_atoms({1.0, 0.0, 1}) == AtomList{{1.0, 1.0, 1}, {-1.0, 1.0, 0}});
  CHECK(kind_of([] { antiderivative_atoms({1.0, -1.0, 8}); }) == ErrorKind::LogPowerCap);
}

TEST_CASE("antiderivative differentiates back to the input atom") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> expo(-3.0, 3.0);
  std::uniform_real_distribution<double> coef(-5.0, 5.0);
  for (int trial = 0; trial < 500; ++trial) {
    PowerLogAtom atom{coef(rng), expo(rng), static_cast<int>(rng() % 4)};
    if (trial % 10 == 0) atom.exponent = -1.0;
    const AtomList back = derive_all(antiderivative_atoms(atom));
    REQUIRE(back.size() == 1);
    CHECK(back[0].log_power == atom.log_power);
    CHECK(back[0].exponent == doctest::Approx(atom.exponent).epsilon(1e-12));
    CHECK(back[0].coef == doctest::Approx(atom.coef).epsilon(1e-12));
  }
}

TEST_CASE("derivative examples") {
  // 1 - x on (0, 1]
  PiecewiseFn phi({1.0}, {{{1.0, 0.0, 0}, {-1.0, 1.0, 0}}, {}});
  auto d = derivative(phi);
  CHECK(d(0.5) == -1.0);
  CHECK(d(2.0) == 0.0);

  PiecewiseFn inv({1.0}, {{}, {{1.0, -1.0, 0}}});
  CHECK(derivative(inv)(3.0) == doctest::Approx(-1.0 / 9.0));

  // x ln x on (1, e): derivative ln x + 1, checked by central differences
  PiecewiseFn xlogx({1.0, std::exp(1.0)}, {{}, {{1.0, 1.0, 1}}, {}});
  auto dx = derivative(xlogx);
  CHECK(dx.piece(1) == AtomList{{1.0, 0.0, 0}, {1.0, 0.0, 1}});
  for (double x : {1.1, 1.5, 2.0, 2.6}) {
    const double h = 1e-6;
    const double fd = (xlogx(x + h) - xlogx(x - h)) / (2 * h);
    CHECK(dx(x) == doctest::Approx(fd).epsilon(1e-8));
  }
}

TEST_CASE("derivative of the piecewise antiderivative reproduces f") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> expo(-3.0, 3.0);
  std::uniform_real_distribution<double> coef(0.1, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<AtomList> pieces(3);
    for (auto& piece : pieces) {
      for (int j = 0; j < 2; ++j) {
        piece.push_back({coef(rng), expo(rng), static_cast<int>(rng() % 4)});
      }
      piece = collect_terms(piece);
    }
    PiecewiseFn f({0.7, 3.1}, pieces);
    auto back = derivative(antiderivative(f));
    for (double x : sample_points(f, 16)) {
      CHECK(back(x) == doctest::Approx(f(x)).epsilon(1e-10));
    }
  }
}

TEST_CASE("is_nonincreasing") {
  CHECK(is_nonincreasing(indicator(0.0, 1.0)));
  CHECK_FALSE(is_nonincreasing(power_on(1.0, 0.0, 1.0)));
  CHECK(is_nonincreasing(power_on(-0.5, 0.0, kInf)));
  // upward jump at 2
  PiecewiseFn jump({1.0, 2.0}, {{{1.0, 0.0, 0}}, {}, {{1.0, -2.0, 0}}});
  CHECK_FALSE(is_nonincreasing(jump));
}

TEST_CASE("collect_terms merges and drops cancellation noise") {
  AtomList atoms{{1.0, 0.5, 0}, {2.0, 0.5, 0}, {1.0, -1.0, 1}, {-1.0, -1.0, 1},
                 {1e-301, 2.0, 0}};
  CHECK(collect_terms(atoms) == AtomList{{3.0, 0.5, 0}});
}

TEST_CASE("dilation and refinement keep the function") {
  PiecewiseFn f({0.5, 2.0}, {{{1.0, 0.3, 1}}, {{2.0, -0.5, 2}}, {{1.5, -1.5, 0}}});
  auto g = dilate(f, 1.7);
  auto r = refine(f, std::vector<double>{0.9, 3.0});
  CHECK(r.num_pieces() == 5);
  for (double x : {0.1, 0.4, 0.8, 1.3, 2.5, 7.0}) {
    CHECK(g(x) == doctest::Approx(f(1.7 * x)).epsilon(1e-12));
    CHECK(r(x) == f(x));
  }
}
