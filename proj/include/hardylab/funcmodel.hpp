#pragma once

// Piecewise power-log functions on (0, inf).
//
// A PiecewiseFn is a partition 0 = b0 < b1 < ... < bn = inf together with a
// list of atoms c * x^a * (ln x)^k per interval. Intervals are half-open
// (lo, hi]; the last one is (b_{n-1}, inf). The class is closed under the
// Hardy operator, its dual and antidifferentiation, which is what makes exact
// operator application possible.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace hardylab {

inline constexpr int kMaxLogPower = 8;

struct PowerLogAtom {
  double coef = 0.0;
  double exponent = 0.0;
  int log_power = 0;

  double operator()(double x) const;
  /// Value in terms of t = ln x; avoids forming x when it under/overflows.
  double at_log(double t) const;

  friend bool operator==(const PowerLogAtom&, const PowerLogAtom&) = default;
};

using AtomList = std::vector<PowerLogAtom>;

double evaluate_atoms(std::span<const PowerLogAtom> atoms, double x);

/// Merges atoms with equal (exponent, log_power) and drops negligible ones.
/// A merged coefficient that is pure cancellation noise (below 1e-13 of the
/// largest contribution) is dropped as well. Output is sorted by
/// (exponent, log_power).
AtomList collect_terms(AtomList atoms);

/// Atoms whose sum G satisfies G' = atom on (0, inf). No integration constant.
/// Throws LogPowerCap if the result would need log_power > kMaxLogPower.
AtomList antiderivative_atoms(const PowerLogAtom& atom);

/// Symbolic derivative of a single atom.
AtomList derivative_atoms(const PowerLogAtom& atom);

class PiecewiseFn {
 public:
  /// Identically zero on (0, inf).
  PiecewiseFn();

  /// `breaks` holds only the finite interior breakpoints b1 < ... < b_{n-1};
  /// 0 and inf are implicit. `pieces.size()` must equal `breaks.size() + 1`.
  /// The nonnegativity flag is trusted, not checked; use make_piecewise for
  /// user input.
  PiecewiseFn(std::vector<double> breaks, std::vector<AtomList> pieces,
              bool nonnegative = false);

  std::size_t num_pieces() const { return pieces_.size(); }
  std::span<const double> interior_breaks() const { return breaks_; }
  const AtomList& piece(std::size_t i) const { return pieces_.at(i); }
  const std::vector<AtomList>& pieces() const { return pieces_; }

  double lower(std::size_t i) const { return i == 0 ? 0.0 : breaks_[i - 1]; }
  /// Upper endpoint; empty for the unbounded last piece.
  std::optional<double> upper(std::size_t i) const {
    if (i + 1 == pieces_.size()) return std::nullopt;
    return breaks_[i];
  }
  bool is_last(std::size_t i) const { return i + 1 == pieces_.size(); }

  /// Index of the piece whose (lo, hi] contains x (x > 0).
  std::size_t locate(double x) const;

  double operator()(double x) const;

  /// Limits of the piece formulas at breakpoint b_{i} (i in 1..n-1).
  double left_limit(std::size_t break_index) const;
  double right_limit(std::size_t break_index) const;

  bool nonnegative() const { return nonneg_; }
  PiecewiseFn with_nonnegative(bool flag) const;

  /// True when every piece is empty.
  bool is_zero() const;

 private:
  std::vector<double> breaks_;
  std::vector<AtomList> pieces_;
  bool nonneg_ = false;
};

/// Validating constructor. `breakpoints` is the full sequence 0, b1, ..., inf
/// (the last entry must be +infinity, the first 0).
PiecewiseFn make_piecewise(std::span<const double> breakpoints,
                           std::vector<AtomList> pieces,
                           bool require_nonneg = false);

/// Characteristic function of (lo, hi]; hi may be +infinity.
PiecewiseFn indicator(double lo, double hi, double coef = 1.0);

/// c * x^a on (lo, hi]; hi may be +infinity.
PiecewiseFn power_on(double a, double lo, double hi, double coef = 1.0);

double evaluate(const PiecewiseFn& f, double x);

/// Sum of |atom(x)| over the piece containing x: the scale against which the
/// rounding error of evaluate() is measured.
double evaluate_magnitude(const PiecewiseFn& f, double x);

/// Same function on a finer partition containing `extra` as breakpoints.
PiecewiseFn refine(const PiecewiseFn& f, std::span<const double> extra);

PiecewiseFn add(const PiecewiseFn& f, const PiecewiseFn& g);
PiecewiseFn subtract(const PiecewiseFn& f, const PiecewiseFn& g);
PiecewiseFn scale(const PiecewiseFn& f, double lambda);

/// f_lambda(x) = f(lambda * x), lambda > 0.
PiecewiseFn dilate(const PiecewiseFn& f, double lambda);

/// Piecewise derivative on the same partition; jumps are not represented.
PiecewiseFn derivative(const PiecewiseFn& f);

/// Per-piece antiderivative atoms on the same partition (no constants).
PiecewiseFn antiderivative(const PiecewiseFn& f);

/// Log-spaced interior sample points, `per_piece` per interval plus points
/// adjacent to every finite breakpoint.
std::vector<double> sample_points(const PiecewiseFn& f,
                                  std::size_t per_piece = 256);

/// Tolerance used by the sampling-based shape checks.
inline constexpr double kEvalTol = 1e-12;

bool is_nonincreasing(const PiecewiseFn& f);

/// Sampling check behind make_piecewise(require_nonneg = true).
bool sampled_nonnegative(const PiecewiseFn& f);

}  // namespace hardylab
