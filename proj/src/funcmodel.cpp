#include "hardylab/funcmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "hardylab/error.hpp"

namespace hardylab {

namespace {

constexpr double kDropBelow = 1e-300;
constexpr double kCancellation = 1e-13;

double int_pow(double base, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= base;
  return r;
}

void check_atom(const PowerLogAtom& atom) {
  if (!std::isfinite(atom.coef) || !std::isfinite(atom.exponent)) {
    throw Error(ErrorKind::MalformedPartition, "atom coefficient or exponent is not finite");
  }
  if (atom.log_power < 0) {
    throw Error(ErrorKind::MalformedPartition, "negative log power");
  }
  if (atom.log_power > kMaxLogPower) {
    throw Error(ErrorKind::LogPowerCap, "log power " + std::to_string(atom.log_power) +
                                            " exceeds cap " + std::to_string(kMaxLogPower));
  }
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

double PowerLogAtom::operator()(double x) const {
  double v = coef * std::pow(x, exponent);
  if (log_power > 0) v *= int_pow(std::log(x), log_power);
  return v;
}

double PowerLogAtom::at_log(double t) const {
  double v = coef * std::exp(exponent * t);
  if (log_power > 0) v *= int_pow(t, log_power);
  return v;
}

double evaluate_atoms(std::span<const PowerLogAtom> atoms, double x) {
  if (atoms.empty()) return 0.0;
  const double lx = std::log(x);
  double sum = 0.0;
  for (const auto& atom : atoms) {
    double v = atom.coef * std::pow(x, atom.exponent);
    if (atom.log_power > 0) v *= int_pow(lx, atom.log_power);
    sum += v;
  }
  return sum;
}

AtomList collect_terms(AtomList atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const PowerLogAtom& l, const PowerLogAtom& r) {
    if (l.exponent != r.exponent) return l.exponent < r.exponent;
    return l.log_power < r.log_power;
  });
  AtomList out;
  out.reserve(atoms.size());
  std::size_t i = 0;
  while (i < atoms.size()) {
    std::size_t j = i;
    double sum = 0.0;
    double largest = 0.0;
    while (j < atoms.size() && atoms[j].exponent == atoms[i].exponent &&
           atoms[j].log_power == atoms[i].log_power) {
      sum += atoms[j].coef;
      largest = std::max(largest, std::abs(atoms[j].coef));
      ++j;
    }
    const bool merged = j - i > 1;
    const bool noise = merged && std::abs(sum) <= kCancellation * largest;
    if (std::abs(sum) >= kDropBelow && !noise) {
      out.push_back({sum, atoms[i].exponent, atoms[i].log_power});
    }
    i = j;
  }
  return out;
}

AtomList antiderivative_atoms(const PowerLogAtom& atom) {
  const int k = atom.log_power;
  if (atom.exponent == -1.0) {
    if (k + 1 > kMaxLogPower) {
      throw Error(ErrorKind::LogPowerCap, "antiderivative of x^-1 (ln x)^" + std::to_string(k) +
                                              " exceeds the log power cap");
    }
    return {{atom.coef / (k + 1), 0.0, k + 1}};
  }
  // int x^a L^k = x^{a+1} L^k / (a+1) - k/(a+1) int x^a L^{k-1}
  const double inv = 1.0 / (atom.exponent + 1.0);
  AtomList out;
  out.reserve(k + 1);
  double c = atom.coef * inv;
  for (int j = 0; j <= k; ++j) {
    out.push_back({c, atom.exponent + 1.0, k - j});
    c *= -(k - j) * inv;
  }
  return out;
}

AtomList derivative_atoms(const PowerLogAtom& atom) {
  AtomList out;
  if (atom.exponent != 0.0) {
    out.push_back({atom.coef * atom.exponent, atom.exponent - 1.0, atom.log_power});
  }
  if (atom.log_power > 0) {
    out.push_back({atom.coef * atom.log_power, atom.exponent - 1.0, atom.log_power - 1});
  }
  return out;
}

PiecewiseFn::PiecewiseFn() : pieces_(1), nonneg_(true) {}

PiecewiseFn::PiecewiseFn(std::vector<double> breaks, std::vector<AtomList> pieces,
                         bool nonnegative)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)), nonneg_(nonnegative) {
  if (pieces_.size() != breaks_.size() + 1) {
    throw Error(ErrorKind::MalformedPartition, "piece count must be breakpoint count + 1");
  }
  for (std::size_t i = 0; i < breaks_.size(); ++i) {
    if (!std::isfinite(breaks_[i]) || breaks_[i] <= 0.0 ||
        (i > 0 && breaks_[i] <= breaks_[i - 1])) {
      throw Error(ErrorKind::MalformedPartition,
                  "interior breakpoints must be finite, positive and strictly increasing");
    }
  }
  for (const auto& piece : pieces_) {
    for (const auto& atom : piece) check_atom(atom);
  }
}

std::size_t PiecewiseFn::locate(double x) const {
  return static_cast<std::size_t>(std::lower_bound(breaks_.begin(), breaks_.end(), x) -
                                  breaks_.begin());
}

double PiecewiseFn::operator()(double x) const { return evaluate_atoms(pieces_[locate(x)], x); }

double PiecewiseFn::left_limit(std::size_t k) const {
  return evaluate_atoms(pieces_.at(k), breaks_.at(k));
}

double PiecewiseFn::right_limit(std::size_t k) const {
  return evaluate_atoms(pieces_.at(k + 1), breaks_.at(k));
}

PiecewiseFn PiecewiseFn::with_nonnegative(bool flag) const {
  PiecewiseFn out = *this;
  out.nonneg_ = flag;
  return out;
}

bool PiecewiseFn::is_zero() const {
  return std::all_of(pieces_.begin(), pieces_.end(),
                     [](const AtomList& p) { return p.empty(); });
}

PiecewiseFn make_piecewise(std::span<const double> breakpoints, std::vector<AtomList> pieces,
                           bool require_nonneg) {
  if (breakpoints.size() < 2) {
    throw Error(ErrorKind::MalformedPartition, "need at least the breakpoints 0 and inf");
  }
  if (breakpoints.front() != 0.0) {
    throw Error(ErrorKind::MalformedPartition, "first breakpoint must be 0");
  }
  if (breakpoints.back() != std::numeric_limits<double>::infinity()) {
    throw Error(ErrorKind::MalformedPartition, "last breakpoint must be inf");
  }
  if (pieces.size() + 1 != breakpoints.size()) {
    std::ostringstream os;
    os << breakpoints.size() << " breakpoints need " << breakpoints.size() - 1
       << " pieces, got " << pieces.size();
    throw Error(ErrorKind::MalformedPartition, os.str());
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > breakpoints[i - 1])) {
      throw Error(ErrorKind::MalformedPartition, "breakpoints must be strictly increasing");
    }
  }
  std::vector<double> interior(breakpoints.begin() + 1, breakpoints.end() - 1);
  PiecewiseFn f(std::move(interior), std::move(pieces), false);
  if (require_nonneg) {
    if (!sampled_nonnegative(f)) {
      throw Error(ErrorKind::NegativityDetected, "function takes negative values");
    }
    return f.with_nonnegative(true);
  }
  return f;
}

PiecewiseFn indicator(double lo, double hi, double coef) {
  return power_on(0.0, lo, hi, coef);
}

PiecewiseFn power_on(double a, double lo, double hi, double coef) {
  if (!(lo >= 0.0) || !(hi > lo)) {
    throw Error(ErrorKind::MalformedPartition, "need 0 <= lo < hi");
  }
  std::vector<double> breaks;
  std::vector<AtomList> pieces;
  if (lo > 0.0) {
    breaks.push_back(lo);
    pieces.emplace_back();
  }
  pieces.push_back({{coef, a, 0}});
  if (std::isfinite(hi)) {
    breaks.push_back(hi);
    pieces.emplace_back();
  }
  return PiecewiseFn(std::move(breaks), std::move(pieces), coef >= 0.0);
}

double evaluate(const PiecewiseFn& f, double x) { return f(x); }

double evaluate_magnitude(const PiecewiseFn& f, double x) {
  double m = 0.0;
  for (const auto& atom : f.piece(f.locate(x))) m += std::abs(atom(x));
  return m;
}

PiecewiseFn refine(const PiecewiseFn& f, std::span<const double> extra) {
  std::vector<double> breaks(f.interior_breaks().begin(), f.interior_breaks().end());
  for (double b : extra) {
    if (std::isfinite(b) && b > 0.0) breaks.push_back(b);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::vector<AtomList> pieces;
  pieces.reserve(breaks.size() + 1);
  for (double b : breaks) pieces.push_back(f.piece(f.locate(b)));
  pieces.push_back(f.piece(f.num_pieces() - 1));
  return PiecewiseFn(std::move(breaks), std::move(pieces), f.nonnegative());
}

namespace {

template <typename Combine>
PiecewiseFn combine(const PiecewiseFn& f, const PiecewiseFn& g, Combine&& op, bool nonneg) {
  const PiecewiseFn rf = refine(f, g.interior_breaks());
  const PiecewiseFn rg = refine(g, f.interior_breaks());
  std::vector<AtomList> pieces(rf.num_pieces());
  for (std::size_t i = 0; i < rf.num_pieces(); ++i) pieces[i] = op(rf.piece(i), rg.piece(i));
  std::vector<double> breaks(rf.interior_breaks().begin(), rf.interior_breaks().end());
  return PiecewiseFn(std::move(breaks), std::move(pieces), nonneg);
}

}  // namespace

PiecewiseFn add(const PiecewiseFn& f, const PiecewiseFn& g) {
  return combine(
      f, g,
      [](const AtomList& a, const AtomList& b) {
        AtomList all = a;
        all.insert(all.end(), b.begin(), b.end());
        return collect_terms(std::move(all));
      },
      f.nonnegative() && g.nonnegative());
}

PiecewiseFn subtract(const PiecewiseFn& f, const PiecewiseFn& g) {
  return combine(
      f, g,
      [](const AtomList& a, const AtomList& b) {
        AtomList all = a;
        for (auto atom : b) {
          atom.coef = -atom.coef;
          all.push_back(atom);
        }
        return collect_terms(std::move(all));
      },
      false);
}

PiecewiseFn scale(const PiecewiseFn& f, double lambda) {
  std::vector<AtomList> pieces = f.pieces();
  for (auto& piece : pieces) {
    for (auto& atom : piece) atom.coef *= lambda;
    piece = collect_terms(std::move(piece));
  }
  std::vector<double> breaks(f.interior_breaks().begin(), f.interior_breaks().end());
  return PiecewiseFn(std::move(breaks), std::move(pieces), f.nonnegative() && lambda >= 0.0);
}

PiecewiseFn dilate(const PiecewiseFn& f, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorKind::MalformedPartition, "dilation factor must be positive");
  }
  const double log_lambda = std::log(lambda);
  std::vector<double> breaks;
  for (double b : f.interior_breaks()) breaks.push_back(b / lambda);
  std::vector<AtomList> pieces;
  for (const auto& piece : f.pieces()) {
    AtomList out;
    for (const auto& atom : piece) {
      // c (lambda x)^a (ln lambda + ln x)^k, expanded binomially
      const double base = atom.coef * std::pow(lambda, atom.exponent);
      for (int j = 0; j <= atom.log_power; ++j) {
        const double c =
            base * binomial(atom.log_power, j) * int_pow(log_lambda, atom.log_power - j);
        out.push_back({c, atom.exponent, j});
      }
    }
    pieces.push_back(collect_terms(std::move(out)));
  }
  return PiecewiseFn(std::move(breaks), std::move(pieces), f.nonnegative());
}

PiecewiseFn derivative(const PiecewiseFn& f) {
  std::vector<AtomList> pieces;
  for (const auto& piece : f.pieces()) {
    AtomList out;
    for (const auto& atom : piece) {
      auto d = derivative_atoms(atom);
      out.insert(out.end(), d.begin(), d.end());
    }
    pieces.push_back(collect_terms(std::move(out)));
  }
  std::vector<double> breaks(f.interior_breaks().begin(), f.interior_breaks().end());
  return PiecewiseFn(std::move(breaks), std::move(pieces), false);
}

PiecewiseFn antiderivative(const PiecewiseFn& f) {
  std::vector<AtomList> pieces;
  for (const auto& piece : f.pieces()) {
    AtomList out;
    for (const auto& atom : piece) {
      auto g = antiderivative_atoms(atom);
      out.insert(out.end(), g.begin(), g.end());
    }
    pieces.push_back(collect_terms(std::move(out)));
  }
  std::vector<double> breaks(f.interior_breaks().begin(), f.interior_breaks().end());
  return PiecewiseFn(std::move(breaks), std::move(pieces), false);
}

std::vector<double> sample_points(const PiecewiseFn& f, std::size_t per_piece) {
  constexpr double kSpan = 1e8;
  constexpr double kAdjacent = 1e-9;
  std::vector<double> xs;
  xs.reserve(f.num_pieces() * (per_piece + 2));
  const auto breaks = f.interior_breaks();
  for (std::size_t i = 0; i < f.num_pieces(); ++i) {
    double lo = f.lower(i);
    double hi = f.upper(i).value_or(0.0);
    if (f.num_pieces() == 1) {
      lo = 1.0 / kSpan;
      hi = kSpan;
    } else if (i == 0) {
      lo = hi / kSpan;
    } else if (f.is_last(i)) {
      hi = lo * kSpan;
    }
    const double ratio = std::log(hi / lo);
    for (std::size_t j = 0; j < per_piece; ++j) {
      xs.push_back(lo * std::exp(ratio * (static_cast<double>(j) + 0.5) /
                                 static_cast<double>(per_piece)));
    }
  }
  for (double b : breaks) {
    xs.push_back(b * (1.0 - kAdjacent));
    xs.push_back(b * (1.0 + kAdjacent));
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

namespace {

double magnitude(std::span<const PowerLogAtom> atoms, double x) {
  double m = 0.0;
  for (const auto& atom : atoms) m += std::abs(atom(x));
  return m;
}

}  // namespace

bool sampled_nonnegative(const PiecewiseFn& f) {
  for (double x : sample_points(f)) {
    const auto& piece = f.piece(f.locate(x));
    if (evaluate_atoms(piece, x) < -kEvalTol * (1.0 + magnitude(piece, x))) return false;
  }
  return true;
}

bool is_nonincreasing(const PiecewiseFn& f) {
  const PiecewiseFn df = derivative(f);
  for (double x : sample_points(f)) {
    const auto& piece = df.piece(df.locate(x));
    if (evaluate_atoms(piece, x) > kEvalTol * (1.0 + magnitude(piece, x))) return false;
  }
  for (std::size_t k = 0; k < f.interior_breaks().size(); ++k) {
    const double left = f.left_limit(k);
    const double right = f.right_limit(k);
    if (right > left + kEvalTol * (1.0 + std::abs(left) + std::abs(right))) return false;
  }
  return true;
}

}  // namespace hardylab
