#include "hardylab/operators.hpp"

#include <vector>

#include "hardylab/error.hpp"

namespace hardylab {

namespace {

// Antiderivative atoms of `atom`, relabelled to exponent `exponent`. Callers
// multiply or divide by x afterwards, so the relabelling keeps the output
// exponent bit-identical to the input one instead of (a + 1) - 1.
AtomList antiderivative_relabelled(const PowerLogAtom& atom, double exponent) {
  AtomList g = antiderivative_atoms(atom);
  for (auto& term : g) term.exponent = exponent;
  return g;
}

AtomList antiderivative_of_piece(const AtomList& piece) {
  AtomList g;
  for (const auto& atom : piece) {
    auto terms = antiderivative_atoms(atom);
    g.insert(g.end(), terms.begin(), terms.end());
  }
  return g;
}

std::vector<double> breaks_of(const PiecewiseFn& f) {
  return {f.interior_breaks().begin(), f.interior_breaks().end()};
}

}  // namespace

PiecewiseFn hardy(const PiecewiseFn& f) {
  for (const auto& atom : f.piece(0)) {
    if (atom.exponent <= -1.0) {
      throw Error(ErrorKind::DivergentAtZero,
                  "exponent " + std::to_string(atom.exponent) + " is not integrable at 0");
    }
  }
  std::vector<AtomList> out(f.num_pieces());
  double accumulated = 0.0;  // int_0^{lo_i} f
  for (std::size_t i = 0; i < f.num_pieces(); ++i) {
    const AtomList& piece = f.piece(i);
    const AtomList g = antiderivative_of_piece(piece);
    const double g_lo = i == 0 ? 0.0 : evaluate_atoms(g, f.lower(i));
    AtomList atoms;
    for (const auto& atom : piece) {
      auto terms = antiderivative_relabelled(atom, atom.exponent);
      atoms.insert(atoms.end(), terms.begin(), terms.end());
    }
    atoms.push_back({accumulated - g_lo, -1.0, 0});
    out[i] = collect_terms(std::move(atoms));
    if (auto hi = f.upper(i)) accumulated += evaluate_atoms(g, *hi) - g_lo;
  }
  return PiecewiseFn(breaks_of(f), std::move(out), f.nonnegative());
}

PiecewiseFn dual_hardy(const PiecewiseFn& f) {
  const std::size_t last = f.num_pieces() - 1;
  for (const auto& atom : f.piece(last)) {
    if (atom.exponent >= 0.0) {
      throw Error(ErrorKind::DivergentAtInfinity,
                  "exponent " + std::to_string(atom.exponent) +
                      " makes f(t)/t non-integrable at infinity");
    }
  }
  std::vector<AtomList> out(f.num_pieces());
  double tail = 0.0;  // int_{hi_i}^inf f(t)/t dt
  for (std::size_t idx = f.num_pieces(); idx-- > 0;) {
    const AtomList& piece = f.piece(idx);
    AtomList g;  // antiderivative of f(t)/t, exponents equal to those of f
    for (const auto& atom : piece) {
      auto terms = antiderivative_relabelled({atom.coef, atom.exponent - 1.0, atom.log_power},
                                             atom.exponent);
      g.insert(g.end(), terms.begin(), terms.end());
    }
    // H*f(x) = tail + G(hi) - G(x), with G(inf) = 0 on the last piece.
    const double g_hi = f.upper(idx) ? evaluate_atoms(g, *f.upper(idx)) : 0.0;
    AtomList atoms;
    for (auto term : g) {
      term.coef = -term.coef;
      atoms.push_back(term);
    }
    atoms.push_back({tail + g_hi, 0.0, 0});
    out[idx] = collect_terms(std::move(atoms));
    if (idx > 0) tail += g_hi - evaluate_atoms(g, f.lower(idx));
  }
  return PiecewiseFn(breaks_of(f), std::move(out), f.nonnegative());
}

PiecewiseFn hardy_minus_identity(const PiecewiseFn& phi) {
  if (!is_nonincreasing(phi)) {
    throw Error(ErrorKind::NotMonotone, "H(phi) - phi needs a nonincreasing phi");
  }
  return subtract(hardy(phi), phi).with_nonnegative(true);
}

}  // namespace hardylab
