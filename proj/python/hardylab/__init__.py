"""Hardy operator toolkit: exact H, H* and H phi - phi, L^p norms with error bounds."""

import json as _json

from ._hardylab import (
    HardylabError,
    PiecewiseFn,
    QuadResult,
    dual_hardy,
    f_to_phi,
    family,
    fuzz_generate,
    hardy,
    hardy_minus_identity,
    indicator,
    ip_via_parts,
    ipstar_via_fubini,
    limit_ratio,
    lp_norm,
    mollify,
    parse,
    phi_to_f,
    power_on,
    run_cli,
)
from . import _hardylab

DEFAULT_P_GRID = (1.1, 1.25, 1.5, 1.75, 2.0, 2.5, 3.0, 4.0, 8.0)


def _fn(f):
    return parse(f) if isinstance(f, str) else f


def verify(which, f, p, tol=1e-9):
    """Report dict for which in {"thm1", "thm2", "crude"}; f may be a DSL string."""
    return _json.loads(_hardylab._verify(which, _fn(f), p, tol))


def sweep(kind, p, grid=None, tol=1e-9):
    """Dict with "records", "csv" and "estimated_limit" for kind in {"step", "zero", "inf"}."""
    return _json.loads(_hardylab._sweep(kind, p, grid, tol))


def equivalence(phi, p, pointwise_tol=1e-8, tol=1e-9):
    """Duality report dict for a nonincreasing phi."""
    return _json.loads(_hardylab._equivalence(_fn(phi), p, pointwise_tol, tol))


def fuzz_campaign(seed, count, monotone=False, ps=DEFAULT_P_GRID, tol=1e-9):
    """Aggregate pass/fail counts over seeds seed .. seed + count - 1."""
    return _json.loads(_hardylab._fuzz_campaign(seed, count, monotone, list(ps), tol))


__all__ = [
    "DEFAULT_P_GRID",
    "HardylabError",
    "PiecewiseFn",
    "QuadResult",
    "dual_hardy",
    "equivalence",
    "f_to_phi",
    "family",
    "fuzz_campaign",
    "fuzz_generate",
    "hardy",
    "hardy_minus_identity",
    "indicator",
    "ip_via_parts",
    "ipstar_via_fubini",
    "limit_ratio",
    "lp_norm",
    "mollify",
    "parse",
    "phi_to_f",
    "power_on",
    "run_cli",
    "sweep",
    "verify",
]
