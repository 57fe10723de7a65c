"""Verification and search toolkit for left-invariant contact connections.

Thin dict-based wrappers over the compiled module; every function accepts and
returns plain Python data.
"""

import json as _json

from _ctwist import CtwistError, __version__
from _ctwist import check as _check
from _ctwist import classify as _classify
from _ctwist import example as _example
from _ctwist import fiber_diagnostics as _fiber_diagnostics
from _ctwist import scan as _scan
from _ctwist import solve as _solve

__all__ = [
    "CtwistError",
    "__version__",
    "example",
    "check",
    "classify",
    "scan",
    "solve",
    "fiber_diagnostics",
]


def example(which, parameters=None, stage="flat"):
    """Built-in example document (which in {"1", "2", "3a", "3b"})."""
    params = {k: str(v) for k, v in (parameters or {}).items()}
    return _json.loads(_example(str(which), params, stage))


def check(document):
    """Axiom report, repair ledger and post-repair status."""
    return _json.loads(_check(_json.dumps(document)))


def classify(document):
    """Curvature classification of the document's (repaired) connection."""
    return _json.loads(_classify(_json.dumps(document)))


def scan(document, k=1, samples=25, seed=0):
    """Monte-Carlo normality scan over sampled fibre points."""
    return _json.loads(_scan(_json.dumps(document), k, samples, seed))


def solve(document, objective="flat", restarts=20, seed=0, max_denominator=1000,
          tolerance=1e-12):
    """Search deformations of the document's connection for a curvature target."""
    return _json.loads(
        _solve(_json.dumps(document), objective, restarts, seed, max_denominator, tolerance)
    )


def fiber_diagnostics(n=2, samples=100, seed=0):
    """Diagnostics of the upper half-space model of a twistor fibre."""
    return _json.loads(_fiber_diagnostics(n, samples, seed))
