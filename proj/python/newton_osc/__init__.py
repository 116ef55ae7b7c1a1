"""Newton polyhedra, weighted zeta poles and oscillation indices."""

import json as _json
from fractions import Fraction

from . import _core
from ._core import NewtonOscError, __version__

__all__ = [
    "NewtonOscError",
    "__version__",
    "analyze",
    "eval_oscillatory",
    "eval_zeta",
    "example",
    "example_ids",
    "newton_distance",
]


def _encode(problem):
    return problem if isinstance(problem, str) else _json.dumps(problem)


def analyze(problem, phi0=1.0):
    """Full symbolic report as a dict. Exact values are "p/q" strings."""
    return _json.loads(_core.analyze(_encode(problem), phi0))


def newton_distance(problem):
    return Fraction(_core.newton_distance(_encode(problem)))


def example(example_id):
    return _json.loads(_core.example(example_id))


def example_ids():
    return list(_core.example_ids())


def eval_zeta(problem, s, radius=0.5):
    return _core.eval_zeta(_encode(problem), s, radius)


def eval_oscillatory(problem, t, radius=0.5):
    return _core.eval_oscillatory(_encode(problem), t, radius)
