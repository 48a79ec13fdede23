"""Exact-rational art gallery guarding.

Instances and reports are plain dicts in the same JSON shape the command-line
tool reads and writes. Coordinates are strings "p/q".
"""

import json
from fractions import Fraction

from . import _core

InvariantViolation = _core.InvariantViolation

__all__ = [
    "InvariantViolation",
    "generate",
    "solve",
    "greedy",
    "sample",
    "opt_bracket",
    "verify",
    "render",
]


def _dump(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def _rat(x):
    return str(Fraction(x)) if not isinstance(x, str) else x


def generate(spec):
    """convex(m), lshape, comb(k) or orthogonal(m,holes,seed)."""
    return json.loads(_core.generate(spec))


def solve(instance, eps="1/2", delta="1/10", nu="1/2"):
    return json.loads(_core.solve(_dump(instance), _rat(eps), _rat(delta), _rat(nu)))


def greedy(instance, delta="1/10", nu="1/2"):
    return json.loads(_core.greedy(_dump(instance), _rat(delta), _rat(nu)))


def sample(instance, delta="1/10", sigma="1/10", seed=0, k=0):
    return json.loads(_core.sample(_dump(instance), _rat(delta), _rat(sigma), seed, k))


def opt_bracket(instance):
    return json.loads(_core.opt_bracket(_dump(instance)))


def verify(instance, guards):
    """Exact covered fraction as a Fraction."""
    return Fraction(_core.verify(_dump(instance), _dump(guards)))


def render(instance, guards=()):
    return _core.render(_dump(instance), _dump(list(guards)))
