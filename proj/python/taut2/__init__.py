"""Exact point counts, local-system traces and Sp4 invariant theory."""

import json
from fractions import Fraction

from . import _core

__version__ = _core.__version__


def _exact(text):
    value = Fraction(text)
    return value.numerator if value.denominator == 1 else value


def total_mass(family, q, jobs=1):
    return _exact(_core.total_mass(family, q, jobs))


def histogram(family, q):
    return {(a1, a2): _exact(mass) for a1, a2, mass in _core.histogram(family, q)}


def trace_ec(space, weight, q):
    l, m = weight
    return _exact(_core.trace_ec(space, l, m, q))


def hecke_trace(k, p, r=1):
    return int(_core.hecke_trace(k, p, r))


weyl_dim = _core.weyl_dim
multiplicity_in_tensor_power = _core.multiplicity_in_tensor_power
invariant_poincare = _core.invariant_poincare
determine_N = _core.determine_N
inner_verdict = _core.inner_verdict


def run(*args):
    """Run a CLI command in-process; returns (exit code, parsed record or text, stderr)."""
    code, out, err = _core.run_cli(list(args))
    try:
        out = json.loads(out)
    except ValueError:
        pass
    return code, out, err
