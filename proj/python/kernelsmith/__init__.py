"""Exact weight reduction and kernelization for weighted combinatorial problems.

Numbers are returned as ``int`` or ``fractions.Fraction``; inputs may be
ints, Fractions or "p/q" strings. Instances are dicts in the same JSON
layout the command-line tool reads.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Iterable, Optional, Union

from . import _core
from ._core import CapExceeded, InputError, InternalError

Number = Union[int, Fraction, str]

__all__ = [
    "CapExceeded",
    "InputError",
    "InternalError",
    "brute_force",
    "kernelize",
    "reduce",
    "reduce_rational",
    "reduce_with_threshold",
    "run_cli",
    "same_class",
    "verify",
]


def _text(x: Number) -> str:
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, (int, str)):
        return str(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    raise TypeError(f"expected int, Fraction or str, got {type(x).__name__}")


def _number(s: str) -> Union[int, Fraction]:
    f = Fraction(s)
    return f.numerator if f.denominator == 1 else f


def _vec(xs: Iterable[Number]) -> list[str]:
    return [_text(x) for x in xs]


def _doc(instance: Union[dict, str]) -> str:
    return instance if isinstance(instance, str) else json.dumps(instance)


def reduce(w: Iterable[Number], n: int) -> tuple[list[int], dict]:
    """Small integer vector in the class of ``w`` for integer tests of l1 norm <= n."""
    out, report = _core.reduce(_vec(w), str(n))
    return [int(x) for x in out], json.loads(report)


def reduce_with_threshold(w: Iterable[Number], k: Number, n: int) -> tuple[list[int], int, dict]:
    """Reduces ``w`` and ``k`` so that b.w <= k is preserved for ||b||_1 <= n - 1."""
    out, k2, report = _core.reduce_with_threshold(_vec(w), _text(k), str(n))
    return [int(x) for x in out], int(k2), json.loads(report)


def reduce_rational(w: Iterable[Number], r: int) -> tuple[list[int], dict]:
    """Small integer vector in the class of ``w`` for rational tests with parameter r."""
    out, report = _core.reduce_rational(_vec(w), str(r))
    return [int(x) for x in out], json.loads(report)


def same_class(w: Iterable[Number], w2: Iterable[Number], r: int, domain: str = "Z") -> bool:
    """True when no test vector with parameter r separates the two vectors."""
    return _core.same_class(_vec(w), _vec(w2), str(r), domain)


def kernelize(instance: Union[dict, str], threshold: Optional[Number] = None) -> tuple[dict, dict]:
    """Returns the reduced instance document and the reduction report."""
    doc, report = _core.kernelize(_doc(instance), None if threshold is None else _text(threshold))
    return json.loads(doc), json.loads(report)


def verify(original: Union[dict, str], reduced: Union[dict, str]) -> dict:
    """Compares optimal sets, feasibility and threshold decisions exhaustively."""
    return _core.verify(_doc(original), _doc(reduced))


def brute_force(instance: Union[dict, str]) -> dict:
    """Optimal value (None when infeasible) and every optimal solution."""
    rep = _core.brute_force(_doc(instance))
    value = rep["value"]
    return {
        "value": None if value is None else _number(value),
        "optima": [list(s) for s in rep["optima"]],
        "enumerated": rep["enumerated"],
    }


def run_cli(*args: str) -> tuple[int, str, str]:
    """Runs the command-line tool in-process; returns (exit code, stdout, stderr)."""
    return _core.run_cli(list(args))


def number(text: str) -> Union[int, Fraction]:
    """Parses a "p/q" string as written in instance documents."""
    return _number(text)
