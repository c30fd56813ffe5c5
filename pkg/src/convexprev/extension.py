"""Natural and convex natural extension by linear programming.

Both extensions are computed twice: once from the gain form (maximise
``alpha`` such that ``Z - alpha`` dominates a combination of elementary
gains) and once from the envelope form (minimise ``Q(Z) + r`` over pairs
dominating the assessment).  The two values must agree exactly; a
disagreement is a bug and raises :class:`ExtensionMismatchError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import (LOWER, Assessment, Gamble, PrecisePrevision,
                   SpaceMismatchError)
from .lp import (EQ, FREE, GE, LE, MAXIMIZE, MINIMIZE, NONNEGATIVE, OPTIMAL,
                 UNBOUNDED, LinearProgram, LPSolution, solve)

NATURAL = "natural"
CONVEX_NATURAL = "convex_natural"

#: Value of the natural extension of an assessment that incurs sure loss.
INFINITY = math.inf


class ExtensionMismatchError(RuntimeError):
    """The gain-form and envelope-form programs disagree."""


@dataclass(frozen=True)
class ExtensionResult:
    """Value of an extension at *target* together with both witnesses.

    ``coefficients`` are the stakes ``s_i`` on the domain entries attaining
    ``alpha``.  For the convex natural extension ``dual_witness`` is a pair
    ``(Q, r)``; for the natural extension it is a precise prevision ``Q``.
    When the natural extension is infinite, ``coefficients`` is a ray of
    stakes along which the gain stays uniformly negative.
    """

    target: Gamble
    kind: str
    value: Fraction | float
    coefficients: dict[str, Fraction]
    alpha: Fraction | None
    dual_witness: tuple[PrecisePrevision, Fraction] | PrecisePrevision | None
    primal_solution: LPSolution
    dual_solution: LPSolution

    @property
    def is_finite(self) -> bool:
        return self.value != INFINITY


def _check(a: Assessment, z: Gamble) -> None:
    if a.orientation != LOWER:
        raise ValueError("extensions are defined for lower assessments; conjugate first")
    if not a.entries:
        raise ValueError("empty domain")
    if z.space != a.space:
        raise SpaceMismatchError("target lives on a different space")


def gain_program(a: Assessment, z: Gamble, convex: bool) -> LinearProgram:
    """``max alpha`` s.t. ``alpha + sum_i s_i (X_i - mu_i) <= Z`` atomwise.

    Variables are ``(alpha, s_1, ..., s_n)``; with *convex* the stakes
    are further constrained to sum to one.
    """
    n = len(a)
    rows = []
    for w, gains in enumerate(a.gains):
        rows.append(([1, *gains], LE, z[w]))
    if convex:
        rows.append(([0] + [1] * n, EQ, 1))
    return LinearProgram([1] + [0] * n, rows, [FREE] + [NONNEGATIVE] * n, MAXIMIZE)


def envelope_program(a: Assessment, z: Gamble, convex: bool) -> LinearProgram:
    """``min Q(Z) + r`` over mass functions ``Q`` with ``Q(X_i) + r >= mu_i``.

    Variables are ``(Q(w_1), ..., Q(w_m), r)``; without *convex* ``r`` is
    fixed at zero.
    """
    m = len(a.space)
    rows = [([1] * m + [0], EQ, 1)]
    for _, g, mu in a.entries:
        rows.append((list(g.values) + [1], GE, mu))
    r_bounds = FREE if convex else (0, 0)
    return LinearProgram(list(z.values) + [1], rows, [NONNEGATIVE] * m + [r_bounds], MINIMIZE)


def _extend(a: Assessment, z: Gamble, convex: bool) -> ExtensionResult:
    _check(a, z)
    kind = CONVEX_NATURAL if convex else NATURAL
    primal = solve(gain_program(a, z, convex))
    dual = solve(envelope_program(a, z, convex))
    ids = a.ids
    if primal.status == UNBOUNDED:
        if dual.status == OPTIMAL:
            raise ExtensionMismatchError(
                f"{kind} extension: gain form unbounded but envelope form optimal")
        return ExtensionResult(z, kind, INFINITY, dict(zip(ids, primal.ray[1:])), None, None,
                               primal, dual)
    if primal.status != OPTIMAL or dual.status != OPTIMAL:
        raise ExtensionMismatchError(
            f"{kind} extension: statuses {primal.status}/{dual.status}")
    if primal.value != dual.value:
        raise ExtensionMismatchError(
            f"{kind} extension: gain form gives {primal.value}, envelope form {dual.value}")
    m = len(a.space)
    q = PrecisePrevision(a.space, dual.primal[:m])
    r = dual.primal[m]
    for _, g, mu in a.entries:
        if q(g) + r < mu:
            raise ExtensionMismatchError("envelope witness does not dominate the assessment")
    witness = (q, r) if convex else q
    return ExtensionResult(z, kind, primal.value, dict(zip(ids, primal.primal[1:])),
                           primal.primal[0], witness, primal, dual)


def convex_natural_extension(a: Assessment, z: Gamble) -> ExtensionResult:
    """Least convex lower prevision on all gambles dominating *a*, at *z*.

    Always finite on a finite domain.

    >>> from convexprev.core import Space, Gamble, Assessment
    >>> s = Space("ab")
    >>> a = Assessment(s, {"1_a": (Gamble(s, [1, 0]), "0.6")})
    >>> convex_natural_extension(a, Gamble(s, [0, 1])).value
    Fraction(-2, 5)
    """
    return _extend(a, z, convex=True)


def natural_extension(a: Assessment, z: Gamble) -> ExtensionResult:
    """Walley's natural extension of *a* at *z*; infinite iff *a* incurs sure loss."""
    return _extend(a, z, convex=False)


def ec_at_zero(a: Assessment) -> Fraction:
    """Convex natural extension at the zero gamble.

    Its negation is the largest constant that can be added to every
    assessed value while still avoiding sure loss.
    """
    return convex_natural_extension(a, Gamble.zero(a.space)).value
