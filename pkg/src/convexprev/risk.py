"""Convex risk measures through the conjugacy ``rho(X) = upper(-X)``.

A risk assessment on positions ``X`` induces the lower assessment
``X -> -rho(X)``; every check in :mod:`convexprev.consistency` then
applies.  Positions with ``rho(X) <= 0`` are acceptable.  Discounting
between buying and selling times is ignored.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence, Union

from .consistency import (ConsistencyReport, PreconditionError,
                          check_centered_convexity, check_convexity, classify)
from .core import (LOWER, UPPER, Assessment, Gamble, PrecisePrevision, Space,
                   SpaceMismatchError, to_rational)
from .extension import convex_natural_extension


@dataclass(frozen=True)
class RiskAssessment:
    space: Space
    entries: tuple[tuple[str, Gamble, Fraction], ...]

    def __init__(self, space: Space,
                 entries: Mapping[str, tuple[Gamble, object]] | Iterable[tuple[str, Gamble, object]]):
        # validation is shared with Assessment
        a = Assessment(space, entries, LOWER)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "entries", a.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def rho(self, ident: str) -> Fraction:
        for k, _, v in self.entries:
            if k == ident:
                return v
        raise KeyError(ident)


def induced_lower(r: RiskAssessment) -> Assessment:
    """Lower assessment ``X -> -rho(X)``."""
    return Assessment(r.space, [(k, g, -v) for k, g, v in r.entries], LOWER)


def induced_upper(r: RiskAssessment) -> Assessment:
    """Upper assessment ``-X -> rho(X)`` on the negated positions."""
    return Assessment(r.space, [(k, -g, v) for k, g, v in r.entries], UPPER)


def check_convex_risk(r: RiskAssessment) -> ConsistencyReport:
    """Classify *r*; ``centered_convex`` here means convex with ``rho(0) = 0``."""
    if not len(r):
        raise ValueError("empty risk assessment")
    return classify(induced_lower(r))


def acceptability(r: RiskAssessment) -> dict[str, bool]:
    return {k: v <= 0 for k, _, v in r.entries}


def internality_violations(r: RiskAssessment) -> list[str]:
    """Positions breaking ``-sup X <= rho(X) <= -inf X``."""
    return [k for k, g, v in r.entries if not (-g.sup() <= v <= -g.inf())]


def risk_extension(r: RiskAssessment, position: Gamble) -> Fraction:
    """Least convex risk measure value at *position* consistent with *r*."""
    if position.space != r.space:
        raise SpaceMismatchError("position lives on a different space")
    return -convex_natural_extension(induced_lower(r), position).value


def extended_risk_measure(r: RiskAssessment) -> Callable[[Gamble], Fraction]:
    """``risk_extension`` as a cached function of the position."""
    lower = induced_lower(r)

    @lru_cache(maxsize=None)
    def rho(values: tuple[Fraction, ...]) -> Fraction:
        return -convex_natural_extension(lower, Gamble(r.space, values)).value

    def measure(x: Gamble) -> Fraction:
        if x.space != r.space:
            raise SpaceMismatchError("position lives on a different space")
        return rho(x.values)

    return measure


def envelope_risk_measure(previsions: Sequence[PrecisePrevision], alphas: Sequence) -> Callable[[Gamble], Fraction]:
    """``rho(X) = max_j P_j(-X) + alpha_j``; centered when ``max alpha = 0``."""
    alphas = [to_rational(a) for a in alphas]
    if not previsions or len(previsions) != len(alphas):
        raise ValueError("need matching, non-empty previsions and offsets")

    def rho(x: Gamble) -> Fraction:
        return max(p(-x) + a for p, a in zip(previsions, alphas))

    return rho


RiskLike = Union[RiskAssessment, Callable[[Gamble], Fraction]]


def _as_measure(rho: RiskLike, space: Space | None, require) -> tuple[Callable, Space]:
    if isinstance(rho, RiskAssessment):
        ok, _ = require(induced_lower(rho))
        if not ok:
            raise PreconditionError("risk assessment does not meet the check's precondition")
        return extended_risk_measure(rho), rho.space
    if space is None:
        raise ValueError("a space is required when rho is a plain function")
    return rho, space


def _random_gamble(rng: random.Random, space: Space, lo=-6, hi=6) -> Gamble:
    return Gamble(space, [Fraction(rng.randint(lo * 4, hi * 4), 4) for _ in space])


@dataclass(frozen=True)
class AxiomCheck:
    ok: bool
    trials: int
    seed: int | None
    violation: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_axioms_T1_M2_CI(rho: RiskLike, trials: int, seed: int = 0,
                          space: Space | None = None) -> AxiomCheck:
    """Sample translation invariance, monotonicity and convexity of *rho*.

    A :class:`RiskAssessment` is first extended to every position by
    :func:`risk_extension`; it must be convex.  The first violation found
    is returned as ``(axiom, X, Y, alpha, lambda, lhs, rhs)``.
    """
    measure, space = _as_measure(rho, space, check_convexity)
    rng = random.Random(seed)
    for _ in range(trials):
        x = _random_gamble(rng, space)
        y = _random_gamble(rng, space)
        alpha = Fraction(rng.randint(-20, 20), rng.randint(1, 5))
        lam = Fraction(rng.randint(0, 12), 12)
        rx = measure(x)
        lhs = measure(x + alpha)
        if lhs != rx - alpha:
            return AxiomCheck(False, trials, seed, ("T1", x, None, alpha, None, lhs, rx - alpha))
        bigger = x + Gamble(space, [Fraction(rng.randint(0, 8), 4) for _ in space])
        rb = measure(bigger)
        if rb > rx:
            return AxiomCheck(False, trials, seed, ("M2", x, bigger, None, None, rb, rx))
        ry = measure(y)
        mix = measure(lam * x + (1 - lam) * y)
        if mix > lam * rx + (1 - lam) * ry:
            return AxiomCheck(False, trials, seed,
                              ("CI", x, y, None, lam, mix, lam * rx + (1 - lam) * ry))
    return AxiomCheck(True, trials, seed)


@dataclass(frozen=True)
class LiquidityCheck:
    ok: bool
    trials: int
    seed: int | None
    strict: int
    equal: int
    violation: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_liquidity_inequality(rho: RiskLike, trials: int, seed: int = 0,
                               space: Space | None = None,
                               lambdas: Sequence | None = None) -> LiquidityCheck:
    """Sample ``rho(lam X) >= lam rho(X)`` for ``lam >= 1``.

    *lambdas*, when given, are cycled through instead of random draws.
    A :class:`RiskAssessment` must be centered convex.
    """
    measure, space = _as_measure(rho, space, check_centered_convexity)
    rng = random.Random(seed)
    fixed = [to_rational(v) for v in lambdas] if lambdas else None
    if fixed and any(v < 1 for v in fixed):
        raise ValueError("lambda must be at least 1")
    strict = equal = 0
    for t in range(trials):
        x = _random_gamble(rng, space)
        lam = fixed[t % len(fixed)] if fixed else Fraction(rng.randint(4, 16), 4)
        lhs, rhs = measure(lam * x), lam * measure(x)
        if lhs < rhs:
            return LiquidityCheck(False, trials, seed, strict, equal, (x, lam, lhs, rhs))
        if lhs > rhs:
            strict += 1
        else:
            equal += 1
    return LiquidityCheck(True, trials, seed, strict, equal)
