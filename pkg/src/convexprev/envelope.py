"""Envelopes of translated precise previsions.

A lower assessment is convex exactly when it is the pointwise minimum of
``P_j(X) + alpha_j`` over finitely many precise previsions ``P_j``
(maximum for upper assessments); it is centered convex when, in
addition, the smallest offset is zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .consistency import PreconditionError, check_convexity
from .core import (LOWER, UPPER, Assessment, Gamble, PrecisePrevision,
                   SpaceMismatchError, as_lower, gambles_by_id, to_rational)
from .extension import convex_natural_extension


class NotConvexError(PreconditionError):
    pass


@dataclass(frozen=True)
class EnvelopeSpec:
    previsions: tuple[PrecisePrevision, ...]
    alphas: tuple[Fraction, ...]
    orientation: str = LOWER

    def __init__(self, previsions: Sequence[PrecisePrevision], alphas: Sequence,
                 orientation: str = LOWER):
        previsions = tuple(previsions)
        alphas = tuple(to_rational(x) for x in alphas)
        if not previsions:
            raise ValueError("an envelope needs at least one prevision")
        if len(previsions) != len(alphas):
            raise ValueError("one offset per prevision is required")
        if orientation not in (LOWER, UPPER):
            raise ValueError(f"bad orientation {orientation!r}")
        space = previsions[0].space
        if any(p.space != space for p in previsions):
            raise SpaceMismatchError("previsions live on different spaces")
        object.__setattr__(self, "previsions", previsions)
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "orientation", orientation)

    @property
    def space(self):
        return self.previsions[0].space

    @property
    def centered(self) -> bool:
        """Smallest offset (largest, for upper envelopes) is exactly zero."""
        best = min(self.alphas) if self.orientation == LOWER else max(self.alphas)
        return best == 0

    def evaluate(self, g: Gamble) -> tuple[Fraction, int]:
        """Envelope value at *g* and the lowest index attaining it."""
        if g.space != self.space:
            raise SpaceMismatchError("gamble lives on a different space")
        best, arg = None, -1
        for j, (p, alpha) in enumerate(zip(self.previsions, self.alphas)):
            v = p(g) + alpha
            if best is None or (v < best if self.orientation == LOWER else v > best):
                best, arg = v, j
        return best, arg


def envelope_eval(spec: EnvelopeSpec, gambles: Mapping[str, Gamble] | Sequence[tuple[str, Gamble]]) -> Assessment:
    """Assessment ``X -> min_j P_j(X) + alpha_j`` (max for upper specs)."""
    return Assessment(spec.space, [(k, g, spec.evaluate(g)[0]) for k, g in gambles_by_id(gambles)],
                      spec.orientation)


def attaining_indices(spec: EnvelopeSpec, gambles) -> dict[str, int]:
    """Index of the prevision attaining the envelope at each gamble (lowest on ties)."""
    return {k: spec.evaluate(g)[1] for k, g in gambles_by_id(gambles)}


@dataclass(frozen=True)
class DualFeasiblePoint:
    """A pair ``(q, r)`` with ``q(X) + r >= P(X)`` on the reference domain.

    For upper assessments the inequality is reversed.
    """

    q: PrecisePrevision
    r: Fraction

    def dominates(self, a: Assessment) -> bool:
        if a.orientation == LOWER:
            return all(self.q(g) + self.r >= v for _, g, v in a.entries)
        return all(self.q(g) + self.r <= v for _, g, v in a.entries)


def recover_envelope(a: Assessment) -> list[DualFeasiblePoint]:
    """One dominating pair per entry, attaining the assessed value there.

    The pairs come from the envelope-form program of the convex natural
    extension.  For an upper assessment the returned offsets already
    describe the upper envelope ``max_j q_j(X) + r_j``.
    """
    ok, witness = check_convexity(a)
    if not ok:
        raise NotConvexError(f"assessment is not convex (entry {witness.entry!r})")
    lower = as_lower(a)
    points = []
    for _, g, _ in lower.entries:
        q, r = convex_natural_extension(lower, g).dual_witness
        points.append(DualFeasiblePoint(q, r if a.orientation == LOWER else -r))
    return points


def spec_from_points(points: Sequence[DualFeasiblePoint], orientation: str = LOWER) -> EnvelopeSpec:
    return EnvelopeSpec([p.q for p in points], [p.r for p in points], orientation)


@dataclass(frozen=True)
class PoolingResult:
    assessment: Assessment
    avoids_sure_loss_by_construction: bool


def pool_experts(previsions: Sequence[PrecisePrevision], cautions: Sequence,
                 gambles) -> PoolingResult:
    """Cautious pooling ``min_i (P_i(X) - caution_i)`` of expert previsions.

    The result is always convex.  It is known to avoid sure loss when at
    least one caution is non-negative; otherwise that has to be checked.
    """
    if len(previsions) != len(cautions):
        raise ValueError("one caution per expert is required")
    cautions = [to_rational(c) for c in cautions]
    spec = EnvelopeSpec(previsions, [-c for c in cautions], LOWER)
    return PoolingResult(envelope_eval(spec, gambles), any(c >= 0 for c in cautions))
