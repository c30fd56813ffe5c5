"""Possibility measures as convex upper probabilities.

``Pi(A) = max_{w in A} pi(w)`` is an upper envelope of the Dirac
previsions shifted by ``pi(w) - 1``.  When ``max pi = 1`` it is a
coherent upper probability; otherwise it is only convex and incurs sure
loss.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .core import UPPER, Assessment, Gamble, PrecisePrevision, Space, to_rational
from .envelope import EnvelopeSpec


@dataclass(frozen=True)
class PossibilityAssignment:
    space: Space
    pi: tuple[Fraction, ...]

    def __init__(self, space: Space, pi: Iterable):
        pi = tuple(to_rational(v) for v in pi)
        if len(pi) != len(space):
            raise ValueError("one possibility value per atom is required")
        if any(v < 0 or v > 1 for v in pi):
            raise ValueError("possibility values must lie in [0, 1]")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "pi", pi)

    @property
    def normalised(self) -> bool:
        return max(self.pi) == 1

    def of(self, event: Iterable[str]) -> Fraction:
        atoms = list(event)
        if not atoms:
            raise ValueError("the empty event is outside the domain of a possibility measure")
        return max(self.pi[self.space.index(w)] for w in atoms)


def event_label(atoms: Iterable[str]) -> str:
    return "{" + ",".join(atoms) + "}"


def all_events(space: Space) -> list[tuple[str, ...]]:
    """Every non-empty event, smallest first."""
    return [c for k in range(1, len(space) + 1) for c in combinations(space.atoms, k)]


def possibility_measure(p: PossibilityAssignment,
                        events: Sequence[Iterable[str]] | Mapping[str, Iterable[str]]) -> Assessment:
    """Upper probability ``Pi`` on the indicators of *events*.

    *events* is either a sequence of atom collections (labelled like
    ``{a,b}``) or a mapping from identifiers to atom collections.
    """
    if isinstance(events, Mapping):
        items = [(k, list(v)) for k, v in events.items()]
    else:
        items = [(event_label(ev), ev) for ev in (list(e) for e in events)]
    entries = []
    for ident, atoms in items:
        if not atoms:
            raise ValueError(f"event {ident!r} is empty")
        entries.append((ident, Gamble.indicator(p.space, atoms), p.of(atoms)))
    return Assessment(p.space, entries, UPPER)


def possibility_envelope(p: PossibilityAssignment) -> EnvelopeSpec:
    """Dirac previsions with offsets ``pi(w) - 1``; its upper envelope is ``Pi``."""
    return EnvelopeSpec([PrecisePrevision.dirac(p.space, w) for w in p.space],
                        [v - 1 for v in p.pi], UPPER)
