"""Possibility spaces, gambles, assessments and precise previsions.

All numbers are :class:`fractions.Fraction`; decimal strings such as
``"0.7"`` are read as the exact fraction ``7/10``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence

LOWER = "lower"
UPPER = "upper"
ORIENTATIONS = (LOWER, UPPER)


class SpaceMismatchError(ValueError):
    """Raised when objects living on different possibility spaces meet."""


def to_rational(x) -> Fraction:
    """Convert *x* to an exact :class:`~fractions.Fraction`.

    Accepts integers, fractions, decimal strings (``"-1.25"``), fraction
    strings (``"3/5"``) and :class:`decimal.Decimal`.  Floats are read
    through their shortest decimal representation, so ``0.1`` becomes
    ``1/10`` rather than the binary approximation.

    >>> to_rational("0.6")
    Fraction(3, 5)
    >>> to_rational("-7/10")
    Fraction(-7, 10)
    """
    if type(x) is Fraction:
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact number: {x!r}") from exc
    return Fraction(x)


@dataclass(frozen=True)
class Space:
    """A finite, ordered set of atoms."""

    atoms: tuple[str, ...]

    def __init__(self, atoms: Iterable[str]):
        atoms = tuple(atoms)
        if not atoms:
            raise ValueError("a space needs at least one atom")
        for atom in atoms:
            if not isinstance(atom, str) or not atom:
                raise ValueError(f"atom labels must be non-empty strings, got {atom!r}")
        if len(set(atoms)) != len(atoms):
            raise ValueError("atom labels must be unique")
        object.__setattr__(self, "atoms", atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self) -> Iterator[str]:
        return iter(self.atoms)

    def index(self, atom: str) -> int:
        try:
            return self.atoms.index(atom)
        except ValueError:
            raise KeyError(f"unknown atom {atom!r}") from None


@dataclass(frozen=True)
class Gamble:
    """A real (rational) payoff for every atom of a space."""

    space: Space
    values: tuple[Fraction, ...]

    def __init__(self, space: Space, values: Iterable):
        values = tuple(to_rational(v) for v in values)
        if len(values) != len(space):
            raise ValueError(
                f"gamble has {len(values)} values but the space has {len(space)} atoms")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "values", values)

    @classmethod
    def zero(cls, space: Space) -> "Gamble":
        return cls(space, [0] * len(space))

    @classmethod
    def constant(cls, space: Space, c) -> "Gamble":
        return cls(space, [c] * len(space))

    @classmethod
    def indicator(cls, space: Space, atoms: Iterable[str]) -> "Gamble":
        """Indicator of the event made of *atoms*."""
        chosen = {space.index(a) for a in atoms}
        return cls(space, [1 if i in chosen else 0 for i in range(len(space))])

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]

    def _check(self, other: "Gamble") -> None:
        if other.space != self.space:
            raise SpaceMismatchError("gambles live on different spaces")

    def __add__(self, other):
        if isinstance(other, Gamble):
            self._check(other)
            return Gamble(self.space, [a + b for a, b in zip(self.values, other.values)])
        c = to_rational(other)
        return Gamble(self.space, [a + c for a in self.values])

    __radd__ = __add__

    def __neg__(self) -> "Gamble":
        return Gamble(self.space, [-a for a in self.values])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, scalar) -> "Gamble":
        c = to_rational(scalar)
        return Gamble(self.space, [c * a for a in self.values])

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.values)

    def pointwise_le(self, other: "Gamble") -> bool:
        """``self(w) <= other(w)`` for every atom ``w``."""
        self._check(other)
        return all(a <= b for a, b in zip(self.values, other.values))

    def inf(self) -> Fraction:
        return min(self.values)

    def sup(self) -> Fraction:
        return max(self.values)


def gamble_inf_sup(g: Gamble) -> tuple[Fraction, Fraction]:
    """Return ``(inf g, sup g)``; both are attained on a finite space."""
    return g.inf(), g.sup()


@dataclass(frozen=True)
class Assessment:
    """A lower or upper prevision on a finite domain of named gambles.

    Entries keep their insertion order, which is also the order in which
    witnesses are reported.
    """

    space: Space
    entries: tuple[tuple[str, Gamble, Fraction], ...]
    orientation: str = LOWER

    def __init__(self, space: Space,
                 entries: Mapping[str, tuple[Gamble, object]] | Iterable[tuple[str, Gamble, object]],
                 orientation: str = LOWER):
        if orientation not in ORIENTATIONS:
            raise ValueError(f"orientation must be 'lower' or 'upper', got {orientation!r}")
        if isinstance(entries, Mapping):
            items = [(k, g, v) for k, (g, v) in entries.items()]
        else:
            items = [tuple(e) for e in entries]
        if not items:
            raise ValueError("an assessment needs at least one entry")
        seen = set()
        normalised = []
        for ident, gamble, value in items:
            if ident in seen:
                raise ValueError(f"duplicate gamble identifier {ident!r}")
            seen.add(ident)
            if gamble.space != space:
                raise SpaceMismatchError(f"gamble {ident!r} is not on the assessment's space")
            normalised.append((ident, gamble, to_rational(value)))
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "entries", tuple(normalised))
        object.__setattr__(self, "orientation", orientation)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[tuple[str, Gamble, Fraction]]:
        return iter(self.entries)

    @property
    def ids(self) -> list[str]:
        return [e[0] for e in self.entries]

    @property
    def gambles(self) -> list[Gamble]:
        return [e[1] for e in self.entries]

    @property
    def values(self) -> list[Fraction]:
        return [e[2] for e in self.entries]

    def value(self, ident: str) -> Fraction:
        for k, _, v in self.entries:
            if k == ident:
                return v
        raise KeyError(ident)

    def gamble(self, ident: str) -> Gamble:
        for k, g, _ in self.entries:
            if k == ident:
                return g
        raise KeyError(ident)

    @cached_property
    def gains(self) -> tuple[tuple[Fraction, ...], ...]:
        """Per atom, the marginal gains ``X_i(w) - value_i`` of every entry."""
        return tuple(tuple(g.values[w] - v for _, g, v in self.entries)
                     for w in range(len(self.space)))

    def as_dict(self) -> dict[str, Fraction]:
        return {k: v for k, _, v in self.entries}

    def zero_entry(self) -> str | None:
        """Identifier of the first entry whose gamble is the zero vector."""
        for k, g, _ in self.entries:
            if g.is_zero():
                return k
        return None

    def with_values(self, values: Mapping[str, object]) -> "Assessment":
        """Copy with some entry values replaced."""
        return Assessment(
            self.space,
            [(k, g, values.get(k, v)) for k, g, v in self.entries],
            self.orientation)

    def shifted(self, delta) -> "Assessment":
        """Copy with *delta* added to every value."""
        delta = to_rational(delta)
        return Assessment(self.space, [(k, g, v + delta) for k, g, v in self.entries],
                          self.orientation)

    def with_entry(self, ident: str, gamble: Gamble, value) -> "Assessment":
        return Assessment(self.space, list(self.entries) + [(ident, gamble, value)],
                          self.orientation)


def conjugate(a: Assessment) -> Assessment:
    """Map ``P(X) = v`` to the conjugate ``P'(-X) = -v`` and flip orientation."""
    flipped = UPPER if a.orientation == LOWER else LOWER
    return Assessment(a.space, [(k, -g, -v) for k, g, v in a.entries], flipped)


def as_lower(a: Assessment) -> Assessment:
    return a if a.orientation == LOWER else conjugate(a)


@dataclass(frozen=True)
class PrecisePrevision:
    """A probability mass function; its prevision is the expectation."""

    space: Space
    masses: tuple[Fraction, ...]

    def __init__(self, space: Space, masses: Iterable):
        masses = tuple(to_rational(p) for p in masses)
        if len(masses) != len(space):
            raise ValueError("one mass per atom is required")
        if any(p < 0 for p in masses):
            raise ValueError("masses must be non-negative")
        if sum(masses) != 1:
            raise ValueError(f"masses sum to {sum(masses)}, not 1")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "masses", masses)

    @classmethod
    def dirac(cls, space: Space, atom: str) -> "PrecisePrevision":
        i = space.index(atom)
        return cls(space, [1 if j == i else 0 for j in range(len(space))])

    def __call__(self, g: Gamble) -> Fraction:
        return precise_eval(self, g)


def precise_eval(p: PrecisePrevision, g: Gamble) -> Fraction:
    """Expectation of *g* under *p*."""
    if p.space != g.space:
        raise SpaceMismatchError("prevision and gamble live on different spaces")
    return fraction_dot(p.masses, g.values)


def fraction_dot(a: Iterable[Fraction], b: Iterable[Fraction]) -> Fraction:
    """Exact inner product, reduced once at the end."""
    num, den = 0, 1
    for x, y in zip(a, b):
        if x and y:
            d = x.denominator * y.denominator
            num = num * d + x.numerator * y.numerator * den
            den *= d
    return Fraction(num, den)


def gambles_by_id(items: Mapping[str, Gamble] | Sequence[tuple[str, Gamble]]) -> list[tuple[str, Gamble]]:
    if isinstance(items, Mapping):
        return list(items.items())
    return list(items)
