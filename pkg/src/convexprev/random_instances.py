"""Random test instances with a known place on the consistency ladder.

Coherent instances are lower envelopes of precise previsions, convex ones
are lower envelopes of translated precise previsions, centered convex
ones additionally have smallest offset zero and assess the zero gamble.
Sure-loss instances are any assessment shifted above its headroom.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .core import Assessment, Gamble, PrecisePrevision, Space
from .envelope import EnvelopeSpec, envelope_eval
from .extension import ec_at_zero


def random_space(rng: random.Random, m: int) -> Space:
    return Space([f"w{i}" for i in range(m)])


def random_rational(rng: random.Random, lo: int = -5, hi: int = 5, den: int = 4) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_gamble(rng: random.Random, space: Space, lo: int = -5, hi: int = 5, den: int = 4) -> Gamble:
    return Gamble(space, [random_rational(rng, lo, hi, den) for _ in space])


def random_precise(rng: random.Random, space: Space) -> PrecisePrevision:
    while True:
        w = [rng.choice((0, 0, 1, 2, 3, 5, 8)) for _ in space]
        if sum(w):
            break
    total = sum(w)
    return PrecisePrevision(space, [Fraction(x, total) for x in w])


def random_gambles(rng: random.Random, space: Space, n: int,
                   include_zero: bool = False) -> list[tuple[str, Gamble]]:
    out = [(f"X{i}", random_gamble(rng, space)) for i in range(n)]
    if include_zero:
        out.insert(rng.randint(0, len(out)), ("zero", Gamble.zero(space)))
    return out


def random_spec(rng: random.Random, space: Space, k: int | None = None,
                kind: str = "convex", orientation: str = "lower") -> EnvelopeSpec:
    """Envelope spec with offsets matching *kind*: coherent, centered or convex."""
    k = k or rng.randint(2, 5)
    previsions = [random_precise(rng, space) for _ in range(k)]
    if kind == "coherent":
        alphas = [Fraction(0)] * k
    elif kind == "centered":
        alphas = [Fraction(rng.randint(0, 12), 4) for _ in range(k)]
        alphas[rng.randrange(k)] = Fraction(0)
        if orientation == "upper":
            alphas = [-a for a in alphas]
    else:
        alphas = [random_rational(rng, -3, 3) for _ in range(k)]
    return EnvelopeSpec(previsions, alphas, orientation)


def random_coherent(rng: random.Random, space: Space, n: int, include_zero: bool = False) -> Assessment:
    spec = random_spec(rng, space, kind="coherent")
    return envelope_eval(spec, random_gambles(rng, space, n, include_zero))


def random_convex(rng: random.Random, space: Space, n: int, include_zero: bool = False) -> Assessment:
    spec = random_spec(rng, space, kind="convex")
    return envelope_eval(spec, random_gambles(rng, space, n, include_zero))


def random_centered_convex(rng: random.Random, space: Space, n: int) -> Assessment:
    spec = random_spec(rng, space, kind="centered")
    return envelope_eval(spec, random_gambles(rng, space, n, include_zero=True))


def random_assessment(rng: random.Random, space: Space, n: int, include_zero: bool = False) -> Assessment:
    """Arbitrary values; usually neither convex nor coherent."""
    gambles = random_gambles(rng, space, n, include_zero)
    return Assessment(space, [(k, g, random_rational(rng, -4, 4)) for k, g in gambles])


def random_sure_loss(rng: random.Random, space: Space, n: int, base: Assessment | None = None) -> Assessment:
    """Shift *base* (default: a random assessment) up past its sure-loss headroom."""
    if base is None:
        base = random_assessment(rng, space, n)
    headroom = -ec_at_zero(base)
    return base.shifted(headroom + Fraction(rng.randint(1, 12), 8))
