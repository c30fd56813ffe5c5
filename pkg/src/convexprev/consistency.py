"""Classify assessments: sure loss, convexity, centered convexity, coherence.

Convexity and coherence are decided by fixed-point tests: an assessment
is convex iff its convex natural extension returns the assessed value on
every entry, and coherent iff its natural extension does.  Upper
assessments are classified through their conjugate; witnesses are then
reported back in upper terms.

A note on n-coherence: centered convex previsions are always 1-coherent
(internal) but need not be 2-coherent.  That hierarchy is not computed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .core import LOWER, UPPER, Assessment, as_lower
from .extension import convex_natural_extension, ec_at_zero, natural_extension
from .lp import FREE, GE, EQ, MINIMIZE, NONNEGATIVE, LinearProgram, solve


class PreconditionError(ValueError):
    """An operation was called on an assessment outside its domain of use."""


@dataclass(frozen=True)
class SureLossWitness:
    """Stakes on the assessed gambles whose gain is uniformly ``<= sup_gain < 0``."""

    coefficients: dict[str, Fraction]
    sup_gain: Fraction


@dataclass(frozen=True)
class ExtensionWitness:
    """An entry whose extension differs from the assessed value.

    ``extension`` is expressed in the assessment's own orientation.
    """

    entry: str
    assessed: Fraction
    extension: Fraction | float
    kind: str


@dataclass(frozen=True)
class CenteringWitness:
    entry: str
    value: Fraction


@dataclass(frozen=True)
class ConsistencyReport:
    """Verdicts along the consistency ladder plus their witnesses.

    ``centered_convex`` is ``None`` when no entry is the zero gamble.
    ``k_bar`` is the supremum of constants that can be added to every
    lower value (subtracted from every upper value) while still avoiding
    sure loss.
    """

    orientation: str
    avoids_sure_loss: bool
    convex: bool
    centered_convex: bool | None
    coherent: bool
    k_bar: Fraction
    avoids_unbounded_sure_loss: bool = True
    witnesses: dict[str, object] = field(default_factory=dict)

    def verdicts(self) -> dict[str, object]:
        return {
            "avoids_sure_loss": self.avoids_sure_loss,
            "avoids_unbounded_sure_loss": self.avoids_unbounded_sure_loss,
            "convex": self.convex,
            "centered_convex": self.centered_convex,
            "coherent": self.coherent,
        }


def sure_loss_program(a: Assessment) -> LinearProgram:
    """``min t`` s.t. ``t >= sum_i s_i (X_i - mu_i)`` atomwise, ``s`` in the simplex."""
    lower = as_lower(a)
    n = len(lower)
    rows = []
    for w in range(len(lower.space)):
        rows.append(([1] + [-(g[w] - mu) for _, g, mu in lower.entries], GE, 0))
    rows.append(([0] + [1] * n, EQ, 1))
    return LinearProgram([1] + [0] * n, rows, [FREE] + [NONNEGATIVE] * n, MINIMIZE)


def min_normalised_gain(a: Assessment) -> tuple[Fraction, dict[str, Fraction]]:
    """Smallest ``sup G`` over stakes summing to one, and the stakes attaining it."""
    if not len(a):
        raise ValueError("empty domain")
    sol = solve(sure_loss_program(a))
    return sol.value, dict(zip(a.ids, sol.primal[1:]))


def check_avoids_sure_loss(a: Assessment) -> tuple[bool, SureLossWitness | None]:
    """Whether *a* avoids sure loss; on failure, a losing combination of bets."""
    value, stakes = min_normalised_gain(a)
    if value >= 0:
        return True, None
    return False, SureLossWitness({k: s for k, s in stakes.items()}, value)


def _to_orientation(a: Assessment, value):
    return value if a.orientation == LOWER else -value


def _fixed_point(a: Assessment, extend, kind: str) -> tuple[bool, ExtensionWitness | None]:
    lower = as_lower(a)
    for (ident, g, mu), (_, _, shown) in zip(lower.entries, a.entries):
        ext = extend(lower, g).value
        if ext != mu:
            return False, ExtensionWitness(ident, shown, _to_orientation(a, ext), kind)
    return True, None


def check_convexity(a: Assessment) -> tuple[bool, ExtensionWitness | None]:
    """Convex iff the convex natural extension reproduces every entry."""
    return _fixed_point(a, convex_natural_extension, "convex_natural")


def check_coherence(a: Assessment) -> tuple[bool, SureLossWitness | ExtensionWitness | None]:
    """Coherent iff it avoids sure loss and the natural extension reproduces every entry."""
    ok, witness = check_avoids_sure_loss(a)
    if not ok:
        return False, witness
    return _fixed_point(a, natural_extension, "natural")


def check_centered_convexity(a: Assessment) -> tuple[bool | None, object]:
    """``None`` when the zero gamble is not assessed; else convex with value 0 there."""
    zero = a.zero_entry()
    if zero is None:
        return None, None
    ok, witness = check_convexity(a)
    if not ok:
        return False, witness
    for ident, g, v in a.entries:
        if g.is_zero() and v != 0:
            return False, CenteringWitness(ident, v)
    return True, None


def check_k_bar(a: Assessment) -> Fraction:
    """Supremum of the uniform shifts that keep *a* free of sure loss."""
    return -ec_at_zero(as_lower(a))


def classify(a: Assessment) -> ConsistencyReport:
    """Run every check and cross-validate the sure-loss headroom two ways."""
    asl, asl_witness = check_avoids_sure_loss(a)
    k_bar = check_k_bar(a)
    if asl != (k_bar >= 0):
        raise RuntimeError(f"sure-loss verdict {asl} disagrees with k_bar = {k_bar}")
    witnesses: dict[str, object] = {}
    if asl_witness is not None:
        witnesses["avoids_sure_loss"] = asl_witness
    convex, w = check_convexity(a)
    if w is not None:
        witnesses["convex"] = w
    if a.zero_entry() is None:
        centered = None
    elif not convex:
        centered = False
        witnesses["centered_convex"] = w
    else:
        centered, cw = check_centered_convexity(a)
        if cw is not None:
            witnesses["centered_convex"] = cw
    if not asl:
        coherent = False
        witnesses["coherent"] = asl_witness
    else:
        coherent, w = _fixed_point(a, natural_extension, "natural")
        if w is not None:
            witnesses["coherent"] = w
    return ConsistencyReport(a.orientation, asl, convex, centered, coherent, k_bar,
                             witnesses=witnesses)


def non_internal_entries(a: Assessment) -> tuple[list[str], list[str]]:
    """Entries of a lower assessment above ``sup X`` and below ``inf X``.

    For a convex assessment at most one of the two lists is non-empty.
    """
    lower = as_lower(a)
    above = [k for k, g, mu in lower.entries if mu > g.sup()]
    below = [k for k, g, mu in lower.entries if mu < g.inf()]
    return above, below


def _random_stakes(rng: random.Random, n: int, total: Fraction) -> list[Fraction]:
    weights = [rng.randint(0, 20) for _ in range(n)]
    s = sum(weights)
    if s == 0:
        return [Fraction(0)] * n
    scale = Fraction(rng.randint(0, 20), 20) * total
    return [Fraction(w, s) * scale for w in weights]


def relaxed_gain_violations(a: Assessment, trials: int, rng: random.Random | None = None,
                            seed: int = 0) -> list[tuple[dict[str, Fraction], str, Fraction, Fraction]]:
    """Sample gains ``sum s_i (X_i - mu_i) - s_0 (X_0 - mu_0)`` with ``sum s_i <= s_0``.

    Returns every sampled combination whose supremum is negative, as
    ``(stakes, against_entry, s_0, sup_gain)``.
    """
    rng = rng or random.Random(seed)
    lower = as_lower(a)
    entries = lower.entries
    m = len(lower.space)
    bad = []
    for _ in range(trials):
        n = rng.randint(1, len(entries))
        chosen = rng.sample(range(len(entries)), n)
        j0 = rng.randrange(len(entries))
        s0 = Fraction(rng.randint(1, 30), rng.randint(1, 10))
        stakes = _random_stakes(rng, n, s0)
        _, g0, mu0 = entries[j0]
        sup = None
        for w in range(m):
            gain = -s0 * (g0[w] - mu0)
            for s, i in zip(stakes, chosen):
                _, g, mu = entries[i]
                gain += s * (g[w] - mu)
            sup = gain if sup is None or gain > sup else sup
        if sup < 0:
            bad.append(({entries[i][0]: s for s, i in zip(stakes, chosen)}, entries[j0][0], s0, sup))
    return bad


def check_relaxed_centered(a: Assessment, trials: int, rng: random.Random | None = None,
                           seed: int = 0) -> bool:
    """Falsification test of the relaxed characterisation of centered convexity.

    For a centered convex assessment no gain with ``sum s_i <= s_0`` should
    have a negative supremum.  Passing is evidence, not proof.
    """
    centered, _ = check_centered_convexity(a)
    if not centered:
        raise PreconditionError("assessment is not centered convex")
    return not relaxed_gain_violations(a, trials, rng, seed)
