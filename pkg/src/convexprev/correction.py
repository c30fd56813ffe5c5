"""Canonical repairs of inconsistent assessments.

``convex``
    replace every value by the convex natural extension.
``centered``
    convex natural extension minus its value at the zero gamble, with the
    zero gamble added at value 0.  This can raise values of assessments
    that already avoid sure loss with room to spare.
``shift``
    subtract the convex natural extension at zero from every value: the
    smallest uniform shift that avoids sure loss.  Convexity is not
    guaranteed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .consistency import (ConsistencyReport, check_avoids_sure_loss,
                          check_convexity, classify)
from .core import LOWER, Assessment, Gamble, as_lower, conjugate
from .extension import convex_natural_extension, ec_at_zero

CONVEX = "convex"
CENTERED = "centered"
SHIFT = "shift"
MODES = (CONVEX, CENTERED, SHIFT)


@dataclass(frozen=True)
class CorrectionResult:
    mode: str
    original: Assessment
    corrected: Assessment
    ec_zero: Fraction
    report_before: ConsistencyReport | None
    report_after: ConsistencyReport | None
    skipped: bool = False


def _zero_id(a: Assessment) -> str:
    ident, n = "zero", 1
    taken = set(a.ids)
    while ident in taken:
        ident = f"zero_{n}"
        n += 1
    return ident


def _needs_correction(a: Assessment, mode: str) -> bool:
    if mode == CONVEX:
        return not check_convexity(a)[0]
    return not check_avoids_sure_loss(a)[0]


def correct(a: Assessment, mode: str, only_if_inconsistent: bool = False,
            reports: bool = True) -> CorrectionResult:
    """Correct *a* according to *mode*.

    With *only_if_inconsistent* the input is returned untouched when it
    already passes the mode's target: convexity for ``convex``, avoiding
    sure loss for ``centered`` and ``shift``.  Upper assessments are
    corrected through their conjugate and returned as upper assessments.
    """
    if mode not in MODES:
        raise ValueError(f"unknown correction mode {mode!r}; expected one of {MODES}")
    lower = as_lower(a)
    ec0 = ec_at_zero(lower)
    if only_if_inconsistent and not _needs_correction(a, mode):
        report = classify(a) if reports else None
        return CorrectionResult(mode, a, a, ec0, report, report, skipped=True)

    if mode == SHIFT:
        fixed = lower.shifted(-ec0)
    else:
        ext = {k: convex_natural_extension(lower, g).value for k, g, _ in lower.entries}
        if mode == CENTERED:
            fixed = lower.with_values({k: v - ec0 for k, v in ext.items()})
            if fixed.zero_entry() is None:
                fixed = fixed.with_entry(_zero_id(fixed), Gamble.zero(fixed.space), 0)
        else:
            fixed = lower.with_values(ext)
    corrected = fixed if a.orientation == LOWER else conjugate(fixed)
    return CorrectionResult(
        mode, a, corrected, ec0,
        classify(a) if reports else None,
        classify(corrected) if reports else None)
