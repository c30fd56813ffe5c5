import random
from fractions import Fraction as F
from itertools import combinations

import pytest

from convexprev import (INFINITY, Assessment, Gamble, Space, SpaceMismatchError,
                        check_avoids_sure_loss, convex_natural_extension,
                        ec_at_zero, natural_extension)
from convexprev.extension import envelope_program, gain_program
from convexprev.lp import verify_certificate
from convexprev.random_instances import (random_assessment, random_gamble,
                                         random_space)

from instances import ONE_A, ONE_B, S, ZERO, r1, r2


def ec_two_entries(a: Assessment, z: Gamble) -> F:
    """Exact max over t in [0, 1] of min_w Z(w) - t G_1(w) - (1 - t) G_2(w)."""
    (_, g1, m1), (_, g2, m2) = a.entries
    lines = [(z[w] - (g2[w] - m2), -(g1[w] - m1) + (g2[w] - m2)) for w in range(len(z))]
    candidates = {F(0), F(1)}
    for (c1, k1), (c2, k2) in combinations(lines, 2):
        if k1 != k2:
            t = (c2 - c1) / (k1 - k2)
            if 0 <= t <= 1:
                candidates.add(t)
    return max(min(c + k * t for c, k in lines) for t in candidates)


def test_r1_targets():
    ext = convex_natural_extension(r1(), ONE_B)
    assert ext.value == F(-2, 5) < ONE_B.inf()
    q, r = ext.dual_witness
    assert q.masses == (1, 0) and r == F(-2, 5)
    assert ext.coefficients == {"1_a": 1} and ext.alpha == F(-2, 5)
    assert convex_natural_extension(r1(), ONE_A).value == F(3, 5)
    assert natural_extension(r1(), ONE_B).value == 0


def test_r2_at_zero():
    # the gain at both atoms with s = (1/2, 1/2) is -1/5
    ext = convex_natural_extension(r2(), ZERO)
    assert ext.value == F(1, 5) == ec_at_zero(r2())
    assert ext.coefficients == {"1_a": F(1, 2), "1_b": F(1, 2)}
    assert ext.value == ec_two_entries(r2(), ZERO)


def test_natural_extension_unbounded_under_sure_loss():
    ext = natural_extension(r2(), ZERO)
    assert ext.value == INFINITY and not ext.is_finite
    assert ext.dual_witness is None
    ray = [ext.coefficients[k] for k in r2().ids]
    assert all(v >= 0 for v in ray) and any(ray)


def test_single_entry_closed_form(rng):
    for _ in range(60):
        space = random_space(rng, rng.randint(1, 5))
        x, z = random_gamble(rng, space), random_gamble(rng, space)
        mu = F(rng.randint(-20, 20), 4)
        a = Assessment(space, {"x": (x, mu)})
        expected = min(z[w] - (x[w] - mu) for w in range(len(space)))
        assert convex_natural_extension(a, z).value == expected


def test_two_entries_against_breakpoint_oracle(rng):
    for _ in range(150):
        space = random_space(rng, rng.randint(1, 5))
        a = random_assessment(rng, space, 2)
        z = random_gamble(rng, space)
        assert convex_natural_extension(a, z).value == ec_two_entries(a, z)


def test_both_programs_certified_and_equal(rng):
    for _ in range(80):
        space = random_space(rng, rng.randint(1, 6))
        a = random_assessment(rng, space, rng.randint(1, 6))
        z = random_gamble(rng, space)
        for convex, extend in ((True, convex_natural_extension), (False, natural_extension)):
            ext = extend(a, z)
            assert verify_certificate(gain_program(a, z, convex), ext.primal_solution)
            assert verify_certificate(envelope_program(a, z, convex), ext.dual_solution)
            if ext.is_finite:
                assert ext.primal_solution.value == ext.dual_solution.value == ext.value


def test_dual_witness_is_dominating(rng):
    for _ in range(60):
        space = random_space(rng, rng.randint(2, 5))
        a = random_assessment(rng, space, rng.randint(1, 5))
        z = random_gamble(rng, space)
        q, r = convex_natural_extension(a, z).dual_witness
        assert all(q(g) + r >= mu for _, g, mu in a.entries)
        assert q(z) + r == convex_natural_extension(a, z).value


def test_natural_dominates_convex_and_finiteness(rng):
    for _ in range(80):
        space = random_space(rng, rng.randint(2, 5))
        a = random_assessment(rng, space, rng.randint(1, 5))
        z = random_gamble(rng, space)
        e, ec = natural_extension(a, z), convex_natural_extension(a, z)
        assert e.is_finite == check_avoids_sure_loss(a)[0]
        assert e.value >= ec.value


def test_translation_equivariance(rng):
    for _ in range(40):
        space = random_space(rng, rng.randint(2, 4))
        a = random_assessment(rng, space, 3)
        z = random_gamble(rng, space)
        c = F(rng.randint(-9, 9), 3)
        assert convex_natural_extension(a, z + c).value == convex_natural_extension(a, z).value + c


def test_domination_and_monotonicity(rng):
    for _ in range(40):
        space = random_space(rng, rng.randint(2, 4))
        a = random_assessment(rng, space, 3)
        for _, g, mu in a.entries:
            assert convex_natural_extension(a, g).value >= mu
        z = random_gamble(rng, space)
        bigger = z + Gamble(space, [rng.randint(0, 3) for _ in space])
        assert convex_natural_extension(a, bigger).value >= convex_natural_extension(a, z).value


def test_space_mismatch():
    with pytest.raises(SpaceMismatchError):
        convex_natural_extension(r1(), Gamble(Space("xyz"), [0, 0, 0]))
