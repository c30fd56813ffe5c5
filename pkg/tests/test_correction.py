from fractions import Fraction as F

import pytest

from convexprev import (check_avoids_sure_loss, check_centered_convexity,
                        check_convexity, conjugate, correct,
                        convex_natural_extension, ec_at_zero)
from convexprev.random_instances import (random_assessment, random_space,
                                         random_sure_loss)

from instances import r1, r2


def test_r2_shift():
    res = correct(r2(), "shift")
    assert res.corrected.as_dict() == {"1_a": F(1, 2), "1_b": F(1, 2)}
    assert res.ec_zero == F(1, 5)
    assert res.report_after.avoids_sure_loss and not res.report_before.avoids_sure_loss


def test_r2_centered():
    res = correct(r2(), "centered")
    assert res.corrected.as_dict() == {"1_a": F(1, 2), "1_b": F(1, 2), "zero": 0}
    assert res.report_after.centered_convex


def test_r1_convex_is_unchanged():
    assert correct(r1(), "convex").corrected == r1()


def test_r1_shift_and_centered_raise_values():
    assert correct(r1(), "shift").corrected.as_dict() == {"1_a": 1}
    assert correct(r1(), "centered").corrected.as_dict() == {"1_a": 1, "zero": 0}


def test_only_if_inconsistent_skips_passing_inputs():
    res = correct(r1(), "centered", only_if_inconsistent=True)
    assert res.skipped and res.corrected == r1()
    res = correct(r2(), "centered", only_if_inconsistent=True)
    assert not res.skipped and res.report_after.centered_convex


def test_zero_identifier_does_not_collide():
    a = r2().with_entry("zero", r2().gamble("1_a"), "1/10")
    res = correct(a, "centered")
    assert "zero_1" in res.corrected.ids


def test_upper_inputs_come_back_upper():
    res = correct(conjugate(r2()), "shift")
    assert res.corrected.orientation == "upper"
    assert res.corrected.as_dict() == {"1_a": F(-1, 2), "1_b": F(-1, 2)}


def test_unknown_mode():
    with pytest.raises(ValueError):
        correct(r1(), "gentle")


def test_shift_is_minimal(rng):
    eps = F(1, 1000)
    for _ in range(40):
        space = random_space(rng, rng.randint(1, 5))
        a = random_sure_loss(rng, space, rng.randint(1, 5))
        ec0 = ec_at_zero(a)
        assert check_avoids_sure_loss(a.shifted(-ec0))[0]
        assert not check_avoids_sure_loss(a.shifted(-(ec0 - eps)))[0]


def test_corrections_meet_their_targets(rng):
    for _ in range(30):
        space = random_space(rng, rng.randint(1, 5))
        a = random_assessment(rng, space, rng.randint(1, 5))
        convex = correct(a, "convex", reports=False).corrected
        assert check_convexity(convex)[0]
        assert all(convex.value(k) >= v for k, v in a.as_dict().items())
        assert check_centered_convexity(correct(a, "centered", reports=False).corrected)[0]
        assert check_avoids_sure_loss(correct(a, "shift", reports=False).corrected)[0]


def test_convex_correction_keeps_sure_loss(rng):
    for _ in range(30):
        space = random_space(rng, rng.randint(1, 5))
        a = random_sure_loss(rng, space, rng.randint(1, 5))
        assert not check_avoids_sure_loss(correct(a, "convex", reports=False).corrected)[0]


def test_corrected_values_follow_the_extension(rng):
    space = random_space(rng, 3)
    a = random_assessment(rng, space, 3)
    ec0 = ec_at_zero(a)
    centered = correct(a, "centered", reports=False).corrected
    for k, g, _ in a.entries:
        assert centered.value(k) == convex_natural_extension(a, g).value - ec0
