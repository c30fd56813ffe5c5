import random
from fractions import Fraction as F

import pytest

from convexprev import (Gamble, PrecisePrevision, PreconditionError,
                        RiskAssessment, Space, check_axioms_T1_M2_CI,
                        check_convex_risk, check_liquidity_inequality,
                        convex_natural_extension, conjugate, risk_extension)
from convexprev.risk import (_random_gamble, acceptability, envelope_risk_measure,
                             extended_risk_measure, induced_lower, induced_upper,
                             internality_violations)

from instances import ONE_A, ONE_B, S, ZERO, r1

P1 = PrecisePrevision(S, ["1/2", "1/2"])
P2 = PrecisePrevision(S, ["4/5", "1/5"])


def test_r2_induced_risk_incurs_sure_loss():
    # rho(X) = upper(-X) with upper the conjugate of the lower 7/10 assessments
    r = RiskAssessment(S, {"1_a": (ONE_A, "-7/10"), "1_b": (ONE_B, "-7/10")})
    rep = check_convex_risk(r)
    assert rep.convex and not rep.avoids_sure_loss and rep.centered_convex is None
    assert acceptability(r) == {"1_a": True, "1_b": True}


def test_precise_risk_is_coherent(rng):
    p = PrecisePrevision(S, ["1/3", "2/3"])
    entries = []
    for i in range(4):
        x = _random_gamble(rng, S)
        entries.append((f"X{i}", x, -p(x)))
    assert check_convex_risk(RiskAssessment(S, entries)).coherent


def test_centered_measure_is_internal():
    rho = envelope_risk_measure([P1, P2], ["-1/10", 0])
    positions = {"X": Gamble(S, [2, -1]), "Y": Gamble(S, [-3, 1]), "zero": ZERO}
    r = RiskAssessment(S, [(k, x, rho(x)) for k, x in positions.items()])
    assert check_convex_risk(r).centered_convex
    assert internality_violations(r) == []
    assert internality_violations(RiskAssessment(S, {"X": (ONE_A, 1)})) == ["X"]


def test_conjugacy_of_the_extension():
    # risk data of the lower 3/5 on {a}: rho(1_a) = upper(-1_a) = -3/5
    r = RiskAssessment(S, {"1_a": (ONE_A, "-3/5")})
    assert induced_lower(r) == r1()
    assert induced_upper(r) == conjugate(r1())
    assert risk_extension(r, ONE_B) == -convex_natural_extension(r1(), ONE_B).value == F(2, 5)
    assert risk_extension(r, ONE_A) == F(-3, 5)


def test_centered_extension_at_zero():
    r = RiskAssessment(S, {"X": (Gamble(S, [1, -1]), 0), "zero": (ZERO, 0)})
    assert risk_extension(r, ZERO) == 0


def test_axioms_hold_for_convex_extension():
    r = RiskAssessment(S, {"1_a": (ONE_A, "-7/10"), "1_b": (ONE_B, "-1/5")})
    res = check_axioms_T1_M2_CI(r, 150, seed=4)
    assert res and res.trials == 150 and res.seed == 4


def test_worst_case_measure_satisfies_axioms():
    space = Space("abc")
    assert check_axioms_T1_M2_CI(lambda x: -x.inf(), 300, space=space)


def test_perturbed_measure_is_caught():
    base = envelope_risk_measure([P1, P2], [0, "-1/4"])
    target = _random_gamble(random.Random(9), S)
    rho = lambda x: base(x) + (1 if x == target else 0)
    res = check_axioms_T1_M2_CI(rho, 50, seed=9, space=S)
    assert not res and res.violation[0] == "T1" and res.violation[1] == target


def test_axioms_require_convexity():
    r = RiskAssessment(S, {"1_a": (ONE_A, "1/10"), "zero": (ZERO, 0)})
    assert not check_convex_risk(r).convex
    with pytest.raises(PreconditionError):
        check_axioms_T1_M2_CI(r, 5)
    with pytest.raises(ValueError):
        check_axioms_T1_M2_CI(lambda x: 0, 5)


def test_liquidity_two_point_envelope():
    rho = envelope_risk_measure([P1, P2], [0, "-1/2"])
    res = check_liquidity_inequality(rho, 200, space=S, lambdas=[2])
    assert res and res.strict > 0


def test_liquidity_lambda_one_is_equality():
    rho = envelope_risk_measure([P1, P2], [0, "-1/2"])
    res = check_liquidity_inequality(rho, 50, space=S, lambdas=[1])
    assert res and res.equal == 50


def test_liquidity_coherent_is_equality():
    rho = envelope_risk_measure([P1, P2], [0, 0])
    res = check_liquidity_inequality(rho, 200, space=S)
    assert res and res.strict == 0


def test_liquidity_on_assessment_and_preconditions():
    rho = envelope_risk_measure([P1, P2], [0, "-1/2"])
    positions = {"X": Gamble(S, [2, -1]), "Y": Gamble(S, [-3, 1]), "zero": ZERO}
    r = RiskAssessment(S, [(k, x, rho(x)) for k, x in positions.items()])
    assert check_liquidity_inequality(r, 60, seed=2)
    with pytest.raises(PreconditionError):
        check_liquidity_inequality(RiskAssessment(S, {"1_a": (ONE_A, "-7/10")}), 5)
    with pytest.raises(ValueError):
        check_liquidity_inequality(rho, 5, space=S, lambdas=["1/2"])


def test_extended_measure_is_cached_and_checked():
    r = RiskAssessment(S, {"1_a": (ONE_A, "-3/5")})
    measure = extended_risk_measure(r)
    assert measure(ONE_B) == measure(ONE_B) == F(2, 5)
    from convexprev import SpaceMismatchError
    with pytest.raises(SpaceMismatchError):
        measure(Gamble(Space("xyz"), [0, 0, 0]))
