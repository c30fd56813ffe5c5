import random
from fractions import Fraction as F

import pytest

from convexprev import (Assessment, Gamble, PrecisePrevision, PreconditionError,
                        check_avoids_sure_loss, check_centered_convexity,
                        check_coherence, check_convexity, check_k_bar,
                        check_relaxed_centered, classify, conjugate,
                        convex_natural_extension)
from convexprev.consistency import (CenteringWitness, ExtensionWitness,
                                    SureLossWitness, non_internal_entries)
from convexprev.envelope import EnvelopeSpec, envelope_eval
from convexprev.random_instances import (random_assessment, random_centered_convex,
                                         random_coherent, random_convex,
                                         random_gamble, random_gambles,
                                         random_space, random_spec,
                                         random_sure_loss)

from instances import ONE_A, ONE_B, S, ZERO, r1, r2, r4, with_zero


def test_r1_is_coherent():
    rep = classify(r1())
    assert rep.avoids_sure_loss and rep.convex and rep.coherent
    assert rep.centered_convex is None
    assert rep.k_bar == F(2, 5)


def test_r2_is_convex_with_sure_loss():
    ok, w = check_avoids_sure_loss(r2())
    assert not ok
    assert w == SureLossWitness({"1_a": F(1, 2), "1_b": F(1, 2)}, F(-1, 5))
    assert check_convexity(r2()) == (True, None)
    assert check_centered_convexity(r2()) == (None, None)
    assert check_k_bar(r2()) == F(-1, 5)
    assert not check_coherence(r2())[0]


def test_assessing_zero_above_zero_is_sure_loss():
    ok, w = check_avoids_sure_loss(Assessment(S, {"zero": (ZERO, 1)}))
    assert not ok and w.sup_gain == -1


def test_r4_is_convex_not_centered_not_coherent():
    rep = classify(r4())
    assert rep.avoids_sure_loss and rep.convex
    assert rep.centered_convex is False
    assert rep.witnesses["centered_convex"] == CenteringWitness("zero", F(-1, 10))
    assert not rep.coherent
    assert rep.witnesses["coherent"] == ExtensionWitness("zero", F(-1, 10), F(0), "natural")


def test_r4_centered_variant():
    assert check_centered_convexity(r4(0)) == (True, None)


def test_lower_envelope_of_two_previsions_is_coherent():
    a = Assessment(S, {"1_a": (ONE_A, "1/2"), "1_b": (ONE_B, "1/5")})
    assert check_coherence(a) == (True, None)


def test_r1_with_zero_entry_is_coherent():
    # lower envelope of Dirac(a) and (3/5, 2/5): 3/5 at 1_a, 0 at the zero gamble
    spec = EnvelopeSpec([PrecisePrevision.dirac(S, "a"), PrecisePrevision(S, ["3/5", "2/5"])],
                        [0, 0])
    a = with_zero(r1())
    assert envelope_eval(spec, {"1_a": ONE_A, "zero": ZERO}) == a
    rep = classify(a)
    assert rep.coherent and rep.convex and rep.centered_convex


def test_avoiding_sure_loss_without_convexity():
    a = Assessment(S, {"1_a": (ONE_A, "-1/10"), "zero": (ZERO, 0)})
    ok, w = check_convexity(a)
    assert check_avoids_sure_loss(a)[0] and not ok
    assert w == ExtensionWitness("1_a", F(-1, 10), F(0), "convex_natural")


def test_upper_assessments_are_reported_in_upper_terms():
    upper = conjugate(r4())
    rep = classify(upper)
    assert rep.orientation == "upper" and not rep.coherent
    assert rep.witnesses["coherent"] == ExtensionWitness("zero", F(1, 10), F(0), "natural")
    assert rep.k_bar == classify(r4()).k_bar


def test_generators_land_on_their_rung(rng):
    for _ in range(25):
        space = random_space(rng, rng.randint(1, 5))
        n = rng.randint(1, 5)
        assert classify(random_coherent(rng, space, n)).coherent
        assert check_convexity(random_convex(rng, space, n))[0]
        assert check_centered_convexity(random_centered_convex(rng, space, n))[0]
        assert not check_avoids_sure_loss(random_sure_loss(rng, space, n))[0]


def ladder_ok(rep):
    return ((not rep.coherent or rep.convex)
            and (not rep.centered_convex or rep.avoids_sure_loss)
            and rep.avoids_sure_loss == (rep.k_bar >= 0)
            and rep.avoids_unbounded_sure_loss)


def test_ladder_invariants_on_mixed_instances(rng):
    makers = (random_assessment, random_coherent, random_convex, random_sure_loss)
    for i in range(60):
        space = random_space(rng, rng.randint(1, 5))
        a = makers[i % 4](rng, space, rng.randint(1, 5))
        if rng.random() < 0.4:
            a = with_zero(a, F(rng.randint(-4, 4), 4))
        rep = classify(a)
        assert ladder_ok(rep)
        zero = a.zero_entry()
        if rep.convex and zero is not None and a.value(zero) <= 0:
            assert rep.avoids_sure_loss


def _scipy():
    return pytest.importorskip("scipy.optimize")


def float_margin(a: Assessment) -> float:
    """max t such that some probability vector p has p.X_i >= mu_i + t."""
    opt = _scipy()
    m = len(a.space)
    # variables (p_1..p_m, t); maximise t
    a_ub = [[-float(v) for v in g.values] + [1.0] for _, g, _ in a.entries]
    b_ub = [-float(mu) for _, _, mu in a.entries]
    res = opt.linprog([0.0] * m + [-1.0], A_ub=a_ub, b_ub=b_ub,
                      A_eq=[[1.0] * m + [0.0]], b_eq=[1.0],
                      bounds=[(0, None)] * m + [(None, None)], method="highs")
    assert res.status == 0
    return -res.fun


def float_lower_envelope(a: Assessment, z: Gamble) -> float:
    opt = _scipy()
    m = len(a.space)
    res = opt.linprog([float(v) for v in z.values],
                      A_ub=[[-float(v) for v in g.values] for _, g, _ in a.entries],
                      b_ub=[-float(mu) for _, _, mu in a.entries],
                      A_eq=[[1.0] * m], b_eq=[1.0], bounds=[(0, None)] * m, method="highs")
    assert res.status == 0
    return res.fun


def test_k_bar_and_sure_loss_against_float_oracle(rng):
    for i in range(120):
        space = random_space(rng, rng.randint(1, 6))
        a = random_assessment(rng, space, rng.randint(1, 6))
        margin = float_margin(a)
        assert abs(float(check_k_bar(a)) - margin) < 1e-7
        if abs(margin) > 1e-7:
            assert check_avoids_sure_loss(a)[0] == (margin > 0)


def test_coherence_against_float_oracle(rng):
    decided = 0
    for i in range(80):
        space = random_space(rng, rng.randint(2, 4))
        base = random_coherent(rng, space, rng.randint(1, 4))
        # perturb one value to land on either side of coherence
        k = rng.choice(base.ids)
        a = base.with_values({k: base.value(k) + F(rng.randint(-2, 2), 8)})
        if float_margin(a) < 1e-7:
            continue
        gaps = [float_lower_envelope(a, g) - float(mu) for _, g, mu in a.entries]
        if any(1e-9 < abs(gap) < 1e-6 for gap in gaps):
            continue
        assert check_coherence(a)[0] == all(abs(gap) <= 1e-9 for gap in gaps)
        decided += 1
    assert decided > 40


def test_zero_value_decides_sure_loss_for_convex(rng):
    for _ in range(40):
        space = random_space(rng, rng.randint(1, 4))
        a = random_convex(rng, space, rng.randint(1, 4), include_zero=True)
        assert check_avoids_sure_loss(a)[0] == (a.value(a.zero_entry()) <= 0)


def test_centered_convex_is_internal(rng):
    for _ in range(40):
        space = random_space(rng, rng.randint(1, 5))
        a = random_centered_convex(rng, space, rng.randint(1, 5))
        assert all(g.inf() <= mu <= g.sup() for _, g, mu in a.entries)


def test_scaling_inequalities_for_centered_convex(rng):
    for _ in range(20):
        space = random_space(rng, rng.randint(2, 4))
        a = random_centered_convex(rng, space, rng.randint(1, 4))
        x = random_gamble(rng, space)
        ex = convex_natural_extension(a, x).value
        for lam in (F(1, 4), F(1, 2), F(2), F(3), F(-1)):
            e = convex_natural_extension(a, lam * x).value
            assert e >= lam * ex if 0 <= lam <= 1 else e <= lam * ex


def test_non_internality_is_one_sided(rng):
    for _ in range(60):
        space = random_space(rng, rng.randint(1, 4))
        spec = random_spec(rng, space, kind="convex")
        spec = EnvelopeSpec(spec.previsions, [al * 3 for al in spec.alphas])
        a = envelope_eval(spec, random_gambles(rng, space, rng.randint(1, 5)))
        above, below = non_internal_entries(a)
        assert not (above and below)


def test_mixtures_and_translations_stay_convex(rng):
    for _ in range(20):
        space = random_space(rng, rng.randint(2, 4))
        gambles = random_gambles(rng, space, rng.randint(1, 4))
        a1 = envelope_eval(random_spec(rng, space), gambles)
        a2 = envelope_eval(random_spec(rng, space), gambles)
        lam = F(rng.randint(0, 10), 10)
        mix = a1.with_values({k: lam * a1.value(k) + (1 - lam) * a2.value(k) for k in a1.ids})
        assert check_convexity(mix)[0]
        assert check_convexity(a1.shifted(F(rng.randint(-9, 9), 4)))[0]


def test_convex_natural_extension_satisfies_c_and_mi(rng):
    for _ in range(20):
        space = random_space(rng, rng.randint(2, 4))
        a = random_convex(rng, space, rng.randint(1, 4))
        ec = lambda z: convex_natural_extension(a, z).value
        x, y = random_gamble(rng, space), random_gamble(rng, space)
        lam = F(rng.randint(0, 6), 6)
        assert ec(lam * x + (1 - lam) * y) >= lam * ec(x) + (1 - lam) * ec(y)
        mu = min(x[w] - y[w] for w in range(len(space)))
        assert ec(x) >= ec(y) + mu


def test_relaxed_centered():
    assert check_relaxed_centered(r4(0), 1000)
    assert check_relaxed_centered(r4(0), 0)
    with pytest.raises(PreconditionError):
        check_relaxed_centered(r2(), 10)


def test_relaxed_sampler_finds_violations_off_center():
    from convexprev.consistency import relaxed_gain_violations
    stakes, against, s0, sup = relaxed_gain_violations(r4(), 200)[0]
    assert sup < 0 and sum(stakes.values()) <= s0
