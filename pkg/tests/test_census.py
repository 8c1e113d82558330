from fractions import Fraction

import pytest

import stackcount.census as census
from stackcount.census import (
    BudgetExceededError,
    CensusConfig,
    count_curves,
    enumerate_poly,
    enumerate_stratum,
    enumerate_wmin,
    orbit_count_by_dedup,
    realizable_gammas,
    structure_sweep,
    count_constants,
)
from stackcount.ffield import DegenerateInputError
from stackcount.motive import (
    MotiveClass,
    inertia_wmin_motive,
    stratum_gamma_motive,
    wmin_motive,
)
from stackcount.ffield import units_by_order
from stackcount.wls import VanishingCondition


def test_enumerate_wmin_examples():
    r = enumerate_wmin((1, 1), 1, 5)
    assert (r.raw, r.weighted) == (480, 120)  # (25-1)(25-5) independent pairs
    assert r.weighted == wmin_motive((1, 1), 1).specialize(5)
    r = enumerate_wmin((2, 2), 0, 5)
    assert (r.raw, r.weighted, r.orbits) == (24, 6, 12)
    r = enumerate_wmin((2,), 0, 5)
    assert (r.raw, r.weighted, r.orbits) == (4, 1, 2)


def test_weighted_integrality():
    for weights, n, p in (((1, 2), 1, 5), ((2, 3), 0, 7), ((1, 1), 2, 5)):
        r = enumerate_wmin(weights, n, p)
        assert r.weighted * (p - 1) == r.raw
        assert r.orbits * (p - 1) >= r.raw


def test_budget_guard():
    with pytest.raises(BudgetExceededError):
        enumerate_wmin((4, 6), 1, 5, budget=1000)
    cfg = CensusConfig(5, (4, 6), 1)
    assert cfg.heavy and cfg.space_size == 5**12


def test_census_deterministic_across_scheduling():
    a = enumerate_wmin((1, 1), 1, 5, workers=1, chunk_size=17)
    b = enumerate_wmin((1, 1), 1, 5, workers=2, chunk_size=101)
    assert (a.raw, a.orbits, a.checksum) == (b.raw, b.orbits, b.checksum)


def test_burnside_equals_dedup():
    for weights, n in (((1, 1), 0), ((1, 1), 1), ((2, 2), 0), ((2, 2), 1), ((1, 2), 0), ((1, 2), 1)):
        r = enumerate_wmin(weights, n, 5)
        assert r.orbits == orbit_count_by_dedup(weights, n, 5), (weights, n)


def test_inertia_decomposition_of_raw_counts():
    # orbits = 2 weighted + delta(6) 4 weighted_6 + delta(4) 2 weighted_4
    p = 5
    r = enumerate_wmin((4, 6), 0, p)
    w6 = enumerate_wmin((6,), 0, p).weighted
    w4 = enumerate_wmin((4,), 0, p).weighted
    d6 = 1 if (p - 1) % 6 == 0 else 0
    d4 = 1 if (p - 1) % 4 == 0 else 0
    assert r.orbits == 2 * r.weighted + d6 * 4 * w6 + d4 * 2 * w4
    assert r.orbits == inertia_wmin_motive((4, 6), 0, units_by_order(p)).specialize(p)


def test_enumerate_poly_examples():
    assert enumerate_poly(None, 0, 0, 1, 1, 5) == 20
    assert enumerate_poly("geq_exact", 1, 1, 2, 2, 5) == 16
    # beta = 0 case: p^alpha for any p
    for p in (5, 7, 11):
        for d1, a in ((3, 1), (4, 2)):
            assert enumerate_poly("geq_exact", a, 4, d1, 4, p) == p ** (d1 - a)


def test_enumerate_poly_brute_matches_ie():
    p = 5
    for d1 in range(4):
        for d2 in range(4):
            for shape in (None, "geq_exact", "exact_geq", "exact_exact"):
                if shape is None:
                    brute = census._enumerate_poly_pairs(None, 0, 0, d1, d2, p)
                    ie = census._enumerate_poly_ie(None, 0, 0, d1, d2, p)
                    assert brute == ie, (shape, d1, d2)
                    continue
                for a in range(1, d1 + 1):
                    for b in range(1, d2 + 1):
                        brute = census._enumerate_poly_pairs(shape, a, b, d1, d2, p)
                        ie = census._enumerate_poly_ie(shape, a, b, d1, d2, p)
                        assert brute == ie, (shape, a, b, d1, d2)


def test_enumerate_poly_validation():
    with pytest.raises(ValueError):
        enumerate_poly("geq_exact", 3, 1, 2, 6, 5)
    with pytest.raises(ValueError):
        enumerate_poly("geq_exact", 0, 1, 2, 6, 5)


def test_enumerate_stratum_examples():
    g = VanishingCondition.parse(">=1,1")
    res = enumerate_stratum(2, 3, 1, g, 5)
    assert res.weighted == stratum_gamma_motive(2, 3, 1, g).specialize(5)
    assert res.weighted * 4 == 6 * res.raw_fiber
    with pytest.raises(DegenerateInputError):
        enumerate_stratum(2, 3, 1, VanishingCondition.parse("2,3"), 5)  # m = kappa
    with pytest.raises(BudgetExceededError):
        enumerate_stratum(4, 6, 1, g, 5, budget=1000)


def test_realizable_gammas_23():
    gammas = {str(g) for g in realizable_gammas(2, 3, 1)}
    assert ">=1,1" in gammas and "1,>=2" in gammas and "1,>=3" in gammas
    assert "2,3" not in gammas  # m = kappa = 6
    assert ">=1,2" not in gammas  # min at an inequality index
    # every realizable gamma matches its census
    for g in realizable_gammas(2, 3, 1):
        res = enumerate_stratum(2, 3, 1, g, 5)
        assert res.weighted == stratum_gamma_motive(2, 3, 1, g).specialize(5), str(g)


def test_stratum_n2_oracle():
    # longer degree sums: every realizable (1,2) height-2 stratum vs its census
    for g in realizable_gammas(1, 2, 2):
        res = enumerate_stratum(1, 2, 2, g, 5)
        assert res.weighted == stratum_gamma_motive(1, 2, 2, g).specialize(5), str(g)


def test_stratum_deterministic():
    g = VanishingCondition.parse("1,>=2")
    a = enumerate_stratum(2, 3, 1, g, 5, workers=1)
    b = enumerate_stratum(2, 3, 1, g, 5, workers=2)
    assert (a.raw_fiber, a.checksum) == (b.raw_fiber, b.checksum)


def test_count_curves_worked_identities():
    for q in (5, 7, 11, 13):
        rep = count_curves(q, 1, "kodaira", "II")
        assert rep.value_sum == 2 * (q**2 - 1) * q**8
        assert rep.match
    rep = count_curves(5, 2, "weighted")
    assert rep.value_sum == Fraction(5**9 - 1, 5**8 - 5**7) * 5**20 - 5**4
    rep = count_curves(5, 1, "unweighted")
    assert rep.value_sum == (
        2 * Fraction(5**9 - 1, 5**8 - 5**7) * 5**10
        - 2 * 5**2
        + 2 * Fraction(5**3 - 1, 5**3 - 5**2) * 5**4
        + 2
    )


def test_count_curves_closed_equals_sum_grid():
    for q in (5, 7):
        for m in (1, 2, 3):
            for mode in ("weighted", "unweighted"):
                rep = count_curves(q, m, mode)
                assert rep.match, (q, m, mode)
            for theta in census.THETA_GAMMAS:
                rep = count_curves(q, m, "kodaira", theta)
                assert rep.match, (q, m, theta)


def test_count_curves_m0_summation_only():
    rep = count_curves(5, 0, "weighted")
    assert rep.value_sum == 5  # q + 1 minimal points at n=0, minus the singular one
    assert rep.value_closed is None and not rep.closed_applicable
    rep = count_curves(5, 0, "unweighted")
    assert rep.value_sum == 12


def test_count_unweighted_integrality():
    for q in (5, 7, 11, 13):
        for m in (1, 2):
            rep = count_curves(q, m, "unweighted")
            assert rep.value_sum.denominator == 1


def test_count_curves_validation():
    with pytest.raises(ValueError):
        count_curves(4, 1, "weighted")  # char 2
    with pytest.raises(ValueError):
        count_curves(9, 1, "weighted")  # char 3
    with pytest.raises(ValueError):
        count_curves(5, 1, "kodaira", "V")
    assert count_curves(25, 1, "weighted").match  # prime power q is fine


def test_count_constants():
    c5 = count_constants(5)
    assert c5["delta4"] == 1 and c5["delta6"] == 0
    assert c5["a_q"] == Fraction(5**9 - 1, 5**8 - 5**7)
    assert c5["d_q"] == 2
    c7 = count_constants(7)
    assert c7["delta4"] == 0 and c7["delta6"] == 1 and c7["d_q"] == 4
    c11 = count_constants(11)
    assert c11["d_q"] == 0
    c13 = count_constants(13)
    assert c13["d_q"] == 6


def test_structure_sweep_clean():
    out = structure_sweep(seed=0)
    assert out["failures"] == 0


def test_verify_negative_control(monkeypatch):
    # corrupting the height-1 closed form must surface a counterexample
    real = census.wmin_motive

    def corrupted(weights, n):
        out = real(weights, n)
        if tuple(weights) == (1, 1) and n == 1:
            return out + MotiveClass.from_int(1)
        return out

    monkeypatch.setattr(census, "wmin_motive", corrupted)
    cases, _ = census._wmin_cases()
    bad = [c for c in cases if not c.match]
    assert bad
    assert "weights=(1, 1) n=1" in bad[0].case
