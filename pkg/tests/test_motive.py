from fractions import Fraction

import pytest

from stackcount.motive import (
    L,
    ONE,
    MotiveClass,
    ambient_identity_check,
    gm_motive,
    inertia_wmin_motive,
    poly1_motive,
    poly_cond_motive,
    proj_motive,
    stratum_gamma_motive,
    sym_p1_series,
    wmin_motive,
    zeta_series,
)
from stackcount.ffield import units_by_order
from stackcount.wls import VanishingCondition


def lp(k):
    return MotiveClass.lefschetz(k)


def test_ring_basics():
    assert proj_motive(1) == L + ONE
    assert proj_motive(-1).is_zero
    assert gm_motive() == L - ONE
    assert (lp(2) - ONE) / (L + ONE) == L - ONE
    assert proj_motive(1).specialize(5) == 6
    assert (lp(10) - lp(8)).specialize(5) == 9_375_000


def test_reduction_and_canonical_form():
    a = MotiveClass.make((0, 0, 2), (0, 2))  # 2L^2 / 2L = L
    assert a == L
    b = MotiveClass.make((1,), (2,))  # 1/2 stays a fraction
    assert not b.is_polynomial
    with pytest.raises(AssertionError):
        b.assert_polynomial()
    assert b.specialize(7) == Fraction(1, 2)


def test_specialize_pole():
    from stackcount.ffield import DegenerateInputError

    c = MotiveClass.make((1,), (-5, 1))  # 1/(L - 5)
    with pytest.raises(DegenerateInputError):
        c.specialize(5)


def test_poly1_examples():
    assert poly1_motive(1, 1) == lp(2) - L
    assert poly1_motive(1, 1).specialize(5) == 20
    assert poly1_motive(0, 3) == lp(3)
    assert poly1_motive(2, 3) == lp(5) - lp(4)


def test_poly_cond_examples():
    # (>=1,1) on degrees (2,2): (L-1)^2, 16 at q=5
    c = poly_cond_motive("geq_exact", 1, 1, 2, 2)
    assert c == (L - ONE) * (L - ONE)
    assert c.specialize(5) == 16
    # beta = 0 case: L^alpha
    assert poly_cond_motive("geq_exact", 1, 6, 4, 6) == lp(3)
    # (>=2,1) on (2,6): (L-1)L^4
    assert poly_cond_motive("geq_exact", 2, 1, 2, 6) == (L - ONE) * lp(4)
    assert poly_cond_motive("geq_exact", 2, 1, 2, 6).specialize(5) == 2500


def test_poly_cond_validation():
    with pytest.raises(ValueError):
        poly_cond_motive("geq_exact", 3, 1, 2, 6)  # a > d1
    with pytest.raises(ValueError):
        poly_cond_motive("geq_exact", 0, 1, 2, 6)
    with pytest.raises(ValueError):
        poly_cond_motive("bogus", 1, 1, 2, 2)


def test_poly_cond_closed_equals_recursion_grid():
    for d1 in range(9):
        for d2 in range(9):
            for shape in ("geq_exact", "exact_geq", "exact_exact"):
                for a in range(1, min(d1, 4) + 1):
                    for b in range(1, min(d2, 4) + 1):
                        closed = poly_cond_motive(shape, a, b, d1, d2)
                        rec = poly_cond_motive(shape, a, b, d1, d2, recursive=True)
                        assert closed == rec, (shape, a, b, d1, d2)


def test_poly_cond_swap_symmetry():
    # {(>=a, b)} on (d1, d2) equals {(b, >=a)} on (d2, d1)
    for d1 in range(1, 7):
        for d2 in range(1, 7):
            for a in range(1, min(d1, 3) + 1):
                for b in range(1, min(d2, 3) + 1):
                    lhs = poly_cond_motive("geq_exact", a, b, d1, d2)
                    rhs = poly_cond_motive("exact_geq", b, a, d2, d1)
                    assert lhs == rhs


STRATUM_TABLE_N = {
    ">=1,1": (0, 2),  # L^(10n) - L^(10n-2)
    "1,>=2": (1, 3),
    ">=2,2": (2, 4),
    ">=3,3": (4, 6),
    "2,>=4": (4, 6),
    ">=3,4": (5, 7),
    "3,>=5": (6, 8),
    ">=4,5": (7, 9),
}


def test_stratum_motive_table_rows():
    for n in (1, 2):
        for text, (hi, lo) in STRATUM_TABLE_N.items():
            g = VanishingCondition.parse(text)
            got = stratum_gamma_motive(4, 6, n, g)
            assert got == lp(10 * n - hi) - lp(10 * n - lo), (text, n)
        g23 = VanishingCondition.parse("2,3")
        got = stratum_gamma_motive(4, 6, n, g23)
        expect = lp(10 * n - 3) - lp(10 * n - 4) - lp(10 * n - 5) + lp(10 * n - 6)
        assert got == expect


def test_stratum_telescoping_over_exact_orders():
    # a (>= a, b) stratum is the disjoint union of the exact (a', b) strata
    from stackcount.motive import ZERO

    for lam0, lam1, n in ((4, 6, 1), (4, 6, 2), (2, 3, 1)):
        total = ZERO
        for ap in range(1, lam0 * n + 1):
            exact = VanishingCondition(ap, 1, True, True)
            if exact.realizable(lam0, lam1, n):
                total = total + stratum_gamma_motive(lam0, lam1, n, exact)
        assert total == stratum_gamma_motive(
            lam0, lam1, n, VanishingCondition.parse(">=1,1")
        )


def test_stratum_motive_rejects_unrealizable():
    from stackcount.ffield import DegenerateInputError

    with pytest.raises(DegenerateInputError):
        stratum_gamma_motive(4, 6, 1, VanishingCondition.parse("4,6"))  # m = kappa
    with pytest.raises(DegenerateInputError):
        stratum_gamma_motive(4, 6, 1, VanishingCondition.parse(">=1,2"))  # min at >= index
    with pytest.raises(DegenerateInputError):
        stratum_gamma_motive(4, 6, 1, VanishingCondition.parse("1,7"))  # exceeds degree


def test_wmin_examples():
    assert wmin_motive((4, 6), 0) == proj_motive(1)
    w1 = wmin_motive((4, 6), 1)
    assert w1 == proj_motive(1) * (lp(10) - L) + lp(2) * proj_motive(7)
    assert w1.specialize(5) == 61_035_120
    assert wmin_motive((1, 1), 1) == L * (lp(2) - ONE)
    assert wmin_motive((1, 1), 1).specialize(5) == 120
    # single weight (2): closed sums telescope to q^(2m) + 1
    for m in (1, 2, 3):
        total = sum(wmin_motive((2,), n).specialize(5) for n in range(m + 1))
        assert total == 5 ** (2 * m) + 1


def test_inertia_examples():
    w46 = wmin_motive((4, 6), 1)
    w4 = wmin_motive((4,), 1)
    w6 = wmin_motive((6,), 1)
    two = MotiveClass.from_int(2)
    four = MotiveClass.from_int(4)
    assert inertia_wmin_motive((4, 6), 1, units_by_order(5)) == two * w46 + two * w4
    assert inertia_wmin_motive((4, 6), 1, units_by_order(7)) == two * w46 + four * w6
    assert (
        inertia_wmin_motive((4, 6), 1, units_by_order(13))
        == two * w46 + two * w4 + four * w6
    )
    for q in (5, 7, 11):
        assert inertia_wmin_motive((2, 2), 1, units_by_order(q)) == two * wmin_motive(
            (2, 2), 1
        )


def test_zeta_series_matches_wmin():
    for weights in ((4, 6), (1, 1), (2, 3), (1, 2, 3)):
        series = zeta_series(weights, 6)
        assert series[0] == proj_motive(len(weights) - 1)
        for n in range(7):
            assert series[n] == wmin_motive(weights, n), (weights, n)


def test_ambient_identity():
    for weights in ((4, 6), (2, 3), (1, 1, 1), (2, 4, 6), (1, 5)):
        assert ambient_identity_check(weights, 6)


def test_ambient_identity_detects_corruption():
    # the product against a wrong zeta must fail
    series = zeta_series((4, 6), 4)
    wrong = series.coeffs[:2] + (series.coeffs[2] + ONE,) + series.coeffs[3:]
    from stackcount.motive import MotiveSeries

    product = MotiveSeries(wrong) * sym_p1_series(4)
    assert any(
        product[n] != proj_motive(n * 10 + 1) for n in range(5)
    )


def test_motive_json_roundtrip():
    c = poly_cond_motive("geq_exact", 1, 1, 2, 6)
    assert MotiveClass.from_json(c.to_json()) == c
    z = MotiveClass.from_int(0)
    assert z.to_json() == {"num": [0], "den": [1]}
    assert MotiveClass.from_json(z.to_json()) == z
