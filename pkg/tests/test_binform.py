import random

import pytest

from stackcount.binform import (
    BinaryForm,
    Divisor,
    Place,
    bf_gcd,
    divisor_form,
    factor_divisor,
    poly_factor,
    valuation,
)
from stackcount.ffield import DegenerateInputError


def form(p, coeffs):
    return BinaryForm(p, coeffs)


def test_arithmetic_examples():
    p = 5
    t = BinaryForm.monomial(p, 1, 1)  # t
    s = BinaryForm.monomial(p, 1, 0)  # s
    st = t * s
    assert st.degree == 2 and st.coeffs == (0, 1, 0)
    assert (t**3).coeffs == (0, 0, 0, 1)
    st3 = s * t**3
    assert st3.eval_affine(2) == 3  # 2^3 = 8 = 3 mod 5


def test_add_requires_equal_degree():
    p = 5
    with pytest.raises(DegenerateInputError):
        BinaryForm.monomial(p, 1, 1) + BinaryForm.monomial(p, 2, 1)
    z = BinaryForm.zero(p)
    f = BinaryForm.monomial(p, 2, 1)
    assert z + f == f and f + z == f


def test_zero_form_has_no_degree():
    z = BinaryForm.zero(5)
    assert z.is_zero
    with pytest.raises(DegenerateInputError):
        z.degree
    with pytest.raises(DegenerateInputError):
        valuation(z, Place.infinity())
    assert BinaryForm(5, [0, 0, 0]).is_zero  # all-zero coeffs normalize


def test_gcd_examples():
    p = 5
    t = BinaryForm.monomial(p, 1, 1)
    s = BinaryForm.monomial(p, 1, 0)
    assert bf_gcd(s * t, t * t) == t
    # t^2 + s^2 = (t - 2s)(t - 3s) over F_5; gcd with (t - 2s) is (t - 2s)
    f = form(p, [1, 0, 1])  # s^2 + t^2
    g = form(p, [-2, 1])  # t - 2s
    assert bf_gcd(f, g) == g
    one = BinaryForm.one(p)
    assert bf_gcd(f, one) == one
    with pytest.raises(DegenerateInputError):
        bf_gcd(BinaryForm.zero(p), BinaryForm.zero(p))


def test_valuation_examples():
    p = 5
    t = BinaryForm.monomial(p, 1, 1)
    s = BinaryForm.monomial(p, 1, 0)
    st3 = s * t**3
    assert valuation(st3, Place.finite((0, 1))) == 3
    assert valuation(st3, Place.infinity()) == 1
    g = form(p, [-2, 1]) ** 2 * s  # (t-2s)^2 s
    assert valuation(g, Place.finite((3, 1))) == 2  # t - 2 = x + 3 mod 5
    assert valuation(g, Place.finite((1, 1))) == 0


def test_factor_divisor_examples():
    p = 5
    t = BinaryForm.monomial(p, 1, 1)
    s = BinaryForm.monomial(p, 1, 0)
    div = factor_divisor(t * t * s)
    assert div.entries == (
        (Place.infinity(), 1),
        (Place.finite((0, 1)), 2),
    )
    # t^2 + s^2 splits: roots 2, 3
    div = factor_divisor(form(p, [1, 0, 1]))
    assert div.entries == (
        (Place.finite((2, 1)), 1),
        (Place.finite((3, 1)), 1),
    )
    # t^2 + 2 s^2 is irreducible: -2 = 3 is a non-residue mod 5
    assert all(pow(x, 2, 5) != 3 for x in range(5))
    div = factor_divisor(form(p, [2, 0, 1]))
    assert div.entries == ((Place.finite((2, 0, 1)), 1),)


def reassemble(f, div):
    g = divisor_form(div, f.p).scalar_mul(f.leading_unit)
    return g


def test_factor_roundtrip_exhaustive_small():
    # every nonzero form of degree <= 4 over F_5 refactors to itself
    p = 5
    for deg in range(5):
        for idx in range(1, p ** (deg + 1)):
            coeffs = []
            k = idx
            for _ in range(deg + 1):
                k, c = divmod(k, p)
                coeffs.append(c)
            f = BinaryForm(p, coeffs)
            if f.is_zero or f.degree != deg:
                continue
            div = factor_divisor(f)
            g = reassemble(f, div)
            target_deg = f.degree if not f.is_zero else None
            padded = BinaryForm.from_affine(p, g.affine(), target_deg)
            assert padded == f, (coeffs, div.entries)


def test_factor_roundtrip_random_degree_12():
    rng = random.Random(7)
    p = 5
    for _ in range(300):
        coeffs = [rng.randrange(p) for _ in range(13)]
        f = BinaryForm(p, coeffs)
        if f.is_zero:
            continue
        div = factor_divisor(f)
        assert div.degree == f.degree
        g = BinaryForm.from_affine(p, reassemble(f, div).affine(), f.degree)
        assert g == f


def test_factor_determinism_under_seed():
    rng = random.Random(3)
    for _ in range(50):
        u = tuple(rng.randrange(7) for _ in range(9)) + (1,)
        assert poly_factor(u, 7, seed=0) == poly_factor(u, 7, seed=0)
        # different seeds may split in another order but sort identically
        assert poly_factor(u, 7, seed=0) == poly_factor(u, 7, seed=99)


def test_gcd_valuation_law():
    rng = random.Random(11)
    p = 5
    for _ in range(120):
        f = BinaryForm(p, [rng.randrange(p) for _ in range(7)])
        g = BinaryForm(p, [rng.randrange(p) for _ in range(5)])
        if f.is_zero or g.is_zero:
            continue
        h = bf_gcd(f, g)
        places = {pl for pl, _ in factor_divisor(f)} | {pl for pl, _ in factor_divisor(g)}
        for pl in places:
            expect = min(valuation(f, pl), valuation(g, pl))
            got = 0 if (h.degree == 0 and h.nu_infinity == 0) else valuation(h, pl)
            assert got == expect


def test_valuation_degree_sum():
    rng = random.Random(13)
    p = 7
    for _ in range(80):
        f = BinaryForm(p, [rng.randrange(p) for _ in range(9)])
        if f.is_zero:
            continue
        div = factor_divisor(f)
        assert sum(m * pl.deg for pl, m in div) == f.degree


def test_monic_irreducible_enumeration():
    from stackcount.binform import monic_irreducibles, poly_is_irreducible, poly_mul

    irr = monic_irreducibles(5, 4)
    by_deg = {}
    for f in irr:
        by_deg[len(f) - 1] = by_deg.get(len(f) - 1, 0) + 1
    assert by_deg == {1: 5, 2: 10, 3: 40, 4: 150}  # necklace counts over F_5
    assert all(poly_is_irreducible(f, 5) for f in irr)
    assert not poly_is_irreducible(poly_mul(irr[0], irr[1], 5), 5)
    assert not poly_is_irreducible((1,), 5)


def test_place_ordering_and_json():
    inf = Place.infinity()
    p1 = Place.finite((2, 1))
    p2 = Place.finite((2, 0, 1))
    assert sorted([p2, p1, inf]) == [inf, p1, p2]
    assert Place.from_json("inf") == inf
    assert Place.from_json({"coeffs": [2, 1]}) == p1
    assert p2.to_json() == {"coeffs": [2, 0, 1]}
    assert Divisor.of([(p1, 2), (inf, 1)]).degree == 3


def test_form_json_roundtrip():
    f = BinaryForm(5, [1, 2, 0, 3])
    assert BinaryForm.from_json(5, f.to_json()) == f
    assert BinaryForm.from_json(5, None).is_zero
    with pytest.raises(ValueError):
        BinaryForm.from_json(5, {"deg": 2, "coeffs": [1, 2]})
