import pytest

from stackcount.ffield import (
    DegenerateInputError,
    FieldSpec,
    delta_divides,
    fp_arith,
    fp_inv,
    units_by_order,
)


def test_fp_arith_examples():
    assert fp_arith(2, None, "inv", 5) == 3  # 2*3 = 6 = 1 mod 5
    assert fp_arith(4, 3, "add", 5) == 2
    for g in range(1, 7):
        assert fp_arith(g, 6, "pow", 7) == 1  # Fermat


def test_division_by_zero_rejected():
    with pytest.raises(DegenerateInputError):
        fp_inv(0, 5)
    with pytest.raises(DegenerateInputError):
        fp_arith(3, 0, "div", 5)


def test_inverse_and_power_laws():
    p = 13
    for a in range(1, p):
        assert a * fp_inv(a, p) % p == 1
        for m in range(4):
            for n in range(4):
                assert pow(a, m, p) * pow(a, n, p) % p == pow(a, m + n, p)


def test_field_spec_validation():
    assert FieldSpec(5).p == 5
    with pytest.raises(ValueError):
        FieldSpec(3)
    with pytest.raises(ValueError):
        FieldSpec(9)
    assert FieldSpec.from_json({"p": 7}).to_json() == {"p": 7}


def test_delta_divides():
    assert delta_divides(6, 7) == 1
    assert delta_divides(4, 7) == 0
    assert delta_divides(2, 5) == 1
    # q - 1 is always even for odd prime powers
    for q in (5, 7, 9, 11, 13, 25, 49):
        assert delta_divides(2, q) == 1


def test_units_by_order():
    assert units_by_order(5) == {1: 1, 2: 1, 4: 2}
    assert units_by_order(7) == {1: 1, 2: 1, 3: 2, 6: 2}
    assert units_by_order(13) == {1: 1, 2: 1, 3: 2, 4: 2, 6: 2, 12: 4}
    for q in (5, 7, 11, 13, 17, 25):
        assert sum(units_by_order(q).values()) == q - 1
