from fractions import Fraction
import random

import pytest

from charsum.exactnum import (FactorProduct, GroupToken, IrrationalProduct, LaurentPoly,
                              laurent_eval, rational_from_str, rational_to_str, resolve)


def test_laurent_eval_examples():
    assert laurent_eval(LaurentPoly({0: 1, 1: -1}), Fraction(-1, 3)) == Fraction(4, 3)
    assert laurent_eval(LaurentPoly({-1: 1}), Fraction(-1, 3)) == -3
    one_minus_t = LaurentPoly({0: 1, 1: -1})
    assert laurent_eval(one_minus_t * one_minus_t, Fraction(-1, 3)) == Fraction(16, 9)


def test_eval_at_zero_with_negative_powers():
    with pytest.raises(ZeroDivisionError):
        laurent_eval(LaurentPoly({-2: 1}), 0)


def test_no_zero_coefficients_stored():
    p = LaurentPoly({0: 1, 3: 0}) + LaurentPoly({0: -1})
    assert p.is_zero()
    assert p.coeffs == {}


def _random_poly(rng):
    return LaurentPoly({rng.randint(-4, 4): rng.randint(-5, 5) for _ in range(rng.randint(0, 5))})


def test_evaluation_is_a_ring_map():
    rng = random.Random(7)
    for _ in range(200):
        p, r = _random_poly(rng), _random_poly(rng)
        x = Fraction(rng.choice([-3, -2, -1, 1, 2, 5]), rng.randint(1, 7))
        assert laurent_eval(p * r, x) == laurent_eval(p, x) * laurent_eval(r, x)
        assert laurent_eval(p + r, x) == laurent_eval(p, x) + laurent_eval(r, x)


def test_exact_division_round_trip():
    rng = random.Random(3)
    for _ in range(100):
        p, d = _random_poly(rng), _random_poly(rng)
        if d.is_zero():
            continue
        assert (p * d).exact_div(d) == p


def test_exact_division_rejects_remainder():
    with pytest.raises(ValueError):
        LaurentPoly({0: 1, 2: 1}).exact_div(LaurentPoly({0: 1, 1: 1}))


def test_resolve_tokens():
    sp2 = FactorProduct.make(tokens=[(GroupToken("Sp", 2, 1), 2)])
    assert resolve(sp2, 3) == 24
    half_u2 = FactorProduct.make(tokens=[(GroupToken("U", 2, 1), 1)])
    assert resolve(half_u2 * half_u2, 3) == 96
    with pytest.raises(IrrationalProduct):
        resolve(half_u2, 3)


def test_odd_half_power_of_q_is_irrational():
    with pytest.raises(IrrationalProduct):
        FactorProduct.make(q_half=3).resolve(5)
    assert FactorProduct.make(q_half=3).inverse().__mul__(FactorProduct.make(q_half=5)).resolve(5) == 5


def test_square_of_any_product_resolves():
    f = FactorProduct.make(Fraction(2, 3), 1, [(GroupToken("GL", 2, 1), 1), (GroupToken("U", 1, 2), 1)])
    val = (f * f).resolve(3)
    # |U(1)| over q^2 = 9 is 10
    assert val == Fraction(4, 9) * 3 * 48 * 10


def test_rational_strings():
    assert rational_to_str(Fraction(-6, 4)) == "-3/2"
    assert rational_from_str("-3/2") == Fraction(-3, 2)
    assert rational_from_str(rational_to_str(Fraction(10 ** 40, 7))) == Fraction(10 ** 40, 7)
