from fractions import Fraction

import pytest

from charsum.charsums import (ClassFunction, degree_sum, dl_product, full_sum, full_sum_unipotent,
                              gelfand_graev, gg_value, induced_trivial, model_sum, perm_char,
                              perm_char_unipotent, prob_sp, prob_twisted, unit_function)
from charsum.classes import ClassU, enumerate_classes_U, group_order, unipotent_class
from charsum.ffield import PHI_TILDE2, minus_one_orbit, one_orbit
from charsum.partitions import Partition, PreconditionError, enumerate_partitions


def P(*parts):
    return Partition(parts)


def at_minus_one(mu, q=3):
    return ClassU.make(q, [(minus_one_orbit(q, PHI_TILDE2, 2), P(*mu))])


def test_gg_examples():
    assert gg_value(unipotent_class(P(1), 3)) == 4
    assert gg_value(unipotent_class(P(1, 1), 3)) == 32
    assert gg_value(at_minus_one([1, 1])) == 0


def test_gg_degree_is_index_of_unipotent_radical():
    # Gamma at the identity = |U(n)| / (|T| q^{n(n-1)/2}) for the quasi-split torus
    for n in range(1, 5):
        q = 3
        val = gg_value(unipotent_class(Partition([1] * n), q))
        assert val > 0
        assert group_order("U", n, q) % val == 0


def test_perm_char_examples():
    q = 3
    assert perm_char(unipotent_class(P(1, 1), q)) == 4
    assert perm_char(at_minus_one([1, 1])) == 4
    mixed = ClassU.make(q, [(one_orbit(q, PHI_TILDE2, 2), P(1)), (minus_one_orbit(q, PHI_TILDE2, 2), P(1))])
    assert perm_char(mixed) == 0


def test_perm_char_unipotent_examples():
    assert perm_char_unipotent(P(1, 1), 3) == 4
    assert perm_char_unipotent(P(1), 3) == 0
    assert perm_char_unipotent(P(2, 2), 3) == 108
    assert perm_char(unipotent_class(P(2, 2), 3)) == 108


def test_full_sum_examples():
    q = 3
    assert full_sum(unipotent_class(P(1), q)) == 4
    assert full_sum(at_minus_one([1, 1])) == 4
    assert full_sum(unipotent_class(P(2), q)) == 0


def test_full_sum_unipotent_examples():
    assert full_sum_unipotent(P(1), 3) == 4
    assert full_sum_unipotent(P(1, 1), 3) == 36
    assert full_sum_unipotent(P(2), 5) == 0


def test_even_q_rejected():
    with pytest.raises(PreconditionError):
        full_sum(unipotent_class(P(1), 2))
    with pytest.raises(PreconditionError):
        perm_char(unipotent_class(P(1), 3))


@pytest.mark.parametrize("q", [3, 5])
def test_unipotent_corollaries_match(q):
    for n in range(1, 7):
        for mu in enumerate_partitions(n):
            c = unipotent_class(mu, q)
            assert full_sum_unipotent(mu, q) == full_sum(c)
            if n % 2 == 0:
                assert perm_char_unipotent(mu, q) == perm_char(c)


@pytest.mark.parametrize("n2,q", [(2, 3), (2, 5), (4, 3), (4, 5)])
def test_perm_char_average(n2, q):
    f = ClassFunction.from_function(n2, q, perm_char)
    assert f.total() == group_order("U", n2, q)
    assert all(v >= 0 and v.denominator == 1 for v in f.values.values())


@pytest.mark.parametrize("n", range(1, 5))
def test_full_sum_average(n):
    f = ClassFunction.from_function(n, 3, full_sum)
    assert f.total() == group_order("U", n, 3)


def test_dl_product_examples():
    q = 3
    g = ClassFunction.from_function(2, q, full_sum)
    for c in enumerate_classes_U(2, q):
        assert dl_product(unit_function(q), g, c) == g(c)
        assert dl_product(g, unit_function(q), c) == g(c)
    g1 = gelfand_graev(1, q)
    assert dl_product(g1, g1, unipotent_class(P(1, 1), q)) == -32
    assert dl_product(g1, g1, unipotent_class(P(2), q)) == 16


def test_model_examples():
    q = 3
    assert model_sum(unipotent_class(P(1), q)) == 4
    assert model_sum(at_minus_one([1, 1])) == 4
    assert model_sum(unipotent_class(P(1, 1), q)) == 36


@pytest.mark.parametrize("n", [1, 2, 3])
def test_model_replay(n):
    for c in enumerate_classes_U(n, 3):
        assert model_sum(c) == full_sum(c)


def test_probability_examples():
    q = 3
    assert prob_sp(unipotent_class(P(1, 1), q)) == Fraction(1, 24)
    assert prob_twisted(unipotent_class(P(1), q)) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_probabilities_sum_to_one(n):
    cs = enumerate_classes_U(n, 3)
    assert sum(prob_twisted(c) for c in cs) == 1
    if n % 2 == 0:
        assert sum(prob_sp(c) for c in cs) == 1


def test_probability_matches_value_ratio():
    # a value is the centralizer order times the probability
    from charsum.classes import centralizer_U

    for c in enumerate_classes_U(4, 3):
        assert perm_char(c) == centralizer_U(c) * prob_sp(c)
        assert full_sum(c) == centralizer_U(c) * prob_twisted(c)


def test_degree_sum_examples():
    assert degree_sum(1, 3) == 4
    assert degree_sum(2, 3) == 36


def test_class_function_validation():
    with pytest.raises(ValueError):
        ClassFunction(1, 3, {unipotent_class(P(1, 1), 3): 1})
    assert induced_trivial(0, 3)(unit_function(3).support()[0]) == 1
