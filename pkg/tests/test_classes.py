from fractions import Fraction

import pytest

from charsum.classes import (ClassSp, ClassU, a_gl, b_factor, bstar_factor, centralizer_Sp,
                             centralizer_Sp_mixed, centralizer_U, class_equation_sum,
                             enumerate_classes_Sp, enumerate_classes_U, group_order, sp_to_u,
                             transfer_check, unipotent_class)
from charsum.ffield import (PHI_K, PHI_TILDE2, enumerate_orbits, field_for, minus_one_orbit,
                            one_orbit, star_orbit)
from charsum.partitions import EMPTY, Partition, SignedPartition


def test_group_order_examples():
    assert group_order("U", 2, 2) == 18
    assert group_order("Sp", 2, 3) == 24
    assert group_order("GL", 0, 7) == 1
    assert group_order("U", 2, 3) == 96
    assert group_order("Sp", 4, 3) == 51840
    with pytest.raises(ValueError):
        group_order("Sp", 3, 3)


def test_orthogonal_orders_small():
    # the labels follow the source convention, which is opposite to the usual one
    assert {group_order("Oplus", 2, 3), group_order("Ominus", 2, 3)} == {4, 8}
    assert group_order("Oodd", 1, 3) == 2
    assert group_order("Oplus", 0, 3) == group_order("Ominus", 0, 3) == 1


def test_a_gl_examples():
    assert a_gl(Partition([1]), 5) == 4
    assert a_gl(Partition([1, 1]), -3) == 96
    assert a_gl(Partition([2]), -3) == 12
    for n in range(1, 4):
        assert a_gl(Partition([1] * n), 3) == group_order("GL", n, 3)
    with pytest.raises(ZeroDivisionError):
        a_gl(Partition([1]), 0)


def test_centralizer_examples():
    for c in enumerate_classes_U(1, 2):
        assert centralizer_U(c) == 3
    assert centralizer_U(unipotent_class(Partition([1, 1]), 3)) == 96
    assert centralizer_U(unipotent_class(Partition([2]), 3)) == 12


def test_class_counts():
    assert len(enumerate_classes_U(1, 2)) == 3
    assert len(enumerate_classes_U(1, 3)) == 4
    cs = enumerate_classes_U(3, 3)
    assert len(cs) == len(set(cs))


@pytest.mark.parametrize("n", range(5))
@pytest.mark.parametrize("q", [2, 3])
def test_class_equation(n, q):
    assert class_equation_sum(n, q) == group_order("U", n, q)


def test_centralizers_divide_order():
    for n in range(1, 4):
        for c in enumerate_classes_U(n, 3):
            assert group_order("U", n, 3) % centralizer_U(c) == 0


def test_b_factor_examples():
    q = 3
    assert b_factor(one_orbit(q, PHI_TILDE2, 2), Partition([1, 1]), q).resolve(q) == 24
    assert b_factor(one_orbit(q, PHI_TILDE2, 2), EMPTY, q).resolve(q) == 1
    assert b_factor(minus_one_orbit(q, PHI_TILDE2, 2), Partition([1, 1]), q).resolve(q) == 24


def test_bstar_examples():
    q = 3
    one = one_orbit(q)
    assert bstar_factor(one, SignedPartition(Partition([1, 1])), q).resolve(q) == 24
    # regular unipotents of SL(2, 3) have centralizer of order 6 (brute force below)
    assert bstar_factor(one, SignedPartition(Partition([2]), ((2, 1),)), q).resolve(q) == 6
    r = next(o for o in enumerate_orbits(q, PHI_K, 2) if o.size == 2 and star_orbit(o) == o)
    assert bstar_factor(r, Partition([1]), q).resolve(q) == 4


def test_bstar_needs_signed_partition_at_one():
    with pytest.raises(TypeError):
        bstar_factor(one_orbit(3), Partition([1, 1]), 3)


def _brute_sl2_centralizers(q):
    F = field_for(q)
    mats = [(a, b, c, d) for a in range(q) for b in range(q) for c in range(q) for d in range(q)
            if (a * d - b * c) % q == 1]

    def mul(x, y):
        return ((x[0] * y[0] + x[1] * y[2]) % q, (x[0] * y[1] + x[1] * y[3]) % q,
                (x[2] * y[0] + x[3] * y[2]) % q, (x[2] * y[1] + x[3] * y[3]) % q)

    out = []
    for g in mats:
        out.append(sum(1 for h in mats if mul(g, h) == mul(h, g)))
    return mats, out


@pytest.mark.parametrize("q", [3, 5])
def test_sp2_centralizer_multiset(q):
    mats, cents = _brute_sl2_centralizers(q)
    # each class of size |G|/c appears |G|/c times among elements
    brute = sorted(c for c in set(cents) for _ in range(sum(1 for x in cents if x == c) * c // len(mats)))
    predicted = sorted(centralizer_Sp(c) for c in enumerate_classes_Sp(2, q))
    assert predicted == brute


def test_sp2_q3_classes():
    cs = enumerate_classes_Sp(2, 3)
    assert len(cs) == 7
    assert sorted(centralizer_Sp(c) for c in cs) == [4, 6, 6, 6, 6, 24, 24]


@pytest.mark.parametrize("n2,q", [(2, 3), (4, 3), (2, 5), (4, 5), (6, 3)])
def test_sp_class_equation(n2, q):
    order = group_order("Sp", n2, q)
    assert sum(Fraction(order, centralizer_Sp(c)) for c in enumerate_classes_Sp(n2, q)) == order


@pytest.mark.parametrize("n2,q", [(2, 3), (4, 3), (2, 5)])
def test_mixed_centralizer_agrees(n2, q):
    for c in enumerate_classes_Sp(n2, q):
        a = c.assignment
        g1 = a.get(one_orbit(q), SignedPartition(EMPTY))
        gm1 = a.get(minus_one_orbit(q), SignedPartition(EMPTY))
        cu = sp_to_u(c)
        assert transfer_check(cu).meets_Sp
        assert centralizer_Sp_mixed(cu, g1, gm1) == centralizer_Sp(c)


def test_transfer_examples():
    q = 3
    ident = unipotent_class(Partition([1, 1]), q)
    r = transfer_check(ident)
    assert r.meets_GLq and r.meets_U and r.meets_Sp
    assert not transfer_check(unipotent_class(Partition([1]), q)).meets_Sp
    s = next(o for o in enumerate_orbits(q, PHI_TILDE2, 1) if not o.is_pm_one() and star_orbit(o) != o)
    lopsided = ClassU.make(q, [(s, Partition([1])), (one_orbit(q, PHI_TILDE2, 2), Partition([1]))])
    assert not transfer_check(lopsided).meets_Sp


def test_class_json_round_trip():
    for c in enumerate_classes_U(2, 3):
        assert ClassU.from_json(c.to_json()) == c


def test_class_sp_rejects_asymmetric():
    q = 3
    r = next(o for o in enumerate_orbits(q, PHI_K, 2) if star_orbit(o) != o)
    with pytest.raises(ValueError):
        ClassSp.make(q, [(r, Partition([1]))])
