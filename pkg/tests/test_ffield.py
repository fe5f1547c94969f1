import pytest

from charsum.ffield import (PHI_K, PHI_STAR, PHI_TILDE2, SizeLimitError, embedding,
                            enumerate_orbits, factor_poly, field_for, irreducibles, make_field,
                            minus_one_orbit, one_orbit, orbit_from_json, orbit_maps, phi_to_tilde2,
                            poly_mul, star_orbit, tilde2_orbit_of)


def brute_mul(F, a, b):
    # schoolbook product of digit vectors reduced by the modulus
    da, db = F.digits(a), F.digits(b)
    prod = [0] * (2 * F.k)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % F.p
    mod = list(F.modulus)
    for deg in range(2 * F.k - 1, F.k - 1, -1):
        c = prod[deg]
        if c:
            for i, m in enumerate(mod):
                prod[deg - F.k + i] = (prod[deg - F.k + i] - c * m) % F.p
    return F.from_digits(prod[:F.k])


def test_moduli_are_first_irreducibles():
    assert make_field(3, 2).modulus == (1, 0, 1)
    assert make_field(2, 2).modulus == (1, 1, 1)
    assert make_field(3, 1).k == 1
    assert make_field(3, 2) is make_field(3, 2)


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2), (5, 2), (2, 4)])
def test_multiplication_matches_schoolbook(p, k):
    F = make_field(p, k)
    for a in range(F.size):
        for b in range(F.size):
            assert F.mul(a, b) == brute_mul(F, a, b)


@pytest.mark.parametrize("p,k", [(2, 3), (3, 2), (7, 1), (5, 2)])
def test_field_axioms_spot(p, k):
    F = make_field(p, k)
    for a in range(1, F.size):
        assert F.mul(a, F.inv(a)) == 1
        assert F.add(a, F.neg(a)) == 0
        assert F.pow(a, F.order) == 1
    assert F.elem_order(F.gen) == F.order


def test_size_limit(monkeypatch):
    monkeypatch.setenv("CHARSUM_SIZE_LIMIT", "100")
    with pytest.raises(SizeLimitError):
        make_field(2, 10)


def test_embedding_is_a_homomorphism():
    small, big = make_field(3, 2), make_field(3, 4)
    emb = embedding(small, big)
    for a in range(small.size):
        for b in range(small.size):
            assert emb[small.mul(a, b)] == big.mul(int(emb[a]), int(emb[b]))
            assert emb[small.add(a, b)] == big.add(int(emb[a]), int(emb[b]))


def test_orbit_examples():
    assert enumerate_orbits(2, PHI_K, 1) == [one_orbit(2)]
    assert enumerate_orbits(3, PHI_K, 1) == [one_orbit(3), minus_one_orbit(3)]
    assert len(enumerate_orbits(3, PHI_TILDE2, 1)) == 4


@pytest.mark.parametrize("q", [2, 3, 5])
def test_orbit_counting(q):
    orbits = enumerate_orbits(q, PHI_K, 6)
    for m in range(1, 7):
        total = sum(o.size for o in orbits if m % o.size == 0)
        assert total == q ** m - 1


@pytest.mark.parametrize("q", [3, 5])
def test_tilde2_orbits_cover_points(q):
    # points of F_{q^2k}^x covered by Phi_2 orbits of size dividing k
    orbits = enumerate_orbits(q, PHI_TILDE2, 4)
    for m in (1, 2):
        phi2 = sum(len(o.parts[0]) - 1 for o in orbits for _ in o.parts if m % (len(o.parts[0]) - 1) == 0)
        assert phi2 == q ** (2 * m) - 1


def test_maps_are_involutions():
    for kind in (PHI_K, PHI_TILDE2):
        for s in enumerate_orbits(3, kind, 4):
            maps = orbit_maps(s)
            assert orbit_maps(maps.star).star == s
            assert orbit_maps(maps.tilde).tilde == s


def test_distinguished_orbits_fixed():
    for s in (one_orbit(3, PHI_TILDE2, 2), minus_one_orbit(3, PHI_TILDE2, 2)):
        m = orbit_maps(s)
        assert m.star == s and m.tilde == s and m.q_power == s


def test_odd_tilde2_orbits_are_not_star_fixed():
    for q, size in ((3, 5), (5, 3)):
        for s in enumerate_orbits(q, PHI_TILDE2, size):
            if s.is_pm_one() or len(s.parts) != 1:
                continue
            assert star_orbit(s) != s


def test_primitive_eighth_root_in_f9():
    q = 3
    F = field_for(q, 2)
    alpha = next(a for a in range(1, F.size) if F.elem_order(a) == 8)
    lin = lambda x: (F.neg(x), 1)
    maps = orbit_maps(tilde2_orbit_of(q, lin(alpha)))
    assert maps.star == tilde2_orbit_of(q, lin(F.inv(alpha)))
    assert maps.star != tilde2_orbit_of(q, lin(alpha))
    # tilde(alpha) = alpha^{-q} lies in the same fused orbit by construction
    assert tilde2_orbit_of(q, lin(F.pow(alpha, -3 % 8))) == tilde2_orbit_of(q, lin(alpha))


def test_i_and_minus_i_are_separate_size_one_orbits():
    q = 3
    F = field_for(q, 2)
    i = next(a for a in range(1, F.size) if F.elem_order(a) == 4)
    s1 = tilde2_orbit_of(q, (F.neg(i), 1))
    s2 = tilde2_orbit_of(q, (i, 1))
    assert s1 != s2 and s1.size == s2.size == 1


def test_factor_poly_reassembles():
    F = field_for(3, 2)
    for d in (2, 3):
        for f in irreducibles(F, d)[:5]:
            g = poly_mul(F, f, irreducibles(F, 1)[0])
            fac = factor_poly(F, g)
            prod = (1,)
            for h, e in fac:
                for _ in range(e):
                    prod = poly_mul(F, prod, h)
            assert prod == g


def test_phi_to_tilde2_covers_factors():
    big = field_for(3, 2)
    for r in enumerate_orbits(3, PHI_K, 4):
        found = phi_to_tilde2(r)
        parts = {v for s in found for v in s.parts}
        for g, _ in factor_poly(big, r.minpoly):
            assert g in parts
        assert len(found) == len(set(found))


def test_orbit_json_round_trip():
    for s in enumerate_orbits(3, PHI_TILDE2, 3):
        assert orbit_from_json(s.to_json(), 3) == s
    assert orbit_from_json("1", 3) == one_orbit(3, PHI_TILDE2, 2)
    assert orbit_from_json("-1", 3) == minus_one_orbit(3, PHI_TILDE2, 2)
    with pytest.raises(ValueError):
        orbit_from_json("i", 3)


def test_star_orbits_exist():
    assert enumerate_orbits(3, PHI_STAR, 2)
