"""Acceptance criteria, one test each.

Every test records a single ``PASS``/``FAIL`` line with its runtime; pytest prints
them in an "acceptance criteria" section of the terminal summary.  Run this file
directly for the same lines without pytest.
"""

from __future__ import annotations

import sys
import time
from fractions import Fraction

import pytest

from charsum.charsums import (ClassFunction, degree_sum, full_sum, full_sum_unipotent, model_sum,
                              perm_char, perm_char_unipotent, prob_sp, prob_twisted)
from charsum.classes import (centralizer_Sp, centralizer_Sp_mixed, centralizer_U,
                             class_equation_sum, enumerate_classes_Sp, enumerate_classes_U,
                             group_order, sp_to_u, unipotent_class)
from charsum.ffield import minus_one_orbit, one_orbit
from charsum.oracle import (induced_counts, predicted_sp_class_sizes, sp_class_sizes,
                            symmetric_count, twisted_counts)
from charsum.partitions import (EMPTY, SignedPartition, enumerate_partitions, evensign_parity,
                                even_mults_at_even_parts, even_mults_at_odd_parts)
from charsum.symfunc.hall import hall_poly_hlprod, hall_poly_interp, hall_triples
from charsum.symfunc.identities import verify_identity


REPORT: list[str] = []


def _report(number: int, title: str, ok: bool, elapsed: float, limit: float | None, detail: str = ""):
    within = limit is None or elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    budget = f" (limit {limit:g}s)" if limit is not None else ""
    extra = f" -- {detail}" if detail else ""
    if not within:
        extra += " -- over time budget"
    line = f"[{status}] criterion {number:2d}: {title}: {elapsed:.2f}s{budget}{extra}"
    REPORT.append(line)
    if __name__ == "__main__":
        print(line)
    return ok and within


def _run(number, title, fn, limit=None):
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    assert _report(number, title, ok, elapsed, limit, detail), detail


# ---- criteria ----

def _perm_char_oracle():
    q, n2 = 3, 2
    counts = induced_counts(n2, q)
    sp = group_order("Sp", n2, q)
    bad = [c for c in enumerate_classes_U(n2, q)
           if perm_char(c) * sp != centralizer_U(c) * counts.get(c, 0)]
    return not bad, f"{len(bad)} mismatching classes"


def _full_sum_oracle():
    q = 3
    bad = 0
    for n in (1, 2, 3):
        counts = twisted_counts(n, q)
        order = group_order("U", n, q)
        classes = enumerate_classes_U(n, q)
        for c in classes:
            # bucket size is |class| times the count per element
            if Fraction(counts.get(c, 0) * centralizer_U(c), order) != full_sum(c):
                bad += 1
        bad += sum(1 for c in counts if c not in set(classes))
    return bad == 0, f"{bad} mismatching classes over n = 1, 2, 3"


def _degree_sum():
    pairs = [(1, 3), (2, 3), (1, 5), (2, 5)]
    bad = [(n, q) for n, q in pairs if degree_sum(n, q) != symmetric_count(n, q)]
    return not bad, f"mismatches at {bad}" if bad else "4 pairs"


def _class_equation():
    bad = [(n, q) for n in range(5) for q in (2, 3) if class_equation_sum(n, q) != group_order("U", n, q)]
    return not bad, f"mismatches at {bad}" if bad else "n <= 4, q in {2, 3}"


def _value_sums():
    bad = []
    for n2 in (2, 4):
        for q in (3, 5):
            if ClassFunction.from_function(n2, q, perm_char).total() != group_order("U", n2, q):
                bad.append(("perm", n2, q))
    for n in range(1, 5):
        if ClassFunction.from_function(n, 3, full_sum).total() != group_order("U", n, 3):
            bad.append(("full", n, 3))
    return not bad, f"mismatches at {bad}" if bad else ""


def _model_replay():
    bad = [c for n in (1, 2, 3) for c in enumerate_classes_U(n, 3) if model_sum(c) != full_sum(c)]
    return not bad, f"{len(bad)} mismatching classes"


def _identities():
    bad = [(w, nv) for w in ("HLsum1", "HLKa", "HLFG") for nv in (2, 3, 4) if not verify_identity(w, nv, 6)]
    for size in range(6):
        for k in range(size + 1):
            for mu in enumerate_partitions(k):
                for nu in enumerate_partitions(size - k):
                    if not verify_identity("HLprod", mu=mu, nu=nu):
                        bad.append(("HLprod", tuple(mu), tuple(nu)))
    return not bad, f"failures {bad}" if bad else ""


def _hall_double():
    bad, k = [], 0
    for lam, mu, nu in hall_triples(5):
        k += 1
        if hall_poly_interp(lam, mu, nu) != hall_poly_hlprod(lam, mu, nu):
            bad.append((tuple(lam), tuple(mu), tuple(nu)))
    return not bad, f"{k} triples, {len(bad)} disagree"


def _sp_centralizers():
    bad = []
    for n2, q in ((2, 3), (2, 5), (4, 3)):
        if predicted_sp_class_sizes(n2, q) != sp_class_sizes(n2, q):
            bad.append(("multiset", n2, q))
    q = 3
    for c in enumerate_classes_Sp(2, q):
        a = c.assignment
        g1 = a.get(one_orbit(q), SignedPartition(EMPTY))
        gm1 = a.get(minus_one_orbit(q), SignedPartition(EMPTY))
        if centralizer_Sp_mixed(sp_to_u(c), g1, gm1) != centralizer_Sp(c):
            bad.append(("mixed", str(c)))
    return not bad, f"failures {bad}" if bad else ""


def _corollaries():
    bad = []
    for n in range(13):
        for lam in enumerate_partitions(n):
            if even_mults_at_even_parts(lam) or even_mults_at_odd_parts(lam):
                lhs, rhs = evensign_parity(lam)
                if lhs != rhs:
                    bad.append(("evensign", tuple(lam)))
    for q in (3, 5):
        for n in range(1, 7):
            for mu in enumerate_partitions(n):
                c = unipotent_class(mu, q)
                if full_sum_unipotent(mu, q) != full_sum(c):
                    bad.append(("full", tuple(mu), q))
                if n % 2 == 0 and perm_char_unipotent(mu, q) != perm_char(c):
                    bad.append(("perm", tuple(mu), q))
    for n2 in (2, 4):
        if sum(prob_sp(c) for c in enumerate_classes_U(n2, 3)) != 1:
            bad.append(("prob_sp", n2))
    for n in range(1, 5):
        if sum(prob_twisted(c) for c in enumerate_classes_U(n, 3)) != 1:
            bad.append(("prob_twisted", n))
    return not bad, f"failures {bad}" if bad else ""


CRITERIA = [
    (1, "permutation character vs Sp(2, 3) oracle", _perm_char_oracle, 5),
    (2, "full character sum vs twisted counts, q = 3", _full_sum_oracle, 60),
    (3, "degree sum vs symmetric unitary matrices", _degree_sum, 30),
    (4, "class equation for U(n)", _class_equation, 60),
    (5, "value-sum identities", _value_sums, None),
    (6, "Hall product model replay", _model_replay, 120),
    (7, "symmetric-function identities", _identities, None),
    (8, "Hall polynomials by two methods", _hall_double, None),
    (9, "Sp centralizer multisets and mixed formula", _sp_centralizers, None),
    (10, "parity lemma, unipotent corollaries, probabilities", _corollaries, None),
]


@pytest.mark.parametrize("number,title,fn,limit", CRITERIA, ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_acceptance(number, title, fn, limit):
    _run(number, title, fn, limit)


if __name__ == "__main__":
    failed = 0
    for number, title, fn, limit in CRITERIA:
        try:
            _run(number, title, fn, limit)
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
