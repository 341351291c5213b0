import numpy as np
import pytest

from fmpartners.fm_core import Case, classify_case, compute_H_bruteforce
from fmpartners.lattice import CurveClass, points_of_order
from fmpartners.suites import count_exact_order, h_representatives
from fmpartners.sweep import case_table, exact_order_points, h_sizes, h_table, trichotomy_mismatches

CASE_CODE = {Case.I: 1, Case.II: 2, Case.III: 3}


@pytest.mark.parametrize("c", list(CurveClass))
def test_tables_agree_with_scalar_functions(c):
    for m in range(4, 41):
        ht, ct = h_table(c, m), case_table(c, m)
        pts = list(points_of_order(c, m))
        assert [(p.x, p.y) for p in pts] == list(zip(ht.xs.tolist(), ht.ys.tolist()))
        for row, crow, cn, p in zip(ht.multipliers, ct.predicted, ct.case, pts):
            H = compute_H_bruteforce(c, p)
            assert set(int(k) for k in row if k >= 0) == set(H.elements)
            rep = classify_case(c, p)
            assert int(cn) == CASE_CODE[rep.case]
            assert set(int(k) for k in crow) == set(rep.H.elements)


def test_exact_order_counts():
    for m in range(1, 80):
        assert len(exact_order_points(m)[0]) == count_exact_order(m)


def test_h_sizes_and_mismatches():
    sizes = h_sizes(CurveClass.SQUARE, 13)
    assert set(sizes.tolist()) == {2, 4}
    assert trichotomy_mismatches(CurveClass.HEXAGONAL, 91) == []


def test_case_table_rejects_small_m():
    with pytest.raises(ValueError):
        case_table(CurveClass.SQUARE, 3)


def test_h_representatives_cover_all_groups():
    for c in CurveClass:
        for m in (1, 2, 5, 13, 21, 65):
            reps = h_representatives(c, m)
            groups = {compute_H_bruteforce(c, p) for p in points_of_order(c, m)}
            assert {compute_H_bruteforce(c, p) for p in reps} == groups
            assert len(reps) == len(groups)
