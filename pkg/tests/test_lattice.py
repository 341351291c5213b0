import itertools
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from fmpartners.lattice import (
    ClassMismatchError,
    CurveClass,
    IsogenyData,
    NonCyclicQuotientError,
    QLattice,
    TorsionPoint,
    act,
    automorphisms,
    cm_generator,
    cm_stable,
    compose,
    discrete_log_cyclic,
    discrete_log_scan,
    dual_isogeny_kernel,
    frac_str,
    overlattice_with_point,
    point_order,
    points_of_order,
    scalar_mul,
    smith_normal_form,
    unit_group,
)

G, S, X = CurveClass.GENERIC, CurveClass.SQUARE, CurveClass.HEXAGONAL


def by_label(c, label):
    return next(u for u in unit_group(c) if u.label == label)


def matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def mat_power_order(M):
    P, n = M, 1
    while P != ((1, 0), (0, 1)):
        P = tuple(tuple(r) for r in matmul(P, M))
        n += 1
    return n


# -- units -------------------------------------------------------------------


def test_unit_group_sizes():
    assert [len(unit_group(c)) for c in (G, S, X)] == [2, 4, 6]


def test_unit_actions_on_coordinates():
    assert by_label(S, "i").apply((3, 7)) == (-7, 3)
    assert by_label(X, "ω").apply((3, 7)) == (-7, 3 - 7)


@pytest.mark.parametrize("c", list(CurveClass))
def test_unit_group_closed_under_composition(c):
    mats = {u.matrix for u in unit_group(c)}
    for u, v in itertools.product(unit_group(c), repeat=2):
        assert compose(u, v).matrix in mats


def test_generator_orders():
    assert mat_power_order(by_label(S, "i").matrix) == 4
    assert mat_power_order(by_label(X, "ω").matrix) == 3
    assert mat_power_order(by_label(X, "-ω").matrix) == 6
    assert cm_generator(S).label == "i"
    assert cm_generator(X).label == "ω"


def test_omega_satisfies_its_minimal_polynomial():
    w = by_label(X, "ω").matrix
    w2 = matmul(w, w)
    # w^2 + w + 1 = 0
    assert [[w2[i][j] + w[i][j] + (i == j) for j in range(2)] for i in range(2)] == [[0, 0], [0, 0]]


# -- torsion points ----------------------------------------------------------


def test_act_examples():
    assert act(by_label(S, "i"), TorsionPoint(S, 5, 2, 1))[2:] == (4, 2)
    assert act(by_label(X, "ω"), TorsionPoint(X, 7, 3, 1))[2:] == (6, 2)
    assert act(by_label(G, "-1"), TorsionPoint(G, 9, 2, 0))[2:] == (7, 0)


def test_act_rejects_class_mismatch():
    with pytest.raises(ClassMismatchError):
        act(by_label(S, "i"), TorsionPoint(X, 5, 1, 0))


def test_scalar_mul_and_order_examples():
    p = TorsionPoint(S, 5, 2, 1)
    assert scalar_mul(2, p)[2:] == (4, 2)
    assert scalar_mul(5, p)[2:] == (0, 0)
    assert scalar_mul(0, p)[2:] == (0, 0)
    assert point_order(p) == 5
    assert point_order(TorsionPoint(S, 5, 0, 0)) == 1
    assert point_order(TorsionPoint(S, 6, 2, 4)) == 3


def test_points_are_reduced():
    p = TorsionPoint(S, 5, -3, 12)
    assert (p.x, p.y) == (2, 2)
    with pytest.raises(ValueError):
        TorsionPoint(S, 0, 0, 0)


def test_discrete_log_examples():
    g = TorsionPoint(S, 5, 2, 1)
    assert discrete_log_cyclic(TorsionPoint(S, 5, 4, 2), g) == 2
    assert discrete_log_cyclic(g, g) == 1
    assert discrete_log_cyclic(TorsionPoint(S, 5, 1, 0), TorsionPoint(S, 5, 0, 1)) is None


def test_discrete_log_matches_scan_exhaustively():
    for m in range(1, 19):
        pts = [TorsionPoint(S, m, x, y) for x in range(m) for y in range(m)]
        for g in pts:
            for p in pts:
                assert discrete_log_cyclic(p, g) == discrete_log_scan(p, g)


def test_points_of_order_count_and_order():
    for m in range(1, 40):
        pts = list(points_of_order(S, m))
        brute = [(x, y) for x in range(m) for y in range(m) if math.gcd(x, y, m) == 1]
        assert [(p.x, p.y) for p in pts] == brute
        assert all(point_order(p) == m for p in pts)


@pytest.mark.parametrize("c", list(CurveClass))
def test_action_is_group_action_and_commutes_with_scalars(c):
    units = unit_group(c)
    for m in range(1, 31):
        for x, y in itertools.product(range(m), repeat=2):
            p = TorsionPoint(c, m, x, y)
            for u, v in itertools.product(units, repeat=2):
                assert act(u, act(v, p)) == act(compose(u, v), p)
            for u in units:
                q = act(u, p)
                assert point_order(q) == point_order(p)
                for k in (2, 3, m - 1):
                    assert act(u, scalar_mul(k, p)) == scalar_mul(k, q)


# -- Smith normal form -------------------------------------------------------


def minors_gcd(A, k):
    rows, cols = len(A), len(A[0])
    g = 0
    for rs in itertools.combinations(range(rows), k):
        for cs in itertools.combinations(range(cols), k):
            sub = [[A[r][c] for c in cs] for r in rs]
            det = sub[0][0] if k == 1 else sub[0][0] * sub[1][1] - sub[0][1] * sub[1][0]
            g = math.gcd(g, det)
    return g


def det2(M):
    return M[0][0] * M[1][1] - M[0][1] * M[1][0]


@settings(max_examples=300, deadline=None)
@given(
    st.integers(2, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-60, 60), min_size=2, max_size=2), min_size=n, max_size=n)
    )
)
def test_smith_normal_form_against_determinantal_divisors(A):
    D, U, V = smith_normal_form(A)
    assert matmul(matmul(U, A), V) == D
    assert abs(det2(V)) == 1
    d1, d2 = D[0][0], D[1][1]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(2) if i != j)
    assert d1 >= 0 and d2 >= 0
    assert d1 == minors_gcd(A, 1)
    assert d1 * d2 == minors_gcd(A, 2)
    if d1:
        assert d2 % d1 == 0


# -- lattices ----------------------------------------------------------------


def test_canonical_basis_is_unique():
    a = QLattice(S, ((F(2, 5), F(1, 5)), (F(1, 5), F(-2, 5))))
    b = QLattice(S, ((F(1, 5), F(-2, 5)), (F(3, 5), F(-1, 5))))
    assert a == b
    assert a.basis == ((F(1, 5), F(3, 5)), (F(0), F(1)))
    assert a.det == F(1, 5)


def test_overlattice_square_5():
    lat = overlattice_with_point(S, 5, TorsionPoint(S, 5, 2, 1))
    assert lat == QLattice(S, ((F(2, 5), F(1, 5)), (F(1, 5), F(-2, 5))))
    assert lat.det == F(1, 5)
    assert lat.contains_lattice(QLattice.standard(S))
    assert lat.as_json() == [["1/5", "3/5"], ["0", "1"]]


def test_overlattice_trivial_and_hexagonal():
    assert overlattice_with_point(S, 1, TorsionPoint(S, 1, 0, 0)) == QLattice.standard(S)
    lat = overlattice_with_point(X, 7, TorsionPoint(X, 7, 3, 1))
    assert lat.det * 7 == QLattice.standard(X).det
    assert lat.contains((F(3, 7), F(1, 7)))


def test_overlattice_rejections():
    with pytest.raises(ValueError):
        overlattice_with_point(G, 5, TorsionPoint(G, 5, 1, 0))
    with pytest.raises(ValueError):
        overlattice_with_point(S, 6, TorsionPoint(S, 6, 2, 4))


def test_from_generators_matches_overlattice():
    for m in range(1, 25):
        for p in points_of_order(S, m):
            gens = [(1, 0), (0, 1), (F(p.x, m), F(p.y, m))]
            assert QLattice.from_generators(S, gens) == overlattice_with_point(S, m, p)


def test_cm_stable_examples():
    i = cm_generator(S)
    lp = QLattice(S, ((F(2, 5), F(1, 5)), (F(1, 5), F(-2, 5))))
    assert cm_stable(lp, i)
    assert cm_stable(QLattice.standard(S), i)
    assert not cm_stable(QLattice(S, ((F(1, 2), 0), (0, 1))), i)
    with pytest.raises(ValueError):
        cm_stable(QLattice.standard(G), by_label(G, "-1"))


def test_cm_stable_whenever_point_is_an_eigenvector():
    i = cm_generator(S)
    for m in range(1, 51):
        for p in points_of_order(S, m):
            if discrete_log_cyclic(act(i, p), p) is not None:
                assert cm_stable(overlattice_with_point(S, m, p), i)


def test_automorphisms_are_written_in_the_lattice_basis():
    lat = overlattice_with_point(S, 5, TorsionPoint(S, 5, 2, 1))
    autos = automorphisms(lat)
    assert [u.label for u in autos] == ["1", "-1", "i", "-i"]
    for u in autos:
        for j, b in enumerate(lat.basis):
            image = by_label(S, u.label).apply(b)
            col = (u.matrix[0][j], u.matrix[1][j])
            rebuilt = tuple(col[0] * lat.basis[0][k] + col[1] * lat.basis[1][k] for k in range(2))
            assert rebuilt == tuple(image)
    lat2 = QLattice(S, ((F(1, 2), 0), (0, 1)))
    assert [u.label for u in automorphisms(lat2)] == ["1", "-1"]


# -- isogenies ---------------------------------------------------------------


def test_dual_kernel_square_5():
    base = QLattice.standard(S)
    lat = overlattice_with_point(S, 5, TorsionPoint(S, 5, 2, 1))
    iso = IsogenyData(base, lat)
    g = dual_isogeny_kernel(iso)
    assert iso.index == 5
    assert point_order(g) == 5
    # generates the same subgroup of C/L' as the class of 1/5
    fifth = TorsionPoint(S, 5, *(int(5 * c) for c in lat.coordinates((F(1, 5), 0))))
    assert discrete_log_cyclic(fifth, g) is not None
    assert [frac_str(c) for c in iso.kernel_vector()] == ["0", "1/5"]


def test_dual_kernel_index_one_and_hexagonal():
    base = QLattice.standard(S)
    g = dual_isogeny_kernel(IsogenyData(base, base))
    assert point_order(g) == 1
    lat = overlattice_with_point(X, 7, TorsionPoint(X, 7, 3, 1))
    g = dual_isogeny_kernel(IsogenyData(QLattice.standard(X), lat))
    assert point_order(g) == 7


def test_non_cyclic_quotient_is_reported():
    base = QLattice.standard(S)
    half = QLattice(S, ((F(1, 2), 0), (0, F(1, 2))))
    with pytest.raises(NonCyclicQuotientError):
        dual_isogeny_kernel(IsogenyData(base, half))


def test_isogeny_requires_containment():
    with pytest.raises(ValueError):
        IsogenyData(QLattice(S, ((F(1, 2), 0), (0, 1))), QLattice.standard(S))


@pytest.mark.parametrize("c", [S, X])
def test_kernel_identities_small_m(c):
    base = QLattice.standard(c)
    for m in range(1, 26):
        for p in points_of_order(c, m):
            lat = overlattice_with_point(c, m, p)
            iso = IsogenyData(base, lat)
            g = dual_isogeny_kernel(iso)
            vec = iso.kernel_vector()
            assert iso.index == m == point_order(g)
            assert scalar_mul(m, g) == TorsionPoint(c, m, 0, 0)
            assert base.contains((m * vec[0], m * vec[1]))
            assert not lat.contains(vec) or m == 1
