"""Vectorized sweeps over every point of exact order m.

The same brute force as :func:`fm_core.compute_H_bruteforce` (run each unit,
solve u(a) = k*a) and the same trichotomy as :func:`fm_core.classify_case`,
evaluated on all points of a given order at once with numpy. Used by the
exhaustive verification suites; the scalar functions remain the reference
and are checked against these tables in the tests.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from fmpartners.lattice import CurveClass, unit_group
from fmpartners.modmath import roots_n2_plus_1, roots_n2_plus_n_plus_1, units


class HTable(NamedTuple):
    m: int
    xs: np.ndarray
    ys: np.ndarray
    labels: tuple[str, ...]
    # column j: k with u_j(a) = k*a, or -1 when u_j(a) is not in <a>
    multipliers: np.ndarray


class CaseTable(NamedTuple):
    m: int
    xs: np.ndarray
    ys: np.ndarray
    case: np.ndarray  # 1, 2 or 3
    n: np.ndarray  # root of the congruence, -1 in case I
    predicted: np.ndarray  # (npoints, 6) elements of H, repeated to width 6


def exact_order_points(m: int) -> tuple[np.ndarray, np.ndarray]:
    """Coordinates of all points of exact order m, lexicographic in (x, y)."""
    r = np.arange(m, dtype=np.int64)
    xs, ys = np.meshgrid(r, r, indexing="ij")
    xs, ys = xs.ravel(), ys.ravel()
    keep = np.gcd(np.gcd(xs, ys), m) == 1
    return xs[keep], ys[keep]


def _unit_coefficients(xs, ys, m):
    # per point (s, t) with s*x + t*y = 1 (mod m): s = (x + j*y)^-1, t = j*s
    inv = np.zeros(m, dtype=np.int64)
    is_unit = np.zeros(m, dtype=bool)
    for r in units(m).elements:
        inv[r] = pow(r, -1, m) if m > 1 else 0
        is_unit[r] = True
    s = np.zeros_like(xs)
    t = np.zeros_like(xs)
    pending = np.ones(xs.shape, dtype=bool)
    for j in range(m):
        r = (xs + j * ys) % m
        hit = pending & is_unit[r]
        s[hit] = inv[r[hit]]
        t[hit] = j * s[hit] % m
        pending &= ~hit
        if not pending.any():
            break
    if pending.any():
        raise ValueError("non-primitive point in sweep")
    return s, t


def h_table(c: CurveClass, m: int) -> HTable:
    xs, ys = exact_order_points(m)
    s, t = _unit_coefficients(xs, ys, m)
    acts = unit_group(c)
    cols = []
    for u in acts:
        (p, q), (r, w) = u.matrix
        px, py = (p * xs + q * ys) % m, (r * xs + w * ys) % m
        k = (s * px + t * py) % m
        ok = ((k * xs - px) % m == 0) & ((k * ys - py) % m == 0)
        cols.append(np.where(ok, k, -1))
    return HTable(m, xs, ys, tuple(u.label for u in acts), np.stack(cols, axis=1))


def case_table(c: CurveClass, m: int) -> CaseTable:
    """The trichotomy prediction for every point of exact order m (m > 3)."""
    if m <= 3:
        raise ValueError(f"the trichotomy needs m > 3, got m = {m}")
    xs, ys = exact_order_points(m)
    case = np.ones(xs.shape, dtype=np.int64)
    n_arr = np.full(xs.shape, -1, dtype=np.int64)
    trivial = np.array([1, m - 1] * 3, dtype=np.int64)
    predicted = np.tile(trivial, (len(xs), 1))
    if c.is_cm:
        if c is CurveClass.SQUARE:
            roots, shift, tag = roots_n2_plus_1(m), 0, 2
        else:
            roots, shift, tag = roots_n2_plus_n_plus_1(m), 1, 3
        for n in roots:
            # a in <(n + shift, 1)> iff x = (n + shift)*y (mod m)
            member = (xs - (n + shift) * ys) % m == 0
            case[member] = tag
            n_arr[member] = n
            if tag == 2:
                row = [1, -1, n, -n, n, -n]
            else:
                row = [1, -1, n, -n, n * n, -n * n]
            predicted[member] = np.array(row, dtype=np.int64) % m
    return CaseTable(m, xs, ys, case, n_arr, predicted)


def trichotomy_mismatches(c: CurveClass, m: int) -> list[tuple[int, int]]:
    """Points where brute-force H differs from the predicted H, or |H| is not 2, 4, 6."""
    ht = h_table(c, m)
    ct = case_table(c, m)
    K, P = ht.multipliers, ct.predicted
    eq = K[:, :, None] == P[:, None, :]
    k_in_p = (eq.any(axis=2) | (K < 0)).all(axis=1)
    p_in_k = eq.any(axis=1).all(axis=1)
    srt = np.sort(P, axis=1)
    size = 1 + (np.diff(srt, axis=1) != 0).sum(axis=1)
    good = k_in_p & p_in_k & np.isin(size, (2, 4, 6))
    bad = np.flatnonzero(~good)
    return [(int(ht.xs[i]), int(ht.ys[i])) for i in bad]


def h_sizes(c: CurveClass, m: int) -> np.ndarray:
    """|H| for every point of exact order m, from the brute-force table."""
    K = h_table(c, m).multipliers
    srt = np.sort(np.where(K < 0, -1, K), axis=1)
    distinct = 1 + (np.diff(srt, axis=1) != 0).sum(axis=1)
    return distinct - (srt[:, 0] < 0)
