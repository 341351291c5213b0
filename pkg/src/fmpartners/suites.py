"""Exhaustive verification suites over ranges of m and curve classes.

Each suite returns a :class:`SuiteResult` listing how many cases were
checked and the counterexamples found, as (class, m, point) records. The
``verify`` command and the acceptance tests both run these.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from fmpartners.fm_core import (
    SMALL_M,
    compute_H_bruteforce,
    fm_partners,
    is_isomorphic_quotients,
    isomorphism_classes,
    related_by,
    verify_lemma_FE,
)
from fmpartners.lattice import CurveClass, TorsionPoint, points_of_order
from fmpartners.modmath import euler_phi, factorize, orbits
from fmpartners.sweep import h_table, trichotomy_mismatches

# failures kept per suite; the total is always counted
MAX_REPORTED = 20

# lattice transfer is exhaustive only up to this order by default
LATTICE_MAX_M = 50


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failure_count: int = 0
    failures: list[dict] = field(default_factory=list)
    scope: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def fail(self, c: CurveClass, m: int, point, **detail) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_REPORTED:
            self.failures.append(
                {"class": c.value, "m": m, "point": list(point), **detail}
            )

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "checked": self.checked,
            "failure_count": self.failure_count,
            "failures": self.failures,
            "passed": self.passed,
            "scope": self.scope,
        }


def _scope(classes, ms) -> dict:
    ms = list(ms)
    return {
        "classes": [c.value for c in classes],
        "m": [ms[0], ms[-1]] if ms else [],
    }


def trichotomy_suite(classes, ms) -> SuiteResult:
    """Brute-force H against the case prediction, every point, m > 3."""
    ms = [m for m in ms if m > 3]
    res = SuiteResult("trichotomy", scope=_scope(classes, ms))
    for c in classes:
        for m in ms:
            res.checked += count_exact_order(m)
            for x, y in trichotomy_mismatches(c, m):
                res.fail(c, m, (x, y))
    return res


def count_exact_order(m: int) -> int:
    """Number of points of exact order m on a curve: m^2 prod (1 - 1/p^2)."""
    n = m * m
    for p, _ in factorize(m):
        n = n // (p * p) * (p * p - 1)
    return n


def cardinality_suite(classes, ms) -> SuiteResult:
    """|FM| * |H| = phi(m) for every point of exact order m."""
    res = SuiteResult("cardinality", scope=_scope(classes, ms))
    for c in classes:
        for m in ms:
            phi = euler_phi(m)
            for a in points_of_order(c, m):
                fm = fm_partners(c, a)
                res.checked += 1
                if len(fm) * len(fm.H) != phi:
                    res.fail(c, m, (a.x, a.y), cardinality=len(fm), H=list(fm.H.elements))
    return res


def small_m_suite(classes, max_m: int) -> SuiteResult:
    """Every point with m <= 4 has a single partner."""
    ms = range(1, min(SMALL_M, max_m) + 1)
    res = SuiteResult("small_m_guard", scope=_scope(classes, ms))
    for c in classes:
        for m in ms:
            for a in points_of_order(c, m):
                res.checked += 1
                if len(fm_partners(c, a)) != 1:
                    res.fail(c, m, (a.x, a.y))
    return res


def lattice_transfer_suite(classes, ms) -> SuiteResult:
    """H on F equals H on the dual curve, computed through explicit lattices."""
    classes = [c for c in classes if c.is_cm]
    res = SuiteResult("lattice_transfer", scope=_scope(classes, ms))
    for c in classes:
        for m in ms:
            for a in points_of_order(c, m):
                rep = verify_lemma_FE(c, a)
                res.checked += 1
                if not rep.passed:
                    res.fail(c, m, (a.x, a.y), checks=rep.failures())
    return res


def h_representatives(c: CurveClass, m: int) -> list[TorsionPoint]:
    """The lexicographically first point for each distinct H of order-m points."""
    t = h_table(c, m)
    rows, first = np.unique(np.sort(t.multipliers, axis=1), axis=0, return_index=True)
    best: dict[frozenset, int] = {}
    for row, i in zip(rows.tolist(), first.tolist()):
        key = frozenset(k for k in row if k >= 0)
        best[key] = min(i, best.get(key, i))
    return [TorsionPoint(c, m, int(t.xs[i]), int(t.ys[i])) for i in sorted(best.values())]


def coherence_suite(classes, ms, lattice_max_m: int = LATTICE_MAX_M) -> SuiteResult:
    """The isomorphism tests induce exactly the partner orbits.

    is_isomorphic_quotients depends on the point only through H, so one
    point per distinct H is tested, on every pair (i, j) of units. For CM
    classes up to ``lattice_max_m`` the same is checked on the dual side,
    with H computed from the lattice of the dual curve.
    """
    res = SuiteResult("isomorphism_coherence", scope=_scope(classes, ms))
    for c in classes:
        for m in ms:
            for a in h_representatives(c, m):
                H = compute_H_bruteforce(c, a)
                orbs = orbits(m, H)
                which = {k: n for n, orb in enumerate(orbs) for k in orb}
                res.checked += 1
                bad = [
                    (i, j)
                    for i in which
                    for j in which
                    if is_isomorphic_quotients(c, a, i, j) != (which[i] == which[j])
                ]
                if bad:
                    res.fail(c, m, (a.x, a.y), side="quotient", pairs=bad[:5])
                if isomorphism_classes(lambda i, j: is_isomorphic_quotients(c, a, i, j), m) != orbs:
                    res.fail(c, m, (a.x, a.y), side="quotient", partition=False)
                if c.is_cm and m <= lattice_max_m:
                    h_dual = verify_lemma_FE(c, a).h_target
                    dual = isomorphism_classes(lambda i, j: related_by(h_dual, i, j), m)
                    if dual != orbs:
                        res.fail(c, m, (a.x, a.y), side="dual")
    return res
