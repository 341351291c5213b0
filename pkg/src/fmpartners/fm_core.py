"""Fourier-Mukai partners of P(O_E + L) for L of order m.

The surface is represented by its arithmetic data only: the class of the
curve and the m-torsion point standing for L. The partner set is the set of
orbits of (Z/mZ)* under the multiplier group

    H = {k : some origin-fixing automorphism u has u(a) = k*a},

labelled by minimal representatives i, one surface P(O_E + L^i) each.
"""

from __future__ import annotations

import enum
import math
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from fmpartners.lattice import (
    ClassMismatchError,
    CurveClass,
    IsogenyData,
    QLattice,
    TorsionPoint,
    UnitAction,
    act,
    automorphisms,
    cm_generator,
    cm_stable,
    cyclic_log,
    discrete_log_cyclic,
    unit_combination,
    frac_str,
    dual_isogeny_kernel,
    overlattice_with_point,
    point_order,
    scalar_mul,
    unit_group,
)
from fmpartners.modmath import (
    Subgroup,
    _cached_subgroup,
    euler_phi,
    make_subgroup,
    orbits,
    roots_n2_plus_1,
    roots_n2_plus_n_plus_1,
    units,
)

# |FM(S)| = 1 whenever lambda_S <= 4
SMALL_M = 4


class OrderMismatchError(ValueError):
    pass


def _require_exact_order(a: TorsionPoint) -> None:
    if math.gcd(a.x, a.y, a.m) != 1:
        raise OrderMismatchError(
            f"point ({a.x}, {a.y}) mod {a.m} has order {point_order(a)}, not {a.m}"
        )


# -- multiplier groups -------------------------------------------------------


def _primitive_multipliers(actions, a: TorsionPoint) -> dict[str, int]:
    # a has exact order m, so k = s*u(a)_x + t*u(a)_y is the only candidate
    curve, m, x, y = a
    if math.gcd(x, m) == 1:
        s, t = pow(x, -1, m), 0
    elif math.gcd(y, m) == 1:
        s, t = 0, pow(y, -1, m)
    else:
        s, t = unit_combination(x, y, m)
    out = {}
    for u in actions:
        if u.curve is not curve:
            raise ClassMismatchError(f"unit of {u.curve.value} on point of {curve.value}")
        (p, q), (r, w) = u.matrix
        px, py = p * x + q * y, r * x + w * y
        k = (s * px + t * py) % m
        if (k * x - px) % m == 0 and (k * y - py) % m == 0:
            out[u.label] = k
    return out


def unit_multipliers(actions: Iterable[UnitAction], a: TorsionPoint) -> dict[str, int]:
    """For each unit u with u(a) in <a>, the k with u(a) = k*a, keyed by label."""
    if math.gcd(a.x, a.y, a.m) == 1:
        return _primitive_multipliers(actions, a)
    solve = cyclic_log(a)
    out = {}
    for u in actions:
        if u.curve is not a.curve:
            raise ClassMismatchError(f"unit of {u.curve.value} on point of {a.curve.value}")
        k = solve(*u.apply((a.x, a.y)))
        if k is not None:
            out[u.label] = k
    return out


def h_group(actions: Iterable[UnitAction], a: TorsionPoint) -> Subgroup:
    # multipliers are already reduced mod m
    return _cached_subgroup(a.m, frozenset(unit_multipliers(actions, a).values()))


def compute_H_bruteforce(c: CurveClass, a: TorsionPoint) -> Subgroup:
    """H by running every unit of Aut_0 over ``a``."""
    if a.curve is not c:
        raise ValueError(f"point of class {a.curve.value} passed with class {c.value}")
    _require_exact_order(a)
    return _cached_subgroup(a.m, frozenset(_primitive_multipliers(unit_group(c), a).values()))


# -- trichotomy --------------------------------------------------------------


class Case(enum.Enum):
    I = "I"
    II = "II"
    III = "III"


class CaseReport(NamedTuple):
    """Outcome of :func:`classify_case`.

    ``reason`` says why case I was chosen: ``"generic"``, ``"no-root"`` or
    ``"outside-subgroup"``. In cases II/III ``generator`` is (n, 1) resp.
    (n + 1, 1) and ``multiplier`` the k with a = k*generator.
    """

    case: Case
    H: Subgroup
    n: int | None = None
    generator: TorsionPoint | None = None
    multiplier: int | None = None
    reason: str | None = None

    def as_dict(self) -> dict:
        return {
            "case": self.case.value,
            "n": self.n,
            "H": list(self.H.elements),
            "generator": None if self.generator is None else [self.generator.x, self.generator.y],
            "multiplier": self.multiplier,
            "reason": self.reason,
        }


@lru_cache(maxsize=4096)
def _trivial_H(m: int) -> Subgroup:
    return make_subgroup(m, (1, -1))


@lru_cache(maxsize=4096)
def _case_H(m: int, n: int, case: Case) -> Subgroup:
    if case is Case.II:
        ks = (1, -1, n, -n)
    else:
        ks = (1, -1, n, -n, n * n, -n * n)
    return make_subgroup(m, ks)


@lru_cache(maxsize=1024)
def _distinguished_subgroups(c: CurveClass, m: int):
    # (n, generator, solver) for <(n + i)/m> resp. <(n + 1 + omega)/m>
    if c is CurveClass.SQUARE:
        roots, shift = roots_n2_plus_1(m), 0
    else:
        roots, shift = roots_n2_plus_n_plus_1(m), 1
    out = []
    for n in roots:
        g = TorsionPoint(c, m, n + shift, 1)
        out.append((n, g, cyclic_log(g)))
    return tuple(out)


def classify_case(c: CurveClass, a: TorsionPoint) -> CaseReport:
    """Decide which of the three cases holds for (c, a), m > 3.

    Case II needs a square lattice, a root n of n^2 + 1 mod m and a in
    <(n + i)/m>; case III a hexagonal lattice, a root of n^2 + n + 1 and a in
    <(n + 1 + omega)/m>. Everything else is case I with H = {+-1}.
    """
    m = a.m
    if m <= 3:
        raise ValueError(f"the trichotomy needs m > 3, got m = {m}")
    if a.curve is not c:
        raise ValueError(f"point of class {a.curve.value} passed with class {c.value}")
    _require_exact_order(a)
    if c is CurveClass.GENERIC:
        return CaseReport(Case.I, _trivial_H(m), reason="generic")
    case = Case.II if c is CurveClass.SQUARE else Case.III
    candidates = _distinguished_subgroups(c, m)
    if not candidates:
        return CaseReport(Case.I, _trivial_H(m), reason="no-root")
    for n, g, solve in candidates:
        k = solve(a.x, a.y)
        if k is not None:
            return CaseReport(case, _case_H(m, n, case), n=n, generator=g, multiplier=k)
    return CaseReport(Case.I, _trivial_H(m), reason="outside-subgroup")


# -- partner sets ------------------------------------------------------------


def surface_label(i: int, m: int) -> str:
    if m == 1:
        return "P(O_E ⊕ O_E)"
    return "P(O_E ⊕ L)" if i == 1 else f"P(O_E ⊕ L^{i})"


@dataclass(frozen=True)
class FMPartnerSet:
    m: int
    H: Subgroup
    orbits: tuple[tuple[int, ...], ...]
    small_m: bool = False

    @property
    def representatives(self) -> list[int]:
        return [o[0] for o in self.orbits]

    @property
    def labels(self) -> list[str]:
        return [surface_label(i, self.m) for i in self.representatives]

    def __len__(self) -> int:
        return len(self.orbits)

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "H": list(self.H.elements),
            "cardinality": len(self),
            "phi": euler_phi(self.m),
            "small_m_guard": self.small_m,
            "orbits": [
                {"representative": o[0], "label": label, "elements": list(o)}
                for o, label in zip(self.orbits, self.labels)
            ],
        }


def fm_partners(c: CurveClass, a: TorsionPoint) -> FMPartnerSet:
    """FM(P(O_E + L)) as orbits of (Z/mZ)* under H.

    For m <= 4 the answer is the surface alone; H is still computed.
    """
    return _partner_set(a.m, compute_H_bruteforce(c, a))


@lru_cache(maxsize=4096)
def _partner_set(m: int, H: Subgroup) -> FMPartnerSet:
    if m <= SMALL_M:
        return FMPartnerSet(m, H, (units(m).elements,), small_m=True)
    return FMPartnerSet(m, H, tuple(orbits(m, H)))


def related_by(H: Subgroup, i: int, j: int) -> bool:
    """True iff +-i^-1 j lies in H."""
    m = H.modulus
    for r in (i, j):
        if math.gcd(r, m) != 1:
            raise ValueError(f"{r} is not coprime to {m}")
    k = pow(i, -1, m) * j % m
    return k in H or -k % m in H


def isomorphism_classes(related, m: int) -> list[tuple[int, ...]]:
    """Partition (Z/mZ)* by a pairwise test ``related(i, j)``.

    Classes are sorted and ordered by their minimal element, so for a test
    that really is "i^-1 j in +-H" the result equals ``orbits(m, H)``.
    """
    classes: list[list[int]] = []
    for k in units(m).elements:
        for cls in classes:
            if related(cls[0], k):
                cls.append(k)
                break
        else:
            classes.append([k])
    return [tuple(cls) for cls in classes]


def is_isomorphic_quotients(c: CurveClass, a: TorsionPoint, i: int, j: int) -> bool:
    """S_i = S_j iff +-i^-1 j is a multiplier of some automorphism on ``a``."""
    return related_by(compute_H_bruteforce(c, a), i, j)


def is_isomorphic_ruled(c_dual: CurveClass, L: TorsionPoint, i: int, j: int) -> bool:
    """P(O + L^i) = P(O + L^j) iff +-i^-1 j lies in H computed on the dual curve."""
    return related_by(compute_H_bruteforce(c_dual, L), i, j)


# -- transfer of H through the isogeny ---------------------------------------


@dataclass
class LemmaReport:
    """Both sides of H(F, a) = H(E^, L) with the witnesses used."""

    curve: CurveClass
    point: TorsionPoint
    h_source: Subgroup
    h_target: Subgroup
    lattice: QLattice
    eigen: bool
    stable: bool
    kernel_generator: TorsionPoint
    kernel_vector: tuple
    source_multipliers: dict[str, int]
    target_multipliers: dict[str, int]
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return sorted(name for name, ok in self.checks.items() if not ok)

    def as_dict(self) -> dict:
        return {
            "point": self.point.as_dict(),
            "H_source": list(self.h_source.elements),
            "H_target": list(self.h_target.elements),
            "lattice": self.lattice.as_json(),
            "cm_eigenpoint": self.eigen,
            "cm_stable": self.stable,
            "kernel_generator": [self.kernel_generator.x, self.kernel_generator.y],
            "kernel_vector": [frac_str(c) for c in self.kernel_vector],
            "source_multipliers": self.source_multipliers,
            "target_multipliers": self.target_multipliers,
            "checks": self.checks,
            "passed": self.passed,
        }


def verify_lemma_FE(c: CurveClass, a: TorsionPoint) -> LemmaReport:
    """Check H(F, a) = H(E^, L) through explicit lattices.

    F = C/L0 with L0 = Z + Z tau, E = C/L' with L' = L0 + <a>, and the
    kernel of the dual isogeny E -> F (z -> m z) is generated by L. H on the
    E side is computed with the units that preserve L', written in the
    basis of L'. Failed checks are recorded, not raised.
    """
    if not c.is_cm:
        raise ValueError("lattice transfer needs the square or hexagonal class")
    _require_exact_order(a)
    m = a.m
    source_mult = unit_multipliers(unit_group(c), a)
    h_source = make_subgroup(m, source_mult.values())

    base = QLattice.standard(c)
    lat = overlattice_with_point(c, m, a)
    iso = IsogenyData(base, lat)
    g = dual_isogeny_kernel(iso)
    vec = iso.kernel_vector()

    tau = cm_generator(c)
    eigen = discrete_log_cyclic(act(tau, a), a) is not None
    stable = cm_stable(lat, tau)

    target_mult = unit_multipliers(automorphisms(lat), g)
    h_target = make_subgroup(g.m, target_mult.values())

    checks = {
        "index_is_m": iso.index == m,
        "det_is_1/m": lat.det * m == base.det,
        "base_in_overlattice": lat.contains_lattice(base),
        # L' is tau-stable exactly when tau maps <a> into itself
        "cm_stable_iff_eigen": stable == eigen,
        "kernel_order_is_m": point_order(g) == m,
        "m_kernel_in_source": base.contains((m * vec[0], m * vec[1])),
        "m_kernel_is_zero": scalar_mul(m, g) == TorsionPoint(g.curve, g.m, 0, 0),
        "H_equal": h_source == h_target,
    }
    return LemmaReport(
        c, a, h_source, h_target, lat, eigen, stable, g, vec, source_mult, target_mult, checks
    )


# -- lambda_S ----------------------------------------------------------------


def lambda_for_case(tag: str, m: int | None = None) -> int | None:
    """Smallest fibre degree lambda_S of an elliptic ruled surface by type.

    ``"i-1"`` (E x P^1) gives 1, ``"i-2"`` (O + L, ord L = m) gives m,
    ``"ii"`` (e = -1) gives 2. Other types return None.
    """
    if tag == "i-1":
        return 1
    if tag == "i-2":
        if m is None or m < 2:
            raise ValueError("type i-2 needs the order m > 1 of L")
        return m
    if tag == "ii":
        return 2
    return None
