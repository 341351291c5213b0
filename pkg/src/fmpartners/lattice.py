"""Rank-2 lattices in Q(i) and Q(omega), torsion points and unit actions.

A point of C is written x + y*tau with tau = i (square lattice) or
tau = omega = (-1 + sqrt(-3))/2 (hexagonal lattice). Every computation here
works on the coordinate pair (x, y), exactly: integers for torsion points,
``Fraction`` for lattice vectors.

The generic class has no embedding into C. Only the action of +-1 and
coordinate arithmetic modulo m are defined for it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import NamedTuple

Matrix2 = tuple[tuple[int, int], tuple[int, int]]
QVector = tuple[Fraction, Fraction]


class CurveClass(enum.Enum):
    GENERIC = "generic"
    SQUARE = "square"
    HEXAGONAL = "hexagonal"

    # members are singletons; Enum's default hashes the name in Python
    __hash__ = object.__hash__

    @property
    def is_cm(self) -> bool:
        return self is not CurveClass.GENERIC


class ClassMismatchError(ValueError):
    pass


class NonCyclicQuotientError(ValueError):
    """Raised when L'/L is not generated by a single coset."""


# -- units -------------------------------------------------------------------


@dataclass(frozen=True)
class UnitAction:
    """A unit of the endomorphism ring acting on coordinates.

    ``matrix`` acts on the column vector (x, y). For units expressed in a
    non-standard lattice basis (see :func:`automorphisms`) the matrix is the
    conjugated one and ``curve`` is unchanged.
    """

    curve: CurveClass
    label: str
    matrix: Matrix2

    def apply(self, v):
        (a, b), (c, d) = self.matrix
        return (a * v[0] + b * v[1], c * v[0] + d * v[1])


def _matmul(A, B):
    return (
        (A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
        (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]),
    )


_ONE = ((1, 0), (0, 1))
_NEG = ((-1, 0), (0, -1))
# i*(x + y i) = -y + x i
_I = ((0, -1), (1, 0))
# omega*(x + y omega) = -y + (x - y) omega, from omega^2 = -1 - omega
_W = ((0, -1), (1, -1))
_W2 = _matmul(_W, _W)

_UNITS = {
    CurveClass.GENERIC: (("1", _ONE), ("-1", _NEG)),
    CurveClass.SQUARE: (
        ("1", _ONE), ("-1", _NEG), ("i", _I), ("-i", _matmul(_NEG, _I)),
    ),
    CurveClass.HEXAGONAL: (
        ("1", _ONE), ("-1", _NEG), ("ω", _W), ("-ω", _matmul(_NEG, _W)),
        ("ω²", _W2), ("-ω²", _matmul(_NEG, _W2)),
    ),
}


@lru_cache(maxsize=None)
def unit_group(c: CurveClass) -> tuple[UnitAction, ...]:
    """Aut_0 of a curve of class ``c``: 2, 4 or 6 unit actions."""
    return tuple(UnitAction(c, label, mat) for label, mat in _UNITS[c])


def cm_generator(c: CurveClass) -> UnitAction:
    """The unit i or omega; every other unit is +- a power of it."""
    if not c.is_cm:
        raise ValueError("generic class has no CM unit")
    return unit_group(c)[2]


def compose(u: UnitAction, v: UnitAction) -> UnitAction:
    """The unit u*v (apply v first), looked up in ``unit_group``."""
    if u.curve is not v.curve:
        raise ClassMismatchError(f"{u.curve.value} vs {v.curve.value}")
    mat = _matmul(u.matrix, v.matrix)
    for w in unit_group(u.curve):
        if w.matrix == mat:
            return w
    raise ValueError(f"{u.label}*{v.label} is not a unit of {u.curve.value}")


# -- torsion points ----------------------------------------------------------


class _PointFields(NamedTuple):
    curve: CurveClass
    m: int
    x: int
    y: int


class TorsionPoint(_PointFields):
    """The point (x + y*tau)/m of C/(Z + Z tau), coordinates reduced mod m.

    A tuple subclass: the exhaustive sweeps build millions of these.
    """

    __slots__ = ()

    def __new__(cls, curve: CurveClass, m: int, x: int, y: int):
        if m < 1:
            raise ValueError(f"modulus must be >= 1, got {m}")
        return super().__new__(cls, curve, m, x % m, y % m)

    @property
    def order(self) -> int:
        return point_order(self)

    def as_dict(self) -> dict:
        return {"class": self.curve.value, "m": self.m, "x": self.x, "y": self.y}


def _check_pair(p: TorsionPoint, g: TorsionPoint) -> None:
    if p.curve is not g.curve:
        raise ClassMismatchError(f"{p.curve.value} vs {g.curve.value}")
    if p.m != g.m:
        raise ValueError(f"moduli differ: {p.m} vs {g.m}")


def act(u: UnitAction, p: TorsionPoint) -> TorsionPoint:
    if u.curve is not p.curve:
        raise ClassMismatchError(f"unit of {u.curve.value} on point of {p.curve.value}")
    x, y = u.apply((p.x, p.y))
    return TorsionPoint(p.curve, p.m, x, y)


def scalar_mul(k: int, p: TorsionPoint) -> TorsionPoint:
    return TorsionPoint(p.curve, p.m, k * p.x, k * p.y)


def point_order(p: TorsionPoint) -> int:
    return p.m // math.gcd(p.x, p.y, p.m)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, u, v) with u*a + v*b = g = gcd(a, b) >= 0."""
    u0, v0, u1, v1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        u0, v0, u1, v1 = u1, v1, u0 - q * u1, v0 - q * v1
    if a < 0:
        return -a, -u0, -v0
    return a, u0, v0


def unit_combination(a: int, b: int, d: int) -> tuple[int, int]:
    """(s, t) with s*a + t*b = 1 (mod d), given gcd(a, b, d) = 1."""
    if math.gcd(a, d) == 1:
        return pow(a, -1, d), 0
    if math.gcd(b, d) == 1:
        return 0, pow(b, -1, d)
    r, u, v = _egcd(a, b)
    r_inv = pow(r, -1, d)
    return u * r_inv % d, v * r_inv % d


def cyclic_log(g: TorsionPoint):
    """A solver ``(px, py) -> k or None`` for k*g = (px, py) (mod m).

    After dividing out e = gcd(x, y, m), g is primitive modulo its order d,
    so s*gx + t*gy = 1 (mod d) for some s, t and the only candidate is
    k = s*px + t*py. The solver precomputes s and t once.
    """
    m = g.m
    e = math.gcd(g.x, g.y, m)
    d = m // e
    if d == 1:
        return lambda px, py: None if (px % m or py % m) else 0
    gx, gy = g.x // e, g.y // e
    s, t = unit_combination(gx, gy, d)

    if e == 1:

        def solve_primitive(px: int, py: int) -> int | None:
            k = (s * px + t * py) % d
            if (k * gx - px) % d or (k * gy - py) % d:
                return None
            return k

        return solve_primitive

    def solve(px: int, py: int) -> int | None:
        if px % e or py % e:
            return None
        px, py = px // e, py // e
        k = (s * px + t * py) % d
        if (k * gx - px) % d or (k * gy - py) % d:
            return None
        return k

    return solve


def discrete_log_cyclic(p: TorsionPoint, g: TorsionPoint) -> int | None:
    """Smallest k in [0, ord g) with k*g = p, or None if p is not in <g>.

    Closed form via :func:`cyclic_log`; :func:`discrete_log_scan` is the
    exhaustive reference.
    """
    _check_pair(p, g)
    return cyclic_log(g)(p.x, p.y)


def discrete_log_scan(p: TorsionPoint, g: TorsionPoint) -> int | None:
    """Exhaustive O(m) scan over the multiples of g."""
    _check_pair(p, g)
    for k in range(point_order(g)):
        if (k * g.x - p.x) % g.m == 0 and (k * g.y - p.y) % g.m == 0:
            return k
    return None


def points_of_order(c: CurveClass, m: int):
    """All torsion points of exact order m, in (x, y) lexicographic order."""
    for x in range(m):
        gx = math.gcd(x, m)
        for y in range(m):
            if math.gcd(gx, y) == 1:
                yield TorsionPoint(c, m, x, y)


# -- integer matrices --------------------------------------------------------


def smith_normal_form(A):
    """Smith normal form of an integer matrix.

    Returns ``(D, U, V)`` as lists of lists with ``U @ A @ V == D``, U and V
    unimodular, D diagonal with non-negative entries d_1 | d_2 | ...
    """
    A = [list(row) for row in A]
    n, k = len(A), len(A[0]) if A else 0
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(k)] for i in range(k)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        for M in (A, U):
            M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for M in (A, V):
            for row in M:
                row[dst] += q * row[src]

    for t in range(min(n, k)):
        while True:
            pivots = [(abs(A[i][j]), i, j) for i in range(t, n) for j in range(t, k) if A[i][j]]
            if not pivots:
                break
            _, i, j = min(pivots)
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = A[t][t]
            for i in range(t + 1, n):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, k):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            if any(A[i][t] for i in range(t + 1, n)) or any(A[t][j] for j in range(t + 1, k)):
                continue
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, k) if A[i][j] % p), None
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return A, U, V


def _hermite_2x2(r1, r2):
    """Canonical basis ((a, b), (0, d)) with a, d > 0 and 0 <= b < d."""
    g, u, v = _egcd(r1[0], r2[0])
    if g == 0:
        raise ValueError("vectors are linearly dependent")
    top = (u * r1[0] + v * r2[0], u * r1[1] + v * r2[1])
    p, q = r1[0] // g, r2[0] // g
    bottom = (0, -q * r1[1] + p * r2[1])
    if bottom[1] == 0:
        raise ValueError("vectors are linearly dependent")
    if bottom[1] < 0:
        bottom = (0, -bottom[1])
    top = (top[0], top[1] % bottom[1])
    return top, bottom


# -- rational lattices -------------------------------------------------------


def frac_str(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class QLattice:
    """A full-rank lattice in Q + Q*tau, stored in canonical Hermite form.

    Any basis passed in is replaced by the unique basis ((a, b), (0, d)) with
    a, d > 0 and 0 <= b < d, so equal lattices compare equal.
    """

    curve: CurveClass
    basis: tuple[QVector, QVector]
    # integer rows over a common denominator, for exact membership tests
    _den: int = field(init=False, repr=False, compare=False)
    _rows: tuple[tuple[int, int], tuple[int, int]] = field(init=False, repr=False, compare=False)
    _idet: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vecs = [tuple(Fraction(c) for c in v) for v in self.basis]
        if len(vecs) != 2:
            raise ValueError("a lattice basis has exactly two vectors")
        den = math.lcm(*(c.denominator for v in vecs for c in v))
        ints = [tuple(int(c * den) for c in v) for v in vecs]
        top, bottom = _hermite_2x2(*ints)
        canon = tuple(tuple(Fraction(c, den) for c in v) for v in (top, bottom))
        den = math.lcm(*(c.denominator for v in canon for c in v))
        rows = tuple(tuple(int(c * den) for c in v) for v in canon)
        object.__setattr__(self, "basis", canon)
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "_rows", rows)
        object.__setattr__(self, "_idet", rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0])

    @classmethod
    def standard(cls, curve: CurveClass) -> "QLattice":
        """Z + Z*tau."""
        return cls(curve, ((1, 0), (0, 1)))

    @classmethod
    def from_generators(cls, curve: CurveClass, vectors) -> "QLattice":
        """The lattice spanned by any number of rational generators (rank 2)."""
        vecs = [tuple(Fraction(c) for c in v) for v in vectors]
        den = math.lcm(*(c.denominator for v in vecs for c in v))
        rows = [[int(c * den) for c in v] for v in vecs]
        D, _, V = smith_normal_form(rows)
        if len(D) < 2 or D[1][1] == 0:
            raise ValueError("generators do not span a rank-2 lattice")
        # row space of A equals row space of D V^-1
        vinv = _inverse_unimodular(V)
        basis = [
            tuple(Fraction(D[r][r] * vinv[r][j], den) for j in range(2)) for r in range(2)
        ]
        return cls(curve, tuple(basis))

    @property
    def det(self) -> Fraction:
        return Fraction(self._idet, self._den * self._den)

    def _solve(self, n0: int, n1: int, q: int) -> tuple[int, int, int]:
        # coordinates of (n0/q, n1/q) as (num_alpha, num_beta, common denominator)
        (a, b), (c, d) = self._rows
        D = self._den
        return D * (n0 * d - n1 * c), D * (a * n1 - b * n0), q * self._idet

    def coordinates(self, v) -> QVector:
        """Rational (alpha, beta) with v = alpha*b1 + beta*b2."""
        v0, v1 = Fraction(v[0]), Fraction(v[1])
        q = math.lcm(v0.denominator, v1.denominator)
        na, nb, den = self._solve(int(v0 * q), int(v1 * q), q)
        return Fraction(na, den), Fraction(nb, den)

    def _contains_scaled(self, n0: int, n1: int, q: int) -> bool:
        na, nb, den = self._solve(n0, n1, q)
        return na % den == 0 and nb % den == 0

    def contains(self, v) -> bool:
        if isinstance(v[0], int) and isinstance(v[1], int):
            return self._contains_scaled(v[0], v[1], 1)
        return all(c.denominator == 1 for c in self.coordinates(v))

    def contains_lattice(self, other: "QLattice") -> bool:
        return all(self._contains_scaled(r[0], r[1], other._den) for r in other._rows)

    def as_json(self) -> list[list[str]]:
        return [[frac_str(c) for c in v] for v in self.basis]


def _inverse_unimodular(V):
    (a, b), (c, d) = V
    det = a * d - b * c
    if det not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det {det})")
    return [[d * det, -b * det], [-c * det, a * det]]


def _require_cm(c: CurveClass) -> None:
    if not c.is_cm:
        raise ValueError("generic class has no exact tau arithmetic")


def overlattice_with_point(c: CurveClass, m: int, p: TorsionPoint) -> QLattice:
    """Z + Z*tau + Z*(x + y*tau)/m, the lattice of F/<p>.

    Built from the Smith form of the integer generator rows (m, 0), (0, m),
    (x, y), then scaled by 1/m.
    """
    _require_cm(c)
    if p.curve is not c:
        raise ClassMismatchError(f"point of {p.curve.value} on class {c.value}")
    if p.m != m:
        raise ValueError(f"point modulus {p.m} != {m}")
    if point_order(p) != m:
        raise ValueError(f"point {p.x, p.y} has order {point_order(p)}, expected {m}")
    rows = [[m, 0], [0, m], [p.x, p.y]]
    D, _, V = smith_normal_form(rows)
    vinv = _inverse_unimodular(V)
    basis = tuple(
        tuple(Fraction(D[r][r] * vinv[r][j], m) for j in range(2)) for r in range(2)
    )
    return QLattice(c, basis)


def cm_stable(lat: QLattice, u: UnitAction) -> bool:
    """Whether u * lat is contained in lat."""
    _require_cm(lat.curve)
    if u.curve is not lat.curve:
        raise ClassMismatchError(f"unit of {u.curve.value} on lattice of {lat.curve.value}")
    return all(lat._contains_scaled(*u.apply(r), lat._den) for r in lat._rows)


def automorphisms(lat: QLattice) -> list[UnitAction]:
    """Units preserving ``lat``, with matrices written in the basis of ``lat``.

    These are the origin-fixing automorphisms of C/lat. The generic class
    always gets +-1.
    """
    if not lat.curve.is_cm:
        return list(unit_group(lat.curve))
    out = []
    for u in unit_group(lat.curve):
        if not cm_stable(lat, u):
            continue
        # column j holds the (integral) coordinates of u*b_j
        cols = []
        for r in lat._rows:
            na, nb, den = lat._solve(*u.apply(r), lat._den)
            cols.append((na // den, nb // den))
        mat = ((cols[0][0], cols[1][0]), (cols[0][1], cols[1][1]))
        out.append(UnitAction(lat.curve, u.label, mat))
    return out


@dataclass(frozen=True)
class IsogenyData:
    """The isogeny C/source -> C/target induced by source <= target."""

    source: QLattice
    target: QLattice

    def __post_init__(self):
        if self.source.curve is not self.target.curve:
            raise ClassMismatchError("source and target lattices have different classes")
        if not self.target.contains_lattice(self.source):
            raise ValueError("source lattice is not contained in target lattice")

    @property
    def index(self) -> int:
        ratio = self.source.det / self.target.det
        if ratio.denominator != 1:
            raise ValueError(f"non-integral index {ratio}")
        return abs(int(ratio))

    @cached_property
    def _adapted(self):
        # source basis in target coordinates, then Smith form
        C = [[int(c) for c in self.target.coordinates(v)] for v in self.source.basis]
        D, _, V = smith_normal_form(C)
        if D[0][0] != 1:
            raise NonCyclicQuotientError(
                f"target/source is Z/{D[0][0]} x Z/{D[1][1]}, not cyclic"
            )
        return D[1][1], _inverse_unimodular(V)

    @property
    def kernel_generator(self) -> TorsionPoint:
        return dual_isogeny_kernel(self)

    def kernel_vector(self) -> QVector:
        """The generator f/m of ker(dual) as a vector of Q + Q*tau."""
        m, vinv = self._adapted
        (a, b), (c, d) = self.target.basis
        f = (vinv[0][0] * a + vinv[0][1] * c, vinv[0][0] * b + vinv[0][1] * d)
        return (f[0] / m, f[1] / m)


def dual_isogeny_kernel(d: IsogenyData) -> TorsionPoint:
    """Generator of (1/m)source / target, the kernel of the dual isogeny.

    With a basis (f1, f2) of the target adapted so that the source is
    <f1, m*f2>, the kernel is cyclic of order m generated by f1/m. The
    returned point has coordinates relative to the target's basis.
    """
    m, vinv = d._adapted
    return TorsionPoint(d.target.curve, m, vinv[0][0], vinv[0][1])
