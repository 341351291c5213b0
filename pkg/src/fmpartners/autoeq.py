"""The subgroup {(c a; d b) in Gamma_0(m) : b mod m in H} of SL(2, Z).

Convention: matrices are written (c a; d b) row by row, so the top row is
(c, a) and the bottom row (d, b). Gamma_0(m) membership constrains the
lower-left entry, d = 0 (mod m), which makes b a unit mod m.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import NamedTuple

from fmpartners.modmath import Subgroup, units

CONVENTION = "(c a; d b) row-major, det = cb - ad = 1, d = 0 mod m, residue = b mod m"


class IntMatrix2(NamedTuple):
    c: int
    a: int
    d: int
    b: int

    @property
    def det(self) -> int:
        return self.c * self.b - self.a * self.d

    def __matmul__(self, other: "IntMatrix2") -> "IntMatrix2":
        return IntMatrix2(
            self.c * other.c + self.a * other.d,
            self.c * other.a + self.a * other.b,
            self.d * other.c + self.b * other.d,
            self.d * other.a + self.b * other.b,
        )

    def inverse(self) -> "IntMatrix2":
        """Inverse in SL(2, Z): (b -a; -d c). Requires det 1."""
        if self.det != 1:
            raise ValueError(f"det {self.det} != 1")
        return IntMatrix2(self.b, -self.a, -self.d, self.c)

    def residue(self, m: int) -> int:
        return self.b % m

    def as_list(self) -> list[int]:
        return [self.c, self.a, self.d, self.b]


IDENTITY = IntMatrix2(1, 0, 0, 1)


def gamma0_member(M: IntMatrix2, m: int) -> bool:
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    return M.det == 1 and M.d % m == 0


def subgroup_member(M: IntMatrix2, m: int, H: Subgroup) -> bool:
    if H.modulus != m:
        raise ValueError(f"subgroup modulus {H.modulus} != {m}")
    return gamma0_member(M, m) and M.residue(m) in H


def lift_residue(b: int, m: int) -> IntMatrix2:
    """The member (c s; m b) of Gamma_0(m) with c = b^-1 mod m."""
    if math.gcd(b, m) != 1:
        raise ValueError(f"{b} is not coprime to {m}")
    c = pow(b, -1, m)
    s, r = divmod(c * b - 1, m)
    assert r == 0
    return IntMatrix2(c, s, m, b)


def random_gamma0_member(m: int, rng: random.Random, bound: int = 10**6) -> IntMatrix2:
    """A member of Gamma_0(m) with |b|, |d| <= bound; c, a follow from det = 1."""
    while True:
        b = rng.randint(-bound, bound)
        d = m * rng.randint(-(bound // m), bound // m)
        if math.gcd(b, d) != 1:
            continue
        if d == 0:
            # b = +-1; pick c = b so that cb = 1
            c, a = b, rng.randint(-bound, bound)
            return IntMatrix2(c, a, 0, b)
        # c*b - a*d = 1
        c = pow(b, -1, abs(d))
        a = (c * b - 1) // d
        return IntMatrix2(c, a, d, b)


@dataclass
class ClosureReport:
    m: int
    H: tuple[int, ...]
    checked: int = 0
    failures: list[dict] = field(default_factory=list)
    convention: str = CONVENTION

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "H": list(self.H),
            "checked": self.checked,
            "failures": self.failures,
            "passed": self.passed,
            "convention": self.convention,
        }


def random_subgroup_member(m: int, H: Subgroup, rng: random.Random, bound: int = 10**6) -> IntMatrix2:
    """A random member whose residue is a random element of H.

    A random Gamma_0(m) member R is corrected on the right by the lift of
    h * residue(R)^-1, so the product has residue h.
    """
    R = random_gamma0_member(m, rng, bound)
    h = rng.choice(H.elements)
    return R @ lift_residue(h * pow(R.b, -1, m) % m, m)


def verify_closure(m: int, H: Subgroup, sample_count: int = 1000, seed: int = 0) -> ClosureReport:
    """Products and inverses of random members stay members; residues multiply."""
    if H.modulus != m:
        raise ValueError(f"subgroup modulus {H.modulus} != {m}")
    rng = random.Random(seed)
    report = ClosureReport(m, H.elements)
    for _ in range(sample_count):
        A = random_subgroup_member(m, H, rng)
        B = random_subgroup_member(m, H, rng)
        P = A @ B
        report.checked += 1
        checks = {
            "factors_member": subgroup_member(A, m, H) and subgroup_member(B, m, H),
            "product_member": subgroup_member(P, m, H),
            "inverse_member": subgroup_member(A.inverse(), m, H),
            "inverse_is_inverse": A @ A.inverse() == IDENTITY,
            "residue_hom": P.residue(m) == A.residue(m) * B.residue(m) % m,
        }
        if not all(checks.values()):
            report.failures.append({"A": A.as_list(), "B": B.as_list(), "checks": checks})
    return report


def realized_residues(m: int) -> list[int]:
    """Residues b mod m realized by Gamma_0(m) members, via ``lift_residue``."""
    return sorted({lift_residue(b, m).residue(m) for b in units(m).elements})
