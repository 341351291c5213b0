"""Exact modular arithmetic over Z/mZ.

Factorization, Euler's function, unit groups, roots of the two CM
congruences n^2 + 1 = 0 and n^2 + n + 1 = 0 (mod m), and subgroup / orbit
computations inside (Z/mZ)*.

Residues are always returned sorted ascending. For m = 1 the ring Z/1Z has a
single element, written 0, which is also its unit 1.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

# n^2 + 1 and n^2 + n + 1 are scanned exhaustively up to this modulus.
SCAN_LIMIT = 10**6

# Deterministic for every n < 3.3 * 10^24, in particular all 64-bit inputs.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin with a fixed witness set."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    # n is odd and composite
    rng = random.Random(n)
    while True:
        y, c, step = rng.randrange(1, n), rng.randrange(1, n), 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(step, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += step
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _split(d, out)
    _split(n // d, out)


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n`` as ``((p, e), ...)`` sorted by prime.

    Trial division by small primes, Pollard-Brent for what remains.
    ``factorize(1)`` is the empty tuple.
    """
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    out: dict[int, int] = {}
    for p in itertools.chain((2, 3), range(5, 1000, 2)):
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    _split(n, out)
    return tuple(sorted(out.items()))


def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError(f"euler_phi needs m >= 1, got {m}")
    result = m
    for p, _ in factorize(m):
        result = result // p * (p - 1)
    return result


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


@dataclass(frozen=True)
class UnitGroup:
    modulus: int
    elements: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, k: int) -> bool:
        return k % self.modulus in self.elements


@lru_cache(maxsize=1024)
def units(m: int) -> UnitGroup:
    """The unit group (Z/mZ)* as sorted residues."""
    if m < 1:
        raise ValueError(f"units needs m >= 1, got {m}")
    if m == 1:
        return UnitGroup(1, (0,))
    return UnitGroup(m, tuple(k for k in range(1, m) if math.gcd(k, m) == 1))


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of (Z/mZ)*.

    ``generators`` is an optional witness list; ``elements`` is always the
    full sorted set. Construction checks closure.
    """

    modulus: int
    elements: tuple[int, ...]
    generators: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        m = self.modulus
        elems = tuple(sorted({e % m for e in self.elements}))
        object.__setattr__(self, "elements", elems)
        if 1 % m not in elems:
            raise ValueError(f"subgroup mod {m} must contain 1: {elems}")
        s = set(elems)
        for x in elems:
            if math.gcd(x, m) != 1:
                raise ValueError(f"{x} is not a unit mod {m}")
            for y in elems:
                if x * y % m not in s:
                    raise ValueError(f"{elems} is not closed mod {m}")

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, k: int) -> bool:
        return k % self.modulus in self.elements

    def __iter__(self):
        return iter(self.elements)


@lru_cache(maxsize=65536)
def _cached_subgroup(m: int, elements: frozenset[int]) -> Subgroup:
    elems = tuple(sorted(elements))
    return Subgroup(m, elems, tuple(e for e in elems if e != 1 % m))


def make_subgroup(m: int, elements) -> Subgroup:
    """A validated subgroup from its full element list (memoized)."""
    return _cached_subgroup(m, frozenset(e % m for e in elements))


def subgroup_closure(m: int, seed) -> Subgroup:
    """Smallest subgroup of (Z/mZ)* containing ``seed``."""
    seed = [s % m for s in seed]
    for s in seed:
        if math.gcd(s, m) != 1:
            raise ValueError(f"seed element {s} is not coprime to {m}")
    found = {1 % m}
    frontier = [1 % m]
    while frontier:
        x = frontier.pop()
        for s in seed:
            y = x * s % m
            if y not in found:
                found.add(y)
                frontier.append(y)
    return Subgroup(m, tuple(found), tuple(sorted(set(seed))))


def orbits(m: int, H: Subgroup) -> list[tuple[int, ...]]:
    """Cosets of ``H`` in (Z/mZ)*, each sorted; ordered by minimal element.

    The first element of each tuple is the canonical representative.
    """
    if H.modulus != m:
        raise ValueError(f"subgroup modulus {H.modulus} != {m}")
    seen: set[int] = set()
    result = []
    for k in units(m).elements:
        if k in seen:
            continue
        orbit = tuple(sorted({k * h % m for h in H.elements}))
        seen.update(orbit)
        result.append(orbit)
    return result


# -- the two CM congruences -------------------------------------------------


def _scan(m: int, linear: int) -> list[int]:
    if m <= 3_000_000_000:
        # n^2 + n + 1 < 2^63 in this range
        n = np.arange(m, dtype=np.int64)
        vals = (n * n + linear * n + 1) % m
        return [int(v) for v in np.flatnonzero(vals == 0)]
    return [k for k in range(m) if (k * k + linear * k + 1) % m == 0]


def _sqrt_mod_prime(a: int, p: int) -> int | None:
    """A square root of ``a`` mod odd prime ``p`` (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    mm, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (mm - i - 1), p)
        mm, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _roots_prime_power(p: int, e: int, linear: int) -> list[int]:
    """Roots of n^2 + linear*n + 1 mod p^e, lifted from simple roots mod p."""
    if p == 2:
        # n^2 + 1 = 2 (mod 4) for odd n; n^2 + n + 1 is always odd
        return [1] if linear == 0 and e == 1 else []
    if p == 3:
        # -1 is a non-residue mod 3; n^2 + n + 1 = 3 (mod 9) at n = 1, 4, 7
        return [1] if linear == 1 and e == 1 else []
    # discriminant linear^2 - 4 is -4 or -3; roots (-linear +- s) / 2
    s = _sqrt_mod_prime(linear * linear - 4, p)
    if s is None:
        return []
    inv2 = (p + 1) // 2
    roots = sorted({(-linear + s) * inv2 % p, (-linear - s) * inv2 % p})
    pk = p
    for _ in range(1, e):
        pk_next = pk * p
        lifted = []
        for r in roots:
            f = r * r + linear * r + 1
            df = 2 * r + linear
            # df is a unit mod p: the roots are simple
            r = (r - f * pow(df, -1, pk_next)) % pk_next
            lifted.append(r)
        roots, pk = sorted(lifted), pk_next
    return roots


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    return (r1 + m1 * ((r2 - r1) * pow(m1, -1, m2) % m2)) % (m1 * m2)


def _roots_lift(m: int, linear: int) -> list[int]:
    if m == 1:
        return [0]
    per_prime = []
    for p, e in factorize(m):
        rs = _roots_prime_power(p, e, linear)
        if not rs:
            return []
        per_prime.append((p**e, rs))
    out = []
    for combo in itertools.product(*(rs for _, rs in per_prime)):
        r, mod = 0, 1
        for (pe, _), ri in zip(per_prime, combo):
            r = _crt_pair(r, mod, ri, pe)
            mod *= pe
        out.append(r)
    return sorted(out)


def roots_n2_plus_1(m: int, method: str = "auto") -> list[int]:
    """All n in [0, m) with m | n^2 + 1.

    ``method`` is ``"scan"``, ``"lift"`` (factor, Hensel-lift, CRT) or
    ``"auto"`` (scan up to ``SCAN_LIMIT``).
    """
    return _roots(m, 0, method)


def roots_n2_plus_n_plus_1(m: int, method: str = "auto") -> list[int]:
    """All n in [0, m) with m | n^2 + n + 1. Same ``method`` choices."""
    return _roots(m, 1, method)


@lru_cache(maxsize=4096)
def _roots_cached(m: int, linear: int, method: str) -> tuple[int, ...]:
    if method == "auto":
        method = "scan" if m <= SCAN_LIMIT else "lift"
    if method == "scan":
        return tuple(_scan(m, linear))
    if method == "lift":
        return tuple(_roots_lift(m, linear))
    raise ValueError(f"unknown method {method!r}")


def _roots(m: int, linear: int, method: str) -> list[int]:
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    return list(_roots_cached(m, linear, method))
