"""Duadic splittings of an odd modulus.

A splitting of odd ``n > 1`` is a partition ``(S1, S2)`` of ``{1, ..., n-1}``
together with a multiplier ``x -> a*x mod n`` that carries S1 onto S2 (it
then carries S2 onto S1 as well, being a bijection of the nonzero residues).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import gcd
from typing import Iterable

from .errors import DomainError, NoWitness, NotAPartition


def _check_modulus(n: int) -> None:
    if n <= 1 or n % 2 == 0:
        raise DomainError(f"n must be odd and > 1, got {n}")


def multiplicative_order(a: int, n: int) -> int:
    if gcd(a, n) != 1:
        raise DomainError(f"gcd({a}, {n}) != 1")
    a %= n
    x, k = a, 1
    while x != 1 % n:
        x = x * a % n
        k += 1
    return k


def is_square_mod(b: int, n: int) -> bool:
    b %= n
    return any(x * x % n == b for x in range(n))


def units(n: int) -> list[int]:
    return [a for a in range(1, n) if gcd(a, n) == 1]


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n ** 0.5) + 1))


@dataclass(frozen=True)
class Multiplier:
    n: int
    a: int
    order: int = dc_field(init=False)

    def __post_init__(self):
        if gcd(self.a, self.n) != 1:
            raise DomainError(f"gcd({self.a}, {self.n}) != 1")
        object.__setattr__(self, "order", multiplicative_order(self.a, self.n))

    def __call__(self, x: int) -> int:
        return x * self.a % self.n

    def image(self, s: Iterable[int]) -> frozenset[int]:
        return frozenset(x * self.a % self.n for x in s)


@dataclass(frozen=True)
class Splitting:
    n: int
    s1: tuple[int, ...]
    s2: tuple[int, ...]
    witnesses: tuple[int, ...]
    base: int | None = None

    def to_dict(self) -> dict:
        return {"n": self.n, "s1": list(self.s1), "s2": list(self.s2),
                "witnesses": list(self.witnesses), "base": self.base}

    @classmethod
    def from_dict(cls, d: dict) -> "Splitting":
        sp = verify_splitting(int(d["n"]), d["s1"], d.get("s2"))
        base = d.get("base")
        return cls(sp.n, sp.s1, sp.s2, sp.witnesses, None if base is None else int(base))

    def swapped(self) -> "Splitting":
        return Splitting(self.n, self.s2, self.s1, self.witnesses, self.base)


@dataclass(frozen=True)
class CosetPartition:
    n: int
    base: int
    cosets: tuple[tuple[int, ...], ...]

    def index_of(self) -> dict[int, int]:
        return {x: i for i, c in enumerate(self.cosets) for x in c}


def cyclotomic_cosets(n: int, base: int) -> CosetPartition:
    """Orbits of ``x -> base*x mod n`` on the nonzero residues, by smallest member."""
    _check_modulus(n)
    if gcd(base, n) != 1:
        raise DomainError(f"gcd(base={base}, n={n}) != 1")
    seen: set[int] = set()
    cosets = []
    for x in range(1, n):
        if x in seen:
            continue
        orbit = []
        y = x
        while y not in orbit:
            orbit.append(y)
            y = y * base % n
        seen.update(orbit)
        cosets.append(tuple(sorted(orbit)))
    return CosetPartition(n, base, tuple(cosets))


def verify_splitting(n: int, s1: Iterable[int], s2: Iterable[int] | None = None,
                     base: int | None = None) -> Splitting:
    """Check the splitting conditions and collect every witness multiplier.

    ``s2`` defaults to the complement of ``s1`` in ``{1, ..., n-1}``.
    """
    _check_modulus(n)
    s1 = frozenset(int(x) for x in s1)
    full = frozenset(range(1, n))
    s2 = full - s1 if s2 is None else frozenset(int(x) for x in s2)
    if (s1 | s2) != full or s1 & s2:
        raise NotAPartition(f"S1, S2 do not partition 1..{n - 1}")
    if len(s1) != len(s2):
        raise NotAPartition(f"|S1| = {len(s1)} differs from |S2| = {len(s2)}")
    witnesses = tuple(a for a in units(n) if frozenset(x * a % n for x in s1) == s2)
    if not witnesses:
        raise NoWitness(f"no multiplier maps S1 onto S2 for n = {n}")
    return Splitting(n, tuple(sorted(s1)), tuple(sorted(s2)), witnesses, base)


def canonical(sp: Splitting) -> Splitting:
    return sp.swapped() if sp.s2 < sp.s1 else sp


def half_splitting(n: int) -> Splitting:
    _check_modulus(n)
    return verify_splitting(n, range(1, (n + 1) // 2))


def qr_splitting(n: int) -> Splitting:
    """Quadratic residues versus nonresidues of an odd prime."""
    if n <= 2 or not is_prime(n):
        raise DomainError(f"{n} is not an odd prime")
    squares = {x * x % n for x in range(1, n)}
    return verify_splitting(n, squares)


def reject_odd_order(n: int, a: int) -> bool:
    """True when no splitting of ``n`` can have ``a`` as its multiplier."""
    return multiplicative_order(a, n) % 2 == 1


def _orbits(perm: list[int]) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = perm[i]
        out.append(cyc)
    return out


def enumerate_coset_splittings(n: int, base: int) -> list[Splitting]:
    """All canonical splittings whose halves are unions of ``base``-cyclotomic cosets.

    For each multiplier ``a`` the induced permutation on cosets must have only
    even-length cycles; each cycle is then filled alternately, giving two
    choices per cycle.
    """
    part = cyclotomic_cosets(n, base)
    where = part.index_of()
    found: dict[tuple[int, ...], Splitting] = {}
    for a in units(n):
        perm = [where[c[0] * a % n] for c in part.cosets]
        cycles = _orbits(perm)
        if any(len(c) % 2 for c in cycles):
            continue
        for mask in range(1 << len(cycles)):
            s1: set[int] = set()
            for j, cyc in enumerate(cycles):
                parity = (mask >> j) & 1
                for pos, ci in enumerate(cyc):
                    if pos % 2 == parity:
                        s1.update(part.cosets[ci])
            key = tuple(sorted(s1))
            comp = tuple(sorted(set(range(1, n)) - s1))
            key = min(key, comp)
            if key not in found:
                found[key] = canonical(verify_splitting(n, key, base=base))
    return [found[k] for k in sorted(found)]
