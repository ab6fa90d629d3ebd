"""Arithmetic in GF(2), GF(3), GF(4), GF(5) and GF(7).

Elements are small integer codes. Prime fields use residues; GF(4) is
GF(2)[x]/(x^2+x+1) with codes 0, 1, 2 = w, 3 = w^2, so that addition is XOR
on the codes. All arithmetic goes through precomputed q x q tables which the
vectorised code in :mod:`duadic.linalg` and :mod:`duadic.codeprops` index
directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, UsageError

SUPPORTED_ORDERS = (2, 3, 4, 5, 7)

GF4_SYMBOLS = ("0", "1", "w", "w2")


@dataclass(frozen=True)
class FieldSpec:
    q: int

    def __post_init__(self):
        if self.q not in SUPPORTED_ORDERS:
            raise DomainError(f"unsupported field order {self.q}; expected one of {SUPPORTED_ORDERS}")

    @property
    def characteristic(self) -> int:
        return 2 if self.q == 4 else self.q

    @property
    def kind(self) -> str:
        return "gf4" if self.q == 4 else "prime-field"

    @property
    def tables(self) -> "Tables":
        return _tables(self.q)

    def __call__(self, value) -> "FieldElement":
        """Coerce an int code, a symbol string or an element into this field."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise UsageError(f"element of GF({value.spec.q}) used as GF({self.q})")
            return value
        if isinstance(value, str):
            return FieldElement(self, parse_symbol(self, value))
        return FieldElement(self, int(value))

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, v) for v in range(self.q)]

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def __repr__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def field(q: int) -> FieldSpec:
    return FieldSpec(q)


@dataclass(frozen=True)
class Tables:
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray   # inv[0] is a placeholder 0
    conj: np.ndarray  # identity outside GF(4)


@lru_cache(maxsize=None)
def _tables(q: int) -> Tables:
    if q == 4:
        exp = [1, 2, 3]
        log = {1: 0, 2: 1, 3: 2}
        add = np.array([[a ^ b for b in range(4)] for a in range(4)], dtype=np.uint8)
        mul = np.zeros((4, 4), dtype=np.uint8)
        for a in range(1, 4):
            for b in range(1, 4):
                mul[a, b] = exp[(log[a] + log[b]) % 3]
        neg = np.arange(4, dtype=np.uint8)
        conj = mul[np.arange(4), np.arange(4)].copy()
    else:
        r = np.arange(q)
        add = ((r[:, None] + r[None, :]) % q).astype(np.uint8)
        mul = ((r[:, None] * r[None, :]) % q).astype(np.uint8)
        neg = ((-r) % q).astype(np.uint8)
        conj = r.astype(np.uint8)
    inv = np.zeros(q, dtype=np.uint8)
    for a in range(1, q):
        inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
    for t in (add, mul, neg, inv, conj):
        t.setflags(write=False)
    return Tables(add, mul, neg, inv, conj)


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.spec.q:
            raise DomainError(f"{self.value} is not an element code of {self.spec}")

    def __add__(self, other):
        return add(self, other)

    def __mul__(self, other):
        return mul(self, other)

    def __sub__(self, other):
        return add(self, neg(other))

    def __neg__(self):
        return neg(self)

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __str__(self):
        return symbol(self.spec, self.value)

    def __repr__(self):
        return f"{self.spec}({symbol(self.spec, self.value)})"


def _check_same(a: FieldElement, b: FieldElement) -> None:
    if a.spec != b.spec:
        raise UsageError(f"cannot combine elements of {a.spec} and {b.spec}")


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same(a, b)
    return FieldElement(a.spec, int(a.spec.tables.add[a.value, b.value]))


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _check_same(a, b)
    return FieldElement(a.spec, int(a.spec.tables.mul[a.value, b.value]))


def neg(a: FieldElement) -> FieldElement:
    return FieldElement(a.spec, int(a.spec.tables.neg[a.value]))


def inv(a: FieldElement) -> FieldElement:
    if a.value == 0:
        raise DomainError("zero has no multiplicative inverse")
    return FieldElement(a.spec, int(a.spec.tables.inv[a.value]))


def conjugate(a: FieldElement) -> FieldElement:
    """Frobenius x -> x^2 of GF(4) over GF(2)."""
    if a.spec.q != 4:
        raise UsageError("conjugation is only defined here for GF(4)")
    return FieldElement(a.spec, int(a.spec.tables.conj[a.value]))


def symbol(spec: FieldSpec, value: int) -> str:
    return GF4_SYMBOLS[value] if spec.q == 4 else str(value)


def parse_symbol(spec: FieldSpec, text: str) -> int:
    text = text.strip()
    if spec.q == 4:
        aliases = {"0": 0, "1": 1, "w": 2, "w2": 3, "2": 2, "3": 3}
        if text not in aliases:
            raise DomainError(f"bad GF(4) symbol {text!r}; use 0, 1, w, w2")
        return aliases[text]
    try:
        value = int(text)
    except ValueError:
        raise DomainError(f"bad GF({spec.q}) symbol {text!r}") from None
    if not 0 <= value < spec.q:
        raise DomainError(f"{value} is not an element of GF({spec.q})")
    return value
