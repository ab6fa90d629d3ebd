"""Pure and bordered duadic double circulant generator matrices.

The circulant block ``D`` has first row ``(a_0, ..., a_{n-1})`` with
``a_0 = r``, ``a_i = s`` on S1 and ``a_i = t`` on S2; row ``i`` is that row
shifted right ``i`` places, so ``D[i, j] = a[(j - i) mod n]``.

Pure codes have generator ``(I | D)``. Bordered codes use the column layout::

    1 | 0 ... 0 | alpha | beta ... beta
    0 |    I    | gamma |      D
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DomainError, UsageError
from .gf import FieldElement, FieldSpec, field, symbol
from .linalg import Matrix, Vector
from .splitting import Splitting, verify_splitting


@dataclass(frozen=True)
class CirculantSpec:
    spec: FieldSpec
    splitting: Splitting
    r: FieldElement
    s: FieldElement
    t: FieldElement

    def __post_init__(self):
        for name in ("r", "s", "t"):
            if getattr(self, name).spec != self.spec:
                raise UsageError(f"{name} is not an element of {self.spec}")
        if self.splitting.n < 3:
            raise DomainError("circulant size must be at least 3")

    @classmethod
    def make(cls, q: int, splitting: Splitting, r, s, t) -> "CirculantSpec":
        """Build from ints or field symbols."""
        f = field(q)
        return cls(f, splitting, f(r), f(s), f(t))

    @property
    def n(self) -> int:
        return self.splitting.n

    @property
    def params(self) -> tuple[int, int, int]:
        return (self.r.value, self.s.value, self.t.value)


@dataclass(frozen=True)
class BorderSpec:
    alpha: FieldElement
    beta: FieldElement
    gamma: FieldElement

    @classmethod
    def make(cls, q: int, alpha, beta, gamma) -> "BorderSpec":
        f = field(q)
        return cls(f(alpha), f(beta), f(gamma))

    @property
    def params(self) -> tuple[int, int, int]:
        return (self.alpha.value, self.beta.value, self.gamma.value)


@dataclass(frozen=True, eq=False)
class DdcCode:
    kind: Literal["pure", "bordered"]
    circulant: CirculantSpec
    border: BorderSpec | None
    generator: Matrix

    @property
    def spec(self) -> FieldSpec:
        return self.circulant.spec

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def n(self) -> int:
        return self.circulant.n

    @property
    def length(self) -> int:
        return self.generator.cols

    @property
    def dimension(self) -> int:
        return self.generator.rows

    def label(self) -> str:
        sym = lambda e: symbol(self.spec, e.value)
        c = self.circulant
        rst = ",".join(sym(x) for x in (c.r, c.s, c.t))
        if self.kind == "pure":
            return f"P_{self.n}({rst}) over GF({self.q})"
        b = self.border
        abg = ",".join(sym(x) for x in (b.alpha, b.beta, b.gamma))
        return f"B_{self.n}({abg},{rst}) over GF({self.q})"

    def cyclic_shift(self) -> list[int]:
        """Column permutation shifting both circulant halves by one place.

        ``perm[j]`` is the image of column ``j``. The permutation is an
        automorphism of every pure and bordered code built here.
        """
        n = self.n
        if self.kind == "pure":
            return [(j + 1) % n for j in range(n)] + [n + (j + 1) % n for j in range(n)]
        return ([0] + [1 + (j + 1) % n for j in range(n)]
                + [n + 1] + [n + 2 + (j + 1) % n for j in range(n)])

    def to_dict(self) -> dict:
        sym = lambda e: None if e is None else symbol(self.spec, e.value)
        c, b = self.circulant, self.border
        return {
            "kind": self.kind,
            "q": self.q,
            "n": self.n,
            "r": sym(c.r), "s": sym(c.s), "t": sym(c.t),
            "alpha": sym(b.alpha) if b else None,
            "beta": sym(b.beta) if b else None,
            "gamma": sym(b.gamma) if b else None,
            "s1": list(c.splitting.s1),
            "generator": self.generator.to_text(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DdcCode":
        q, n = int(d["q"]), int(d["n"])
        sp = verify_splitting(n, d["s1"])
        circ = CirculantSpec.make(q, sp, d["r"], d["s"], d["t"])
        if d["kind"] == "pure":
            code = build_pure(circ)
        elif d["kind"] == "bordered":
            code = build_bordered(circ, BorderSpec.make(q, d["alpha"], d["beta"], d["gamma"]))
        else:
            raise DomainError(f"unknown code kind {d['kind']!r}")
        gen = d.get("generator")
        if gen is not None and Matrix.from_text(gen) != code.generator:
            raise DomainError("stored generator does not match the construction parameters")
        return code


def circulant_row(c: CirculantSpec) -> Vector:
    row = np.full(c.n, c.t.value, dtype=np.uint8)
    row[0] = c.r.value
    row[list(c.splitting.s1)] = c.s.value
    return Vector(c.spec, row)


def circulant_matrix(row: Vector) -> Matrix:
    n = len(row)
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    return Matrix(row.spec, row.array[idx])


def build_pure(c: CirculantSpec) -> DdcCode:
    d = circulant_matrix(circulant_row(c)).array
    g = np.hstack([np.eye(c.n, dtype=np.uint8), d])
    return DdcCode("pure", c, None, Matrix(c.spec, g))


def build_bordered(c: CirculantSpec, b: BorderSpec) -> DdcCode:
    for e in (b.alpha, b.beta, b.gamma):
        if e.spec != c.spec:
            raise UsageError("border scalars and circulant are over different fields")
    n = c.n
    d = circulant_matrix(circulant_row(c)).array
    g = np.zeros((n + 1, 2 * n + 2), dtype=np.uint8)
    g[0, 0] = 1
    g[0, n + 1] = b.alpha.value
    g[0, n + 2:] = b.beta.value
    g[1:, 1:n + 1] = np.eye(n, dtype=np.uint8)
    g[1:, n + 1] = b.gamma.value
    g[1:, n + 2:] = d
    return DdcCode("bordered", c, b, Matrix(c.spec, g))
