"""Dense matrices and vectors over the supported fields.

Entries are stored as ``uint8`` element codes (see :mod:`duadic.gf`); the
``Matrix`` and ``Vector`` wrappers pair an array with its field so that the
arithmetic tables are never applied to the wrong codes.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from .errors import DomainError, UsageError
from .gf import FieldElement, FieldSpec, field, parse_symbol, symbol


class Vector:
    __slots__ = ("spec", "array")

    def __init__(self, spec: FieldSpec, entries):
        arr = np.array(entries, dtype=np.uint8).reshape(-1)
        if arr.size and arr.max() >= spec.q:
            raise DomainError(f"vector entries must be codes below {spec.q}")
        arr.setflags(write=False)
        self.spec = spec
        self.array = arr

    @classmethod
    def from_elements(cls, elements: Iterable[FieldElement]) -> "Vector":
        elements = list(elements)
        if not elements:
            raise UsageError("cannot infer the field of an empty element list")
        spec = elements[0].spec
        if any(e.spec != spec for e in elements):
            raise UsageError("mixed fields in vector")
        return cls(spec, [e.value for e in elements])

    def __len__(self):
        return self.array.size

    def __getitem__(self, i) -> FieldElement:
        return FieldElement(self.spec, int(self.array[i]))

    def __iter__(self):
        return (FieldElement(self.spec, int(v)) for v in self.array)

    def __eq__(self, other):
        return (isinstance(other, Vector) and self.spec == other.spec
                and np.array_equal(self.array, other.array))

    def __hash__(self):
        return hash((self.spec.q, self.array.tobytes()))

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.array))

    def __repr__(self):
        return f"Vector({self.spec}, [{' '.join(symbol(self.spec, int(v)) for v in self.array)}])"


class Matrix:
    __slots__ = ("spec", "array")

    def __init__(self, spec: FieldSpec, entries):
        arr = np.array(entries, dtype=np.uint8)
        if arr.ndim != 2:
            if arr.size:
                raise DomainError(f"matrix entries must form a 2-d grid, got shape {arr.shape}")
            arr = arr.reshape(0, 0)
        if arr.size and arr.max() >= spec.q:
            raise DomainError(f"matrix entries must be codes below {spec.q}")
        arr.setflags(write=False)
        self.spec = spec
        self.array = arr

    @classmethod
    def identity(cls, spec: FieldSpec, size: int) -> "Matrix":
        return cls(spec, np.eye(size, dtype=np.uint8))

    @classmethod
    def zeros(cls, spec: FieldSpec, rows: int, cols: int) -> "Matrix":
        return cls(spec, np.zeros((rows, cols), dtype=np.uint8))

    @property
    def rows(self) -> int:
        return self.array.shape[0]

    @property
    def cols(self) -> int:
        return self.array.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.array.shape

    def row(self, i: int) -> Vector:
        return Vector(self.spec, self.array[i])

    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        return FieldElement(self.spec, int(self.array[i, j]))

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.spec == other.spec
                and self.array.shape == other.array.shape
                and np.array_equal(self.array, other.array))

    def __hash__(self):
        return hash((self.spec.q, self.array.shape, self.array.tobytes()))

    @property
    def T(self) -> "Matrix":
        return Matrix(self.spec, self.array.T.copy())

    def to_text(self) -> str:
        lines = [f"q={self.spec.q} rows={self.rows} cols={self.cols}"]
        for r in self.array:
            lines.append(" ".join(symbol(self.spec, int(v)) for v in r))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Matrix":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise DomainError("empty matrix text")
        try:
            header = dict(tok.split("=", 1) for tok in lines[0].split())
            q, rows, cols = int(header["q"]), int(header["rows"]), int(header["cols"])
        except (KeyError, ValueError):
            raise DomainError(f"bad matrix header {lines[0]!r}") from None
        spec = field(q)
        body = lines[1:]
        if len(body) != rows:
            raise DomainError(f"header says {rows} rows, found {len(body)}")
        arr = np.zeros((rows, cols), dtype=np.uint8)
        for i, ln in enumerate(body):
            toks = ln.split()
            if len(toks) != cols:
                raise DomainError(f"row {i} has {len(toks)} entries, expected {cols}")
            arr[i] = [parse_symbol(spec, t) for t in toks]
        return cls(spec, arr)

    def __repr__(self):
        return f"Matrix({self.spec}, {self.rows}x{self.cols})"


def _rref_array(a: np.ndarray, spec: FieldSpec, columns=None) -> tuple[np.ndarray, list[int]]:
    """Reduce ``a`` in place-free fashion; return (reduced, pivot columns).

    Pivots are sought column by column in the order given by ``columns``
    (default: left to right), taking the first nonzero row at or below the
    current pivot row.
    """
    t = spec.tables
    m = a.astype(np.uint8, copy=True)
    nrows, ncols = m.shape
    if columns is None:
        columns = range(ncols)
    pivots = []
    r = 0
    for c in columns:
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        piv = m[r, c]
        if piv != 1:
            m[r] = t.mul[t.inv[piv], m[r]]
        factors = m[:, c].copy()
        factors[r] = 0
        rows = np.nonzero(factors)[0]
        if rows.size:
            scaled = t.mul[t.neg[factors[rows]][:, None], m[r][None, :]]
            m[rows] = t.add[m[rows], scaled]
        pivots.append(c)
        r += 1
    return m, pivots


def rref(m: Matrix) -> Matrix:
    reduced, _ = _rref_array(m.array, m.spec)
    return Matrix(m.spec, reduced)


def rank(m: Matrix) -> int:
    return len(_rref_array(m.array, m.spec)[1])


def pivot_columns(m: Matrix) -> list[int]:
    return _rref_array(m.array, m.spec)[1]


def inner_product(u: Vector, v: Vector, hermitian: bool = False) -> FieldElement:
    if u.spec != v.spec:
        raise UsageError(f"vectors over {u.spec} and {v.spec}")
    if len(u) != len(v):
        raise UsageError(f"vector lengths differ: {len(u)} vs {len(v)}")
    if hermitian and u.spec.q != 4:
        raise UsageError("Hermitian inner product is only offered over GF(4)")
    t = u.spec.tables
    right = t.conj[v.array] if hermitian else v.array
    acc = 0
    for x in t.mul[u.array, right]:
        acc = t.add[acc, x]
    return FieldElement(u.spec, int(acc))


def matmul_array(a: np.ndarray, b: np.ndarray, spec: FieldSpec) -> np.ndarray:
    """Product of two code arrays over ``spec``."""
    if spec.q == 4:
        a0, a1 = (a & 1).astype(np.int64), (a >> 1).astype(np.int64)
        b0, b1 = (b & 1).astype(np.int64), (b >> 1).astype(np.int64)
        c0 = (a0 @ b0 + a1 @ b1) & 1
        c1 = (a0 @ b1 + a1 @ b0 + a1 @ b1) & 1
        return (c0 | (c1 << 1)).astype(np.uint8)
    return ((a.astype(np.int64) @ b.astype(np.int64)) % spec.q).astype(np.uint8)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a.spec != b.spec:
        raise UsageError(f"matrices over {a.spec} and {b.spec}")
    if a.cols != b.rows:
        raise UsageError(f"shape mismatch {a.shape} @ {b.shape}")
    return Matrix(a.spec, matmul_array(a.array, b.array, a.spec))


def conjugate_matrix(m: Matrix) -> Matrix:
    if m.spec.q != 4:
        raise UsageError("conjugation is only defined here for GF(4)")
    return Matrix(m.spec, m.spec.tables.conj[m.array])


def dual_basis(g: Matrix) -> Matrix:
    """Basis of the Euclidean dual of the row space of a full-rank ``g``."""
    reduced, pivots = _rref_array(g.array, g.spec)
    k = len(pivots)
    if k != g.rows:
        raise DomainError(f"generator has rank {k} < {g.rows} rows")
    t = g.spec.tables
    free = [c for c in range(g.cols) if c not in set(pivots)]
    h = np.zeros((len(free), g.cols), dtype=np.uint8)
    for i, f in enumerate(free):
        h[i, f] = 1
        h[i, pivots] = t.neg[reduced[:k, f]]
    return Matrix(g.spec, h)


def row_space_equal(a: Matrix, b: Matrix) -> bool:
    """True when ``a`` and ``b`` span the same subspace."""
    if a.spec != b.spec or a.cols != b.cols:
        return False
    ra, pa = _rref_array(a.array, a.spec)
    rb, pb = _rref_array(b.array, b.spec)
    return pa == pb and np.array_equal(ra[:len(pa)], rb[:len(pb)])
