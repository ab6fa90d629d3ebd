"""Minimum distance, weight distributions and duality classification.

Two distance routes are provided. ``min_distance_exhaustive`` walks the whole
message space and is the reference. ``min_distance_accelerated`` is an
information-set search in the Brouwer-Zimmermann style: the generator is put
in systematic form on a sequence of (as far as possible) disjoint information
sets, messages are enumerated by increasing Hamming weight ``w`` on each set,
and after level ``w`` every codeword not yet seen has weight at least
``sum_j max(0, w + 1 - (k - rank_j))``. The search stops once that bound
reaches the lightest codeword found.

Codewords are held in packed numpy arrays: one bit plane for GF(2), two for
GF(4) (XOR addition) and two for GF(3) (planes marking the entries equal to 1
and to 2, added with six word operations), and plain ``uint8`` residues for
GF(5) and GF(7).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Iterator, NamedTuple, Union

import numpy as np

from .ddc import DdcCode
from .errors import BudgetExceeded, DomainError
from .gf import FieldSpec
from .linalg import Matrix, _rref_array, dual_basis, matmul_array, row_space_equal

DEFAULT_BUDGET = 1 << 22
_TAIL_BYTES = 48 << 20

CodeLike = Union[DdcCode, Matrix]


def _generator(code: CodeLike) -> Matrix:
    return code.generator if isinstance(code, DdcCode) else code


# -- packed codeword arithmetic -------------------------------------------------

class _Packer:
    def __init__(self, spec: FieldSpec, ncols: int):
        self.spec = spec
        self.q = spec.q
        self.ncols = ncols
        self.nbytes = -(-ncols // 8)
        self.words = -(-ncols // 64)
        if self.q == 2:
            self.width = self.words
        elif self.q in (3, 4):
            self.width = 2 * self.words
        else:
            self.width = ncols
            self._mod = (np.arange(2 * self.q) % self.q).astype(np.uint8)

    @property
    def dtype(self):
        return np.uint64 if self.q in (2, 3, 4) else np.uint8

    def _bits(self, plane: np.ndarray) -> np.ndarray:
        b = np.packbits(plane, axis=1, bitorder="little")
        pad = np.zeros((b.shape[0], self.words * 8), dtype=np.uint8)
        pad[:, :b.shape[1]] = b
        return pad.view(np.uint64)

    def pack(self, rows: np.ndarray) -> np.ndarray:
        rows = np.asarray(rows, dtype=np.uint8).reshape(-1, self.ncols)
        if self.q == 2:
            return self._bits(rows)
        if self.q == 4:
            return np.hstack([self._bits(rows & 1), self._bits(rows >> 1)])
        if self.q == 3:
            return np.hstack([self._bits(rows == 1), self._bits(rows == 2)])
        return rows.copy()

    def _unbits(self, words: np.ndarray) -> np.ndarray:
        b = np.ascontiguousarray(words).view(np.uint8)
        return np.unpackbits(b, axis=1, bitorder="little")[:, :self.ncols]

    def unpack(self, packed: np.ndarray) -> np.ndarray:
        packed = np.atleast_2d(packed)
        if self.q == 2:
            return self._unbits(packed)
        if self.q in (3, 4):
            w = self.words
            return self._unbits(packed[:, :w]) | (self._unbits(packed[:, w:]) << 1)
        return packed.astype(np.uint8)

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.q in (2, 4):
            return a ^ b
        if self.q == 3:
            w = self.words
            a1, a2 = a[..., :w], a[..., w:]
            b1, b2 = b[..., :w], b[..., w:]
            t = (a1 | b2) ^ (a2 | b1)
            return np.concatenate([(a2 | b2) ^ t, (a1 | b1) ^ t], axis=-1)
        return self._mod[a + b]

    def weights(self, arr: np.ndarray) -> np.ndarray:
        if self.q == 2:
            return np.bitwise_count(arr).sum(axis=1, dtype=np.int64)
        if self.q in (3, 4):
            w = self.words
            return np.bitwise_count(arr[:, :w] | arr[:, w:]).sum(axis=1, dtype=np.int64)
        return np.count_nonzero(arr, axis=1)

    def scaled(self, rows: np.ndarray) -> np.ndarray:
        """Packed ``c * rows`` for every nonzero scalar code ``c``; shape (q-1, k, width)."""
        mul = self.spec.tables.mul
        return np.stack([self.pack(mul[c][rows]) for c in range(1, self.q)])

    def zero(self, count: int = 1) -> np.ndarray:
        return np.zeros((count, self.width), dtype=self.dtype)


def _normalize(spec: FieldSpec, word: np.ndarray) -> bytes:
    """Canonical key of the projective point of a codeword (first nonzero = 1)."""
    if spec.q != 2:
        nz = np.flatnonzero(word)
        lead = word[nz[0]]
        if lead != 1:
            t = spec.tables
            word = t.mul[t.inv[lead]][word]
    return word.astype(np.uint8).tobytes()


# -- weight distributions -------------------------------------------------------

@dataclass(frozen=True)
class WeightDistribution:
    length: int
    q: int
    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def dimension(self) -> int:
        k, size = 0, 1
        while size < self.total:
            size *= self.q
            k += 1
        if size != self.total:
            raise DomainError(f"{self.total} codewords is not a power of {self.q}")
        return k

    @property
    def min_distance(self) -> int | None:
        return next((i for i, a in enumerate(self.counts) if i and a), None)

    def to_dict(self) -> dict:
        return {"length": self.length, "q": self.q, "counts": list(self.counts)}


def _budget_check(q: int, k: int, budget: int) -> None:
    if q ** k > budget:
        raise BudgetExceeded(f"{q}^{k} codewords exceeds the enumeration budget {budget}")


def _weight_histogram(g: Matrix) -> np.ndarray:
    spec, (k, ncols) = g.spec, g.shape
    pk = _Packer(spec, ncols)
    q = spec.q
    inner = 0
    while inner < k and q ** (inner + 1) <= 1 << 18:
        inner += 1
    scaled = pk.scaled(g.array)
    span = pk.zero()
    for i in range(inner):
        span = np.concatenate([span] + [pk.add(span, scaled[c, i]) for c in range(q - 1)])
    hist = np.zeros(ncols + 1, dtype=np.int64)
    rest = range(inner, k)
    for coeffs in itertools.product(range(q), repeat=k - inner):
        offset = pk.zero()[0]
        for i, c in zip(rest, coeffs):
            if c:
                offset = pk.add(offset, scaled[c - 1, i])
        hist += np.bincount(pk.weights(pk.add(span, offset)), minlength=ncols + 1)
    return hist


def weight_distribution(code: CodeLike, budget: int = DEFAULT_BUDGET) -> WeightDistribution:
    g = _generator(code)
    _budget_check(g.spec.q, g.rows, budget)
    hist = _weight_histogram(g)
    return WeightDistribution(g.cols, g.spec.q, tuple(int(x) for x in hist))


def min_distance_exhaustive(code: CodeLike, budget: int = DEFAULT_BUDGET) -> tuple[int, int]:
    """Exact (distance, number of minimum weight codewords) by full enumeration."""
    wd = weight_distribution(code, budget)
    d = wd.min_distance
    if d is None:
        raise DomainError("the zero code has no minimum distance")
    return d, wd.counts[d]


def _krawtchouk(j: int, i: int, length: int, q: int) -> int:
    return sum((-1) ** s * (q - 1) ** (j - s) * comb(i, s) * comb(length - i, j - s)
               for s in range(j + 1))


def macwilliams(wd: WeightDistribution, k: int | None = None) -> WeightDistribution:
    """Weight distribution of the dual code (exact integer arithmetic)."""
    k = wd.dimension if k is None else k
    size = wd.q ** k
    if wd.total != size:
        raise DomainError(f"distribution sums to {wd.total}, expected {wd.q}^{k}")
    out = []
    for j in range(wd.length + 1):
        acc = sum(a * _krawtchouk(j, i, wd.length, wd.q) for i, a in enumerate(wd.counts) if a)
        if acc % size:
            raise DomainError("MacWilliams transform is not integral; input is not a code distribution")
        out.append(acc // size)
    return WeightDistribution(wd.length, wd.q, tuple(out))


# -- information-set search -----------------------------------------------------

class DistanceResult(NamedTuple):
    distance: int
    a_d: int | None
    exact: bool
    lower_bound: int


@dataclass
class _InfoSet:
    pivots: list[int]
    rank: int
    deficit: int
    scaled: np.ndarray                       # (q-1, k, width), systematic rows
    cycle_rows: list[int] | None = None      # rows on one symmetry cycle, representative first
    _tails: dict = dc_field(default_factory=dict)


def _information_sets(g: Matrix, min_rank: int) -> list[tuple[np.ndarray, list[int]]]:
    k, ncols = g.shape
    used: set[int] = set()
    out = []
    while len(used) < ncols:
        cols = [c for c in range(ncols) if c not in used]
        reduced, piv = _rref_array(g.array, g.spec, cols)
        if not piv or (out and len(piv) < min_rank):
            break
        out.append((reduced, piv))
        used.update(piv)
    return out


def _cycle_rows(pivots: list[int], perm: list[int]) -> list[int] | None:
    """Rows whose pivot columns form the longest cycle of ``perm`` inside an invariant set."""
    pset = set(pivots)
    if any(perm[c] not in pset for c in pivots):
        return None
    seen: set[int] = set()
    best: list[int] = []
    for c in pivots:
        if c in seen:
            continue
        cyc = [c]
        seen.add(c)
        x = perm[c]
        while x != c:
            cyc.append(x)
            seen.add(x)
            x = perm[x]
        if len(cyc) > len(best):
            best = cyc
    if len(best) < 2:
        return None
    row_of = {c: i for i, c in enumerate(pivots)}
    rows = sorted(row_of[c] for c in best)
    return rows


class _Enumerator:
    """Sums of exactly ``w`` scaled rows, produced in vectorised chunks.

    Combinations are split into a Python-level head and a precomputed tail
    table of all ``t``-subsets ordered by smallest index, so each head needs
    one vectorised add against a contiguous block of the table.
    """

    def __init__(self, pk: _Packer, scaled: np.ndarray):
        self.pk = pk
        self.scaled = scaled
        self.m = scaled.shape[1]
        self.qm1 = scaled.shape[0]
        self._tails: list[tuple[np.ndarray, np.ndarray]] = []
        entry = pk.width * (8 if pk.dtype == np.uint64 else 1)
        self.max_entries = max(1, _TAIL_BYTES // entry)

    def _tail(self, t: int) -> tuple[np.ndarray, np.ndarray]:
        pk, m = self.pk, self.m
        if not self._tails:
            self._tails.append((pk.zero(), np.zeros(m + 1, dtype=np.int64)))
        while len(self._tails) <= t:
            prev, pstart = self._tails[-1]
            blocks, start = [], [0]
            for i in range(m):
                below = prev[pstart[i + 1]:]
                for c in range(self.qm1):
                    blocks.append(pk.add(below, self.scaled[c, i]))
                start.append(start[-1] + self.qm1 * len(below))
            table = np.concatenate(blocks) if blocks else pk.zero(0)
            self._tails.append((table, np.array(start, dtype=np.int64)))
        return self._tails[t]

    def _tail_size(self, t: int) -> int:
        return comb(self.m, t) * self.qm1 ** t

    def sums(self, w: int, normalize: bool, offset: np.ndarray | None = None) -> Iterator[np.ndarray]:
        pk, m = self.pk, self.m
        if w > m or w < 0:
            return
        if w == 0:
            if offset is not None and not normalize:
                yield offset[None, :]
            return
        lo = 1 if normalize else 0
        t = 0
        while t + 1 <= w - lo and self._tail_size(t + 1) <= self.max_entries:
            t += 1
        h = w - t
        table, start = self._tail(t)
        if h == 0:
            yield table if offset is None else pk.add(table, offset)
            return
        nz = range(self.qm1)
        for idx in itertools.combinations(range(m - t), h):
            block = table[start[idx[-1] + 1]:]
            if not len(block):
                continue
            first = (0,) if normalize else nz
            for coeffs in itertools.product(first, *([nz] * (h - 1))):
                v = self.scaled[coeffs[0], idx[0]] if offset is None else pk.add(offset, self.scaled[coeffs[0], idx[0]])
                for c, i in zip(coeffs[1:], idx[1:]):
                    v = pk.add(v, self.scaled[c, i])
                yield pk.add(block, v)


def weight_divisor(code: CodeLike) -> int:
    """A number dividing every codeword weight, read off the generator.

    Binary codes with even rows are even, and doubly even if also
    self-orthogonal with doubly even rows; self-orthogonal ternary codes have
    weights divisible by 3; Hermitian self-orthogonal GF(4) codes are even.
    """
    g = _generator(code)
    q, a = g.spec.q, g.array
    rows = np.count_nonzero(a, axis=1)
    if q == 2:
        if (rows % 2).any():
            return 1
        return 4 if not (rows % 4).any() and _gram_zero(a, g.spec, False) else 2
    if q == 3:
        return 3 if _gram_zero(a, g.spec, False) else 1
    if q == 4:
        return 2 if _gram_zero(a, g.spec, True) else 1
    return 1


class _Search:
    def __init__(self, g: Matrix, symmetry: list[int] | None, count: bool, divisor: int = 1):
        self.g = g
        self.divisor = divisor
        self.spec = g.spec
        self.k, self.ncols = g.shape
        self.pk = _Packer(g.spec, self.ncols)
        self.count = count
        self.symmetry = symmetry
        self.best = self.ncols + 1
        self.hits: set[bytes] = set()
        self.sets: list[tuple[_InfoSet, list[tuple[_Enumerator, bool, np.ndarray | None]]]] = []
        k = self.k
        for reduced, piv in _information_sets(g, min_rank=(k + 1) // 2):
            info = _InfoSet(piv, len(piv), k - len(piv), self.pk.scaled(reduced))
            if symmetry is not None and info.rank == k:
                info.cycle_rows = _cycle_rows(piv, symmetry)
            self.sets.append((info, self._plans(info)))

    def _plans(self, info: _InfoSet):
        """(enumerator, normalize, offset row) pieces covering one level of a set."""
        if info.cycle_rows is None:
            return [(_Enumerator(self.pk, info.scaled), True, None)]
        rep = info.cycle_rows[0]
        others = [i for i in range(self.k) if i != rep]
        off_cycle = [i for i in range(self.k) if i not in set(info.cycle_rows)]
        plans = [(_Enumerator(self.pk, info.scaled[:, others]), False, info.scaled[0, rep])]
        if off_cycle:
            plans.append((_Enumerator(self.pk, info.scaled[:, off_cycle]), True, None))
        return plans

    def _orbit(self, word: np.ndarray) -> list[np.ndarray]:
        if self.symmetry is None:
            return [word]
        perm = np.asarray(self.symmetry)
        out, cur = [word], word
        while True:
            nxt = np.empty_like(cur)
            nxt[perm] = cur
            if np.array_equal(nxt, word):
                return out
            out.append(nxt)
            cur = nxt

    def _absorb(self, chunk: np.ndarray) -> None:
        wts = self.pk.weights(chunk)
        low = int(wts.min())
        if low < self.best:
            self.best = low
            self.hits.clear()
        if self.count and low == self.best:
            for word in self.pk.unpack(chunk[wts == low]):
                for img in self._orbit(word):
                    self.hits.add(_normalize(self.spec, img))

    def _bound(self, w: int, done_upto: int) -> int:
        """Lower bound once level ``w`` is finished on sets ``0..done_upto``."""
        lb = 0
        for j, (info, _) in enumerate(self.sets):
            lev = w if j <= done_upto else w - 1
            lb += max(0, lev + 1 - info.deficit)
        m = self.divisor
        return -(-lb // m) * m

    def run(self, target_cap: int | None, upper_stop: int | None = None) -> DistanceResult:
        k = self.k
        lb = 0
        for w in range(1, k + 1):
            for j, (info, plans) in enumerate(self.sets):
                for enum, normalize, offset in plans:
                    for chunk in enum.sums(w - (0 if normalize else 1), normalize, offset):
                        self._absorb(chunk)
                        if upper_stop is not None and self.best <= upper_stop:
                            return self._result(lb)
                lb = self._bound(w, j)
                if w == k and j == 0:
                    lb = self.best  # set 0 has full rank: everything enumerated
                if self.count and (lb > self.best or (w == k and j == 0)):
                    return self._result(lb, counted=True)
                if not self.count and lb >= self.best:
                    return self._result(lb)
                if target_cap is not None and lb >= target_cap:
                    return self._result(lb)
        return self._result(max(lb, self.best), counted=self.count)

    def _result(self, lb: int, counted: bool = False) -> DistanceResult:
        exact = lb >= self.best
        a_d = len(self.hits) * (self.spec.q - 1) if counted else None
        return DistanceResult(self.best, a_d, exact, min(lb, self.best))


def min_distance_accelerated(code: CodeLike, target_cap: int | None = None, count: bool = True,
                             use_symmetry: bool = True, upper_stop: int | None = None) -> DistanceResult:
    """Exact minimum distance by information-set enumeration.

    With ``count`` the enumeration continues until every minimum weight word
    is certain to have been seen, so ``a_d`` is exact; without it the search
    stops as soon as the distance is determined and ``a_d`` is ``None``.
    ``target_cap`` stops early once the distance is known to be at least
    that value (``exact`` is then False unless the bound met a codeword).
    ``upper_stop`` abandons the search as soon as a nonzero codeword of
    weight at most ``upper_stop`` turns up; ``distance`` is then only an
    upper bound and ``exact`` is False.
    For DDC codes the simultaneous cyclic shift of both circulant halves is
    used to enumerate one representative per orbit, and the bound is rounded
    up to the next multiple of :func:`weight_divisor`.
    """
    g = _generator(code)
    if g.rows == 0:
        raise DomainError("the zero code has no minimum distance")
    if len(_rref_array(g.array, g.spec)[1]) != g.rows:
        raise DomainError("generator must have full row rank")
    symmetry = code.cyclic_shift() if (use_symmetry and isinstance(code, DdcCode)) else None
    return _Search(g, symmetry, count, weight_divisor(g)).run(target_cap, upper_stop)


# -- duality --------------------------------------------------------------------

@dataclass(frozen=True)
class DualityClass:
    self_dual_euclidean: bool
    self_dual_hermitian: bool | None      # None outside GF(4)
    binary_type: str                      # "none" | "I" | "II"
    formally_self_dual: bool | None       # None: undecided within the budget
    fsd_method: str | None = None         # "weight-enumerator" | "self-dual" | "monomial-certificate"


def _gram_zero(g: np.ndarray, spec: FieldSpec, hermitian: bool) -> bool:
    right = spec.tables.conj[g] if hermitian else g
    return not matmul_array(g, right.T, spec).any()


def _half_swap_image(g: Matrix) -> Matrix:
    """Image of a pure double circulant code under (u, v) -> (-v P, u P), P: i -> -i mod n."""
    n = g.cols // 2
    rev = [(-i) % n for i in range(n)]
    neg = g.spec.tables.neg
    u, v = g.array[:, :n], g.array[:, n:]
    return Matrix(g.spec, np.hstack([neg[v[:, rev]], u[:, rev]]))


def classify(code: CodeLike, wd_budget: int = DEFAULT_BUDGET) -> DualityClass:
    g = _generator(code)
    spec = g.spec
    k, length = g.shape
    square = 2 * k == length
    sd_e = square and _gram_zero(g.array, spec, False)
    sd_h = (square and _gram_zero(g.array, spec, True)) if spec.q == 4 else None
    btype = "none"
    if spec.q == 2 and sd_e:
        btype = "II" if all(int(r.sum()) % 4 == 0 for r in g.array) else "I"
    fsd, how = None, None
    if not square:
        fsd, how = False, "dimension"
    elif sd_e or sd_h:
        fsd, how = True, "self-dual"
    elif spec.q ** k <= wd_budget:
        wd = weight_distribution(g, wd_budget)
        fsd, how = wd == macwilliams(wd, k), "weight-enumerator"
    elif isinstance(code, DdcCode) and code.kind == "pure":
        if row_space_equal(_half_swap_image(g), dual_basis(g)):
            fsd, how = True, "monomial-certificate"
    return DualityClass(sd_e, sd_h, btype, fsd, how)


# -- reports --------------------------------------------------------------------

@dataclass(frozen=True)
class CodeReport:
    length: int
    dimension: int
    distance: int
    a_d: int | None
    duality: DualityClass
    provenance: dict | None
    distance_method: str
    even: bool | None = None              # binary only: every weight even

    @property
    def parameters(self) -> tuple[int, int, int]:
        return (self.length, self.dimension, self.distance)

    def to_dict(self) -> dict:
        d = self.duality
        return {
            "length": self.length,
            "dim": self.dimension,
            "d": self.distance,
            "a_d": self.a_d,
            "self_dual": d.self_dual_euclidean,
            "hermitian_self_dual": d.self_dual_hermitian,
            "type": d.binary_type,
            "formally_self_dual": d.formally_self_dual,
            "even": self.even,
            "method": self.distance_method,
            "provenance": self.provenance,
        }


def analyze(code: CodeLike, budget: int = DEFAULT_BUDGET, wd_budget: int = DEFAULT_BUDGET,
            count: bool = True) -> CodeReport:
    """Distance, A_d and duality class of a code.

    Exhaustive enumeration is used while ``q^k <= budget``; beyond that the
    information-set search takes over.
    """
    g = _generator(code)
    if g.spec.q ** g.rows <= budget:
        d, a_d = min_distance_exhaustive(g, budget)
        method = "exhaustive"
    else:
        res = min_distance_accelerated(code, count=count)
        d, a_d = res.distance, res.a_d
        method = "accelerated"
    prov = code.to_dict() if isinstance(code, DdcCode) else None
    return CodeReport(g.cols, g.rows, d, a_d, classify(code, wd_budget), prov, method, is_even(g))


def is_even(code: CodeLike) -> bool | None:
    """Binary codes: True when every codeword has even weight. None otherwise."""
    g = _generator(code)
    if g.spec.q != 2:
        return None
    return bool(all(int(r.sum()) % 2 == 0 for r in g.array))
