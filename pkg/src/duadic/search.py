"""Table reproduction: scan every coset splitting and parameter tuple.

For each odd ``n`` the scan builds all pure codes ``P_n(r,s,t)`` and all
bordered codes ``B_n(alpha,beta,gamma,r,s,t)`` over every canonical coset
splitting, classifies each code and keeps, per table row ``(n, length)`` and
per duality column, the largest minimum distance together with the first
code (in lexicographic parameter order) attaining it.

Three shortcuts keep this cheap without changing any reported value:

* duality is decided from the circulant's Gram row in closed form, for all
  border tuples at once (``tests/test_search.py`` checks it against
  :func:`duadic.codeprops.classify`);
* distances are cached per orbit of parameter tuples under column scalings,
  the (s, t) swap and, over GF(4), Frobenius; codes in one orbit are
  monomially (or semilinearly) equivalent and share a weight distribution;
* a distance search is abandoned once it finds a word no heavier than the
  best distance already recorded in every column the code belongs to.
"""

from __future__ import annotations

import csv
import io
import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from importlib import resources
from math import gcd
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .codeprops import DEFAULT_BUDGET, CodeReport, analyze, min_distance_accelerated, min_distance_exhaustive
from .ddc import BorderSpec, CirculantSpec, DdcCode, build_bordered, build_pure, circulant_matrix, circulant_row
from .errors import DdcError, DomainError, GoldenFormatError
from .gf import FieldSpec, field
from .linalg import matmul_array
from .splitting import Splitting, enumerate_coset_splittings, verify_splitting

log = logging.getLogger(__name__)

COLUMNS = {
    2: ("SD(I)", "SD(II)", "NSD"),
    3: ("SD", "NSD"),
    4: ("SD(E)", "SD(H)", "NSD"),
    5: ("SD", "NSD"),
    7: ("SD", "NSD"),
}

# Largest n scanned without --deep; beyond this the distance work grows steeply.
DESK_MAX_N = {2: 27, 3: 13, 4: 11, 5: 11, 7: 7}


@dataclass(frozen=True)
class SearchConfig:
    q: int
    n_range: Sequence[int]
    base: int = 4
    kinds: tuple[str, ...] = ("pure", "bordered")
    distance_budget: int = DEFAULT_BUDGET
    wd_budget: int = DEFAULT_BUDGET
    dedup: bool = True
    workers: int = 1

    def __post_init__(self):
        field(self.q)
        bad = [k for k in self.kinds if k not in ("pure", "bordered")]
        if bad:
            raise DomainError(f"unknown code kind(s) {bad}")
        if any(n < 3 or n % 2 == 0 for n in self.n_range):
            raise DomainError("n values must be odd and at least 3")


@dataclass
class TableRow:
    n: int
    code_length: int
    best: dict[str, int | None]
    witnesses: dict[str, dict] = dc_field(default_factory=dict)
    failures: list[str] = dc_field(default_factory=list)

    @property
    def key(self) -> tuple[int, int]:
        return (self.n, self.code_length)

    def to_dict(self) -> dict:
        return {"n": self.n, "cl": self.code_length, "best": dict(self.best),
                "witnesses": dict(self.witnesses), "failures": list(self.failures)}


def column_labels(q: int, sd_e: bool, sd_h: bool | None, btype: str) -> list[str]:
    """Table columns a code with the given duality class belongs to."""
    if q == 2:
        if sd_e:
            return ["SD(II)" if btype == "II" else "SD(I)"]
        return ["NSD"]
    if q == 4:
        cols = (["SD(E)"] if sd_e else []) + (["SD(H)"] if sd_h else [])
        return cols or ["NSD"]
    return ["SD"] if sd_e else ["NSD"]


# -- closed-form duality over a whole border grid ------------------------------

def _scalar(f: FieldSpec, n: int) -> int:
    """Image of the integer ``n`` in the field (as an element code)."""
    return n % f.characteristic


def _gram_row(d: np.ndarray, f: FieldSpec, hermitian: bool) -> np.ndarray:
    right = f.tables.conj[d] if hermitian else d
    return matmul_array(d[:1], right.T, f)[0]


def pure_duality(circ: CirculantSpec) -> tuple[bool, bool | None, str]:
    """(Euclidean SD, Hermitian SD or None, binary type) of ``P_n(r,s,t)``."""
    f = circ.spec
    t = f.tables
    row = circulant_row(circ).array
    d = circulant_matrix(circulant_row(circ)).array
    minus_one = int(t.neg[1])

    def sd(herm: bool) -> bool:
        e = _gram_row(d, f, herm)
        return e[0] == minus_one and not e[1:].any()

    sd_e = sd(False)
    sd_h = sd(True) if f.q == 4 else None
    btype = "none"
    if f.q == 2 and sd_e:
        btype = "II" if (1 + int(np.count_nonzero(row))) % 4 == 0 else "I"
    return sd_e, sd_h, btype


def bordered_duality_grid(circ: CirculantSpec):
    """Duality flags of ``B_n(alpha,beta,gamma,r,s,t)`` for every border tuple.

    Returns three arrays indexed ``[alpha, beta, gamma]``: Euclidean SD,
    Hermitian SD (all False outside GF(4)) and binary Type II.
    """
    f = circ.spec
    q, t = f.q, f.tables
    n = circ.n
    row = circulant_row(circ).array
    d = circulant_matrix(circulant_row(circ)).array
    sigma = 0
    for x in row:
        sigma = int(t.add[sigma, x])
    nn = _scalar(f, n)
    a, b, g = np.meshgrid(np.arange(q), np.arange(q), np.arange(q), indexing="ij")
    a, b, g = (x.astype(np.uint8) for x in (a, b, g))
    add, mul = t.add, t.mul

    def flags(herm: bool) -> np.ndarray:
        cj = t.conj if herm else np.arange(q, dtype=np.uint8)
        e = _gram_row(d, f, herm)
        off = e[1:]
        if off.size and not (off == off[0]).all():
            return np.zeros((q, q, q), dtype=bool)
        v_off = int(off[0]) if off.size else 0
        gg = mul[g, cj[g]]
        c0 = add[add[1, mul[a, cj[a]]], mul[nn, mul[b, cj[b]]]]
        c1 = add[mul[a, cj[g]], mul[b, cj[sigma]]]
        c_diag = add[add[int(e[0]), 1], gg]
        c_off = add[v_off, gg]
        return (c0 == 0) & (c1 == 0) & (c_diag == 0) & (c_off == 0)

    sd_e = flags(False)
    sd_h = flags(True) if q == 4 else np.zeros_like(sd_e)
    type2 = np.zeros_like(sd_e)
    if q == 2:
        w_row = 1 + int(np.count_nonzero(row))
        w0 = 1 + a.astype(int) + n * b.astype(int)
        wi = w_row + g.astype(int)
        type2 = sd_e & (w0 % 4 == 0) & (wi % 4 == 0)
    return sd_e, sd_h, type2


# -- weight-equivalence orbits of parameter tuples -----------------------------

@lru_cache(maxsize=None)
def _orbit_representatives(q: int, kind: str) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Map each parameter tuple to the least tuple of its equivalence orbit.

    Pure tuples are (r, s, t); bordered ones (alpha, beta, gamma, r, s, t).
    Every generator below rescales columns or rows (or swaps S1 and S2, or
    applies Frobenius over GF(4)), so it preserves the weight distribution.
    """
    f = field(q)
    mul, conj = f.tables.mul, f.tables.conj
    size = 3 if kind == "pure" else 6
    tuples = np.array(list(itertools.product(range(q), repeat=size)), dtype=np.int64)
    weights = q ** np.arange(size - 1, -1, -1)

    def scale(c, positions):
        out = tuples.copy()
        out[:, positions] = mul[c][tuples[:, positions]]
        return out

    images = []
    for c in range(1, q):
        if kind == "pure":
            images.append(scale(c, [0, 1, 2]))
        else:
            images.append(scale(c, [1, 3, 4, 5]))   # last n columns
            images.append(scale(c, [0, 2]))         # the alpha/gamma column
            images.append(scale(c, [0, 1]))         # border row, then its first column back
            images.append(scale(c, [2, 3, 4, 5]))   # lower rows, then the identity block back
    swap = tuples.copy()
    swap[:, [size - 2, size - 1]] = tuples[:, [size - 1, size - 2]]
    images.append(swap)
    if q == 4:
        images.append(conj[tuples].astype(np.int64))
    perms = [img @ weights for img in images]

    # the generators form a finite group, so pulling minima along them converges to the orbit minimum
    label = np.arange(len(tuples))
    while True:
        new = label
        for perm in perms:
            new = np.minimum(new, new[perm])
        if np.array_equal(new, label):
            break
        label = new
    keys = [tuple(int(x) for x in row) for row in tuples]
    return {key: keys[int(i)] for key, i in zip(keys, label)}


# -- the scan ------------------------------------------------------------------

def _distance(code: DdcCode, budget: int, upper_stop: int | None) -> tuple[int, bool]:
    """(distance, exact). Inexact results are upper bounds at most ``upper_stop``."""
    if code.q ** code.dimension <= budget:
        return min_distance_exhaustive(code, budget)[0], True
    res = min_distance_accelerated(code, count=False, upper_stop=upper_stop)
    return res.distance, res.exact


def _provenance(kind: str, q: int, sp: Splitting, rst, abg=None) -> dict:
    f = field(q)
    from .gf import symbol
    out = {"kind": kind, "q": q, "n": sp.n, "base": sp.base, "s1": list(sp.s1),
           "r": symbol(f, rst[0]), "s": symbol(f, rst[1]), "t": symbol(f, rst[2]),
           "alpha": None, "beta": None, "gamma": None}
    if abg is not None:
        out.update(alpha=symbol(f, abg[0]), beta=symbol(f, abg[1]), gamma=symbol(f, abg[2]))
    return out


def code_from_provenance(prov: dict) -> DdcCode:
    """Rebuild the witness code recorded in a :class:`TableRow`."""
    q = prov["q"]
    sp = verify_splitting(prov["n"], prov["s1"], base=prov.get("base"))
    circ = CirculantSpec.make(q, sp, prov["r"], prov["s"], prov["t"])
    if prov["kind"] == "pure":
        return build_pure(circ)
    return build_bordered(circ, BorderSpec.make(q, prov["alpha"], prov["beta"], prov["gamma"]))


def scan_splitting(q: int, sp: Splitting, kinds: tuple[str, ...], budget: int, dedup: bool):
    """Best distance per (kind, column) for one splitting, with witnesses and failures.

    Keys of the returned mapping are ``(kind, column)``; values are
    ``(distance, provenance)``. Works for any splitting, coset-based or not.
    """
    f = field(q)
    best: dict[tuple[str, str], tuple[int, dict]] = {}
    failures: list[str] = []

    def offer(kind, col, d, prov):
        cur = best.get((kind, col))
        if cur is None or d > cur[0]:
            best[(kind, col)] = (d, prov)

    # orbit representative -> (distance, exact); inexact entries are upper bounds
    cache: dict[tuple, tuple[int, bool]] = {}

    def distance(kind, rep, cols, build):
        # a code can only matter if it beats the current best of one of its columns,
        # so the search may stop at the first word no heavier than the weakest of those
        bests = [best[(kind, c)][0] if (kind, c) in best else None for c in cols]
        stop = None if None in bests else min(bests)
        hit = cache.get((kind, rep))
        if hit and (hit[1] or (stop is not None and hit[0] <= stop)):
            return hit[0]
        cache[(kind, rep)] = _distance(build(), budget, stop)
        return cache[(kind, rep)][0]

    for rst in itertools.product(range(q), repeat=3):
        if dedup and rst[1] > rst[2]:
            continue
        circ = CirculantSpec.make(q, sp, *rst)
        if "pure" in kinds:
            try:
                rep = _orbit_representatives(q, "pure")[rst]
                sd_e, sd_h, btype = pure_duality(circ)
                cols = column_labels(q, sd_e, sd_h, btype)
                d = distance("pure", rep, cols, lambda: build_pure(CirculantSpec.make(q, sp, *rep)))
                for col in cols:
                    offer("pure", col, d, _provenance("pure", q, sp, rst))
            except DdcError as exc:
                failures.append(f"P_{sp.n}{rst}: {exc}")
        if "bordered" in kinds:
            sd_e, sd_h, type2 = bordered_duality_grid(circ)
            reps = _orbit_representatives(q, "bordered")
            for abg in itertools.product(range(q), repeat=3):
                try:
                    rep = reps[abg + rst]
                    e, h = bool(sd_e[abg]), (bool(sd_h[abg]) if q == 4 else None)
                    btype = ("II" if type2[abg] else "I") if (q == 2 and e) else "none"
                    cols = column_labels(q, e, h, btype)
                    d = distance("bordered", rep, cols, lambda: build_bordered(
                        CirculantSpec.make(q, sp, *rep[3:]), BorderSpec.make(q, *rep[:3])))
                    for col in cols:
                        offer("bordered", col, d, _provenance("bordered", q, sp, rst, abg))
                except DdcError as exc:
                    failures.append(f"B_{sp.n}{abg + rst}: {exc}")
    return best, failures


def _scan_task(args):
    q, sp, kinds, budget, dedup = args
    return scan_splitting(q, sp, kinds, budget, dedup)


def scan(config: SearchConfig) -> list[TableRow]:
    """Reproduce table rows for the configured field, base and n values."""
    q = config.q
    tasks = []
    for n in sorted(set(config.n_range)):
        if gcd(config.base, n) != 1:
            log.warning("skipping n=%d: gcd(base=%d, n) != 1", n, config.base)
            continue
        splits = enumerate_coset_splittings(n, config.base)
        if not splits:
            log.info("n=%d has no %d-cyclotomic coset splitting", n, config.base)
            continue
        for sp in splits:
            tasks.append((q, sp, tuple(config.kinds), config.distance_budget, config.dedup))
    if config.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_scan_task, tasks))
    else:
        results = []
        for task in tasks:
            log.info("scanning n=%d s1=%s", task[1].n, task[1].s1)
            results.append(_scan_task(task))

    rows: dict[tuple[int, int], TableRow] = {}
    cols = COLUMNS[q]
    for (_, sp, kinds, _, _), (best, failures) in zip(tasks, results):
        for kind in kinds:
            cl = 2 * sp.n + (2 if kind == "bordered" else 0)
            row = rows.setdefault((sp.n, cl), TableRow(sp.n, cl, {c: None for c in cols}))
            row.failures.extend(x for x in failures if x.startswith("P" if kind == "pure" else "B"))
            for col in cols:
                hit = best.get((kind, col))
                # tasks arrive in ascending s1, so strict > keeps the lexicographically first witness
                if hit and (row.best[col] is None or hit[0] > row.best[col]):
                    row.best[col] = hit[0]
                    row.witnesses[col] = hit[1]
    return [rows[k] for k in sorted(rows)]


# -- CSV I/O and golden comparison ----------------------------------------------

def rows_to_csv(rows: Iterable[TableRow], q: int) -> str:
    cols = COLUMNS[q]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "cl", *cols])
    for r in rows:
        w.writerow([r.n, r.code_length, *("" if r.best.get(c) is None else r.best[c] for c in cols)])
    return buf.getvalue()


def rows_from_csv(text: str) -> tuple[tuple[str, ...], list[TableRow]]:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise GoldenFormatError("empty table file") from None
    header = [h.strip() for h in header]
    if header[:2] != ["n", "cl"] or len(header) < 3:
        raise GoldenFormatError(f"table header must start with n,cl: {header}")
    cols = tuple(header[2:])
    rows = []
    for lineno, rec in enumerate(reader, start=2):
        if not rec or all(not x.strip() for x in rec):
            continue
        if len(rec) != len(header):
            raise GoldenFormatError(f"line {lineno}: expected {len(header)} fields, got {len(rec)}")
        try:
            n, cl = int(rec[0]), int(rec[1])
            best = {c: (int(v) if v.strip() else None) for c, v in zip(cols, rec[2:])}
        except ValueError:
            raise GoldenFormatError(f"line {lineno}: non-integer cell in {rec}") from None
        rows.append(TableRow(n, cl, best))
    return cols, rows


GOLDEN_FILES = {2: "t1.csv", 3: "t2.csv", 4: "t3.csv", 5: "t4.csv", 7: "t5.csv"}


def golden_table(q: int) -> str:
    """Transcribed duality columns of the published table for GF(q)."""
    if q not in GOLDEN_FILES:
        raise DomainError(f"no golden table for q={q}")
    return resources.files("duadic").joinpath("golden").joinpath(GOLDEN_FILES[q]).read_text()


@dataclass(frozen=True)
class DiffCell:
    n: int
    cl: int
    column: str
    expected: int | None
    actual: int | None
    status: str   # "equal" | "mismatch" | "absent"


@dataclass
class DiffReport:
    cells: list[DiffCell]

    @property
    def mismatches(self) -> list[DiffCell]:
        return [c for c in self.cells if c.status == "mismatch"]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        counts = {s: sum(c.status == s for c in self.cells) for s in ("equal", "mismatch", "absent")}
        lines = [f"{counts['equal']} equal, {counts['mismatch']} mismatch, {counts['absent']} absent"]
        for c in self.mismatches:
            lines.append(f"MISMATCH n={c.n} cl={c.cl} {c.column}: expected {c.expected}, got {c.actual}")
        return "\n".join(lines)


def compare_with_expected(rows: Sequence[TableRow], expected: Sequence[TableRow],
                          columns: Sequence[str] | None = None) -> DiffReport:
    """Cell-by-cell comparison. Rows missing from ``rows`` are reported absent."""
    have = {r.key: r for r in rows}
    cells = []
    for exp in expected:
        cols = columns or list(exp.best)
        got = have.get(exp.key)
        for col in cols:
            e = exp.best.get(col)
            if got is None:
                cells.append(DiffCell(exp.n, exp.code_length, col, e, None, "absent"))
                continue
            a = got.best.get(col)
            cells.append(DiffCell(exp.n, exp.code_length, col, e, a, "equal" if a == e else "mismatch"))
    return DiffReport(cells)


# -- worked examples -------------------------------------------------------------

@dataclass(frozen=True)
class Example:
    id: str
    q: int
    n: int
    base: int
    s1: tuple[int, ...]
    kind: str
    rst: tuple[int, int, int]
    abg: tuple[int, int, int] | None
    claim: dict
    deep: bool

    def build(self) -> DdcCode:
        sp = verify_splitting(self.n, self.s1, base=self.base)
        circ = CirculantSpec.make(self.q, sp, *self.rst)
        if self.kind == "pure":
            return build_pure(circ)
        return build_bordered(circ, BorderSpec.make(self.q, *self.abg))

    def to_dict(self) -> dict:
        return {"id": self.id, "q": self.q, "n": self.n, "base": self.base, "s1": list(self.s1),
                "kind": self.kind, "rst": list(self.rst),
                "abg": None if self.abg is None else list(self.abg), "claim": self.claim, "deep": self.deep}


_S15 = (1, 4, 3, 12, 7, 13, 5)
_S17 = (1, 4, 16, 13, 3, 12, 14, 5)
_S33 = (1, 4, 16, 31, 25, 3, 12, 15, 27, 9, 7, 28, 13, 19, 10, 11)
_S41 = (1, 4, 16, 23, 10, 40, 37, 25, 18, 31, 3, 12, 7, 28, 30, 38, 29, 34, 13, 11)
_S43 = (1, 4, 16, 21, 41, 35, 11, 3, 12, 5, 20, 37, 19, 33, 7, 28, 26, 18, 29, 30, 34)
_S37 = (1, 9, 7, 26, 12, 34, 10, 16, 33, 2, 18, 14, 15, 24, 31, 20, 32, 29)

EXAMPLES: dict[str, Example] = {e.id: e for e in [
    Example("ex4.1i-pure", 2, 15, 4, _S15, "pure", (0, 0, 1), None,
            {"length": 30, "dim": 15, "d": 8, "formally_self_dual": True}, False),
    Example("ex4.1i-bordered", 2, 15, 4, _S15, "bordered", (0, 0, 1), (0, 1, 0),
            {"length": 32, "dim": 16, "d": 8, "formally_self_dual": False}, False),
    Example("ex4.1ii-pure", 2, 17, 4, _S17, "pure", (1, 0, 1), None,
            {"length": 34, "dim": 17, "d": 8, "formally_self_dual": True}, False),
    Example("ex4.1ii-bordered", 2, 17, 4, _S17, "bordered", (1, 0, 1), (0, 1, 0),
            {"length": 36, "dim": 18, "d": 8, "formally_self_dual": False}, False),
    Example("ex4.1iii-pure", 2, 33, 4, _S33, "pure", (1, 0, 1), None,
            {"length": 66, "dim": 33, "d": 12, "type": "I", "a_d": 858}, True),
    Example("ex4.1iii-bordered", 2, 33, 4, _S33, "bordered", (0, 0, 1), (0, 1, 1),
            {"length": 68, "dim": 34, "d": 12, "type": "I", "a_d": 858}, True),
    Example("ex4.1iii-pure-001", 2, 33, 4, _S33, "pure", (0, 0, 1), None,
            {"length": 66, "dim": 33, "d": 12, "formally_self_dual": True, "odd": True}, True),
    Example("ex4.1iv-pure", 2, 41, 4, _S41, "pure", (1, 0, 1), None,
            {"length": 82, "dim": 41, "d": 14, "formally_self_dual": True, "even": True}, True),
    Example("ex4.2-pure", 2, 43, 4, _S43, "pure", (0, 1, 0), None,
            {"length": 86, "dim": 43, "d": 16, "type": "I"}, True),
    Example("ex4.2-bordered", 2, 43, 4, _S43, "bordered", (1, 1, 0), (0, 1, 1),
            {"length": 88, "dim": 44, "d": 16, "type": "II"}, True),
    Example("ex4.3", 3, 37, 9, _S37, "bordered", (2, 0, 2), (1, 1, 1),
            {"length": 76, "dim": 38, "d": 18, "self_dual": True, "a_d": 79032}, True),
]}


def reproduce_example(example_id: str, budget: int = DEFAULT_BUDGET,
                      wd_budget: int = DEFAULT_BUDGET) -> CodeReport:
    try:
        ex = EXAMPLES[example_id]
    except KeyError:
        raise DomainError(f"unknown example id {example_id!r}; known: {', '.join(EXAMPLES)}") from None
    return analyze(ex.build(), budget=budget, wd_budget=wd_budget)


def load_rows(path: str | Path) -> tuple[tuple[str, ...], list[TableRow]]:
    return rows_from_csv(Path(path).read_text())
