"""``ddc`` command-line front end.

Exit status: 0 on success, 1 on usage or domain errors, 2 when ``diff``
finds a mismatching table cell.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .codeprops import DEFAULT_BUDGET, analyze, classify
from .ddc import BorderSpec, CirculantSpec, DdcCode, build_bordered, build_pure
from .errors import DdcError
from .gf import field
from .search import (COLUMNS, DESK_MAX_N, EXAMPLES, SearchConfig, compare_with_expected, load_rows,
                     rows_to_csv, scan)
from .splitting import cyclotomic_cosets, enumerate_coset_splittings, verify_splitting

log = logging.getLogger("duadic")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated integer list, got {text!r}") from None


def _emit(obj, as_json: bool, text: str, out: str | None = None) -> None:
    payload = json.dumps(obj, indent=2) + "\n" if as_json else text
    if out:
        Path(out).write_text(payload)
    else:
        sys.stdout.write(payload)


def _code_from_flags(a) -> DdcCode:
    field(a.q)
    if a.n is None or a.s1 is None:
        raise DdcError("--n and --s1 are required to build a code")
    sp = verify_splitting(a.n, a.s1, base=a.base)
    circ = CirculantSpec.make(a.q, sp, a.r, a.s, a.t)
    if a.kind == "pure":
        return build_pure(circ)
    return build_bordered(circ, BorderSpec.make(a.q, a.alpha, a.beta, a.gamma))


def cmd_cosets(a) -> int:
    part = cyclotomic_cosets(a.n, a.base)
    text = "\n".join(" ".join(map(str, c)) for c in part.cosets) + "\n"
    _emit({"n": part.n, "base": part.base, "cosets": [list(c) for c in part.cosets]}, a.json, text, a.out)
    return 0


def cmd_splittings(a) -> int:
    splits = enumerate_coset_splittings(a.n, a.base)
    text = "".join(f"S1={','.join(map(str, s.s1))} witnesses={','.join(map(str, s.witnesses))}\n"
                   for s in splits)
    _emit([s.to_dict() for s in splits], a.json, text, a.out)
    return 0


def cmd_build(a) -> int:
    code = _code_from_flags(a)
    _emit(code.to_dict(), a.json, code.generator.to_text(), a.out)
    return 0


def _report_text(d: dict) -> str:
    dist = "?" if d["d"] is None else d["d"]
    lines = [f"[{d['length']}, {d['dim']}, {dist}]"]
    for key in ("a_d", "self_dual", "hermitian_self_dual", "type", "formally_self_dual", "even", "method"):
        if d.get(key) is not None:
            lines.append(f"{key}: {d[key]}")
    return "\n".join(lines) + "\n"


def cmd_analyze(a) -> int:
    if a.input:
        src = sys.stdin.read() if a.input == "-" else Path(a.input).read_text()
        try:
            code = DdcCode.from_dict(json.loads(src))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise DdcError(f"cannot read code JSON: {exc}") from None
    else:
        code = _code_from_flags(a)
    rep = analyze(code, budget=a.budget, wd_budget=a.budget).to_dict()
    _emit(rep, a.json, _report_text(rep), a.out)
    return 0


def cmd_example(a) -> int:
    if a.seed_registry:
        reg = [ex.to_dict() for ex in EXAMPLES.values()]
        text = "".join(f"{e['id']}: q={e['q']} n={e['n']} base={e['base']} {e['kind']} "
                       f"rst={e['rst']} abg={e['abg']} deep={e['deep']}\n" for e in reg)
        _emit(reg, a.json, text, a.out)
        return 0
    if not a.id:
        raise DdcError("example needs --id or --seed-registry")
    if a.id not in EXAMPLES:
        raise DdcError(f"unknown example id {a.id!r}; known: {', '.join(EXAMPLES)}")
    ex = EXAMPLES[a.id]
    code = ex.build()
    if ex.deep and not a.deep:
        dual = classify(code, wd_budget=a.budget)
        rep = {"length": code.length, "dim": code.dimension, "d": None, "a_d": None,
               "self_dual": dual.self_dual_euclidean, "hermitian_self_dual": dual.self_dual_hermitian,
               "type": dual.binary_type, "formally_self_dual": dual.formally_self_dual,
               "method": "skipped (pass --deep for distance)", "provenance": code.to_dict()}
        log.warning("%s: distance skipped; pass --deep to compute it", a.id)
    else:
        rep = analyze(code, budget=a.budget, wd_budget=a.budget).to_dict()
    rep["id"] = ex.id
    rep["claim"] = ex.claim
    _emit(rep, a.json, f"{ex.id}\n" + _report_text(rep), a.out)
    return 0


def cmd_table(a) -> int:
    field(a.q)
    if not a.deep and a.max_n > DESK_MAX_N[a.q]:
        raise DdcError(f"--max-n {a.max_n} exceeds desk scale ({DESK_MAX_N[a.q]}) for q={a.q}; pass --deep")
    kinds = ("pure", "bordered") if a.kind is None else (a.kind,)
    cfg = SearchConfig(q=a.q, n_range=range(a.min_n | 1, a.max_n + 1, 2), base=a.base, kinds=kinds,
                       distance_budget=a.budget, wd_budget=a.budget, workers=a.workers)
    rows = scan(cfg)
    if a.json:
        _emit({"q": a.q, "base": a.base, "columns": list(COLUMNS[a.q]),
               "rows": [r.to_dict() for r in rows]}, True, "", a.out)
    else:
        _emit(None, False, rows_to_csv(rows, a.q), a.out)
    return 0


def cmd_diff(a) -> int:
    _, actual = load_rows(a.actual)
    cols, expected = load_rows(a.expected)
    if a.max_n is not None:
        expected = [r for r in expected if r.n <= a.max_n]
    report = compare_with_expected(actual, expected, cols)
    print(report.summary())
    return 0 if report.ok else 2


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ddc", description="Duadic double circulant codes: construction, analysis, tables.")
    p.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def common(sp, *, n=True, base=True):
        if n:
            sp.add_argument("--n", type=int, required=True)
        if base:
            sp.add_argument("--base", type=int, default=4)
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true")
        fmt.add_argument("--csv", action="store_true")
        sp.add_argument("--out")

    def code_flags(sp, required):
        sp.add_argument("--n", type=int, required=required)
        sp.add_argument("--base", type=int, default=None)
        sp.add_argument("--q", type=int, default=2)
        sp.add_argument("--kind", choices=("pure", "bordered"), default="pure")
        sp.add_argument("--s1", type=_int_list)
        for name in ("r", "s", "t", "alpha", "beta", "gamma"):
            sp.add_argument(f"--{name}", default="0", help="field symbol (0, 1, w, w2 over GF(4))")
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true")
        fmt.add_argument("--csv", action="store_true")
        sp.add_argument("--out")

    sp = sub.add_parser("cosets", help="b-cyclotomic cosets mod n")
    common(sp)
    sp.set_defaults(func=cmd_cosets)

    sp = sub.add_parser("splittings", help="canonical coset splittings of n")
    common(sp)
    sp.set_defaults(func=cmd_splittings)

    sp = sub.add_parser("build", help="generator matrix of a pure or bordered code")
    code_flags(sp, True)
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("analyze", help="distance, A_d and duality class")
    sp.add_argument("input", nargs="?", help="code JSON from 'build --json' ('-' for stdin)")
    code_flags(sp, False)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("example", help="reproduce a worked example")
    sp.add_argument("--id")
    sp.add_argument("--seed-registry", action="store_true", help="list the built-in examples")
    sp.add_argument("--deep", action="store_true", help="compute distances of the large examples")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common(sp, n=False, base=False)
    sp.set_defaults(func=cmd_example)

    sp = sub.add_parser("table", help="scan all coset splittings and parameters")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--base", type=int, default=4)
    sp.add_argument("--min-n", type=int, default=3)
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--kind", choices=("pure", "bordered"))
    sp.add_argument("--deep", action="store_true", help="allow n beyond desk scale")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--workers", type=int, default=1)
    common(sp, n=False, base=False)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("diff", help="compare a table CSV against a golden CSV")
    sp.add_argument("actual")
    sp.add_argument("expected")
    sp.add_argument("--max-n", type=int, help="ignore golden rows above this n")
    sp.set_defaults(func=cmd_diff)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (DdcError, ValueError, OSError) as exc:
        print(f"ddc: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
