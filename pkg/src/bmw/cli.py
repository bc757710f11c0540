"""Command-line front end: ``bmw <subcommand> [flags]``.

Exit codes: 0 success, 1 usage error, 2 computation error, 3 verification
mismatch.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import prod

from . import combinatorics as cb
from . import gram
from .cache import DetCache
from .factored import FactoredValue
from .semisimplicity import FieldSpec, Generic, Numeric, PowerOfQ, decide_semisimple

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


# ---------------------------------------------------------------------------
# argument helpers


def _parse_r(text: str):
    t = text.strip()
    if t == "generic":
        return Generic()
    if t.startswith("numeric:"):
        q0, r0 = t[len("numeric:"):].split(",")
        return Numeric(Fraction(q0), Fraction(r0))
    sign = 1
    if t[0] in "+-":
        sign = -1 if t[0] == "-" else 1
        t = t[1:]
    if t == "q":
        return PowerOfQ(sign, 1)
    if t.startswith("q^"):
        return PowerOfQ(sign, int(t[2:]))
    raise UsageError(f"cannot parse r specification {text!r}")


def _parse_qorder(text):
    if text is None or text in ("inf", "infinity", "oo"):
        return None
    return int(text)


def _cell(args):
    if args.n is None:
        raise UsageError("--n is required")
    f = args.f
    try:
        lam = cb.parse_partition(args.lam) if args.lam is not None else None
    except ValueError as e:
        raise UsageError(str(e)) from None
    if f is None and lam is None:
        raise UsageError("give --f and/or --lambda")
    if f is None:
        if (args.n - sum(lam)) % 2:
            raise UsageError("n - |lambda| must be even")
        f = (args.n - sum(lam)) // 2
    if lam is None:
        if args.n != 2 * f:
            raise UsageError("--lambda may only be omitted when n = 2f")
        lam = ()
    if f < 0 or sum(lam) + 2 * f != args.n:
        raise UsageError(f"({f}, {cb.format_partition(lam)}) is not a cell label for n={args.n}")
    return args.n, f, lam


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------------------
# determinant helpers


def _det_record(n, f, lam, value: FactoredValue, factored: bool) -> dict:
    rec = gram.GramDeterminant(n, f, lam, cb.cell_dim(n, f, lam), value).to_json()
    if not factored:
        rec["value"] = str(value.expand())
    return rec


def _det_text(n, f, lam, value: FactoredValue, factored: bool) -> str:
    body = value.render() if factored else str(value.expand())
    return f"det G[n={n}, f={f}, lambda=({cb.format_partition(lam)})] = {body}"


def _compute(n, f, lam, store):
    return gram.gram_det_recursive(n, f, lam, store).value


def _worker(cell):
    n, f, lam = cell
    return cell, gram.gram_det_recursive(n, f, lam).value.to_json()


def _compute_many(cells, args):
    """Values for several cells, honouring --jobs and the cache flags."""
    store = None if args.no_cache else DetCache()
    out = {}
    todo = []
    for c in cells:
        hit = store.get(c) if store is not None and not args.verify_cache else None
        if hit is not None:
            out[c] = hit
        else:
            todo.append(c)
    if args.jobs and args.jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            for c, rec in ex.map(_worker, todo):
                out[c] = FactoredValue.from_json(rec)
    else:
        for c in todo:
            out[c] = _compute(*c, None if args.verify_cache else store)
    if store is not None:
        for c in todo:
            store[c] = out[c]
        store.flush()
    return out


def _verify(cells, args):
    """Compare cached (or recursive) values with the direct route."""
    store = None if args.no_cache else DetCache()
    mismatches = []
    for c in cells:
        ref = gram.gram_det_direct(*c).value
        cached = store.get(c) if store is not None else None
        if cached is not None and cached != ref:
            mismatches.append({"cell": _cell_json(c), "source": "cache"})
        if gram.gram_det_recursive(*c).value != ref:
            mismatches.append({"cell": _cell_json(c), "source": "recursion"})
    return mismatches


def _cell_json(c):
    n, f, lam = c
    return {"n": n, "f": f, "lambda": cb.format_partition(lam)}


# ---------------------------------------------------------------------------
# subcommands


def cmd_dims(args):
    if args.n is None or args.n < 1:
        raise UsageError("--n must be a positive integer")
    rows = [{"f": f, "lambda": cb.format_partition(lam), "dim": cb.cell_dim(args.n, f, lam)}
            for f, lam in cb.cell_labels(args.n)]
    total = sum(r["dim"] ** 2 for r in rows)
    rank = prod(range(2 * args.n - 1, 0, -2))
    payload = {"n": args.n, "cells": rows, "sum_dim_squared": total, "rank": rank}
    lines = [f"{r['f']}  ({r['lambda']})  dim {r['dim']}" for r in rows]
    lines.append(f"sum of dim^2 = {total} (rank {rank})")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if total == rank else EXIT_MISMATCH


def _gram_cells(args, cells):
    if args.verify_cache:
        bad = _verify(cells, args)
        if bad:
            _emit(args, {"mismatches": bad}, "\n".join(f"mismatch: {b}" for b in bad))
            return EXIT_MISMATCH
    vals = _compute_many(cells, args)
    recs = [_det_record(*c, vals[c], args.factored) for c in cells]
    text = "\n".join(_det_text(*c, vals[c], args.factored) for c in cells)
    _emit(args, recs[0] if len(recs) == 1 and args.cmd == "gram" else recs, text)
    return EXIT_OK


def cmd_gram(args):
    return _gram_cells(args, [_cell(args)])


def cmd_gram_all(args):
    if args.n is None or args.n < 1:
        raise UsageError("--n must be a positive integer")
    return _gram_cells(args, [(args.n, f, lam) for f, lam in cb.cell_labels(args.n)])


def cmd_eval(args):
    n, f, lam = _cell(args)
    value = _compute_many([(n, f, lam)], args)[(n, f, lam)]
    if args.r is None:
        raise UsageError("--r is required")
    r = _parse_r(args.r)
    if isinstance(r, PowerOfQ):
        spec = value.subs_r(r.eps, r.a)
        payload = {"cell": _cell_json((n, f, lam)), "r": r.label(), "factored": spec.render(),
                   "value": str(spec.expand())}
        text = f"at r = {r.label()}: {spec.render()}"
        if args.q is not None:
            x = spec.expand().evaluate(Fraction(args.q), 1, args.char or None)
            payload["q"] = args.q
            payload["numeric"] = str(x)
            text += f"\nat q = {args.q}: {x}"
        _emit(args, payload, text)
        return EXIT_OK
    if isinstance(r, Numeric):
        q0, r0 = r.q0, r.r0
    else:
        raise UsageError("eval needs --r of the form +q^A, -q^A or numeric:Q0,R0")
    from .rational import eval_numeric
    x = eval_numeric(value.expand(), q0, r0, args.char or None)
    _emit(args, {"cell": _cell_json((n, f, lam)), "q": str(q0), "r": str(r0),
                 "char": args.char or 0, "value": str(x)}, str(x))
    return EXIT_OK


def cmd_semisimple(args):
    if args.n is None or args.n < 1:
        raise UsageError("--n must be a positive integer")
    try:
        spec = FieldSpec(args.char or 0, _parse_qorder(args.qorder), _parse_r(args.r or "generic"))
    except ValueError as e:
        raise UsageError(str(e)) from None
    v = decide_semisimple(args.n, spec)
    text = f"{'semisimple' if v.semisimple else 'not semisimple'} ({v.clause}): " + "; ".join(v.reasons)
    _emit(args, v.to_json(), text)
    return EXIT_OK


def _certify_one(cell):
    from .seminormal import build_rep, certify_relations
    n, f, lam = cell
    t0 = time.perf_counter()
    rep = build_rep(n, f, lam, certify=False)
    rep_json = certify_relations(rep).to_json()
    rep_json["seconds"] = round(time.perf_counter() - t0, 3)
    return rep_json


def cmd_certify(args):
    if args.n is None or args.n < 1:
        raise UsageError("--n must be a positive integer")
    if args.f is not None or args.lam is not None:
        cells = [_cell(args)]
    else:
        cells = [(args.n, f, lam) for f, lam in cb.cell_labels(args.n)]
    if args.jobs and args.jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            reports = list(ex.map(_certify_one, cells))
    else:
        reports = [_certify_one(c) for c in cells]
    ok = all(r["passed"] for r in reports)
    lines = []
    for r in reports:
        failed = [x["name"] for x in r["relations"] if not x["passed"]]
        status = "pass" if r["passed"] else "FAIL " + ", ".join(failed)
        lines.append(f"({r['f']}, ({r['lambda']})) dim {r['dim']}: {len(r['relations'])} relations, {status}")
    _emit(args, {"n": args.n, "passed": ok, "cells": reports}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_table(args):
    top = args.max_n or 6
    rows = []
    ok = True
    for n in range(2, top + 1):
        row_lam = (n - 2,) if n > 2 else ()
        col_lam = tuple([1] * (n - 2))
        row = gram.gram_det_recursive(n, 1, row_lam).value
        col = gram.gram_det_recursive(n, 1, col_lam).value
        closed = gram.closed_form_one_row(n)
        row_ok = row == closed
        dual_ok = {(-e, -a) for e, a in gram.positive_rminus(row)} == gram.positive_rminus(col)
        ok = ok and row_ok and dual_ok
        rows.append({"n": n, "row": row.render(), "closed_form_match": row_ok,
                     "column": col.render(), "dual_factors_match": dual_ok})
    lines = [f"n={r['n']}: row {'=' if r['closed_form_match'] else '!='} closed form; "
             f"column factors {'dual' if r['dual_factors_match'] else 'NOT dual'}\n"
             f"  row    {r['row']}\n  column {r['column']}" for r in rows]
    _emit(args, {"rows": rows, "passed": ok}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_MISMATCH


COMMANDS = {
    "dims": cmd_dims, "gram": cmd_gram, "gram-all": cmd_gram_all, "eval": cmd_eval,
    "semisimple": cmd_semisimple, "certify": cmd_certify, "table": cmd_table,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--f", type=int)
    common.add_argument("--lambda", dest="lam", metavar="PARTS", help='e.g. "2,1"; "" for the empty partition')
    common.add_argument("--json", action="store_true")
    common.add_argument("--factored", action="store_true")
    common.add_argument("--q")
    common.add_argument("--r", help="generic, +q^A, -q^A or numeric:Q0,R0")
    common.add_argument("--char", type=int, default=0)
    common.add_argument("--qorder", help="o(q^2): an integer or inf")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--verify-cache", action="store_true")
    common.add_argument("--max-n", type=int)
    p = _Parser(prog="bmw", description="Gram determinants and seminormal forms of BMW algebras.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return COMMANDS[args.cmd](args)
    except UsageError as e:
        print(f"bmw: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ZeroDivisionError, RuntimeError) as e:
        print(f"bmw: computation error: {e}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
