"""Command-line driver: check, enumerate, conjecture, dualize.

Exit codes encode the top-level verdict: 0 Confirmed, 3 Refuted,
4 ConsistentToDepth.  1 is a usage error, 2 an input validation error
(parse failure, precondition violation, enumeration guard).  Reports
go to standard output or --out as byte-stable JSON.
"""

from __future__ import annotations

import argparse
import sys
import time

from .algebra import AdmissibilityError, InputError
from .catalog import build_catalog, conjecture_sweep
from .complexes import ProjComplex, WindowError
from .minimize import is_isomorphic, minimize
from .modcomplex import resolve_dual
from .modules import FDModule
from .report import complex_dict, render, report, verdict_dict
from .resolved import ResolvedModule
from .specfiles import (ParseError, load_algebra, load_input,
                        write_algebra_text, write_complex_text)
from .verdicts import (CONFIRMED, CONSISTENT, REFUTED, check_duality,
                       default_depth, is_silting, is_tilting,
                       is_wakamatsu_silting, is_wakamatsu_silting_module,
                       wakamatsu_tilting_module_check)

EXIT_BY_STATUS = {CONFIRMED: 0, REFUTED: 3, CONSISTENT: 4}

MODES = ("wakamatsu", "silting", "tilting", "wakamatsu-tilting-module",
         "duality")


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; the contract reserves 2 for input
    # validation, so usage failures are remapped to 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    p = _Parser(prog="siltkit",
                description="silting-type verdicts over bound quiver algebras")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, depth=True):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--timing", action="store_true",
                        help="include wall-clock time in the report")
        if depth:
            sp.add_argument("--depth", type=int, default=None,
                            help="search depth (default 2*(r + dim A))")

    def sweep_flags(sp):
        sp.add_argument("--degrees", type=int, nargs=2, default=(-1, 0),
                        metavar=("LO", "HI"))
        sp.add_argument("--max-mult", type=int, default=1)
        sp.add_argument("--max-terms", type=int, default=None)

    c = sub.add_parser("check", help="run one verdict on one input")
    c.add_argument("algebra")
    c.add_argument("input", help="complex or module spec file")
    c.add_argument("--mode", choices=MODES, default="wakamatsu")
    common(c)

    e = sub.add_parser("enumerate", help="classified candidate catalog")
    e.add_argument("algebra")
    sweep_flags(e)
    common(e)

    j = sub.add_parser("conjecture",
                       help="hunt for Wakamatsu-silting non-silting candidates")
    j.add_argument("algebra")
    sweep_flags(j)
    common(j)

    d = sub.add_parser("dualize",
                       help="emit the dual complex over the opposite algebra")
    d.add_argument("algebra")
    d.add_argument("input")
    d.add_argument("--out-algebra", help="write the opposite algebra spec here")
    d.add_argument("--out-complex", help="write the dual complex spec here")
    common(d)
    return p


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _resolve_module(M: FDModule, depth: int | None) -> ProjComplex:
    """Genuine resolved stalk, or InputError when pd exceeds the probe."""
    A = M.algebra
    probe = (depth if depth is not None else default_depth(A)) + 1
    rm = ResolvedModule(M)
    pd = rm.projective_dimension(probe_to=probe)
    if pd is None:
        raise InputError(
            f"projective dimension exceeds {probe}; this mode needs a "
            "genuine bounded complex")
    return rm.complex(max(pd, 1))


def _check_verdict(mode: str, item, depth, seed):
    if mode == "wakamatsu-tilting-module":
        if not isinstance(item, FDModule):
            raise InputError("mode wakamatsu-tilting-module needs a module file")
        return wakamatsu_tilting_module_check(item, depth=depth, seed=seed)
    if mode == "wakamatsu" and isinstance(item, FDModule):
        return is_wakamatsu_silting_module(item, depth=depth, seed=seed)
    X = _resolve_module(item, depth) if isinstance(item, FDModule) else item
    if mode == "wakamatsu":
        return is_wakamatsu_silting(X, depth=depth, seed=seed)
    if mode == "silting":
        return is_silting(X, depth=depth, seed=seed)
    return is_tilting(X, depth=depth, seed=seed)


def _emit(doc: dict, out_path) -> None:
    text = render(doc)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_check(args) -> int:
    alg_text = _read(args.algebra)
    in_text = _read(args.input)
    A = load_algebra(args.algebra)
    item = load_input(args.input, A)
    t0 = time.monotonic()
    if args.mode == "duality":
        X = _resolve_module(item, args.depth) if isinstance(item, FDModule) \
            else item
        pair = check_duality(X, depth=args.depth, seed=args.seed)
        status = pair["primal"].status
        results = {"mode": args.mode, "duality": pair}
    else:
        v = _check_verdict(args.mode, item, args.depth, args.seed)
        status = v.status
        results = {"mode": args.mode, "verdict": v}
    results["status"] = status
    doc = report("check", results,
                 inputs={"algebra": alg_text, "input": in_text},
                 flags={"mode": args.mode, "depth": args.depth},
                 seed=args.seed,
                 timing=(time.monotonic() - t0) if args.timing else None)
    _emit(doc, args.out)
    return EXIT_BY_STATUS[status]


def _sweep_flags(args) -> dict:
    return {"degrees": list(args.degrees), "max_mult": args.max_mult,
            "max_terms": args.max_terms, "depth": args.depth}


def _cmd_enumerate(args) -> int:
    alg_text = _read(args.algebra)
    A = load_algebra(args.algebra)
    t0 = time.monotonic()
    entries = build_catalog(A, tuple(args.degrees), args.max_mult,
                            args.max_terms, args.depth, args.seed)
    rows = []
    for e in entries:
        rows.append({
            "index": e["index"],
            "complex": complex_dict(e["complex"]),
            "ktheory": list(e["ktheory"]),
            "position_support": e["position_support"],
            "verdicts": {k: verdict_dict(v)
                         for k, v in e["verdicts"].items()},
        })
    doc = report("enumerate", {"count": len(rows), "catalog": rows},
                 inputs={"algebra": alg_text}, flags=_sweep_flags(args),
                 seed=args.seed,
                 timing=(time.monotonic() - t0) if args.timing else None)
    _emit(doc, args.out)
    return 0


def _cmd_conjecture(args) -> int:
    alg_text = _read(args.algebra)
    A = load_algebra(args.algebra)
    t0 = time.monotonic()
    summary = conjecture_sweep(A, tuple(args.degrees), args.max_mult,
                               args.max_terms, args.depth, args.seed)
    doc = report("conjecture", summary,
                 inputs={"algebra": alg_text}, flags=_sweep_flags(args),
                 seed=args.seed,
                 timing=(time.monotonic() - t0) if args.timing else None)
    _emit(doc, args.out)
    return 3 if summary["counterexamples"] else 0


def _cmd_dualize(args) -> int:
    alg_text = _read(args.algebra)
    in_text = _read(args.input)
    A = load_algebra(args.algebra)
    item = load_input(args.input, A)
    t0 = time.monotonic()
    T = _resolve_module(item, args.depth) if isinstance(item, FDModule) \
        else item
    if not T.genuine:
        raise InputError("dualize needs a genuine bounded complex")
    op = A.opposite()
    depth = args.depth if args.depth is not None else default_depth(A)
    DT = resolve_dual(T, op, depth + 2)
    round_trip = None
    if DT.genuine:
        DDT = resolve_dual(DT, A, depth + 2)
        if DDT.genuine:
            ok, _ = is_isomorphic(minimize(DDT), minimize(T), seed=args.seed)
            round_trip = ok
    op_text = write_algebra_text(op.presentation, op.field)
    dual_text = write_complex_text(DT)
    if args.out_algebra:
        with open(args.out_algebra, "w", encoding="utf-8") as fh:
            fh.write(op_text)
    if args.out_complex:
        with open(args.out_complex, "w", encoding="utf-8") as fh:
            fh.write(dual_text)
    results = {
        "opposite_algebra": op_text,
        "dual": complex_dict(DT),
        "round_trip_isomorphic": round_trip,
    }
    doc = report("dualize", results,
                 inputs={"algebra": alg_text, "input": in_text},
                 flags={"depth": args.depth}, seed=args.seed,
                 timing=(time.monotonic() - t0) if args.timing else None)
    _emit(doc, args.out)
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    runner = {"check": _cmd_check, "enumerate": _cmd_enumerate,
              "conjecture": _cmd_conjecture, "dualize": _cmd_dualize}
    try:
        return runner[args.command](args)
    except (ParseError, InputError, AdmissibilityError, WindowError) as exc:
        print(f"siltkit: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"siltkit: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
