"""Command-line frontend.

Inputs are a path, ``-`` for stdin, or inline JSON.  Three JSON shapes are
recognised: a simplicial complex ``{"n", "facets"}``, a squarefree module
``{"n", "dims", "maps", ...}`` and a complex of modules ``{"lo", "terms", "diffs", ...}``.

Exit codes: 0 success, 1 verification failure, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .betti import betti_bgg, betti_hochster, betti_koszul, betti_resolution, extremal, projdim_reg
from .bgg import distinguished_pairs_sq, distinguished_pairs_z, growth_profile
from .exactla import Field, MalformedInputError, NotAComplexError
from .harness import (
    SUITES,
    Instance,
    SuiteConfig,
    SuiteMismatchError,
    check_instance,
    gen_instances,
    run_suite,
)
from .simplicial import SimplicialComplex, alexander_dual, format_subset
from .sqmod import (
    NEG_INF,
    SqComplex,
    SqModule,
    alexander,
    as_complex,
    functor_E,
    functor_S,
    sr_module,
)

EXIT_OK, EXIT_FAIL, EXIT_MALFORMED = 0, 1, 2


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _read_input(arg: str):
    if arg == "-":
        text = sys.stdin.read()
    elif arg.lstrip().startswith("{"):
        text = arg
    elif os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
    else:
        raise MalformedInputError(f"input {arg!r} is neither a file nor inline JSON")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"malformed JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    if not isinstance(data, dict):
        raise MalformedInputError("top-level JSON must be an object")
    return data


def _parse_object(data: dict, field: Field):
    """A SimplicialComplex, SqModule or SqComplex, depending on the keys present."""
    if "terms" in data:
        data = dict(data)
        data.setdefault("field", field.name)
        for t in data["terms"] if isinstance(data["terms"], list) else []:
            if isinstance(t, dict):
                t.setdefault("field", data["field"])
        return SqComplex.from_dict(data)
    if "dims" in data:
        data = dict(data)
        data.setdefault("field", field.name)
        return SqModule.from_dict(data)
    if "facets" in data or "void" in data:
        return SimplicialComplex.from_dict(data)
    raise MalformedInputError("JSON object has none of the keys 'facets', 'dims', 'terms'")


def _s_object(obj, field: Field, which: str, side: str = "S"):
    """Turn parsed input into an S-side (or E-side) module or complex."""
    if isinstance(obj, SimplicialComplex):
        return sr_module(obj, which, side, field)
    if obj.side != side:
        if isinstance(obj, SqModule):
            return functor_S(obj) if side == "S" else functor_E(obj)
        raise MalformedInputError(f"expected a complex over the {side} side, got side {obj.side}")
    return obj


def _emit_table(table, fmt: str) -> str:
    if fmt == "tsv":
        return table.to_tsv()
    if fmt == "grid":
        return table.grid()
    return _dump({"n": table.n, "entries": [[i, format_subset(F), v] for (i, F), v in table]})


def _table_for(obj, args, field: Field):
    method = args.method
    if method == "hochster":
        if not isinstance(obj, SimplicialComplex):
            raise MalformedInputError("--method hochster needs a simplicial complex as input")
        return betti_hochster(obj, args.which, field)
    M = _s_object(obj, field, args.which)
    if method == "koszul":
        return betti_koszul(M)
    if method == "resolution":
        C = as_complex(M)
        if not C.is_module():
            raise MalformedInputError("--method resolution handles single modules only")
        return betti_resolution(M)
    return betti_bgg(M)


# --- subcommands ---------------------------------------------------------------

def cmd_betti(args, field, out):
    obj = _parse_object(_read_input(args.input), field)
    out.write(_emit_table(_table_for(obj, args, field), args.format))
    return EXIT_OK


def cmd_dual(args, field, out):
    obj = _parse_object(_read_input(args.input), field)
    if not isinstance(obj, SimplicialComplex):
        raise MalformedInputError("dual takes a simplicial complex; use 'alexander' for modules")
    out.write(_dump(alexander_dual(obj).to_dict()))
    return EXIT_OK


def cmd_alexander(args, field, out):
    obj = _parse_object(_read_input(args.input), field)
    M = _s_object(obj, field, args.which)
    out.write(_dump(alexander(M).to_dict()))
    return EXIT_OK


def cmd_extremal(args, field, out):
    obj = _parse_object(_read_input(args.input), field)
    ext = extremal(_table_for(obj, args, field), args.grading)
    if args.grading == "fine":
        rows = [[i, format_subset(F), v] for (i, F), v in sorted(ext.entries.items())]
    else:
        rows = [[i, j, v] for (i, j), v in sorted(ext.entries.items())]
    if args.format == "tsv":
        out.write("".join("\t".join(map(str, r)) + "\n" for r in rows))
    else:
        out.write(_dump({"grading": args.grading, "extremal": rows}))
    return EXIT_OK


def cmd_distinguished(args, field, out):
    obj = _parse_object(_read_input(args.input), field)
    X = _s_object(obj, field, args.which, args.side)
    if args.kind == "sq":
        rows = [[format_subset(p.F), p.i] for p in sorted(distinguished_pairs_sq(X), key=lambda p: (p.i, p.F))]
    else:
        rows = [[p.d, p.i] for p in sorted(distinguished_pairs_z(X), key=lambda p: (p.i, p.d))]
    if args.format == "tsv":
        out.write("".join(f"{a}\t{b}\n" for a, b in rows))
    else:
        out.write(_dump({"kind": args.kind, "side": args.side, "pairs": rows}))
    return EXIT_OK


def cmd_growth(args, field, out):
    obj = _parse_object(_read_input(args.input), field)
    N = _s_object(obj, field, args.which, "E")
    g = growth_profile(N)
    rows = [[i, None if g.d[i] == NEG_INF else g.d[i], g.e[i]] for i in sorted(g.d)]
    if args.format == "tsv":
        out.write("".join(f"{i}\t{'-inf' if d is None else d}\t{'-' if e is None else e}\n" for i, d, e in rows))
    else:
        out.write(_dump({"profile": [{"i": i, "d": d, "e": e} for i, d, e in rows]}))
    return EXIT_OK


def cmd_projreg(args, field, out):
    obj = _parse_object(_read_input(args.input), field)
    pd, reg = projdim_reg(_table_for(obj, args, field))
    if args.format == "tsv":
        out.write(f"projdim\t{'-' if pd is None else pd}\nreg\t{'-' if reg is None else reg}\n")
    else:
        out.write(_dump({"projdim": pd, "reg": reg}))
    return EXIT_OK


def _n_range(args) -> tuple[int, int]:
    n_max = args.n
    n_min = args.n_min if args.n_min is not None else (0 if args.gen in ("all", "all-complexes") else n_max)
    return n_min, n_max


def cmd_verify(args, field, out):
    if args.replay:
        report = _read_input(args.replay)
        suite = report.get("suite")
        if suite not in SUITES:
            raise MalformedInputError(f"report names unknown suite {suite!r}")
        failures = report.get("failures", [])
        still = []
        for f in failures:
            w = check_instance(suite, Instance.from_dict(f["instance"]))
            if w:
                still.append({"instance": f["instance"], "witness": w})
        out.write(_dump({"suite": suite, "replayed": len(failures), "reproduced": len(still), "failures": still}))
        return EXIT_FAIL if still else EXIT_OK
    if args.suite is None:
        raise MalformedInputError("verify needs --suite (or --replay)")
    n_min, n_max = _n_range(args)
    cfg = SuiteConfig(args.suite, n_min, n_max, args.samples, args.seed, field, args.gen)
    report = run_suite(cfg)
    out.write(_dump(report.to_dict(timing=args.timing)))
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_gen(args, field, out):
    n_min, n_max = _n_range(args)
    cfg = SuiteConfig("oracle-agreement" if args.gen not in ("cone",) else "main2",
                      n_min, n_max, args.samples, args.seed, field, args.gen)
    for inst in gen_instances(cfg):
        if inst.kind == "complex" and not args.envelope:
            out.write(_dump(inst.delta.to_dict()))
        else:
            out.write(_dump(inst.to_dict()))
    return EXIT_OK


# --- parser ---------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser, fmt_choices=("json", "tsv"), default_fmt="json"):
    p.add_argument("--field", default="q", help="q (rationals, default) or fp:<prime>")
    p.add_argument("--format", choices=fmt_choices, default=default_fmt)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-v", "--verbose", action="store_true")


def _add_input(p: argparse.ArgumentParser):
    p.add_argument("input", help="path, '-' for stdin, or inline JSON")
    p.add_argument("--which", choices=("face-ring", "ideal"), default="face-ring",
                   help="Stanley-Reisner object built from a simplicial-complex input")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sqbgg", description="Squarefree modules, BGG duality and Betti tables.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("betti", help="Betti table of a module or complex")
    _add_input(p)
    p.add_argument("--method", choices=("koszul", "hochster", "resolution", "bgg"), default="koszul")
    _add_common(p, ("tsv", "grid", "json"), "tsv")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("dual", help="Alexander dual of a simplicial complex")
    p.add_argument("input")
    _add_common(p, ("json",))
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("alexander", help="module-level Alexander duality functor")
    _add_input(p)
    _add_common(p, ("json",))
    p.set_defaults(func=cmd_alexander)

    p = sub.add_parser("extremal", help="extremal Betti numbers")
    _add_input(p)
    p.add_argument("--grading", choices=("fine", "coarse"), default="fine")
    p.add_argument("--method", choices=("koszul", "hochster", "resolution", "bgg"), default="koszul")
    _add_common(p)
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("distinguished", help="distinguished pairs")
    _add_input(p)
    p.add_argument("--kind", choices=("sq", "z"), default="sq")
    p.add_argument("--side", choices=("S", "E"), default="S")
    _add_common(p)
    p.set_defaults(func=cmd_distinguished)

    p = sub.add_parser("growth", help="d_i / e_i profile of the BGG image of an E-module or complex")
    _add_input(p)
    _add_common(p)
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("projreg", help="projective dimension and regularity")
    _add_input(p)
    p.add_argument("--method", choices=("koszul", "hochster", "resolution", "bgg"), default="koszul")
    _add_common(p)
    p.set_defaults(func=cmd_projreg)

    p = sub.add_parser("verify", help="run a theorem suite")
    p.add_argument("--suite", choices=SUITES)
    p.add_argument("--gen", default="all", choices=("all", "random", "cone", "all-complexes",
                                                     "random-complex", "random-cone-complex"))
    p.add_argument("--n", type=int, default=3, help="largest n (for random/cone also the smallest unless --n-min)")
    p.add_argument("--n-min", type=int, default=None)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--timing", action="store_true", help="record wall time (makes output nondeterministic)")
    p.add_argument("--replay", default=None, help="re-check the failures recorded in a report")
    _add_common(p, ("json",))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="emit generated instances, one JSON object per line")
    p.add_argument("--gen", default="all", choices=("all", "random", "cone", "all-complexes",
                                                     "random-complex", "random-cone-complex"))
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--n-min", type=int, default=None)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--envelope", action="store_true", help="wrap complexes in replayable instance records")
    _add_common(p, ("json",))
    p.set_defaults(func=cmd_gen)
    return ap


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    try:
        field = Field.parse(args.field)
        return args.func(args, field, out)
    except (MalformedInputError, SuiteMismatchError, NotAComplexError) as e:
        print(f"sqbgg {args.command}: error: {e}", file=sys.stderr)
        return EXIT_MALFORMED
    except ValueError as e:
        print(f"sqbgg {args.command}: error: {e}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
