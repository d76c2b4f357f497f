"""Command-line entry point: ``lamanbounds <subcommand> ...``.

Machine-readable output (JSON lines, graph lists, CSV) goes to stdout and
human-oriented summaries to stderr.  Batch inputs are read line by line from
files or stdin; a bad line is reported on stderr and makes the exit status
nonzero without stopping the rest of the batch.

Defaults for any long option can come from a ``key = value`` file given with
``--config``; explicit flags win.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import IO, Iterator, Sequence

from . import data
from .analysis import (
    count_short_cycles,
    degree_profile,
    hamiltonian_cycle,
    is_laman,
    planarity,
    satisfies_3d_count,
)
from .algebra.field import PRIME_ENV_VAR, PrimeField
from .bounds import CONSTRUCTIONS, BoundSpec, growth_table, plot_rates, theorem_spec, to_csv
from .families import in_S, in_T, search_family
from .graph import Graph, GraphCode, canonical_code, decode, encode, parse_graph_line
from .henneberg import DEFAULT_KINDS, KINDS_2D, KINDS_3D, generate_levels
from .realizations import CountConfig, _check_counts, count_many, count_realizations
from .reproduce import DESCRIPTIONS, RECIPES

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad invocation; reported as a single line with exit status 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # one line instead of usage + message
        raise UsageError(f"{self.prog}: {message}")


# -- input handling ------------------------------------------------------------


def _lines(paths: Sequence[str]) -> Iterator[tuple[str, int, str]]:
    if not paths or paths == ["-"]:
        for i, line in enumerate(sys.stdin, 1):
            yield "<stdin>", i, line
        return
    for p in paths:
        with open(p, encoding="utf-8") as fh:
            for i, line in enumerate(fh, 1):
                yield p, i, line


def parse_input_line(line: str) -> GraphCode | None:
    """A graph-list line, a bare code, or a JSON object with ``n`` and ``code`` or ``edges``."""
    s = line.strip()
    if s.startswith("{"):
        obj = json.loads(s)
        if "edges" in obj:
            return encode(Graph.from_edges(int(obj["n"]), obj["edges"]))
        code = int(obj["code"])
        return GraphCode(int(obj["n"]) if "n" in obj else decode(code).n, code)
    return parse_graph_line(line)


class Batch:
    """Iterates input graphs, recording per-line failures."""

    def __init__(self, paths: Sequence[str]):
        self.paths = list(paths)
        self.failures = 0

    def fail(self, where: str, exc: Exception):
        self.failures += 1
        print(f"{where}: {exc}", file=sys.stderr)

    def __iter__(self) -> Iterator[tuple[str, GraphCode]]:
        for src, lineno, line in _lines(self.paths):
            where = f"{src}:{lineno}"
            try:
                gc = parse_input_line(line)
            except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
                self.fail(where, exc)
                continue
            if gc is not None:
                yield where, gc


def _emit(obj: dict, out: IO[str] | None = None):
    print(json.dumps(obj), file=out or sys.stdout)


def _code_json(code: int):
    return str(code) if code >= 1 << 53 else code


def _parse_code_n(text: str) -> GraphCode:
    code, sep, n = text.partition(":")
    try:
        return GraphCode(int(n), int(code)) if sep else GraphCode(decode(int(code)).n, int(code))
    except ValueError as exc:
        raise UsageError(f"bad graph '{text}' (expected CODE:N): {exc}") from None


def _parse_range(text: str) -> list[int]:
    a, sep, b = text.partition("..")
    try:
        lo, hi = (int(a), int(b)) if sep else (int(a), int(a))
    except ValueError:
        raise UsageError(f"bad range '{text}' (expected A..B)") from None
    if lo > hi:
        raise UsageError(f"empty range '{text}'")
    return list(range(lo, hi + 1))


def _kinds(text: str | None, dim: int) -> tuple[str, ...]:
    if not text:
        return DEFAULT_KINDS[dim]
    allowed = KINDS_2D if dim == 2 else KINDS_3D
    kinds = tuple(k.strip() for k in text.split(",") if k.strip())
    bad = [k for k in kinds if k not in allowed]
    if bad:
        raise UsageError(f"unknown step kind(s) {','.join(bad)} for dimension {dim}; "
                         f"choose from {','.join(allowed)}")
    return kinds


def _count_config(args) -> CountConfig:
    prime = args.prime
    if prime is not None:
        try:
            PrimeField(prime, floor=args.prime_floor)
        except ValueError as exc:
            raise UsageError(f"--prime: {exc}") from None
    try:
        return CountConfig(prime=prime, prime_floor=args.prime_floor, runs=args.runs,
                           max_runs=max(args.max_runs, args.runs), seed=args.seed,
                           preprocess=not args.no_preprocess)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- subcommands -----------------------------------------------------------------


def cmd_encode(args) -> int:
    if args.edges is not None:
        if args.n is None:
            raise UsageError("--edges needs --n")
        try:
            pairs = [tuple(int(x) for x in e.split("-")) for e in args.edges.split(",") if e]
            print(encode(Graph.from_edges(args.n, pairs)))
        except ValueError as exc:
            raise UsageError(f"--edges: {exc}") from None
        return EXIT_OK
    batch = Batch(args.inputs)
    for _, gc in batch:
        print(gc)
    return EXIT_FAILURE if batch.failures else EXIT_OK


def _decoded(gc: GraphCode) -> dict:
    return {"n": gc.n, "code": _code_json(gc.code), "edges": gc.graph().sorted_edges()}


def cmd_decode(args) -> int:
    if args.code is not None:
        try:
            code = int(args.code)
            gc = GraphCode(args.n if args.n is not None else decode(code).n, code)
        except ValueError as exc:
            raise UsageError(f"cannot decode {args.code}: {exc}") from None
        _emit(_decoded(gc))
        return EXIT_OK
    batch = Batch([])
    for _, gc in batch:
        _emit(_decoded(gc))
    return EXIT_FAILURE if batch.failures else EXIT_OK


def cmd_canon(args) -> int:
    batch = Batch(args.inputs)
    for where, gc in batch:
        try:
            print(canonical_code(gc.graph()))
        except ValueError as exc:
            batch.fail(where, exc)
    return EXIT_FAILURE if batch.failures else EXIT_OK


def check_report(g: Graph, dim: int) -> dict:
    gc = encode(g)
    tri, quad = count_short_cycles(g)
    rep = {"n": g.n, "code": _code_json(gc.code), "dim": dim, "edges": g.m}
    if dim == 2:
        rep["laman"] = is_laman(g)
    else:
        rep["count_condition"] = satisfies_3d_count(g)
    rep.update(
        degrees=list(degree_profile(g)),
        triangles=tri,
        four_cycles=quad,
        planar=planarity(g).planar,
        hamiltonian=hamiltonian_cycle(g) is not None,
    )
    return rep


def cmd_check(args) -> int:
    batch = Batch(args.inputs)
    for where, gc in batch:
        try:
            _emit(check_report(gc.graph(), args.dim))
        except ValueError as exc:
            batch.fail(where, exc)
    return EXIT_FAILURE if batch.failures else EXIT_OK


def cmd_generate(args) -> int:
    kinds = _kinds(args.kinds, args.dim)
    if args.max_n < args.dim or args.max_n > 16:
        raise UsageError(f"--max-n must lie in {args.dim}..16")
    last = None
    for n, level in generate_levels(args.max_n, args.dim, kinds, jobs=args.jobs, out_dir=args.out):
        print(f"n={n}: {len(level)} graphs", file=sys.stderr)
        last = level
        if args.out is not None:
            _emit({"n": n, "graphs": len(level), "dim": args.dim})
    if args.out is None and last is not None:
        for gc in last.codes():
            print(gc)
    return EXIT_OK


def cmd_count(args) -> int:
    cfg = _count_config(args)
    batch = Batch(args.inputs)
    graphs: list[tuple[str, Graph]] = []
    for where, gc in batch:
        g = gc.graph()
        try:
            _check_counts(g, args.dim)
        except ValueError as exc:
            batch.fail(where, exc)
            continue
        graphs.append((where, g))
    if args.jobs > 1 and len(graphs) > 1:
        results = count_many([g for _, g in graphs], args.dim, cfg, jobs=args.jobs)
    else:
        results = []
        for where, g in graphs:
            results.append(count_realizations(g, args.dim, cfg))
    for (where, _), res in zip(graphs, results):
        _emit(res.to_json())
        if not res.agreed:
            print(f"{where}: runs disagree, reporting {res.value}", file=sys.stderr)
    return EXIT_FAILURE if batch.failures else EXIT_OK


def known_count(gc: GraphCode, dim: int) -> int | None:
    """Count listed in the embedded reference tables, if any."""
    for _, d, table in data.ENCODING_TABLES:
        if d == dim and table.get(gc.n, (None,))[0] == gc.code:
            return table[gc.n][1]
    steps = data.STEP_INCREASES_2D if dim == 2 else data.STEP_INCREASES_3D
    for _, n, code, count, n2, code2, count2, _ in steps:
        if (n, code) == (gc.n, gc.code):
            return count
        if (n2, code2) == (gc.n, gc.code):
            return count2
    return None


def _count_of(gc: GraphCode, dim: int, given: int | None, cfg: CountConfig) -> int:
    if given is not None:
        return given
    listed = known_count(gc, dim)
    if listed is not None:
        return listed
    print(f"counting {gc.n}:{gc.code} (not in the reference tables)", file=sys.stderr)
    res = count_realizations(gc.graph(), dim, cfg)
    if not isinstance(res.value, int):
        raise UsageError(f"graph {gc.n}:{gc.code} is flexible")
    return res.value


_DEFAULT_GLUE = {"caterpillar": GraphCode(2, 1), "fan": GraphCode(3, 7)}


def bound_spec(args) -> BoundSpec:
    c = args.construction
    if c in ("theorem2d", "theorem3d"):
        return theorem_spec(2 if c == "theorem2d" else 3, 3)
    dim = 3 if c == "genfan3d" else 2
    if args.base is None:
        raise UsageError(f"--base is required for --construction {c}")
    base = _parse_code_n(args.base)
    if args.glue is not None:
        glue = _parse_code_n(args.glue)
    elif c in _DEFAULT_GLUE:
        glue = _DEFAULT_GLUE[c]
    else:
        raise UsageError(f"--glue is required for --construction {c}")
    cfg = _count_config(args)
    try:
        return BoundSpec(
            dim,
            base_size=base.n,
            base_count=_count_of(base, dim, args.base_count, cfg),
            glue_size=glue.n,
            glue_count=_count_of(glue, dim, args.glue_count, cfg),
            n=base.n,
            construction=c,
            base_code=base,
            glue_code=glue,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_bound(args) -> int:
    spec = bound_spec(args)
    ns = _parse_range(args.n_range) if args.n_range else list(range(spec.glue_size, spec.base_size + 1))
    try:
        rows = growth_table([spec], ns, places=args.places)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = to_csv(rows)
    if args.csv:
        Path(args.csv).write_text(text, encoding="utf-8")
    if args.format == "json":
        for r in rows:
            _emit({"n": r.n, "construction": r.construction, "value": _code_json(r.bound),
                   "rate": str(r.rate)})
    else:
        sys.stdout.write(text)
    if args.plot:
        plot_rates(rows, args.plot)
    return EXIT_OK


def _family_row(gc: GraphCode, rep, count=None) -> dict:
    row = {"n": gc.n, "code": _code_json(gc.code), "family": rep.family,
           "verdict": rep.verdict, "reason": rep.reason}
    if count is not None:
        row["count"] = count if isinstance(count, int) else str(count)
    return row


def cmd_family(args) -> int:
    sidecar = open(args.evidence, "w", encoding="utf-8") if args.evidence else None
    try:
        if args.n is not None:
            try:
                ranked = search_family(args.n, args.family, count=args.count,
                                       config=_count_config(args))
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            for r in ranked:
                _emit(_family_row(r.code, r.report, r.count))
                if sidecar:
                    _emit({"code": _code_json(r.code.code), **json.loads(r.report.to_json())}, sidecar)
            print(f"{len(ranked)} members of {args.family}({args.n})", file=sys.stderr)
            return EXIT_OK
        test = in_T if args.family == "T" else in_S
        batch = Batch(args.inputs)
        for where, gc in batch:
            try:
                rep = test(gc.graph())
            except ValueError as exc:
                batch.fail(where, exc)
                continue
            _emit(_family_row(gc, rep))
            if sidecar:
                _emit({"code": _code_json(gc.code), **json.loads(rep.to_json())}, sidecar)
        return EXIT_FAILURE if batch.failures else EXIT_OK
    finally:
        if sidecar:
            sidecar.close()


def cmd_reproduce(args) -> int:
    tables = list(RECIPES) if args.table == "all" else [args.table]
    cfg = _count_config(args)
    bad = 0
    for t in tables:
        print(f"== table {t}: {DESCRIPTIONS[t]}", file=sys.stderr)
        for chk in RECIPES[t](cfg):
            status = "ok" if chk.ok else ("KNOWN" if not chk.counts else "FAIL")
            _emit({"table": t, "check": chk.name, "expected": str(chk.expected),
                   "actual": str(chk.actual), "ok": chk.ok, "note": chk.note})
            print(f"  {status:5} {chk.name}: expected {chk.expected}, got {chk.actual}"
                  + (f"  ({chk.note})" if chk.note else ""), file=sys.stderr)
            if chk.counts and not chk.ok:
                bad += 1
    print(f"{bad} failing check(s)", file=sys.stderr)
    return EXIT_FAILURE if bad else EXIT_OK


# -- parser ------------------------------------------------------------------------


def _add_count_options(p: argparse.ArgumentParser):
    g = p.add_argument_group("counting")
    g.add_argument("--runs", type=int, default=3, help="agreeing runs required")
    g.add_argument("--max-runs", type=int, default=5, help="give up agreeing after this many runs")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--prime", type=int, default=None,
                   help=f"field prime (default: ${PRIME_ENV_VAR} or a built-in 31-bit prime)")
    g.add_argument("--prime-floor", type=int, default=2**20)
    g.add_argument("--no-preprocess", action="store_true",
                   help="do not strip degree-d vertices before counting")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lamanbounds", description="Laman graph realization counts and bounds.")
    parser.add_argument("--config", help="file of key = value option defaults")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def inputs(p):
        p.add_argument("inputs", nargs="*", help="graph list files (default: stdin)")

    def jobs(p):
        p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)

    p = sub.add_parser("encode", help="edge lists to graph codes")
    p.add_argument("--n", type=int)
    p.add_argument("--edges", help="comma-separated u-v pairs")
    inputs(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="graph codes to edge lists (JSON lines)")
    p.add_argument("code", nargs="?")
    p.add_argument("n", nargs="?", type=int)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("canon", help="canonical codes")
    inputs(p)
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("check", help="sparsity, degrees, short cycles, planarity, Hamiltonicity")
    p.add_argument("--dim", type=int, choices=(2, 3), default=2)
    inputs(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("generate", help="enumerate graphs by Henneberg steps")
    p.add_argument("--dim", type=int, choices=(2, 3), default=2)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--kinds", help="comma-separated step kinds")
    p.add_argument("--out", help="directory for per-level graph lists (resumable)")
    jobs(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("count", help="realization counts (JSON lines)")
    p.add_argument("--dim", type=int, choices=(2, 3), default=2)
    _add_count_options(p)
    jobs(p)
    inputs(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("bound", help="lower-bound tables from gluing constructions")
    p.add_argument("--construction", choices=CONSTRUCTIONS, required=True)
    p.add_argument("--base", help="base graph CODE:N")
    p.add_argument("--glue", help="shared subgraph CODE:N")
    p.add_argument("--base-count", type=int)
    p.add_argument("--glue-count", type=int)
    p.add_argument("--n-range", help="A..B")
    p.add_argument("--places", type=int, default=5)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--csv", help="also write the CSV table to this file")
    p.add_argument("--plot", help="write a rate plot (PNG/PDF) to this file")
    _add_count_options(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("family", help="membership in, or search of, the families T and S")
    p.add_argument("--family", choices=("T", "S"), required=True)
    p.add_argument("--n", type=int, help="search all Laman graphs on n vertices")
    p.add_argument("--count", action="store_true", help="rank search results by count")
    p.add_argument("--evidence", help="write membership evidence as JSON lines here")
    _add_count_options(p)
    inputs(p)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("reproduce", help="recompute a reference table and diff it")
    p.add_argument("--table", choices=(*RECIPES, "all"), required=True)
    _add_count_options(p)
    p.set_defaults(func=cmd_reproduce)
    return parser


# -- config files -------------------------------------------------------------------


def read_config(path: str) -> dict[str, str]:
    """``key = value`` lines; ``#`` comments; keys use option names with ``-`` or ``_``."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.split("#", 1)[0].strip()
            if not s:
                continue
            key, sep, value = s.partition("=")
            if not sep:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            out[key.strip().replace("-", "_")] = value.strip().strip('"').strip("'")
    return out


def _apply_config(parser: argparse.ArgumentParser, cfg: dict[str, str]):
    subs = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    known = set()
    for sp in subs.choices.values():
        defaults = {}
        for action in sp._actions:
            if action.dest not in cfg:
                continue
            known.add(action.dest)
            value = cfg[action.dest]
            if isinstance(action, argparse._StoreTrueAction):
                defaults[action.dest] = value.lower() in ("1", "true", "yes", "on")
            else:
                defaults[action.dest] = value  # argparse applies ``type`` to string defaults
        sp.set_defaults(**defaults)
    unknown = set(cfg) - known
    if unknown:
        raise UsageError(f"unknown config key(s): {', '.join(sorted(unknown))}")


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        pre = argparse.ArgumentParser(add_help=False)
        pre.add_argument("--config")
        known, _ = pre.parse_known_args(argv)
        if known.config:
            _apply_config(parser, read_config(known.config))
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
