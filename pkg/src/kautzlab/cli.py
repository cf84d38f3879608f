"""``kautzlab`` command line: gen, dist, analyze, verify.

Exit codes: 0 ok, 1 verification mismatch, 2 bad input, 3 I/O failure,
4 unreachable distance query.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import export, families, verify
from .digraph import bfs
from .routing import Unreachable, checked_route
from .words import Family, FamilySpec, InvalidInput, format_word, is_valid_vertex, parse_word

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_IO, EXIT_UNREACHABLE = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _spec(args) -> FamilySpec:
    try:
        return FamilySpec(Family.parse(args.family), args.d, args.l)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INPUT) from None


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot write {out}: {exc.strerror or exc}", EXIT_IO) from None


def _checks(text: str | None) -> list[str] | None:
    if text is None:
        return None
    names = [c.strip() for c in text.split(",") if c.strip()]
    unknown = [c for c in names if c not in verify.CHECKS]
    if unknown:
        raise CliError(f"unknown check {unknown[0]!r}; choose from {', '.join(verify.CHECKS)}", EXIT_INPUT)
    return names


def cmd_gen(args) -> int:
    spec = _spec(args)
    if spec.known_disconnected:
        print(f"warning: {spec} is disconnected", file=sys.stderr)
    g = families.build(spec)
    render = {"dot": export.to_dot, "edges": export.to_edges, "json": export.to_json}[args.format]
    _write(render(g), args.out)
    return EXIT_OK


def _word(text: str, spec: FamilySpec):
    try:
        w = parse_word(text, spec.d)
        ok = is_valid_vertex(w, spec)
    except InvalidInput as exc:
        raise CliError(str(exc), EXIT_INPUT) from None
    if not ok:
        raise CliError(f"{text} is not a vertex of {spec}", EXIT_INPUT)
    return w


def cmd_dist(args) -> int:
    spec = _spec(args)
    x, y = _word(args.x, spec), _word(args.y, spec)
    if spec.family is Family.MCK or spec.known_disconnected:
        # no label-only routing here: fall back to BFS on the built digraph
        g = families.build(spec)
        field = bfs(g, g.index(x))
        k = field.dist[g.index(y)]
        if k is None:
            raise CliError("unreachable", EXIT_UNREACHABLE)
        path = None
        case = "bfs"
        if args.show_path:
            path = [y]
            v = g.index(y)
            while field.dist[v] > 0:
                v = next(u for u in g.reverse[v] if field.dist[u] == field.dist[v] - 1)
                path.append(g.labels[v])
            path.reverse()
    else:
        try:
            r = checked_route(x, y, spec)
        except Unreachable:
            raise CliError("unreachable", EXIT_UNREACHABLE) from None
        k, case = r.distance, r.case.value
        path = r.vertices() if args.show_path else None
    if args.json:
        doc = {"x": format_word(x, spec.d), "y": format_word(y, spec.d), "distance": k, "case": case}
        if path is not None:
            doc["path"] = [format_word(w, spec.d) for w in path]
        print(json.dumps(doc))
    else:
        print(k)
        print(f"case: {case}")
        if path is not None:
            print(" -> ".join(format_word(w, spec.d) for w in path))
    return EXIT_OK


def _report(records, fmt: str, out: str | None) -> int:
    text = verify.to_json(records) if fmt == "json" else verify.render_table(records)
    _write(text, out)
    return EXIT_OK if verify.suite_ok(records) else EXIT_MISMATCH


def cmd_analyze(args) -> int:
    spec = _spec(args)
    checks = _checks(args.checks)
    records = verify.run_suite([spec], checks, timings=not args.no_timings)
    return _report(records, args.format, args.out)


def cmd_verify(args) -> int:
    checks = _checks(args.checks)
    if args.spec:
        try:
            items = [(FamilySpec.parse(s), checks) for s in args.spec]
        except InvalidInput as exc:
            raise CliError(str(exc), EXIT_INPUT) from None
        budget = verify.Budget()
    else:
        try:
            preset_items, budget = verify.preset(args.grid)
        except ValueError as exc:
            raise CliError(str(exc), EXIT_INPUT) from None
        items = [(s, checks if checks is not None else c) for s, c in preset_items]
    # instances sharing a check list run together so the pool sees the whole batch
    records = []
    batch: list[FamilySpec] = []
    batch_checks = None
    for s, c in items + [(None, None)]:
        if batch and (s is None or c != batch_checks):
            records += verify.run_suite(batch, batch_checks, budget, timings=not args.no_timings)
            batch = []
        if s is not None:
            batch.append(s)
            batch_checks = c
    code = _report(records, args.format, args.report)
    if args.report:
        bad = sum(r.verdict == verify.MISMATCH for r in records)
        print(f"{len(records)} records, {bad} mismatches; report written to {args.report}")
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kautzlab", description="Kautz-family digraphs: build, route, verify.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def instance(sp):
        sp.add_argument("family", help="K, sK, CK or MCK")
        sp.add_argument("d", type=int)
        sp.add_argument("l", type=int)

    g = sub.add_parser("gen", help="build a digraph and export it")
    instance(g)
    g.add_argument("--format", choices=("dot", "edges", "json"), default="edges")
    g.add_argument("--out", "-o", help="output file (default stdout)")
    g.set_defaults(func=cmd_gen)

    d = sub.add_parser("dist", help="distance between two vertex words")
    instance(d)
    d.add_argument("x")
    d.add_argument("y")
    d.add_argument("--show-path", action="store_true")
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_dist)

    a = sub.add_parser("analyze", help="run every check on one instance")
    instance(a)
    a.add_argument("--checks", help="comma-separated subset of checks")
    a.add_argument("--format", choices=("json", "text"), default="json")
    a.add_argument("--out", "-o")
    a.add_argument("--no-timings", action="store_true", help="omit runtimes so reports are byte-identical")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run checks over a preset grid or listed specs")
    v.add_argument("--grid", default="quick", help="preset: quick or full")
    v.add_argument("--spec", action="append", help="instance such as CK,3,4 (repeatable)")
    v.add_argument("--checks", help="comma-separated subset of checks")
    v.add_argument("--format", choices=("json", "text"), default="text")
    v.add_argument("--report", help="write the report here instead of stdout")
    v.add_argument("--no-timings", action="store_true", help="omit runtimes so reports are byte-identical")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        if exc.code == EXIT_UNREACHABLE:
            print("unreachable")
        else:
            print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BrokenPipeError:
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
